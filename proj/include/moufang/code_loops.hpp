#pragma once

// Loops with a central involution z whose quotient is an elementary abelian
// 2-group carry their squaring, commutator and associator data as maps on
// that vector space. This module extracts those maps, measures them with
// derived forms and combinatorial degree, classifies the change the two
// table modifications make to the squaring map, and plans a sequence of
// modifications connecting two such loops whose squaring maps differ by a
// form of degree at most two.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moufang/constructions.hpp"
#include "moufang/loop.hpp"

namespace moufang {

struct PowerMap {
    int dim = 0;
    std::vector<uint8_t> values; // one bit per vector of F2^dim, indexed by bitmask

    uint8_t at(int v) const { return values[v]; }
};

// line 1: dim, line 2: the 2^dim bits in vector-index order
std::string to_text(const PowerMap&);
PowerMap power_map_from_text(const std::string&);

struct SymplecticData {
    explicit SymplecticData(LoopTable table) : loop(std::move(table)) {}
    LoopTable loop;
    int z = 0;                    // the central involution; {0, z} is the kernel subloop
    int dim = 0;                  // the quotient is F2^dim
    std::vector<int> coset_label; // per element: its vector in F2^dim
    std::vector<int> rep;         // per vector: least element with that label
    PowerMap power;               // squaring map: rep(v)^2 = z^power(v)
    std::vector<uint8_t> commutator_map; // flattened 2^dim x 2^dim
    std::vector<uint8_t> associator_map; // flattened 2^dim x 2^dim x 2^dim

    uint8_t commutator_bit(int u, int v) const { return commutator_map[(u << dim) | v]; }
    uint8_t associator_bit(int u, int v, int w) const {
        return associator_map[(((u << dim) | v) << dim) | w];
    }
};

// least central involution with elementary abelian quotient (or only
// preferred_z when given); all three maps are checked to be constant on
// cosets; nullopt when no such involution exists
std::optional<SymplecticData> symplectic_analyze(const LoopTable&, int preferred_z = -1);

// n-th derived form: XOR of P over the sums of all nonempty subsets of args
int derived_form(const PowerMap&, const std::vector<int>& args);

// smallest n such that the (n+1)-th derived form vanishes identically;
// levels are tested on basis tuples, valid because each test runs under a
// vanishing higher level which makes the tested level multilinear
int cdeg(const PowerMap&);

// basis of the radical of the third derived form; CdegTooHigh when cdeg > 3
std::vector<int> radical(const PowerMap&);

// basis of the radical of the second derived form; CdegTooHigh when cdeg > 2
std::vector<int> quadratic_radical(const PowerMap&);

// both criteria are evaluated and must agree: (a) symplectic with the
// commutator and associator maps equal to the derived forms of a squaring
// map of combinatorial degree at most 3, together with Moufang; (b) Moufang
// with at most two distinct squares. The trivial loop is not a code loop.
bool is_code_loop(const LoopTable&);

// squaring map of another table over the same elements, read through the
// coset structure of an analyzed base loop
PowerMap power_map_with(const SymplecticData&, const LoopTable& other);

struct PowerMapDelta {
    PowerMap delta;                // squaring map of the modified table XOR the original
    int degree = 0;                // cdeg of delta
    std::vector<int> quad_radical; // radical basis of delta's second derived form (degree <= 2)
};

// requires the original loop to be a code loop and h to be its central
// involution (NotApplicable otherwise); the modified table must be the
// result of applying the parameters
PowerMapDelta power_delta(const LoopTable&, const LoopTable& modified, const CyclicParams&);
PowerMapDelta power_delta(const LoopTable&, const LoopTable& modified, const DihedralParams&);

struct CodePathStep {
    bool dihedral = false;
    std::vector<int> fixed_space; // basis of the subspace whose preimage is the subloop S
    int u1 = 0, u2 = 0;           // hyperbolic pair (dihedral steps only)
    PowerMap delta;               // squaring-map change this step contributes
};

// steps whose deltas sum to `to` XOR `from`: one dihedral step per
// hyperbolic plane of the difference's bilinear form, then one cyclic step
// for the residual linear form; DeltaNotQuadratic when cdeg of the
// difference exceeds 2
std::vector<CodePathStep> plan_code_path(const PowerMap& from, const PowerMap& to);

// loop on pairs (v, bit), element index (v << 1) | bit, realizing the given
// squaring map with commutator and associator maps equal to its second and
// third derived forms; solves for a factor table by elimination and
// verifies the result; CdegTooHigh when cdeg > 3, dim capped at 5
LoopTable build_code_loop(const PowerMap&);

// apply the planned steps starting from an analyzed code loop; returns the
// table after each step, verifying each squaring-map change on the way
std::vector<LoopTable> run_code_path(const SymplecticData& start, const std::vector<CodePathStep>&);

struct TrilinearForm {
    int dim = 0;
    std::vector<uint8_t> values; // flattened 2^dim x 2^dim x 2^dim

    uint8_t at(int u, int v, int w) const { return values[(((u << dim) | v) << dim) | w]; }
};

TrilinearForm associator_form(const SymplecticData&);
TrilinearForm third_derived_form(const PowerMap&); // CdegTooHigh when cdeg > 3
std::vector<int> form_radical(const TrilinearForm&);

// linear change of coordinates carrying one form to the other, decided by
// invariants plus backtracking over basis images; both forms must be
// trilinear; intended for dim <= 5
bool forms_equivalent(const TrilinearForm&, const TrilinearForm&);

} // namespace moufang
