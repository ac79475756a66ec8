#pragma once

// Cayley-table modifications: multiply selected cells by a power of a
// central (resp. nuclear) element h, with the exponent given by the carry
// of window exponents attached to the cosets of a normal subloop. The
// quotient must be cyclic of order 2m (cyclic variant) or dihedral of
// order 4m (dihedral variant, m = 1 meaning the Klein four-group).

#include <cstdint>
#include <string>
#include <vector>

#include "moufang/loop.hpp"

namespace moufang {

struct CyclicParams {
    explicit CyclicParams(LoopTable table) : loop(std::move(table)) {}
    LoopTable loop;
    std::vector<int> subloop;  // normal, quotient cyclic of order 2m
    int m = 0;
    int alpha_rep = 0;         // least element of the generating coset
    int h = 0;                 // nonidentity element of subloop ∩ center
    std::vector<int> exponent; // per element: its coset as a window power of alpha
};

struct DihedralParams {
    explicit DihedralParams(LoopTable table) : loop(std::move(table)) {}
    LoopTable loop;
    std::vector<int> subloop; // normal, quotient dihedral of order 4m
    int m = 0;
    int beta_rep = 0;         // least element of the first reflection coset
    int gamma_rep = 0;        // least element of the second reflection coset
    int h = 0;
    std::vector<int> left_exp;   // x in alpha^i or beta·alpha^i -> i
    std::vector<int> right_exp;  // y in alpha^j or alpha^j·gamma -> j
    std::vector<uint8_t> parity; // 0 on the preimage of <alpha>, 1 elsewhere
};

// Every admissible tuple, in deterministic order (subloops by size then
// members, generators and h ascending). With dedupe, tuples whose modified
// tables are cell-identical to an earlier tuple's are dropped.
std::vector<CyclicParams> find_cyclic_params(const LoopTable&, bool dedupe = true);
std::vector<DihedralParams> find_dihedral_params(const LoopTable&, bool dedupe = true);

// Full admissibility recheck; throws InvalidParams with a reason.
void validate(const CyclicParams&);
void validate(const DihedralParams&);

// Modified table; input must be Moufang (refused otherwise), and the
// output is then Moufang too.
LoopTable apply_cyclic(const CyclicParams&);
LoopTable apply_dihedral(const DihedralParams&);

// number of disagreeing cells; OrderMismatch on different sizes
long long table_distance(const LoopTable&, const LoopTable&);

// text round-trip: "S=0,2;alpha=1;h=2" / "S=0,4;beta=8;gamma=12;h=4"
std::string to_text(const CyclicParams&);
std::string to_text(const DihedralParams&);
CyclicParams cyclic_params_from_text(const LoopTable&, const std::string&);
DihedralParams dihedral_params_from_text(const LoopTable&, const std::string&);

} // namespace moufang
