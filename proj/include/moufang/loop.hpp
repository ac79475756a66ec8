#pragma once

// Finite loops given by Cayley tables. Element 0 is always the identity;
// validation relabels if some other index acts as identity. Division tables
// are precomputed so ldiv/rdiv are O(1).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "moufang/errors.hpp"

namespace moufang {

class LoopTable {
public:
    // Validates a square grid as a loop table (Latin property plus a
    // two-sided identity). Throws NotLatin / NoIdentity.
    static LoopTable from_grid(int n, std::vector<int> cells);

    int size() const { return n_; }
    int mul(int x, int y) const { return cells_[x * n_ + y]; }
    // unique w with x*w = y
    int ldiv(int x, int y) const { return ldiv_[x * n_ + y]; }
    // unique w with w*y = x
    int rdiv(int x, int y) const { return rdiv_[x * n_ + y]; }
    // right inverse; coincides with the left inverse on Moufang tables
    int inv(int x) const { return ldiv_[x * n_]; }

    const std::vector<int>& cells() const { return cells_; }
    bool same_cells(const LoopTable& o) const { return n_ == o.n_ && cells_ == o.cells_; }

private:
    LoopTable() = default;
    int n_ = 0;
    std::vector<int> cells_, ldiv_, rdiv_;
};

// first triple (x,y,z) with ((xy)x)z != x(y(xz)), if any
std::optional<std::array<int, 3>> moufang_violation(const LoopTable&);
bool is_moufang(const LoopTable&);
bool is_associative(const LoopTable&);
bool is_commutative(const LoopTable&);

// unique w with xy = (yx)w
int commutator(const LoopTable&, int x, int y);
// unique w with (xy)z = (x(yz))w
int associator(const LoopTable&, int x, int y, int z);

// {x : [x,y,z] = [y,x,z] = [y,z,x] = 1 for all y,z}; always a subloop
std::vector<int> nucleus(const LoopTable&);
// nucleus elements that commute with everything
std::vector<int> center(const LoopTable&);
// elements associating in the first slot only: {x : [x,y,z] = 1 for all y,z}
std::vector<int> left_nucleus(const LoopTable&);
// subloop generated by all associator values
std::vector<int> associator_subloop(const LoopTable&);
// the set {x*x}, sorted
std::vector<int> squares(const LoopTable&);

// smallest subloop containing the generators (closure under products;
// divisions follow in the finite case but are closed over explicitly)
std::vector<int> subloop_generated(const LoopTable&, const std::vector<int>& gens);
// all subloops, found by extending known subloops one generator at a time
std::vector<std::vector<int>> enumerate_subloops(const LoopTable&);
bool is_subloop(const LoopTable&, const std::vector<int>& members);
// xS = Sx, (xy)S = x(yS), S(xy) = (Sx)y as set equalities, for all x,y
bool is_normal(const LoopTable&, const std::vector<int>& members);

struct CosetPartition {
    std::vector<std::vector<int>> cosets; // coset 0 is the subloop itself
    std::vector<int> index_of;            // element -> coset index
};
// left cosets xS, ordered by least member; requires xS = Sx style regularity
CosetPartition cosets(const LoopTable&, const std::vector<int>& subloop);
// quotient by a normal subloop; verifies representative independence
LoopTable quotient(const LoopTable&, const std::vector<int>& subloop,
                   CosetPartition* partition = nullptr);

// order of the left-power sequence x, x*x, x*(x*x), ...
int element_order(const LoopTable&, int x);
std::vector<int> element_orders(const LoopTable&);
// false when some element's left and right power sequences diverge
bool left_right_powers_agree(const LoopTable&);

LoopTable direct_product(const LoopTable&, const LoopTable&);
// table restricted to a subloop, elements renumbered in member order
LoopTable restrict_to(const LoopTable&, const std::vector<int>& members);
// new table with x renamed to perm[x]; identity renormalized if moved
LoopTable relabel(const LoopTable&, const std::vector<int>& perm);

struct Fingerprint {
    int n = 0;
    std::vector<int> order_multiset;
    int center_size = 0;
    int nucleus_size = 0;
    int assoc_subloop_size = 0;
    int squares_size = 0;
    std::vector<int> noncommuting_counts; // per element, sorted
    long long nonassoc_triples = 0;
    bool operator==(const Fingerprint&) const = default;
    std::string key() const;
};
Fingerprint fingerprint(const LoopTable&);

// backtracking over generator images, fingerprint-filtered; perm[a] = image
std::optional<std::vector<int>> find_isomorphism(const LoopTable&, const LoopTable&);
bool is_isomorphic(const LoopTable&, const LoopTable&);

} // namespace moufang
