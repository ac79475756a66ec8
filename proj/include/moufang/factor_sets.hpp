#pragma once

// Extensions of a cyclic coefficient group by a loop: a factor set assigns
// each pair of quotient elements a coefficient, and the extension multiplies
// (x,a)(y,b) = (xy, a·mult(y) + b + eta(x,y)). Factor sets split into a
// classification lattice (plain / Moufang / associative), and both table
// modifications are explained by pairs of factor sets differing by an
// associative one.

#include <vector>

#include "moufang/constructions.hpp"
#include "moufang/loop.hpp"

namespace moufang {

struct ExtensionAction {
    explicit ExtensionAction(LoopTable q) : quotient(std::move(q)) {}
    LoopTable quotient;
    int coeff_order = 1;    // coefficients are integers mod coeff_order
    std::vector<int> mult;  // per quotient element: unit multiplier on the coefficients

    bool operator==(const ExtensionAction& o) const {
        return quotient.same_cells(o.quotient) && coeff_order == o.coeff_order && mult == o.mult;
    }
};

// mult values must be units, mult[identity] = 1, and the map must be a
// homomorphism to the unit group; throws InvalidParams otherwise
void validate(const ExtensionAction&);

struct FactorSet {
    ExtensionAction action;
    std::vector<int> eta; // flattened |Q| x |Q|, values mod coeff_order

    int at(int x, int y) const { return eta[x * action.quotient.size() + y]; }
    int& at(int x, int y) { return eta[x * action.quotient.size() + y]; }
};

enum class FactorSetClass { NotFactorSet, Plain, Moufang, Associative };

const char* to_string(FactorSetClass);

// normalization (identity row and column vanish), then the associative
// triple identity, then the Moufang triple identity; strongest label wins
FactorSetClass classify(const FactorSet&);

// loop on pairs (x,a) indexed x*coeff_order + a; NotALoop when the
// normalization fails
LoopTable build_extension(const FactorSet&);

// pointwise sum / difference; ActionMismatch when the actions differ
FactorSet add(const FactorSet&, const FactorSet&);
FactorSet subtract(const FactorSet&, const FactorSet&);

// eta(x, x^-1) = eta(x^-1, x)·mult(x^-1); refuses non-Moufang input
bool check_inverse_identity(const FactorSet&);

// mu(x·yz, [x,y,z]) = 0 for all triples; equivalent to the extensions of
// eta and eta+mu having identical associators. Requires eta Moufang and
// mu associative over the same action.
bool check_associator_preservation(const FactorSet& eta, const FactorSet& mu);

// Factor sets read off a construction tuple: the coefficient group is the
// subloop generated by h, the transversal picks the least element of each
// coset, eta reproduces the unmodified loop, eta_star the modified one,
// and mu = eta_star - eta is associative.
struct DerivedFactorSets {
    FactorSet eta, eta_star, mu;
    CosetPartition partition;   // cosets of <h> in the input loop
    std::vector<int> coset_rep; // transversal: least element per coset
    std::vector<int> h_power;   // h_power[a] = h^a as an element index
};

DerivedFactorSets derive_factor_sets(const CyclicParams&);
DerivedFactorSets derive_factor_sets(const DihedralParams&);

} // namespace moufang
