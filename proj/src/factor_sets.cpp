#include "moufang/factor_sets.hpp"

#include <numeric>
#include <string>

#include "moufang/errors.hpp"
#include "moufang/sigma.hpp"

namespace moufang {

namespace {

int mod(long long v, int d) {
    int r = static_cast<int>(v % d);
    return r < 0 ? r + d : r;
}

void require_shape(const FactorSet& fs) {
    validate(fs.action);
    const int q = fs.action.quotient.size();
    const int d = fs.action.coeff_order;
    if (static_cast<int>(fs.eta.size()) != q * q)
        fail("InvalidParams", "factor set has " + std::to_string(fs.eta.size()) +
                                  " entries, expected " + std::to_string(q * q));
    for (int v : fs.eta)
        if (v < 0 || v >= d) fail("InvalidParams", "factor set entry out of range");
}

bool normalized(const FactorSet& fs) {
    const int q = fs.action.quotient.size();
    for (int x = 0; x < q; ++x)
        if (fs.at(x, 0) != 0 || fs.at(0, x) != 0) return false;
    return true;
}

bool associative_identity(const FactorSet& fs) {
    const LoopTable& Q = fs.action.quotient;
    const int q = Q.size(), d = fs.action.coeff_order;
    const std::vector<int>& u = fs.action.mult;
    for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y) {
            int xy = Q.mul(x, y);
            for (int z = 0; z < q; ++z) {
                long long lhs = static_cast<long long>(fs.at(x, y)) * u[z] + fs.at(xy, z);
                long long rhs = fs.at(y, z) + fs.at(x, Q.mul(y, z));
                if (mod(lhs - rhs, d) != 0) return false;
            }
        }
    return true;
}

bool moufang_identity(const FactorSet& fs) {
    const LoopTable& Q = fs.action.quotient;
    const int q = Q.size(), d = fs.action.coeff_order;
    const std::vector<int>& u = fs.action.mult;
    for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y) {
            int xy = Q.mul(x, y);
            int xyx = Q.mul(xy, x);
            for (int z = 0; z < q; ++z) {
                int xz = Q.mul(x, z);
                int yxz = Q.mul(y, xz);
                long long lhs = static_cast<long long>(fs.at(x, y)) * u[xz] +
                                static_cast<long long>(fs.at(xy, x)) * u[z] + fs.at(xyx, z);
                long long rhs = fs.at(x, z) + fs.at(y, xz) + fs.at(x, yxz);
                if (mod(lhs - rhs, d) != 0) return false;
            }
        }
    return true;
}

} // namespace

void validate(const ExtensionAction& a) {
    const int q = a.quotient.size();
    if (a.coeff_order < 1) fail("InvalidParams", "coefficient order must be positive");
    if (static_cast<int>(a.mult.size()) != q)
        fail("InvalidParams", "action has " + std::to_string(a.mult.size()) +
                                  " multipliers, expected " + std::to_string(q));
    for (int v : a.mult) {
        if (v < 0 || v >= a.coeff_order) fail("InvalidParams", "multiplier out of range");
        if (std::gcd(v, a.coeff_order) != 1) fail("InvalidParams", "multiplier is not a unit");
    }
    if (a.mult[0] != 1 % a.coeff_order) fail("InvalidParams", "identity must act trivially");
    for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y)
            if (mod(static_cast<long long>(a.mult[x]) * a.mult[y], a.coeff_order) !=
                a.mult[a.quotient.mul(x, y)])
                fail("InvalidParams", "multipliers do not respect the quotient product");
}

const char* to_string(FactorSetClass c) {
    switch (c) {
    case FactorSetClass::NotFactorSet: return "not a factor set";
    case FactorSetClass::Plain: return "factor set";
    case FactorSetClass::Moufang: return "Moufang factor set";
    case FactorSetClass::Associative: return "associative factor set";
    }
    return "?";
}

FactorSetClass classify(const FactorSet& fs) {
    require_shape(fs);
    if (!normalized(fs)) return FactorSetClass::NotFactorSet;
    if (associative_identity(fs)) return FactorSetClass::Associative;
    if (moufang_identity(fs)) return FactorSetClass::Moufang;
    return FactorSetClass::Plain;
}

LoopTable build_extension(const FactorSet& fs) {
    require_shape(fs);
    if (!normalized(fs)) fail("NotALoop", "factor set is not normalized at the identity");
    const LoopTable& Q = fs.action.quotient;
    const int q = Q.size(), d = fs.action.coeff_order;
    const int n = q * d;
    std::vector<int> cells(static_cast<size_t>(n) * n);
    for (int x = 0; x < q; ++x)
        for (int a = 0; a < d; ++a)
            for (int y = 0; y < q; ++y)
                for (int b = 0; b < d; ++b) {
                    int c = mod(static_cast<long long>(a) * fs.action.mult[y] + b + fs.at(x, y), d);
                    cells[static_cast<size_t>(x * d + a) * n + (y * d + b)] = Q.mul(x, y) * d + c;
                }
    return LoopTable::from_grid(n, std::move(cells));
}

FactorSet add(const FactorSet& f, const FactorSet& g) {
    require_shape(f);
    require_shape(g);
    if (!(f.action == g.action)) fail("ActionMismatch", "factor sets live over different actions");
    FactorSet r = f;
    for (size_t i = 0; i < r.eta.size(); ++i) r.eta[i] = mod(f.eta[i] + g.eta[i], f.action.coeff_order);
    return r;
}

FactorSet subtract(const FactorSet& f, const FactorSet& g) {
    require_shape(f);
    require_shape(g);
    if (!(f.action == g.action)) fail("ActionMismatch", "factor sets live over different actions");
    FactorSet r = f;
    for (size_t i = 0; i < r.eta.size(); ++i) r.eta[i] = mod(f.eta[i] - g.eta[i], f.action.coeff_order);
    return r;
}

bool check_inverse_identity(const FactorSet& fs) {
    FactorSetClass c = classify(fs);
    if (c != FactorSetClass::Moufang && c != FactorSetClass::Associative)
        fail("InvalidParams", "inverse identity requires a Moufang factor set");
    const LoopTable& Q = fs.action.quotient;
    const int d = fs.action.coeff_order;
    for (int x = 0; x < Q.size(); ++x) {
        int xi = Q.inv(x);
        if (mod(fs.at(x, xi) - static_cast<long long>(fs.at(xi, x)) * fs.action.mult[xi], d) != 0)
            return false;
    }
    return true;
}

bool check_associator_preservation(const FactorSet& eta, const FactorSet& mu) {
    if (!(eta.action == mu.action)) fail("ActionMismatch", "factor sets live over different actions");
    FactorSetClass ce = classify(eta);
    if (ce != FactorSetClass::Moufang && ce != FactorSetClass::Associative)
        fail("InvalidParams", "base factor set must be Moufang");
    if (classify(mu) != FactorSetClass::Associative)
        fail("InvalidParams", "difference factor set must be associative");
    const LoopTable& Q = eta.action.quotient;
    for (int x = 0; x < Q.size(); ++x)
        for (int y = 0; y < Q.size(); ++y)
            for (int z = 0; z < Q.size(); ++z) {
                int u = Q.mul(x, Q.mul(y, z));
                if (mu.at(u, associator(Q, x, y, z)) != 0) return false;
            }
    return true;
}

namespace {

struct TransversalData {
    ExtensionAction action;
    CosetPartition partition;
    std::vector<int> rep;
    std::vector<int> h_power;
    std::vector<int> power_index; // element -> exponent in <h>, or -1
    std::vector<int> tau;         // flattened |Q| x |Q|
};

// The product of two transversal representatives lands in a known coset;
// tau records which power of h separates it from that coset's representative.
TransversalData transversal_tau(const LoopTable& L, int h) {
    std::vector<int> a_members = subloop_generated(L, {h});
    const int d = static_cast<int>(a_members.size());

    std::vector<int> h_power(d);
    std::vector<int> power_index(L.size(), -1);
    int cur = 0;
    for (int k = 0; k < d; ++k) {
        h_power[k] = cur;
        power_index[cur] = k;
        cur = L.mul(cur, h);
    }
    if (cur != 0) fail("Internal", "generated subloop is not the cyclic powers of h");

    CosetPartition part;
    LoopTable Q = quotient(L, a_members, &part);
    const int q = Q.size();
    std::vector<int> rep(q);
    for (int c = 0; c < q; ++c) rep[c] = part.cosets[c][0];

    std::vector<int> tau(static_cast<size_t>(q) * q);
    for (int c1 = 0; c1 < q; ++c1)
        for (int c2 = 0; c2 < q; ++c2) {
            int u = L.mul(rep[c1], rep[c2]);
            int v = rep[part.index_of[u]];
            int t = power_index[L.ldiv(u, v)];
            if (t < 0) fail("Internal", "transversal defect is not a power of h");
            tau[static_cast<size_t>(c1) * q + c2] = t;
        }

    ExtensionAction action(std::move(Q));
    action.coeff_order = d;
    action.mult.assign(q, 1 % d);
    TransversalData data{std::move(action), std::move(part), std::move(rep),
                         std::move(h_power), std::move(power_index), std::move(tau)};
    return data;
}

// all members of each coset of <h> must agree on the given per-element value
int coset_constant(const CosetPartition& part, int coset, const std::vector<int>& per_element) {
    int v = per_element[part.cosets[coset][0]];
    for (int x : part.cosets[coset])
        if (per_element[x] != v) fail("Internal", "per-element data is not constant on cosets of <h>");
    return v;
}

} // namespace

DerivedFactorSets derive_factor_sets(const CyclicParams& p) {
    validate(p);
    TransversalData td = transversal_tau(p.loop, p.h);
    const int q = td.action.quotient.size();
    const int d = td.action.coeff_order;

    FactorSet eta{td.action, std::vector<int>(static_cast<size_t>(q) * q)};
    FactorSet star = eta;
    FactorSet mu = eta;
    for (int c1 = 0; c1 < q; ++c1) {
        int i = coset_constant(td.partition, c1, p.exponent);
        for (int c2 = 0; c2 < q; ++c2) {
            int j = coset_constant(td.partition, c2, p.exponent);
            int base = mod(-td.tau[static_cast<size_t>(c1) * q + c2], d);
            // sigma of the true integer sum i+j, not of its windowed reduction
            int shift = mod(carry(p.m, i + j), d);
            eta.at(c1, c2) = base;
            star.at(c1, c2) = mod(base + shift, d);
            mu.at(c1, c2) = shift;
        }
    }
    return DerivedFactorSets{std::move(eta), std::move(star), std::move(mu),
                             std::move(td.partition), std::move(td.rep), std::move(td.h_power)};
}

DerivedFactorSets derive_factor_sets(const DihedralParams& p) {
    validate(p);
    TransversalData td = transversal_tau(p.loop, p.h);
    const int q = td.action.quotient.size();
    const int d = td.action.coeff_order;

    std::vector<int> parity_int(p.parity.begin(), p.parity.end());
    std::vector<int> coset_parity(q);
    for (int c = 0; c < q; ++c) coset_parity[c] = coset_constant(td.partition, c, parity_int);
    for (int c = 0; c < q; ++c) td.action.mult[c] = coset_parity[c] ? mod(-1, d) : 1 % d;

    FactorSet eta{td.action, std::vector<int>(static_cast<size_t>(q) * q)};
    FactorSet star = eta;
    FactorSet mu = eta;
    for (int c1 = 0; c1 < q; ++c1) {
        int i = coset_constant(td.partition, c1, p.left_exp);
        for (int c2 = 0; c2 < q; ++c2) {
            int j = coset_constant(td.partition, c2, p.right_exp);
            int s = carry(p.m, i + j);
            if (coset_parity[c2]) s = -s;
            int base = mod(-td.tau[static_cast<size_t>(c1) * q + c2], d);
            int shift = mod(s, d);
            eta.at(c1, c2) = base;
            star.at(c1, c2) = mod(base + shift, d);
            mu.at(c1, c2) = shift;
        }
    }
    return DerivedFactorSets{std::move(eta), std::move(star), std::move(mu),
                             std::move(td.partition), std::move(td.rep), std::move(td.h_power)};
}

} // namespace moufang
