#include "moufang/code_loops.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <string>

#include "moufang/errors.hpp"

namespace moufang {

namespace {

int parity_of(int x) { return std::popcount(static_cast<unsigned>(x)) & 1; }

void require_power_map(const PowerMap& p) {
    if (p.dim < 0 || p.dim > 20) fail("InvalidParams", "power map dimension out of range");
    if (p.values.size() != (1u << p.dim))
        fail("InvalidParams", "power map has " + std::to_string(p.values.size()) +
                                  " values, expected " + std::to_string(1 << p.dim));
    for (uint8_t b : p.values)
        if (b > 1) fail("InvalidParams", "power map values must be bits");
    if (p.values[0] != 0) fail("InvalidParams", "power map must vanish at zero");
}

// rows are parity functionals as bitmasks over dim variables; returns a
// reduced basis of their common kernel, ascending
std::vector<int> nullspace_basis(int dim, const std::vector<int>& rows) {
    std::vector<int> piv(dim, 0); // piv[c] = echelon row whose lowest bit is c
    for (int row : rows) {
        int r = row;
        for (int c = 0; c < dim && r; ++c) {
            if (!((r >> c) & 1)) continue;
            if (piv[c])
                r ^= piv[c];
            else {
                piv[c] = r;
                break;
            }
        }
    }
    for (int c = dim - 1; c >= 0; --c)
        if (piv[c])
            for (int d = 0; d < c; ++d)
                if (piv[d] && ((piv[d] >> c) & 1)) piv[d] ^= piv[c];
    std::vector<int> basis;
    for (int f = 0; f < dim; ++f) {
        if (piv[f]) continue;
        int v = 1 << f;
        for (int c = 0; c < dim; ++c)
            if (piv[c] && ((piv[c] >> f) & 1)) v |= 1 << c;
        basis.push_back(v);
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

std::vector<char> span_membership(int dim, const std::vector<int>& basis) {
    std::vector<char> in(static_cast<size_t>(1) << dim, 0);
    in[0] = 1;
    for (int b : basis) {
        if (b <= 0 || b >= (1 << dim)) fail("InvalidParams", "basis vector out of range");
        std::vector<int> old;
        for (int v = 0; v < (1 << dim); ++v)
            if (in[v]) old.push_back(v);
        for (int v : old) in[v ^ b] = 1;
    }
    return in;
}

// tests the k-th derived form on all k-tuples of basis vectors; exact for
// f_k identically zero whenever f_{k+1} is already known to vanish
bool basis_tuples_vanish(const PowerMap& p, int k) {
    if (p.dim == 0) return true;
    std::vector<int> idx(k, 0), args(k);
    while (true) {
        for (int t = 0; t < k; ++t) args[t] = 1 << idx[t];
        if (derived_form(p, args)) return false;
        int t = 0;
        while (t < k && ++idx[t] == p.dim) idx[t++] = 0;
        if (t == k) return true;
    }
}

} // namespace

std::string to_text(const PowerMap& p) {
    require_power_map(p);
    std::string out = std::to_string(p.dim);
    out += '\n';
    for (uint8_t b : p.values) out += static_cast<char>('0' + b);
    out += '\n';
    return out;
}

PowerMap power_map_from_text(const std::string& text) {
    std::istringstream in(text);
    int dim = -1;
    std::string bits;
    if (!(in >> dim) || dim < 0 || dim > 20) fail("ParseError", "expected a dimension on line 1");
    if (!(in >> bits)) fail("ParseError", "expected a bit string on line 2");
    std::string rest;
    if (in >> rest) fail("ParseError", "trailing data after the bit string");
    if (bits.size() != (1u << dim))
        fail("ParseError", "expected " + std::to_string(1 << dim) + " bits, got " +
                               std::to_string(bits.size()));
    PowerMap p;
    p.dim = dim;
    p.values.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') fail("ParseError", "bit string may contain only 0 and 1");
        p.values.push_back(static_cast<uint8_t>(c - '0'));
    }
    require_power_map(p);
    return p;
}

std::optional<SymplecticData> symplectic_analyze(const LoopTable& L, int preferred_z) {
    const int n = L.size();
    std::vector<char> central(n, 0);
    for (int v : center(L)) central[v] = 1;
    for (int z = 1; z < n; ++z) {
        if (preferred_z >= 0 && z != preferred_z) continue;
        if (!central[z] || L.mul(z, z) != 0) continue;
        CosetPartition part;
        LoopTable Q = quotient(L, {0, z}, &part);
        if (!is_associative(Q) || !is_commutative(Q)) continue;
        bool exponent2 = true;
        for (int c = 0; c < Q.size() && exponent2; ++c)
            if (Q.mul(c, c) != 0) exponent2 = false;
        if (!exponent2) continue;

        const int q = Q.size();
        int dim = 0;
        while ((1 << dim) < q) ++dim;
        if ((1 << dim) != q) fail("Internal", "exponent-2 quotient of non-2-power order");

        // label cosets with vectors: each yet-unlabeled coset opens a new
        // basis direction and doubles the labeled span
        std::vector<int> label(q, -1);
        label[0] = 0;
        std::vector<int> labeled{0};
        int next_bit = 0;
        for (int c = 0; c < q; ++c) {
            if (label[c] != -1) continue;
            int bit = 1 << next_bit++;
            std::vector<int> snapshot = labeled;
            for (int d : snapshot) {
                int e = Q.mul(d, c);
                label[e] = label[d] | bit;
                labeled.push_back(e);
            }
        }
        if (next_bit != dim) fail("Internal", "coset labeling did not exhaust the quotient");
        for (int c1 = 0; c1 < q; ++c1)
            for (int c2 = 0; c2 < q; ++c2)
                if (label[Q.mul(c1, c2)] != (label[c1] ^ label[c2]))
                    fail("Internal", "coset labels do not respect the quotient product");

        SymplecticData sd(L);
        sd.z = z;
        sd.dim = dim;
        sd.coset_label.resize(n);
        for (int x = 0; x < n; ++x) sd.coset_label[x] = label[part.index_of[x]];
        sd.rep.assign(q, -1);
        for (int c = 0; c < q; ++c) sd.rep[label[c]] = part.cosets[c][0];

        sd.power.dim = dim;
        sd.power.values.assign(q, 0);
        for (int c = 0; c < q; ++c) {
            int bit = -1;
            for (int x : part.cosets[c]) {
                int s = L.mul(x, x);
                if (s != 0 && s != z) fail("Internal", "square leaves the central subloop");
                int b = (s == z) ? 1 : 0;
                if (bit == -1)
                    bit = b;
                else if (bit != b)
                    fail("Internal", "squaring map is not constant on cosets");
            }
            sd.power.values[label[c]] = static_cast<uint8_t>(bit);
        }

        sd.commutator_map.assign(static_cast<size_t>(q) * q, 0);
        for (int c1 = 0; c1 < q; ++c1)
            for (int c2 = 0; c2 < q; ++c2) {
                int bit = -1;
                for (int a : part.cosets[c1])
                    for (int b : part.cosets[c2]) {
                        int w = commutator(L, a, b);
                        if (w != 0 && w != z) fail("Internal", "commutator leaves the central subloop");
                        int v = (w == z) ? 1 : 0;
                        if (bit == -1)
                            bit = v;
                        else if (bit != v)
                            fail("Internal", "commutator map is not constant on cosets");
                    }
                sd.commutator_map[(static_cast<size_t>(label[c1]) << dim) | label[c2]] =
                    static_cast<uint8_t>(bit);
            }

        sd.associator_map.assign((static_cast<size_t>(q) << dim) << dim, 0);
        for (int c1 = 0; c1 < q; ++c1)
            for (int c2 = 0; c2 < q; ++c2)
                for (int c3 = 0; c3 < q; ++c3) {
                    int bit = -1;
                    for (int a : part.cosets[c1])
                        for (int b : part.cosets[c2])
                            for (int c : part.cosets[c3]) {
                                int w = associator(L, a, b, c);
                                if (w != 0 && w != z)
                                    fail("Internal", "associator leaves the central subloop");
                                int v = (w == z) ? 1 : 0;
                                if (bit == -1)
                                    bit = v;
                                else if (bit != v)
                                    fail("Internal", "associator map is not constant on cosets");
                            }
                    sd.associator_map[(((static_cast<size_t>(label[c1]) << dim) | label[c2]) << dim) |
                                      label[c3]] = static_cast<uint8_t>(bit);
                }
        return sd;
    }
    return std::nullopt;
}

int derived_form(const PowerMap& p, const std::vector<int>& args) {
    const int k = static_cast<int>(args.size());
    if (k < 1 || k > 20) fail("InvalidParams", "derived form arity out of range");
    for (int v : args)
        if (v < 0 || v >= (1 << p.dim)) fail("InvalidParams", "derived form argument out of range");
    int acc = 0;
    for (unsigned subset = 1; subset < (1u << k); ++subset) {
        int sum = 0;
        for (int t = 0; t < k; ++t)
            if ((subset >> t) & 1) sum ^= args[t];
        acc ^= p.values[sum];
    }
    return acc;
}

int cdeg(const PowerMap& p) {
    require_power_map(p);
    // the (dim+1)-th derived form vanishes outright: that many vectors are
    // always linearly dependent
    int level = p.dim + 1;
    while (level >= 2 && basis_tuples_vanish(p, level - 1)) --level;
    return level - 1;
}

std::vector<int> radical(const PowerMap& p) {
    int d = cdeg(p);
    if (d > 3) fail("CdegTooHigh", "combinatorial degree " + std::to_string(d) + " exceeds 3");
    std::vector<int> rows;
    for (int i = 0; i < p.dim; ++i)
        for (int j = i; j < p.dim; ++j) {
            int row = 0;
            for (int t = 0; t < p.dim; ++t)
                row |= derived_form(p, {1 << t, 1 << i, 1 << j}) << t;
            rows.push_back(row);
        }
    return nullspace_basis(p.dim, rows);
}

std::vector<int> quadratic_radical(const PowerMap& p) {
    int d = cdeg(p);
    if (d > 2) fail("CdegTooHigh", "combinatorial degree " + std::to_string(d) + " exceeds 2");
    std::vector<int> rows;
    for (int i = 0; i < p.dim; ++i) {
        int row = 0;
        for (int t = 0; t < p.dim; ++t) row |= derived_form(p, {1 << t, 1 << i}) << t;
        rows.push_back(row);
    }
    return nullspace_basis(p.dim, rows);
}

bool is_code_loop(const LoopTable& L) {
    bool mo = is_moufang(L);
    bool by_squares = mo && L.size() >= 2 && static_cast<int>(squares(L).size()) <= 2;
    bool by_maps = false;
    if (mo && L.size() >= 2) {
        if (std::optional<SymplecticData> sd = symplectic_analyze(L)) {
            if (cdeg(sd->power) <= 3) {
                by_maps = true;
                const int q = 1 << sd->dim;
                for (int u = 0; u < q && by_maps; ++u)
                    for (int v = 0; v < q && by_maps; ++v) {
                        if (sd->commutator_bit(u, v) != derived_form(sd->power, {u, v}))
                            by_maps = false;
                        for (int w = 0; w < q && by_maps; ++w)
                            if (sd->associator_bit(u, v, w) != derived_form(sd->power, {u, v, w}))
                                by_maps = false;
                    }
            }
        }
    }
    if (L.size() >= 2 && by_maps != by_squares) fail("Internal", "code-loop criteria disagree");
    return by_maps && by_squares;
}

PowerMap power_map_with(const SymplecticData& sd, const LoopTable& other) {
    if (other.size() != sd.loop.size())
        fail("InvalidParams", "table order does not match the analyzed loop");
    PowerMap p;
    p.dim = sd.dim;
    std::vector<int> bit(static_cast<size_t>(1) << sd.dim, -1);
    for (int x = 0; x < other.size(); ++x) {
        int s = other.mul(x, x);
        if (s != 0 && s != sd.z)
            fail("InvalidParams", "squares of the other table leave the central subloop");
        int b = (s == sd.z) ? 1 : 0;
        int v = sd.coset_label[x];
        if (bit[v] == -1)
            bit[v] = b;
        else if (bit[v] != b)
            fail("InvalidParams", "squaring map of the other table is not constant on cosets");
    }
    p.values.reserve(bit.size());
    for (int b : bit) {
        if (b == -1) fail("Internal", "coset labels do not cover the space");
        p.values.push_back(static_cast<uint8_t>(b));
    }
    return p;
}

namespace {

PowerMapDelta power_delta_core(const LoopTable& L, const LoopTable& modified, int h,
                               const LoopTable& applied) {
    if (!is_code_loop(L)) fail("NotApplicable", "original table is not a code loop");
    std::optional<SymplecticData> sd = symplectic_analyze(L);
    if (h != sd->z) fail("NotApplicable", "h is not the central involution");
    if (!applied.same_cells(modified))
        fail("InvalidParams", "modified table does not match the parameters");
    PowerMap star = power_map_with(*sd, modified);
    PowerMapDelta out;
    out.delta.dim = sd->dim;
    out.delta.values.resize(star.values.size());
    for (size_t v = 0; v < star.values.size(); ++v)
        out.delta.values[v] = sd->power.values[v] ^ star.values[v];
    out.degree = cdeg(out.delta);
    if (out.degree <= 2) out.quad_radical = quadratic_radical(out.delta);
    return out;
}

} // namespace

PowerMapDelta power_delta(const LoopTable& L, const LoopTable& modified, const CyclicParams& p) {
    if (!p.loop.same_cells(L)) fail("InvalidParams", "parameters belong to a different table");
    return power_delta_core(L, modified, p.h, apply_cyclic(p));
}

PowerMapDelta power_delta(const LoopTable& L, const LoopTable& modified, const DihedralParams& p) {
    if (!p.loop.same_cells(L)) fail("InvalidParams", "parameters belong to a different table");
    return power_delta_core(L, modified, p.h, apply_dihedral(p));
}

std::vector<CodePathStep> plan_code_path(const PowerMap& from, const PowerMap& to) {
    require_power_map(from);
    require_power_map(to);
    if (from.dim != to.dim) fail("InvalidParams", "power maps live on different spaces");
    const int k = from.dim;
    const int nv = 1 << k;

    PowerMap diff;
    diff.dim = k;
    diff.values.resize(nv);
    for (int v = 0; v < nv; ++v) diff.values[v] = from.values[v] ^ to.values[v];
    int deg = cdeg(diff);
    if (deg > 2)
        fail("DeltaNotQuadratic",
             "squaring maps differ by a form of degree " + std::to_string(deg));

    // Gram matrix of the difference's bilinear polarization
    std::vector<std::vector<uint8_t>> g(k, std::vector<uint8_t>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) g[i][j] = static_cast<uint8_t>(derived_form(diff, {1 << i, 1 << j}));

    std::vector<CodePathStep> steps;
    std::vector<uint8_t> emitted(nv, 0); // XOR of step deltas so far
    while (true) {
        int bi = -1, bj = -1;
        for (int i = 0; i < k && bi < 0; ++i)
            for (int j = i + 1; j < k; ++j)
                if (g[i][j]) {
                    bi = i;
                    bj = j;
                    break;
                }
        if (bi < 0) break;
        int ci = 0, cj = 0; // column functionals of the hyperbolic pair
        for (int t = 0; t < k; ++t) {
            ci |= g[t][bi] << t;
            cj |= g[t][bj] << t;
        }
        CodePathStep st;
        st.dihedral = true;
        st.u1 = 1 << bi;
        st.u2 = 1 << bj;
        st.fixed_space = nullspace_basis(k, {ci, cj});
        st.delta.dim = k;
        st.delta.values.resize(nv);
        for (int x = 0; x < nv; ++x)
            st.delta.values[x] =
                static_cast<uint8_t>(parity_of(x & ci) & parity_of(x & cj));
        for (int x = 0; x < nv; ++x) emitted[x] ^= st.delta.values[x];
        steps.push_back(std::move(st));
        // split the plane off the Gram matrix
        std::vector<std::vector<uint8_t>> ng(k, std::vector<uint8_t>(k));
        for (int s = 0; s < k; ++s)
            for (int t = 0; t < k; ++t)
                ng[s][t] = g[s][t] ^ (g[s][bj] & g[t][bi]) ^ (g[s][bi] & g[t][bj]);
        g.swap(ng);
    }

    PowerMap rho;
    rho.dim = k;
    rho.values.resize(nv);
    bool nonzero = false;
    for (int x = 0; x < nv; ++x) {
        rho.values[x] = diff.values[x] ^ emitted[x];
        if (rho.values[x]) nonzero = true;
    }
    if (cdeg(rho) > 1) fail("Internal", "residual squaring change is not linear");
    if (nonzero) {
        int cr = 0;
        for (int t = 0; t < k; ++t) cr |= rho.values[1 << t] << t;
        CodePathStep st;
        st.dihedral = false;
        st.fixed_space = nullspace_basis(k, {cr});
        st.delta = rho;
        for (int x = 0; x < nv; ++x) emitted[x] ^= st.delta.values[x];
        steps.push_back(std::move(st));
    }
    for (int x = 0; x < nv; ++x)
        if (emitted[x] != diff.values[x]) fail("Internal", "step deltas do not sum to the difference");
    return steps;
}

namespace {

// incremental F2 elimination with wide rows
struct Eliminator {
    int vars, words;
    std::vector<std::vector<uint64_t>> rows; // echelon rows, lowest set bit is the pivot
    std::vector<uint8_t> rhs;
    std::vector<int> row_of_col;

    explicit Eliminator(int v) : vars(v), words((v + 63) / 64), row_of_col(v, -1) {}

    static int lowest_bit(const std::vector<uint64_t>& r, int words) {
        for (int w = 0; w < words; ++w)
            if (r[w]) return w * 64 + std::countr_zero(r[w]);
        return -1;
    }

    bool add(std::vector<uint64_t> r, int b) {
        while (true) {
            int c = lowest_bit(r, words);
            if (c < 0) return b == 0;
            int i = row_of_col[c];
            if (i < 0) {
                row_of_col[c] = static_cast<int>(rows.size());
                rows.push_back(std::move(r));
                rhs.push_back(static_cast<uint8_t>(b));
                return true;
            }
            for (int w = 0; w < words; ++w) r[w] ^= rows[i][w];
            b ^= rhs[i];
        }
    }

    // free variables are zero; echelon rows never have set bits below their pivot
    std::vector<uint8_t> solve() const {
        std::vector<uint8_t> x(vars, 0);
        for (int c = vars - 1; c >= 0; --c) {
            int i = row_of_col[c];
            if (i < 0) continue;
            int acc = rhs[i];
            for (int t = c + 1; t < vars; ++t)
                if ((rows[i][t / 64] >> (t % 64)) & 1) acc ^= x[t];
            x[c] = static_cast<uint8_t>(acc);
        }
        return x;
    }
};

} // namespace

LoopTable build_code_loop(const PowerMap& p) {
    require_power_map(p);
    if (p.dim > 5) fail("InvalidParams", "dimension capped at 5");
    int d = cdeg(p);
    if (d > 3) fail("CdegTooHigh", "combinatorial degree " + std::to_string(d) + " exceeds 3");
    const int k = p.dim;
    const int nv = 1 << k;
    const int vars = nv * nv; // one bit per factor-table cell
    Eliminator el(vars);
    const int words = el.words;
    auto var = [nv](int u, int v) { return u * nv + v; };
    auto single = [&](int c) {
        std::vector<uint64_t> r(words, 0);
        r[c / 64] |= 1ull << (c % 64);
        return r;
    };
    auto push = [&](std::vector<uint64_t> r, int b) {
        if (!el.add(std::move(r), b)) fail("ConstructionFailed", "factor-table system is inconsistent");
    };

    for (int v = 0; v < nv; ++v) {
        push(single(var(0, v)), 0);
        if (!v) continue;
        push(single(var(v, 0)), 0);
        push(single(var(v, v)), p.values[v]); // squares realize the power map
    }
    for (int u = 1; u < nv; ++u)
        for (int v = u + 1; v < nv; ++v) {
            std::vector<uint64_t> r(words, 0);
            r[var(u, v) / 64] ^= 1ull << (var(u, v) % 64);
            r[var(v, u) / 64] ^= 1ull << (var(v, u) % 64);
            push(std::move(r), derived_form(p, {u, v})); // commutators realize the second form
        }
    for (int u = 0; u < nv; ++u)
        for (int v = 0; v < nv; ++v)
            for (int w = 0; w < nv; ++w) {
                std::vector<uint64_t> r(words, 0);
                for (int c : {var(u, v), var(u ^ v, w), var(v, w), var(u, v ^ w)})
                    r[c / 64] ^= 1ull << (c % 64);
                push(std::move(r), derived_form(p, {u, v, w})); // associators realize the third form
            }

    std::vector<uint8_t> eta = el.solve();
    const int n = 2 * nv;
    std::vector<int> cells(static_cast<size_t>(n) * n);
    for (int u = 0; u < nv; ++u)
        for (int a = 0; a < 2; ++a)
            for (int v = 0; v < nv; ++v)
                for (int b = 0; b < 2; ++b)
                    cells[static_cast<size_t>((u << 1) | a) * n + ((v << 1) | b)] =
                        ((u ^ v) << 1) | (a ^ b ^ eta[var(u, v)]);
    LoopTable out = LoopTable::from_grid(n, std::move(cells));

    if (!is_code_loop(out)) fail("Internal", "constructed table is not a code loop");
    std::optional<SymplecticData> sd = symplectic_analyze(out, 1);
    if (!sd || sd->dim != k || sd->power.values != p.values)
        fail("Internal", "constructed table does not realize the power map");
    return out;
}

std::vector<LoopTable> run_code_path(const SymplecticData& start,
                                     const std::vector<CodePathStep>& steps) {
    if (!is_code_loop(start.loop)) fail("InvalidParams", "path must start at a code loop");
    const int k = start.dim;
    LoopTable cur = start.loop;
    PowerMap pcur = start.power;
    std::vector<LoopTable> out;
    auto members_text = [&](const std::vector<char>& in_span) {
        std::string s = "S=";
        bool first = true;
        for (int x = 0; x < cur.size(); ++x) {
            if (!in_span[start.coset_label[x]]) continue;
            if (!first) s += ',';
            s += std::to_string(x);
            first = false;
        }
        return s;
    };
    for (const CodePathStep& st : steps) {
        if (st.delta.dim != k) fail("InvalidParams", "step lives on a different space");
        std::vector<char> in_span = span_membership(k, st.fixed_space);
        if (!st.dihedral) {
            int alpha = -1;
            for (int x = 0; x < cur.size() && alpha < 0; ++x)
                if (!in_span[start.coset_label[x]]) alpha = x;
            if (alpha < 0) fail("InvalidParams", "cyclic step fixes the whole space");
            std::string text = members_text(in_span) + ";alpha=" + std::to_string(alpha) +
                               ";h=" + std::to_string(start.z);
            cur = apply_cyclic(cyclic_params_from_text(cur, text));
        } else {
            int beta = -1, gamma = -1;
            for (int x = 0; x < cur.size(); ++x) {
                int lbl = start.coset_label[x];
                if (beta < 0 && in_span[lbl ^ st.u1]) beta = x;
                if (gamma < 0 && in_span[lbl ^ st.u2]) gamma = x;
            }
            if (beta < 0 || gamma < 0) fail("InvalidParams", "hyperbolic pair lies inside the fixed space");
            std::string text = members_text(in_span) + ";beta=" + std::to_string(beta) +
                               ";gamma=" + std::to_string(gamma) + ";h=" + std::to_string(start.z);
            cur = apply_dihedral(dihedral_params_from_text(cur, text));
        }
        PowerMap pnew = power_map_with(start, cur);
        for (int v = 0; v < (1 << k); ++v)
            if (pnew.values[v] != (pcur.values[v] ^ st.delta.values[v]))
                fail("Internal", "step changed the squaring map by the wrong delta");
        pcur = std::move(pnew);
        out.push_back(cur);
    }
    return out;
}

TrilinearForm associator_form(const SymplecticData& sd) {
    TrilinearForm f;
    f.dim = sd.dim;
    f.values = sd.associator_map;
    return f;
}

TrilinearForm third_derived_form(const PowerMap& p) {
    int d = cdeg(p);
    if (d > 3) fail("CdegTooHigh", "combinatorial degree " + std::to_string(d) + " exceeds 3");
    const int nv = 1 << p.dim;
    TrilinearForm f;
    f.dim = p.dim;
    f.values.resize((static_cast<size_t>(nv) << p.dim) << p.dim);
    for (int u = 0; u < nv; ++u)
        for (int v = 0; v < nv; ++v)
            for (int w = 0; w < nv; ++w)
                f.values[(((static_cast<size_t>(u) << p.dim) | v) << p.dim) | w] =
                    static_cast<uint8_t>(derived_form(p, {u, v, w}));
    return f;
}

namespace {

void require_trilinear(const TrilinearForm& f) {
    const int nv = 1 << f.dim;
    if (f.values.size() != (static_cast<size_t>(nv) << f.dim) << f.dim)
        fail("InvalidParams", "form table has the wrong size");
    for (int u = 0; u < nv; ++u)
        for (int v = 0; v < nv; ++v)
            for (int w = 0; w < nv; ++w) {
                int acc = 0;
                for (int i = 0; i < f.dim; ++i)
                    if ((u >> i) & 1)
                        for (int j = 0; j < f.dim; ++j)
                            if ((v >> j) & 1)
                                for (int l = 0; l < f.dim; ++l)
                                    if ((w >> l) & 1) acc ^= f.at(1 << i, 1 << j, 1 << l);
                if (acc != f.at(u, v, w)) fail("InvalidParams", "form is not trilinear");
            }
}

long long slice_weight(const TrilinearForm& f, int v) {
    const int nv = 1 << f.dim;
    long long c = 0;
    for (int y = 0; y < nv; ++y)
        for (int z = 0; z < nv; ++z) c += f.at(v, y, z);
    return c;
}

bool extend_form_map(const TrilinearForm& f, const TrilinearForm& g,
                     const std::vector<long long>& weight_f, const std::vector<long long>& weight_g,
                     std::vector<int>& img, std::vector<char>& in_span) {
    const int t = static_cast<int>(img.size());
    if (t == f.dim) return true;
    const int nv = 1 << f.dim;
    for (int cand = 1; cand < nv; ++cand) {
        if (in_span[cand]) continue;
        if (weight_f[cand] != weight_g[1 << t]) continue;
        bool ok = true;
        for (int i = 0; i <= t && ok; ++i)
            for (int j = 0; j <= t && ok; ++j)
                for (int l = 0; l <= t && ok; ++l) {
                    if (i != t && j != t && l != t) continue;
                    int a = (i == t) ? cand : img[i];
                    int b = (j == t) ? cand : img[j];
                    int c = (l == t) ? cand : img[l];
                    if (f.at(a, b, c) != g.at(1 << i, 1 << j, 1 << l)) ok = false;
                }
        if (!ok) continue;
        img.push_back(cand);
        std::vector<int> added;
        for (int v = 0; v < nv; ++v)
            if (in_span[v] && !in_span[v ^ cand]) {
                in_span[v ^ cand] = 1;
                added.push_back(v ^ cand);
            }
        if (extend_form_map(f, g, weight_f, weight_g, img, in_span)) return true;
        img.pop_back();
        for (int v : added) in_span[v] = 0;
    }
    return false;
}

} // namespace

std::vector<int> form_radical(const TrilinearForm& f) {
    require_trilinear(f);
    const int nv = 1 << f.dim;
    std::vector<int> members;
    for (int v = 0; v < nv; ++v) {
        bool zero = true;
        for (int y = 0; y < nv && zero; ++y)
            for (int z = 0; z < nv && zero; ++z)
                if (f.at(v, y, z)) zero = false;
        if (zero && v) members.push_back(v);
    }
    // trilinearity makes the zero-slice set a subspace; extract a basis
    std::vector<int> basis;
    std::vector<char> span = span_membership(f.dim, {});
    for (int v : members)
        if (!span[v]) {
            basis.push_back(v);
            span = span_membership(f.dim, basis);
        }
    if ((1u << basis.size()) != members.size() + 1)
        fail("Internal", "zero slices do not form a subspace");
    return basis;
}

bool forms_equivalent(const TrilinearForm& f, const TrilinearForm& g) {
    if (f.dim != g.dim) return false;
    require_trilinear(f);
    require_trilinear(g);
    const int nv = 1 << f.dim;
    std::vector<long long> wf(nv), wg(nv);
    for (int v = 0; v < nv; ++v) {
        wf[v] = slice_weight(f, v);
        wg[v] = slice_weight(g, v);
    }
    std::vector<long long> mf = wf, mg = wg;
    std::sort(mf.begin(), mf.end());
    std::sort(mg.begin(), mg.end());
    if (mf != mg) return false;
    std::vector<int> img;
    std::vector<char> in_span = span_membership(f.dim, {});
    return extend_form_map(f, g, wf, wg, img, in_span);
}

} // namespace moufang
