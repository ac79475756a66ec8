#include "moufang/constructions.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "moufang/sigma.hpp"

namespace moufang {

namespace {

// x commutes and associates (all three slots) with everything
bool is_central_element(const LoopTable& L, int x) {
    int n = L.size();
    for (int y = 0; y < n; ++y)
        if (L.mul(x, y) != L.mul(y, x)) return false;
    for (int y = 0; y < n; ++y) {
        int xy = L.mul(x, y);
        int yx = L.mul(y, x);
        for (int z = 0; z < n; ++z)
            if (L.mul(xy, z) != L.mul(x, L.mul(y, z)) ||
                L.mul(yx, z) != L.mul(y, L.mul(x, z)) ||
                L.mul(L.mul(y, z), x) != L.mul(y, L.mul(z, x)))
                return false;
    }
    return true;
}

bool is_nuclear_element(const LoopTable& L, int x) {
    int n = L.size();
    for (int y = 0; y < n; ++y) {
        int xy = L.mul(x, y);
        int yx = L.mul(y, x);
        for (int z = 0; z < n; ++z)
            if (L.mul(xy, z) != L.mul(x, L.mul(y, z)) ||
                L.mul(yx, z) != L.mul(y, L.mul(x, z)) ||
                L.mul(L.mul(y, z), x) != L.mul(y, L.mul(z, x)))
                return false;
    }
    return true;
}

// window exponent for the k-th power, k in 0..2m-1
int window_exponent(int k, int m) { return k <= m ? k : k - 2 * m; }

// coset -> exponent map for a generator of a cyclic quotient of order 2m;
// entry for non-power cosets (dihedral case) stays -big
std::vector<int> power_exponents(const LoopTable& Q, int alpha, int m) {
    std::vector<int> exp(Q.size(), INT32_MIN);
    int c = 0;
    for (int k = 0; k < 2 * m; ++k) {
        exp[c] = window_exponent(k, m);
        c = Q.mul(alpha, c);
    }
    return exp;
}

LoopTable raw_apply_cyclic(const CyclicParams& p) {
    const LoopTable& L = p.loop;
    int n = L.size();
    int hinv = L.ldiv(p.h, 0);
    std::vector<int> cells(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int t = L.mul(x, y);
            int s = carry(p.m, p.exponent[x] + p.exponent[y]);
            if (s) t = L.mul(t, s > 0 ? p.h : hinv);
            cells[x * n + y] = t;
        }
    return LoopTable::from_grid(n, std::move(cells));
}

LoopTable raw_apply_dihedral(const DihedralParams& p) {
    const LoopTable& L = p.loop;
    int n = L.size();
    int hinv = L.ldiv(p.h, 0);
    std::vector<int> cells(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int t = L.mul(x, y);
            int s = carry(p.m, p.left_exp[x] + p.right_exp[y]);
            if (p.parity[y]) s = -s;
            if (s) t = L.mul(t, s > 0 ? p.h : hinv);
            cells[x * n + y] = t;
        }
    return LoopTable::from_grid(n, std::move(cells));
}

void require(bool ok, const std::string& why) {
    if (!ok) fail("InvalidParams", why);
}

} // namespace

void validate(const CyclicParams& p) {
    const LoopTable& L = p.loop;
    int n = L.size();
    require(p.m >= 1, "window half-size must be >= 1");
    require((int)p.exponent.size() == n, "exponent array size mismatch");
    require(is_subloop(L, p.subloop), "S is not a subloop");
    require(is_normal(L, p.subloop), "S is not normal");
    require(n == (int)p.subloop.size() * 2 * p.m, "quotient order is not 2m");

    // the exponent map must be a homomorphism onto the window group with
    // kernel S and alpha_rep at exponent 1
    std::vector<char> in_s(n, 0);
    for (int s : p.subloop) in_s[s] = 1;
    Window w(p.m);
    for (int x = 0; x < n; ++x) {
        require(w.contains(p.exponent[x]), "exponent outside window");
        require((p.exponent[x] == 0) == (bool)in_s[x], "exponent kernel differs from S");
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            require(p.exponent[L.mul(x, y)] == w.add(p.exponent[x], p.exponent[y]),
                    "exponent map is not a homomorphism");
    if (p.m > 1) {
        // exponents must exhaust the window, i.e. the quotient is cyclic
        std::vector<char> seen(2 * p.m, 0);
        for (int x = 0; x < n; ++x) seen[(p.exponent[x] + 2 * p.m) % (2 * p.m)] = 1;
        require(std::all_of(seen.begin(), seen.end(), [](char c) { return c; }),
                "quotient is not generated by alpha");
    }
    require(p.alpha_rep >= 0 && p.alpha_rep < n && p.exponent[p.alpha_rep] == 1,
            "alpha_rep is not in the exponent-1 coset");
    require(p.h > 0 && p.h < n && in_s[p.h], "h must be a nonidentity element of S");
    require(is_central_element(L, p.h), "h is not central");
}

void validate(const DihedralParams& p) {
    const LoopTable& L = p.loop;
    int n = L.size();
    require(p.m >= 1, "window half-size must be >= 1");
    require((int)p.left_exp.size() == n && (int)p.right_exp.size() == n &&
                (int)p.parity.size() == n,
            "index array size mismatch");
    require(is_subloop(L, p.subloop), "S is not a subloop");
    require(is_normal(L, p.subloop), "S is not normal");
    require(n == (int)p.subloop.size() * 4 * p.m, "quotient order is not 4m");

    CosetPartition part;
    LoopTable Q = quotient(L, p.subloop, &part);
    require(is_associative(Q), "quotient is not a group");
    int b = part.index_of[p.beta_rep], g = part.index_of[p.gamma_rep];
    require(b != 0 && Q.mul(b, b) == 0, "beta is not an involution");
    require(g != 0 && Q.mul(g, g) == 0, "gamma is not an involution");
    int alpha = Q.mul(b, g);
    require(element_order(Q, alpha) == 2 * p.m, "beta*gamma does not have order 2m");

    std::vector<int> exp = power_exponents(Q, alpha, p.m);
    Window w(p.m);
    for (int x = 0; x < n; ++x) {
        int c = part.index_of[x];
        if (exp[c] != INT32_MIN) {
            require(!p.parity[x], "parity wrong on a power coset");
            require(p.left_exp[x] == exp[c] && p.right_exp[x] == exp[c],
                    "exponent wrong on a power coset");
        } else {
            require(p.parity[x] == 1, "parity wrong off the power cosets");
            require(w.contains(p.left_exp[x]) && w.contains(p.right_exp[x]),
                    "exponent outside window");
            int i = p.left_exp[x], j = p.right_exp[x];
            // c = beta*alpha^i and c = alpha^j*gamma
            int ci = 0, cj = 0;
            for (int q = 0; q < Q.size(); ++q) {
                if (exp[q] == i) ci = q;
                if (exp[q] == j) cj = q;
            }
            require(Q.mul(b, ci) == c, "left exponent does not reproduce the coset");
            require(Q.mul(cj, g) == c, "right exponent does not reproduce the coset");
        }
    }

    std::vector<char> in_s(n, 0);
    for (int s : p.subloop) in_s[s] = 1;
    require(p.h > 0 && p.h < n && in_s[p.h], "h must be a nonidentity element of S");
    require(is_nuclear_element(L, p.h), "h is not nuclear");
    // h central in the preimage of <alpha>
    {
        std::vector<int> g0;
        for (int x = 0; x < n; ++x)
            if (!p.parity[x]) g0.push_back(x);
        LoopTable G0 = restrict_to(L, g0);
        int hh = (int)(std::lower_bound(g0.begin(), g0.end(), p.h) - g0.begin());
        require(hh < (int)g0.size() && g0[hh] == p.h, "h is outside the power-coset preimage");
        require(is_central_element(G0, hh), "h is not central in the power-coset preimage");
    }
    for (int x = 0; x < n; ++x)
        if (p.parity[x])
            require(L.mul(L.mul(p.h, x), p.h) == x, "hxh != x off the power cosets");
}

namespace {

template <typename P>
std::vector<P> dedupe_by_table(std::vector<P> params, LoopTable (*raw)(const P&)) {
    std::vector<P> keep;
    std::map<std::vector<int>, int> seen;
    for (auto& p : params) {
        LoopTable t = raw(p);
        if (seen.emplace(t.cells(), 1).second) keep.push_back(std::move(p));
    }
    return keep;
}

} // namespace

std::vector<CyclicParams> find_cyclic_params(const LoopTable& L, bool dedupe) {
    int n = L.size();
    std::vector<int> central;
    for (int x = 1; x < n; ++x)
        if (is_central_element(L, x)) central.push_back(x);

    std::vector<CyclicParams> out;
    for (const auto& S : enumerate_subloops(L)) {
        int q = n / (int)S.size();
        if (q < 2 || q % 2 || n % (int)S.size()) continue;
        std::vector<int> hs;
        for (int z : central)
            if (std::binary_search(S.begin(), S.end(), z)) hs.push_back(z);
        if (hs.empty() || !is_normal(L, S)) continue;
        CosetPartition part;
        LoopTable Q = quotient(L, S, &part);
        if (!is_associative(Q)) continue;
        int m = q / 2;
        for (int a = 1; a < q; ++a) {
            if (element_order(Q, a) != q) continue;
            std::vector<int> exp = power_exponents(Q, a, m);
            CyclicParams p(L);
            p.subloop = S;
            p.m = m;
            p.alpha_rep = part.cosets[a][0];
            p.exponent.resize(n);
            for (int x = 0; x < n; ++x) p.exponent[x] = exp[part.index_of[x]];
            for (int h : hs) {
                p.h = h;
                out.push_back(p);
            }
        }
    }
    if (dedupe) out = dedupe_by_table(std::move(out), raw_apply_cyclic);
    return out;
}

std::vector<DihedralParams> find_dihedral_params(const LoopTable& L, bool dedupe) {
    int n = L.size();
    std::vector<int> nuclear;
    for (int x = 1; x < n; ++x)
        if (is_nuclear_element(L, x)) nuclear.push_back(x);

    std::vector<DihedralParams> out;
    for (const auto& S : enumerate_subloops(L)) {
        int q = n / (int)S.size();
        if (q < 4 || q % 4 || n % (int)S.size()) continue;
        std::vector<int> hs;
        for (int z : nuclear)
            if (std::binary_search(S.begin(), S.end(), z)) hs.push_back(z);
        if (hs.empty() || !is_normal(L, S)) continue;
        CosetPartition part;
        LoopTable Q = quotient(L, S, &part);
        if (!is_associative(Q)) continue;
        int m = q / 4;

        std::vector<int> invol;
        for (int x = 1; x < q; ++x)
            if (Q.mul(x, x) == 0) invol.push_back(x);

        for (int b : invol)
            for (int g : invol) {
                if (b == g) continue;
                int alpha = Q.mul(b, g);
                if (element_order(Q, alpha) != 2 * m) continue;
                std::vector<int> exp = power_exponents(Q, alpha, m);
                if (exp[b] != INT32_MIN) continue; // beta inside <alpha>

                DihedralParams p(L);
                p.subloop = S;
                p.m = m;
                p.beta_rep = part.cosets[b][0];
                p.gamma_rep = part.cosets[g][0];
                p.left_exp.assign(n, 0);
                p.right_exp.assign(n, 0);
                p.parity.assign(n, 0);
                // coset-level indexes first
                std::vector<int> lc(q), rc(q), pc(q, 0);
                bool ok = true;
                for (int c = 0; c < q && ok; ++c) {
                    if (exp[c] != INT32_MIN) {
                        lc[c] = rc[c] = exp[c];
                        continue;
                    }
                    pc[c] = 1;
                    lc[c] = rc[c] = INT32_MIN;
                    for (int cc = 0; cc < q; ++cc) {
                        if (exp[cc] == INT32_MIN) continue;
                        if (Q.mul(b, cc) == c) lc[c] = exp[cc];
                        if (Q.mul(cc, g) == c) rc[c] = exp[cc];
                    }
                    ok = lc[c] != INT32_MIN && rc[c] != INT32_MIN;
                }
                if (!ok) continue; // quotient is not split by beta,gamma
                for (int x = 0; x < n; ++x) {
                    int c = part.index_of[x];
                    p.left_exp[x] = lc[c];
                    p.right_exp[x] = rc[c];
                    p.parity[x] = (uint8_t)pc[c];
                }

                // h must also centralize the power-coset preimage and be
                // inverted when conjugating the rest
                std::vector<int> g0;
                for (int x = 0; x < n; ++x)
                    if (!p.parity[x]) g0.push_back(x);
                LoopTable G0 = restrict_to(L, g0);
                for (int h : hs) {
                    int hh = (int)(std::lower_bound(g0.begin(), g0.end(), h) - g0.begin());
                    if (hh >= (int)g0.size() || g0[hh] != h) continue;
                    if (!is_central_element(G0, hh)) continue;
                    bool flips = true;
                    for (int x = 0; x < n && flips; ++x)
                        if (p.parity[x]) flips = L.mul(L.mul(h, x), h) == x;
                    if (!flips) continue;
                    p.h = h;
                    out.push_back(p);
                }
            }
    }
    if (dedupe) out = dedupe_by_table(std::move(out), raw_apply_dihedral);
    return out;
}

LoopTable apply_cyclic(const CyclicParams& p) {
    validate(p);
    if (!is_moufang(p.loop)) fail("InvalidParams", "input table is not Moufang");
    return raw_apply_cyclic(p);
}

LoopTable apply_dihedral(const DihedralParams& p) {
    validate(p);
    if (!is_moufang(p.loop)) fail("InvalidParams", "input table is not Moufang");
    return raw_apply_dihedral(p);
}

long long table_distance(const LoopTable& a, const LoopTable& b) {
    if (a.size() != b.size()) fail("OrderMismatch", "tables have different orders");
    long long d = 0;
    const auto& ca = a.cells();
    const auto& cb = b.cells();
    for (size_t i = 0; i < ca.size(); ++i)
        if (ca[i] != cb[i]) ++d;
    return d;
}

namespace {

std::string join_members(const std::vector<int>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    return os.str();
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ';')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) fail("ParseError", "expected key=value in '" + item + "'");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

int parse_elem(const std::string& s, int n, const std::string& what) {
    try {
        size_t pos;
        int v = std::stoi(s, &pos);
        if (pos != s.size() || v < 0 || v >= n) throw std::invalid_argument("range");
        return v;
    } catch (...) {
        fail("ParseError", "bad " + what + " '" + s + "'");
    }
}

std::vector<int> parse_members(const std::string& s, int n) {
    std::vector<int> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_elem(item, n, "member"));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::string to_text(const CyclicParams& p) {
    return "S=" + join_members(p.subloop) + ";alpha=" + std::to_string(p.alpha_rep) +
           ";h=" + std::to_string(p.h);
}

std::string to_text(const DihedralParams& p) {
    return "S=" + join_members(p.subloop) + ";beta=" + std::to_string(p.beta_rep) +
           ";gamma=" + std::to_string(p.gamma_rep) + ";h=" + std::to_string(p.h);
}

CyclicParams cyclic_params_from_text(const LoopTable& L, const std::string& text) {
    auto kv = parse_kv(text);
    if (!kv.count("S") || !kv.count("alpha") || !kv.count("h"))
        fail("ParseError", "cyclic parameters need S, alpha, h");
    int n = L.size();
    CyclicParams p(L);
    p.subloop = parse_members(kv["S"], n);
    p.alpha_rep = parse_elem(kv["alpha"], n, "alpha");
    p.h = parse_elem(kv["h"], n, "h");
    if (!is_subloop(L, p.subloop) || !is_normal(L, p.subloop))
        fail("InvalidParams", "S is not a normal subloop");
    CosetPartition part;
    LoopTable Q = quotient(L, p.subloop, &part);
    if (Q.size() % 2 || Q.size() < 2) fail("InvalidParams", "quotient order is not even");
    p.m = Q.size() / 2;
    int a = part.index_of[p.alpha_rep];
    if (element_order(Q, a) != Q.size())
        fail("InvalidParams", "alpha does not generate the quotient");
    std::vector<int> exp = power_exponents(Q, a, p.m);
    p.exponent.resize(n);
    for (int x = 0; x < n; ++x) p.exponent[x] = exp[part.index_of[x]];
    validate(p);
    return p;
}

DihedralParams dihedral_params_from_text(const LoopTable& L, const std::string& text) {
    auto kv = parse_kv(text);
    if (!kv.count("S") || !kv.count("beta") || !kv.count("gamma") || !kv.count("h"))
        fail("ParseError", "dihedral parameters need S, beta, gamma, h");
    int n = L.size();
    DihedralParams p(L);
    p.subloop = parse_members(kv["S"], n);
    p.beta_rep = parse_elem(kv["beta"], n, "beta");
    p.gamma_rep = parse_elem(kv["gamma"], n, "gamma");
    p.h = parse_elem(kv["h"], n, "h");
    if (!is_subloop(L, p.subloop) || !is_normal(L, p.subloop))
        fail("InvalidParams", "S is not a normal subloop");
    CosetPartition part;
    LoopTable Q = quotient(L, p.subloop, &part);
    if (Q.size() % 4 || Q.size() < 4) fail("InvalidParams", "quotient order is not 4m");
    p.m = Q.size() / 4;
    int b = part.index_of[p.beta_rep], g = part.index_of[p.gamma_rep];
    if (b == 0 || Q.mul(b, b) != 0 || g == 0 || Q.mul(g, g) != 0)
        fail("InvalidParams", "beta and gamma must be involutions of the quotient");
    int alpha = Q.mul(b, g);
    if (element_order(Q, alpha) != 2 * p.m)
        fail("InvalidParams", "beta*gamma does not have order 2m");
    std::vector<int> exp = power_exponents(Q, alpha, p.m);
    p.left_exp.assign(n, 0);
    p.right_exp.assign(n, 0);
    p.parity.assign(n, 0);
    for (int x = 0; x < n; ++x) {
        int c = part.index_of[x];
        if (exp[c] != INT32_MIN) {
            p.left_exp[x] = p.right_exp[x] = exp[c];
            continue;
        }
        p.parity[x] = 1;
        int le = INT32_MIN, re = INT32_MIN;
        for (int cc = 0; cc < Q.size(); ++cc) {
            if (exp[cc] == INT32_MIN) continue;
            if (Q.mul(b, cc) == c) le = exp[cc];
            if (Q.mul(cc, g) == c) re = exp[cc];
        }
        if (le == INT32_MIN || re == INT32_MIN)
            fail("InvalidParams", "beta,gamma do not split the quotient");
        p.left_exp[x] = le;
        p.right_exp[x] = re;
    }
    validate(p);
    return p;
}

} // namespace moufang
