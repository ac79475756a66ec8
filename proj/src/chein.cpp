#include "moufang/chein.hpp"

#include <algorithm>
#include <string>

#include "moufang/errors.hpp"

namespace moufang {

CheinDouble mg2(const LoopTable& group) {
    if (!is_associative(group)) fail("NotAGroup", "doubling requires an associative table");
    const int n = group.size();
    const int N = 2 * n;
    std::vector<int> cells(static_cast<size_t>(N) * N);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int yi = group.inv(y);
            cells[static_cast<size_t>(x) * N + y] = group.mul(x, y);
            cells[static_cast<size_t>(x) * N + (y + n)] = group.mul(y, x) + n;
            cells[static_cast<size_t>(x + n) * N + y] = group.mul(x, yi) + n;
            cells[static_cast<size_t>(x + n) * N + (y + n)] = group.mul(yi, x);
        }
    return CheinDouble{group, LoopTable::from_grid(N, std::move(cells))};
}

void validate(const AntiAutomorphismData& d) {
    const LoopTable& G = d.base;
    const int n = G.size();
    if (!is_associative(G)) fail("InvalidData", "base table is not a group");
    if (static_cast<int>(d.theta.size()) != n)
        fail("InvalidData", "theta has " + std::to_string(d.theta.size()) + " entries, expected " +
                                std::to_string(n));
    std::vector<char> seen(n, 0);
    for (int v : d.theta) {
        if (v < 0 || v >= n || seen[v]) fail("InvalidData", "theta is not a permutation");
        seen[v] = 1;
    }
    for (int x = 0; x < n; ++x) {
        if (d.theta[d.theta[x]] != x) fail("InvalidData", "theta is not an involution");
        for (int y = 0; y < n; ++y)
            if (d.theta[G.mul(x, y)] != G.mul(d.theta[y], d.theta[x]))
                fail("InvalidData", "theta is not an antiautomorphism");
    }
    if (d.h <= 0 || d.h >= n) fail("InvalidData", "h must be a nonidentity element");
    if (d.theta[d.h] != d.h) fail("InvalidData", "theta must fix h");
    std::vector<int> z = center(G);
    std::vector<char> central(n, 0);
    for (int v : z) central[v] = 1;
    if (!central[d.h]) fail("InvalidData", "h must be central");
    for (int x = 0; x < n; ++x)
        if (!central[G.mul(x, d.theta[x])]) fail("InvalidData", "x·theta(x) must be central");
}

LoopTable mg_theta_h(const AntiAutomorphismData& d) {
    validate(d);
    const LoopTable& G = d.base;
    const int n = G.size();
    const int N = 2 * n;
    std::vector<int> cells(static_cast<size_t>(N) * N);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            cells[static_cast<size_t>(x) * N + y] = G.mul(x, y);
            cells[static_cast<size_t>(x) * N + (y + n)] = G.mul(y, x) + n;
            cells[static_cast<size_t>(x + n) * N + y] = G.mul(x, d.theta[y]) + n;
            cells[static_cast<size_t>(x + n) * N + (y + n)] = G.mul(G.mul(d.theta[y], x), d.h);
        }
    LoopTable out = LoopTable::from_grid(N, std::move(cells));
    if (!is_moufang(out)) fail("Internal", "twisted double is not Moufang");
    return out;
}

AntiAutomorphismData inversion_double(const LoopTable& group, int h) {
    AntiAutomorphismData d(group);
    d.theta.resize(group.size());
    for (int x = 0; x < group.size(); ++x) d.theta[x] = group.inv(x);
    d.h = h;
    return d;
}

std::optional<LoopTable> is_chein_double(const LoopTable& L) {
    const int n = L.size();
    if (n % 2 != 0) return std::nullopt;
    for (const std::vector<int>& s : enumerate_subloops(L)) {
        if (static_cast<int>(s.size()) != n / 2) continue;
        std::vector<char> inside(n, 0);
        for (int v : s) inside[v] = 1;
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            if (!inside[u] && L.mul(u, u) != 0) ok = false;
        if (!ok) continue;

        LoopTable G = restrict_to(L, s);
        if (!is_associative(G)) continue;

        int u0 = 0;
        while (inside[u0]) ++u0;
        // psi plays the bar map; every outside element is psi of something
        std::vector<int> psi(s.size());
        for (size_t k = 0; k < s.size(); ++k) psi[k] = L.mul(s[k], u0);

        for (size_t xi = 0; xi < s.size() && ok; ++xi)
            for (size_t yi = 0; yi < s.size() && ok; ++yi) {
                int x = s[xi], y = s[yi];
                if (L.mul(x, psi[yi]) != psi[G.mul(static_cast<int>(yi), static_cast<int>(xi))])
                    ok = false;
                else if (L.mul(psi[xi], y) !=
                         psi[G.mul(static_cast<int>(xi), G.inv(static_cast<int>(yi)))])
                    ok = false;
                else if (L.mul(psi[xi], psi[yi]) !=
                         s[G.mul(G.inv(static_cast<int>(yi)), static_cast<int>(xi))])
                    ok = false;
            }
        if (ok) return G;
    }
    return std::nullopt;
}

} // namespace moufang
