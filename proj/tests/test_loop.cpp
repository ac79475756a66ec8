#include <doctest.h>

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "moufang/catalog.hpp"
#include "moufang/loop.hpp"

using namespace moufang;

namespace {

// All loops of order 5 with identity 0, i.e. reduced Latin squares (first
// row and column in natural order). Small enough to enumerate outright and
// rich enough to exercise every predicate: exactly 56 squares in 6
// isomorphism classes, of which one class (the cyclic group) is Moufang.
std::vector<LoopTable> order5_loops() {
    const int n = 5;
    std::vector<LoopTable> out;
    std::vector<int> g(n * n, -1);
    for (int i = 0; i < n; ++i) {
        g[i] = i;
        g[i * n] = i;
    }
    auto rec = [&](auto&& self, int r, int c) -> void {
        if (r == n) {
            out.push_back(LoopTable::from_grid(n, g));
            return;
        }
        int nr = c + 1 < n ? r : r + 1;
        int nc = c + 1 < n ? c + 1 : 1;
        for (int v = 0; v < n; ++v) {
            bool ok = true;
            for (int k = 0; k < c && ok; ++k) ok = g[r * n + k] != v;
            for (int k = 0; k < r && ok; ++k) ok = g[k * n + c] != v;
            if (!ok) continue;
            g[r * n + c] = v;
            self(self, nr, nc);
            g[r * n + c] = -1;
        }
    };
    rec(rec, 1, 1);
    return out;
}

// The four classical Moufang identities; on a loop each is equivalent to
// the others, which the census below checks literally.
bool mi_left(const LoopTable& L) {
    int n = L.size();
    for (int z = 0; z < n; ++z)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (L.mul(z, L.mul(x, L.mul(z, y))) != L.mul(L.mul(L.mul(z, x), z), y))
                    return false;
    return true;
}

bool mi_right(const LoopTable& L) {
    int n = L.size();
    for (int z = 0; z < n; ++z)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (L.mul(x, L.mul(z, L.mul(y, z))) != L.mul(L.mul(L.mul(x, z), y), z))
                    return false;
    return true;
}

bool mi_middle_a(const LoopTable& L) {
    int n = L.size();
    for (int z = 0; z < n; ++z)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (L.mul(L.mul(z, x), L.mul(y, z)) != L.mul(L.mul(z, L.mul(x, y)), z))
                    return false;
    return true;
}

bool mi_middle_b(const LoopTable& L) {
    int n = L.size();
    for (int z = 0; z < n; ++z)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (L.mul(L.mul(z, x), L.mul(y, z)) != L.mul(z, L.mul(L.mul(x, y), z)))
                    return false;
    return true;
}

bool verify_map(const LoopTable& A, const LoopTable& B, const std::vector<int>& f) {
    if ((int)f.size() != A.size() || A.size() != B.size()) return false;
    std::vector<char> hit(B.size(), 0);
    for (int v : f) {
        if (v < 0 || v >= B.size() || hit[v]) return false;
        hit[v] = 1;
    }
    for (int x = 0; x < A.size(); ++x)
        for (int y = 0; y < A.size(); ++y)
            if (f[A.mul(x, y)] != B.mul(f[x], f[y])) return false;
    return true;
}

int unique_involution(const LoopTable& L) {
    int found = -1;
    for (int x = 1; x < L.size(); ++x)
        if (L.mul(x, x) == 0) {
            REQUIRE(found == -1);
            found = x;
        }
    REQUIRE(found != -1);
    return found;
}

} // namespace

TEST_SUITE("loop") {

TEST_CASE("order-5 census: 56 squares, 6 classes, Moufang = cyclic") {
    auto all = order5_loops();
    REQUIRE(all.size() == 56);
    LoopTable c5 = builtin("c5");

    // greedy partition into isomorphism classes
    std::vector<int> class_of(all.size(), -1);
    std::vector<int> reps;
    for (size_t i = 0; i < all.size(); ++i) {
        for (size_t r = 0; r < reps.size(); ++r)
            if (is_isomorphic(all[reps[r]], all[i])) {
                class_of[i] = (int)r;
                break;
            }
        if (class_of[i] < 0) {
            class_of[i] = (int)reps.size();
            reps.push_back((int)i);
        }
    }
    CHECK(reps.size() == 6);
    std::map<int, int> sizes;
    for (int c : class_of) ++sizes[c];
    std::multiset<int> size_set;
    for (auto& [c, s] : sizes) size_set.insert(s);
    CHECK(size_set == std::multiset<int>({2, 6, 8, 8, 8, 24}));

    int moufang_count = 0, divergent = 0;
    for (auto& L : all) {
        bool m = is_moufang(L);
        CHECK(m == is_isomorphic(L, c5));
        CHECK(m == is_associative(L)); // order 5 leaves no nonassociative Moufang room
        if (m) ++moufang_count;
        if (!left_right_powers_agree(L)) ++divergent;
    }
    CHECK(moufang_count == 6);
    CHECK(divergent == 48);
}

TEST_CASE("the four Moufang identities agree on every census table") {
    auto all = order5_loops();
    std::vector<LoopTable> tables(all.begin(), all.end());
    for (const char* name : {"c4", "c6", "d8", "q8", "a4"}) tables.push_back(builtin(name));
    for (auto& L : tables) {
        bool a = mi_left(L), b = mi_right(L), c = mi_middle_a(L), d = mi_middle_b(L);
        CHECK(a == b);
        CHECK(a == c);
        CHECK(a == d);
        CHECK(a == is_moufang(L));
    }
}

TEST_CASE("commutator and associator satisfy their defining equations") {
    auto all = order5_loops();
    all.push_back(builtin("d8"));
    all.push_back(builtin("a4"));
    for (auto& L : all) {
        int n = L.size();
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                int w = commutator(L, x, y);
                CHECK(L.mul(L.mul(y, x), w) == L.mul(x, y));
                for (int z = 0; z < n; ++z) {
                    int a = associator(L, x, y, z);
                    CHECK(L.mul(L.mul(x, L.mul(y, z)), a) == L.mul(L.mul(x, y), z));
                }
            }
    }
}

TEST_CASE("subloop lattices of the small groups") {
    auto count_normal = [](const LoopTable& L, const std::vector<std::vector<int>>& subs) {
        int c = 0;
        for (auto& s : subs)
            if (is_normal(L, s)) ++c;
        return c;
    };

    LoopTable d8 = builtin("d8");
    auto sd = enumerate_subloops(d8);
    CHECK(sd.size() == 10);
    CHECK(count_normal(d8, sd) == 6);
    for (auto& s : sd) CHECK(is_subloop(d8, s));

    LoopTable q8 = builtin("q8");
    auto sq = enumerate_subloops(q8);
    CHECK(sq.size() == 6);
    CHECK(count_normal(q8, sq) == 6);

    LoopTable a4 = builtin("a4");
    auto sa = enumerate_subloops(a4);
    CHECK(sa.size() == 10);
    CHECK(count_normal(a4, sa) == 3);

    // a subloop misses closure -> rejected
    CHECK_FALSE(is_subloop(d8, {0, 1}));
    CHECK_FALSE(is_subloop(d8, {1, 2, 3}));
}

TEST_CASE("quotients of the small groups") {
    LoopTable d8 = builtin("d8");
    int z = center(d8)[1];
    auto zsub = subloop_generated(d8, {z});
    CHECK(zsub.size() == 2);
    CHECK(is_isomorphic(quotient(d8, zsub), builtin("v4")));

    // rotation subgroup: generated by any order-4 element
    int rot = -1;
    for (int x = 1; x < 8; ++x)
        if (element_order(d8, x) == 4) {
            rot = x;
            break;
        }
    REQUIRE(rot != -1);
    auto rsub = subloop_generated(d8, {rot});
    CHECK(rsub.size() == 4);
    CosetPartition part;
    LoopTable q = quotient(d8, rsub, &part);
    CHECK(is_isomorphic(q, builtin("c2")));
    CHECK(part.cosets.size() == 2);
    CHECK(part.cosets[0] == rsub);
    for (int x = 0; x < 8; ++x) {
        auto& cs = part.cosets[part.index_of[x]];
        CHECK(std::find(cs.begin(), cs.end(), x) != cs.end());
    }
    // cosets ordered by least member, members ascending
    for (auto& cs : part.cosets) CHECK(std::is_sorted(cs.begin(), cs.end()));
    for (size_t i = 1; i < part.cosets.size(); ++i)
        CHECK(part.cosets[i - 1][0] < part.cosets[i][0]);

    LoopTable q8g = builtin("q8");
    CHECK(is_isomorphic(quotient(q8g, subloop_generated(q8g, {unique_involution(q8g)})),
                        builtin("v4")));

    LoopTable c6 = builtin("c6");
    CHECK(is_isomorphic(quotient(c6, subloop_generated(c6, {2})), builtin("c2")));
    CHECK(is_isomorphic(quotient(c6, subloop_generated(c6, {3})), builtin("c3")));

    // non-normal subgroup of a4 is refused
    LoopTable a4 = builtin("a4");
    std::vector<int> bad;
    for (auto& s : enumerate_subloops(a4))
        if (s.size() == 2) {
            bad = s;
            break;
        }
    REQUIRE(!bad.empty());
    CHECK_FALSE(is_normal(a4, bad));
    CHECK_THROWS_AS(quotient(a4, bad), Error);
}

TEST_CASE("nucleus, center, squares on groups") {
    LoopTable d8 = builtin("d8");
    CHECK(center(d8).size() == 2);
    CHECK(nucleus(d8).size() == 8);
    CHECK(left_nucleus(d8).size() == 8);
    CHECK(associator_subloop(d8) == std::vector<int>{0});
    CHECK(squares(d8).size() == 2);
    CHECK(squares(d8)[0] == 0);

    LoopTable a4 = builtin("a4");
    CHECK(center(a4).size() == 1);
    CHECK(nucleus(a4).size() == 12);
    CHECK(associator_subloop(a4) == std::vector<int>{0});

    LoopTable e8 = builtin("e8");
    CHECK(center(e8).size() == 8);
    CHECK(squares(e8) == std::vector<int>{0});

    LoopTable q8 = builtin("q8");
    CHECK(squares(q8).size() == 2); // 1 and the unique involution
}

TEST_CASE("element orders and power agreement") {
    auto sorted_orders = [](const LoopTable& L) {
        auto v = element_orders(L);
        std::sort(v.begin(), v.end());
        return v;
    };
    CHECK(sorted_orders(builtin("c6")) == std::vector<int>({1, 2, 3, 3, 6, 6}));
    CHECK(sorted_orders(builtin("q8")) == std::vector<int>({1, 2, 4, 4, 4, 4, 4, 4}));
    CHECK(sorted_orders(builtin("d8")) == std::vector<int>({1, 2, 2, 2, 2, 2, 4, 4}));
    for (const char* name : {"c2", "c8", "e8", "d8", "q8", "a4", "d12"})
        CHECK(left_right_powers_agree(builtin(name)));
}

TEST_CASE("direct products, restriction, relabeling") {
    CHECK(is_isomorphic(direct_product(builtin("c2"), builtin("c3")), builtin("c6")));
    CHECK(is_isomorphic(direct_product(builtin("c2"), builtin("c2")), builtin("v4")));
    LoopTable p = direct_product(builtin("d8"), builtin("c2"));
    CHECK(p.size() == 16);
    CHECK(is_isomorphic(p, builtin("d8xc2")));

    LoopTable d8 = builtin("d8");
    int rot = -1;
    for (int x = 1; x < 8; ++x)
        if (element_order(d8, x) == 4) {
            rot = x;
            break;
        }
    CHECK(is_isomorphic(restrict_to(d8, subloop_generated(d8, {rot})), builtin("c4")));
    CHECK_THROWS_AS(restrict_to(d8, {0, 1, 2}), Error);

    // relabel by a 0-fixing permutation and undo it
    LoopTable q8 = builtin("q8");
    std::vector<int> perm{0, 3, 5, 1, 7, 2, 6, 4};
    std::vector<int> inv(8);
    for (int i = 0; i < 8; ++i) inv[perm[i]] = i;
    LoopTable r = relabel(q8, perm);
    CHECK(is_isomorphic(r, q8));
    CHECK(relabel(r, inv).same_cells(q8));

    // permutation moving 0: identity gets renormalized back to slot 0
    std::vector<int> mover{4, 1, 2, 3, 0, 5, 6, 7};
    LoopTable moved = relabel(q8, mover);
    CHECK(moved.mul(0, 5) == 5);
    CHECK(is_isomorphic(moved, q8));

    CHECK_THROWS_AS(relabel(q8, std::vector<int>{0, 0, 1, 2, 3, 4, 5, 6}), Error);
    CHECK_THROWS_AS(relabel(q8, std::vector<int>{0, 1, 2}), Error);
}

TEST_CASE("fingerprint and isomorphism search under random relabelings") {
    std::mt19937 rng(20240817);
    for (const char* name : {"q8", "g16_gamma2c1"}) {
        LoopTable L = builtin(name);
        Fingerprint fp = fingerprint(L);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<int> perm(L.size());
            for (int i = 0; i < L.size(); ++i) perm[i] = i;
            std::shuffle(perm.begin(), perm.end(), rng);
            LoopTable R = relabel(L, perm);
            CHECK(fingerprint(R) == fp);
            auto f = find_isomorphism(L, R);
            REQUIRE(f.has_value());
            CHECK(verify_map(L, R, *f));
        }
    }
    CHECK_FALSE(is_isomorphic(builtin("d8"), builtin("q8")));
    CHECK_FALSE(is_isomorphic(builtin("c8"), builtin("e8")));
    CHECK_FALSE(is_isomorphic(builtin("c4xc2"), builtin("e8")));
    CHECK_FALSE(find_isomorphism(builtin("d8"), builtin("q8")).has_value());
}

TEST_CASE("grid validation failures") {
    CHECK_THROWS_AS(LoopTable::from_grid(2, {0, 1, 1, 0, 0}), Error); // wrong length
    CHECK_THROWS_AS(LoopTable::from_grid(2, {0, 1, 0, 1}), Error);    // column repeats
    CHECK_THROWS_AS(LoopTable::from_grid(2, {0, 2, 2, 0}), Error);    // out of range
    // Latin but no two-sided identity
    CHECK_THROWS_AS(LoopTable::from_grid(3, {0, 1, 2, 2, 0, 1, 1, 2, 0}), Error);
    // identity at index 1: normalized so it lands at 0
    LoopTable t = LoopTable::from_grid(3, {2, 0, 1, 0, 1, 2, 1, 2, 0});
    bool has_identity = true;
    for (int x = 0; x < 3; ++x)
        has_identity = has_identity && t.mul(0, x) == x && t.mul(x, 0) == x;
    CHECK(has_identity);
    CHECK(is_isomorphic(t, builtin("c3")));

    // error kinds are reported
    try {
        LoopTable::from_grid(2, {0, 1, 0, 1});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == "NotLatin");
    }
    try {
        LoopTable::from_grid(3, {0, 1, 2, 2, 0, 1, 1, 2, 0});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == "NoIdentity");
    }
}

TEST_CASE("division tables invert multiplication") {
    for (const char* name : {"d8", "q8", "c6"}) {
        LoopTable L = builtin(name);
        for (int x = 0; x < L.size(); ++x) {
            for (int y = 0; y < L.size(); ++y) {
                CHECK(L.mul(x, L.ldiv(x, y)) == y);
                CHECK(L.mul(L.rdiv(x, y), y) == x);
            }
            CHECK(L.mul(x, L.inv(x)) == 0);
            CHECK(L.mul(L.inv(x), x) == 0);
        }
    }
}

} // TEST_SUITE
