#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

#include "moufang/catalog.hpp"
#include "moufang/loop.hpp"

using namespace moufang;

namespace {

std::vector<int> sorted_orders(const LoopTable& L) {
    auto v = element_orders(L);
    std::sort(v.begin(), v.end());
    return v;
}

int count_order(const LoopTable& L, int k) {
    int c = 0;
    for (int x = 0; x < L.size(); ++x)
        if (element_order(L, x) == k) ++c;
    return c;
}

} // namespace

TEST_SUITE("catalog") {

TEST_CASE("builtin groups are groups with their expected invariants") {
    for (const char* name : {"c1", "c2", "c3", "c4", "c6", "c8", "v4", "e8", "e16", "d6",
                             "d8", "d12", "d16", "q8", "q16", "a4", "g16_gamma2c1"}) {
        LoopTable L = builtin(name);
        CHECK(is_associative(L));
        CHECK(is_moufang(L));
    }

    LoopTable d8 = builtin("d8");
    CHECK(d8.size() == 8);
    CHECK_FALSE(is_commutative(d8));
    CHECK(center(d8).size() == 2);
    CHECK(count_order(d8, 4) == 2);
    CHECK(count_order(d8, 2) == 5);

    LoopTable q8 = builtin("q8");
    CHECK(q8.size() == 8);
    CHECK_FALSE(is_commutative(q8));
    CHECK(count_order(q8, 4) == 6);
    CHECK(count_order(q8, 2) == 1);

    CHECK(count_order(builtin("c6"), 6) == 2);
    CHECK(sorted_orders(builtin("e8")) == std::vector<int>({1, 2, 2, 2, 2, 2, 2, 2}));
    CHECK(is_commutative(builtin("e16")));

    LoopTable a4 = builtin("a4");
    CHECK(a4.size() == 12);
    CHECK(center(a4).size() == 1);
    CHECK(count_order(a4, 3) == 8);
    CHECK(count_order(a4, 2) == 3);

    CHECK(builtin("v4").same_cells(builtin("d4")));
    CHECK(is_isomorphic(builtin("v4"), builtin("e4")));

    LoopTable d16 = builtin("d16");
    CHECK(d16.size() == 16);
    CHECK(count_order(d16, 8) == 4);
    CHECK(count_order(d16, 2) == 9);

    LoopTable q16 = builtin("q16");
    CHECK(count_order(q16, 2) == 1);
    CHECK(count_order(q16, 4) == 10);
    CHECK(count_order(q16, 8) == 4);
}

TEST_CASE("the order-16 presented group") {
    LoopTable g = builtin("g16_gamma2c1");
    CHECK(g.size() == 16);
    CHECK(is_associative(g));
    CHECK_FALSE(is_commutative(g));
    CHECK(center(g).size() == 4);
    CHECK(count_order(g, 2) == 7);
    CHECK(count_order(g, 4) == 8);
    // three distinct squares; this is what blocks the code-loop property
    // for its doubled loop later on
    CHECK(squares(g).size() == 3);

    // the defining relations hold for some generating pair
    bool found = false;
    for (int a = 1; a < 16 && !found; ++a) {
        if (element_order(g, a) != 4) continue;
        for (int b = 1; b < 16 && !found; ++b) {
            if (element_order(g, b) != 4) continue;
            int ab = g.mul(a, b);
            int a2 = g.mul(a, a);
            if (g.mul(ab, ab) != 0) continue;
            if (g.mul(a2, b) != g.mul(b, a2)) continue;
            if (subloop_generated(g, {a, b}).size() == 16) found = true;
        }
    }
    CHECK(found);

    for (const char* other : {"e16", "c16", "c8xc2", "c4xc4", "c4xc2xc2", "d16", "q16",
                              "d8xc2", "q8xc2"})
        CHECK_FALSE(is_isomorphic(g, builtin(other)));
}

TEST_CASE("product names multiply the factors") {
    LoopTable p = builtin("d8xc2");
    CHECK(p.size() == 16);
    CHECK(is_isomorphic(p, direct_product(builtin("d8"), builtin("c2"))));
    CHECK(is_isomorphic(builtin("c2xc2"), builtin("v4")));
    CHECK(builtin("c2xc2xc2").size() == 8);
    CHECK(is_isomorphic(builtin("c2xc2xc2"), builtin("e8")));
    CHECK(is_isomorphic(builtin("c2xc3"), builtin("c6")));
}

TEST_CASE("unknown names are refused") {
    for (const char* bad : {"", "x", "c0", "d7", "d2", "q4", "q12", "e6", "zz9", "c4x",
                            "xc4", "a5", "g16_gamma2c2"}) {
        try {
            builtin(bad);
            CHECK_MESSAGE(false, "accepted: ", bad);
        } catch (const Error& e) {
            CHECK(e.kind() == "UnknownName");
        }
    }
}

TEST_CASE("presentations enumerate to the right groups") {
    Presentation c3p;
    c3p.generators = 1;
    c3p.relators = {{1, 1, 1}};
    CHECK(is_isomorphic(group_from_presentation(c3p), builtin("c3")));

    Presentation d8p;
    d8p.generators = 2;
    d8p.relators = {{1, 1, 1, 1}, {2, 2}, {1, 2, 1, 2}};
    CHECK(is_isomorphic(group_from_presentation(d8p), builtin("d8")));

    // a^4 = 1, a^2 = b^2, b^-1 a b = a^-1
    Presentation q8p;
    q8p.generators = 2;
    q8p.relators = {{1, 1, 1, 1}, {1, 1, -2, -2}, {-2, 1, 2, 1}};
    CHECK(is_isomorphic(group_from_presentation(q8p), builtin("q8")));

    Presentation c12p;
    c12p.generators = 2;
    c12p.relators = {{1, 1, 1, 1}, {2, 2, 2}, {1, 2, -1, -2}};
    CHECK(is_isomorphic(group_from_presentation(c12p), builtin("c12")));

    // the free group on one generator never closes
    Presentation freep;
    freep.generators = 1;
    try {
        group_from_presentation(freep, 100);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == "EnumerationOverflow");
    }
}

TEST_CASE("table text round trip") {
    for (const char* name : {"c5", "q8", "a4"}) {
        LoopTable L = builtin(name);
        std::ostringstream os;
        write_table(os, L);
        std::istringstream is(os.str());
        CHECK(read_table(is).same_cells(L));
    }

    std::string path = "/tmp/moufang_test_roundtrip.tbl";
    LoopTable g = builtin("g16_gamma2c1");
    write_table_file(path, g);
    CHECK(read_table_file(path).same_cells(g));
    std::remove(path.c_str());

    try {
        read_table_file("/tmp/moufang_no_such_file.tbl");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == "IoError");
    }
}

TEST_CASE("table parser rejects malformed input") {
    auto expect_kind = [](const std::string& text, const std::string& kind) {
        std::istringstream is(text);
        try {
            read_table(is);
            CHECK_MESSAGE(false, "accepted: ", text);
        } catch (const Error& e) {
            CHECK(e.kind() == kind);
        }
    };
    expect_kind("", "ParseError");
    expect_kind("2 2\n0 1\n1 0\n", "ParseError");
    expect_kind("x\n", "ParseError");
    expect_kind("0\n", "ParseError");
    expect_kind("5000\n", "ParseError");
    expect_kind("2\n0 1\n", "ParseError");          // missing row
    expect_kind("2\n0\n1 0\n", "ParseError");       // short row
    expect_kind("2\n0 1 1\n1 0\n", "ParseError");   // long row
    expect_kind("2\n0 2\n1 0\n", "ParseError");     // entry out of range
    expect_kind("2\n0 1\n1 0\nx\n", "ParseError");  // trailing garbage
    expect_kind("2\n0 1\n0 1\n", "NotLatin");
    expect_kind("3\n0 1 2\n2 0 1\n1 2 0\n", "NoIdentity");

    // trailing blank lines are fine
    std::istringstream ok("2\n0 1\n1 0\n\n  \n");
    CHECK(read_table(ok).size() == 2);
}

} // TEST_SUITE
