#include <doctest.h>

#include <cstdlib>
#include <json.hpp>
#include <string>
#include <vector>

#include "moufang/catalog.hpp"
#include "moufang/chein.hpp"
#include "moufang/code_loops.hpp"
#include "moufang/constructions.hpp"
#include "moufang/explorer.hpp"
#include "moufang/factor_sets.hpp"
#include "moufang/loop.hpp"

using namespace moufang;

namespace {

// every edge's stored parameter text must reproduce the target class
void check_witnesses(const ConstructionGraph& g, size_t limit = 25) {
    size_t checked = 0;
    for (const GraphEdge& e : g.edges) {
        if (checked++ == limit) break;
        const LoopTable& src = g.nodes[e.from].table;
        LoopTable out = e.dihedral ? apply_dihedral(dihedral_params_from_text(src, e.witness))
                                   : apply_cyclic(cyclic_params_from_text(src, e.witness));
        CHECK(is_isomorphic(out, g.nodes[e.to].table));
    }
}

} // namespace

TEST_SUITE("explorer") {

TEST_CASE("order twelve closes on a single class") {
    ConstructionGraph g = closure({mg2(builtin("d6")).table});
    REQUIRE(g.nodes.size() == 1);
    CHECK(g.seed_ids == std::vector<int>{0});
    // the center of this loop is trivial, so no parameter tuple exists and
    // the class graph has no edges at all
    CHECK(g.edges.empty());
    CHECK(find_cyclic_params(g.nodes[0].table).empty());
    CHECK(find_dihedral_params(g.nodes[0].table).empty());

    auto comps = components(g);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].members == std::vector<int>{0});
    CHECK(comps[0].nucleus_size == (int)nucleus(g.nodes[0].table).size());
    CHECK(comps[0].assoc_size == (int)associator_subloop(g.nodes[0].table).size());
    CHECK(comps[0].nucleus_size == 1);
    CHECK(comps[0].assoc_size == 3);
}

TEST_CASE("order sixteen: five classes, one component, constant invariants") {
    ConstructionGraph g = closure({mg2(builtin("d8")).table});
    REQUIRE(g.nodes.size() == 5);

    auto comps = components(g);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].members == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(comps[0].nucleus_size == 2);
    CHECK(comps[0].assoc_size == 2);

    // the known faces of the family appear among the classes
    LoopTable oct = mg_theta_h(inversion_double(builtin("q8"), 2));
    LoopTable dq = mg2(builtin("q8")).table;
    bool saw_oct = false, saw_dq = false, saw_seed = false;
    for (const GraphNode& node : g.nodes) {
        CHECK_FALSE(is_associative(node.table));
        CHECK(is_code_loop(node.table));
        saw_oct = saw_oct || is_isomorphic(node.table, oct);
        saw_dq = saw_dq || is_isomorphic(node.table, dq);
        saw_seed = saw_seed || is_isomorphic(node.table, mg2(builtin("d8")).table);
    }
    CHECK(saw_oct);
    CHECK(saw_dq);
    CHECK(saw_seed);
    CHECK(is_isomorphic(g.nodes[0].table, mg2(builtin("d8")).table)); // seed comes first
    check_witnesses(g);

    // the five squaring maps pairwise differ by degree <= 2, so paths exist
    auto sd = symplectic_analyze(g.nodes[0].table);
    REQUIRE(sd.has_value());
    for (size_t i = 1; i < g.nodes.size(); ++i) {
        auto sdi = symplectic_analyze(g.nodes[i].table);
        REQUIRE(sdi.has_value());
        CHECK_NOTHROW(plan_code_path(sd->power, sdi->power));
    }
}

TEST_CASE("worker count never changes the answer") {
    ClosureOptions one;
    one.jobs = 1;
    ClosureOptions four;
    four.jobs = 4;
    ConstructionGraph g1 = closure({mg2(builtin("d8")).table}, one);
    ConstructionGraph g4 = closure({mg2(builtin("d8")).table}, four);
    CHECK(export_dot(g1) == export_dot(g4));
    CHECK(summary_json(g1) == summary_json(g4));

    // jobs = 0 reads the environment
    setenv("MOUFANG_JOBS", "3", 1);
    ConstructionGraph genv = closure({mg2(builtin("d6")).table});
    unsetenv("MOUFANG_JOBS");
    ConstructionGraph gone = closure({mg2(builtin("d6")).table}, one);
    CHECK(export_dot(genv) == export_dot(gone));
    CHECK(summary_json(genv) == summary_json(gone));
}

TEST_CASE("groups may ride along when asked") {
    ClosureOptions opts;
    opts.nonassociative_only = false;
    ConstructionGraph g = closure({builtin("c4")}, opts);
    REQUIRE(g.nodes.size() == 2);
    CHECK(is_isomorphic(g.nodes[0].table, builtin("c4")));
    CHECK(is_isomorphic(g.nodes[1].table, builtin("v4")));
    bool fwd = false, back = false;
    for (const GraphEdge& e : g.edges) {
        fwd = fwd || (e.from == 0 && e.to == 1);
        back = back || (e.from == 1 && e.to == 0);
    }
    CHECK(fwd);
    CHECK(back);
    check_witnesses(g);

    auto comps = components(g);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].nucleus_size == 4);
    CHECK(comps[0].assoc_size == 1);

    std::string dot = export_dot(g);
    CHECK(dot.rfind("digraph moufang_classes {\n", 0) == 0);
    CHECK(dot.find("  n0 [label=\"#0 n=4 |N|=4 |A|=1\"];\n") != std::string::npos);
    CHECK(dot.find("-> n1 [label=\"cyclic\"];") != std::string::npos);
    CHECK(dot.back() == '\n');

    auto j = nlohmann::json::parse(summary_json(g));
    CHECK(j["order"] == 4);
    CHECK(j["classes"] == 2);
    CHECK(j["seeds"] == std::vector<int>{0});
    CHECK(j["components"].size() == 1);
    CHECK(j["components"][0]["size"] == 2);
    CHECK(j["components"][0]["nucleus"] == 4);
    CHECK(j["components"][0]["associator"] == 1);
    CHECK(j["edges"]["cyclic"].get<int>() > 0);
    CHECK(j["nodes"].size() == 2);
}

TEST_CASE("seed validation") {
    try {
        closure({});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == "InvalidParams");
    }
    try {
        closure({builtin("c4"), mg2(builtin("d6")).table});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == "InvalidParams");
    }
    try {
        closure({builtin("c8")}); // associative seed under the default filter
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == "InvalidParams");
    }

    // a non-Moufang loop is refused even with the filter off
    ExtensionAction act(builtin("v4"));
    act.coeff_order = 2;
    act.mult.assign(4, 1);
    std::optional<LoopTable> plain;
    for (unsigned bits = 0; bits < 512 && !plain; ++bits) {
        FactorSet eta{act, std::vector<int>(16, 0)};
        for (int k = 0; k < 9; ++k) eta.at(1 + k / 3, 1 + k % 3) = (bits >> k) & 1u;
        if (classify(eta) == FactorSetClass::Plain) plain = build_extension(eta);
    }
    REQUIRE(plain.has_value());
    REQUIRE_FALSE(is_moufang(*plain));
    ClosureOptions opts;
    opts.nonassociative_only = false;
    try {
        closure({*plain}, opts);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == "InvalidParams");
    }
}

} // TEST_SUITE
