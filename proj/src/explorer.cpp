#include "moufang/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <deque>
#include <exception>
#include <optional>
#include <set>
#include <thread>
#include <variant>

#include <json.hpp>

#include "moufang/constructions.hpp"
#include "moufang/errors.hpp"

namespace moufang {

namespace {

int resolve_jobs(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MOUFANG_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

using Tuple = std::variant<CyclicParams, DihedralParams>;

struct TupleResult {
    LoopTable table;
    Fingerprint fp;
};

// applies tuple #i into slot #i; merge later walks slots in tuple order, so
// the outcome does not depend on thread scheduling
std::vector<std::optional<TupleResult>> apply_all(const std::vector<Tuple>& tuples, int jobs) {
    std::vector<std::optional<TupleResult>> slots(tuples.size());
    std::vector<std::exception_ptr> errors(tuples.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= tuples.size()) break;
            try {
                LoopTable out = std::holds_alternative<CyclicParams>(tuples[i])
                                    ? apply_cyclic(std::get<CyclicParams>(tuples[i]))
                                    : apply_dihedral(std::get<DihedralParams>(tuples[i]));
                Fingerprint fp = fingerprint(out);
                slots[i].emplace(TupleResult{std::move(out), std::move(fp)});
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    int n = std::min<int>(jobs, static_cast<int>(tuples.size()));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n);
        for (int t = 0; t < n; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
    return slots;
}

} // namespace

ConstructionGraph closure(const std::vector<LoopTable>& seeds, const ClosureOptions& opts) {
    if (seeds.empty()) fail("InvalidParams", "closure needs at least one seed");
    const int n = seeds[0].size();
    for (const LoopTable& s : seeds) {
        if (s.size() != n) fail("InvalidParams", "seeds must share one order");
        if (!is_moufang(s)) fail("InvalidParams", "seeds must be Moufang");
        if (opts.nonassociative_only && is_associative(s))
            fail("InvalidParams", "associative seed in a nonassociative-only closure");
    }
    const int jobs = resolve_jobs(opts.jobs);

    ConstructionGraph g;
    auto identify = [&g](const LoopTable& t, const Fingerprint& fp) -> int {
        for (size_t i = 0; i < g.nodes.size(); ++i)
            if (g.nodes[i].fp == fp && find_isomorphism(t, g.nodes[i].table))
                return static_cast<int>(i);
        return -1;
    };

    std::deque<int> queue;
    for (const LoopTable& s : seeds) {
        Fingerprint fp = fingerprint(s);
        int id = identify(s, fp);
        if (id < 0) {
            id = static_cast<int>(g.nodes.size());
            g.nodes.push_back(GraphNode{s, std::move(fp)});
            queue.push_back(id);
        }
        if (std::find(g.seed_ids.begin(), g.seed_ids.end(), id) == g.seed_ids.end())
            g.seed_ids.push_back(id);
    }

    std::set<std::tuple<int, int, bool>> seen_edges;
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        // copy: g.nodes may reallocate while new classes are appended
        LoopTable rep = g.nodes[id].table;

        std::vector<Tuple> tuples;
        for (CyclicParams& p : find_cyclic_params(rep)) tuples.emplace_back(std::move(p));
        for (DihedralParams& p : find_dihedral_params(rep)) tuples.emplace_back(std::move(p));

        std::vector<std::optional<TupleResult>> slots = apply_all(tuples, jobs);
        for (size_t i = 0; i < tuples.size(); ++i) {
            TupleResult& r = *slots[i];
            if (opts.nonassociative_only && r.fp.nonassoc_triples == 0) continue;
            int target = identify(r.table, r.fp);
            if (target < 0) {
                target = static_cast<int>(g.nodes.size());
                g.nodes.push_back(GraphNode{std::move(r.table), std::move(r.fp)});
                queue.push_back(target);
            }
            bool dihedral = std::holds_alternative<DihedralParams>(tuples[i]);
            if (seen_edges.emplace(id, target, dihedral).second) {
                std::string witness = dihedral ? to_text(std::get<DihedralParams>(tuples[i]))
                                               : to_text(std::get<CyclicParams>(tuples[i]));
                g.edges.push_back(GraphEdge{id, target, dihedral, std::move(witness)});
            }
        }
    }

    for (const GraphEdge& e : g.edges)
        if (!seen_edges.count({e.to, e.from, e.dihedral}))
            fail("Internal", "closure graph is missing a reverse edge");
    return g;
}

std::vector<ComponentReport> components(const ConstructionGraph& g) {
    const int n = static_cast<int>(g.nodes.size());
    std::vector<int> root(n);
    for (int i = 0; i < n; ++i) root[i] = i;
    auto find = [&root](int x) {
        while (root[x] != x) {
            root[x] = root[root[x]];
            x = root[x];
        }
        return x;
    };
    for (const GraphEdge& e : g.edges) {
        int a = find(e.from), b = find(e.to);
        if (a != b) root[std::max(a, b)] = std::min(a, b);
    }
    std::vector<ComponentReport> out;
    std::vector<int> slot(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.push_back(ComponentReport{{}, g.nodes[i].fp.nucleus_size,
                                          g.nodes[i].fp.assoc_subloop_size});
        }
        ComponentReport& c = out[slot[r]];
        c.members.push_back(i);
        if (g.nodes[i].fp.nucleus_size != c.nucleus_size ||
            g.nodes[i].fp.assoc_subloop_size != c.assoc_size)
            fail("Internal", "component members disagree on nucleus or associator size");
    }
    return out;
}

namespace {

// stable listing order: fingerprint key first, discovery id second
std::vector<int> sorted_node_order(const ConstructionGraph& g) {
    std::vector<int> order(g.nodes.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&g](int a, int b) {
        std::string ka = g.nodes[a].fp.key(), kb = g.nodes[b].fp.key();
        return ka != kb ? ka < kb : a < b;
    });
    return order;
}

} // namespace

std::string export_dot(const ConstructionGraph& g) {
    std::string out = "digraph moufang_classes {\n";
    for (int id : sorted_node_order(g)) {
        const Fingerprint& fp = g.nodes[id].fp;
        out += "  n" + std::to_string(id) + " [label=\"#" + std::to_string(id) + " n=" +
               std::to_string(fp.n) + " |N|=" + std::to_string(fp.nucleus_size) +
               " |A|=" + std::to_string(fp.assoc_subloop_size) + "\"];\n";
    }
    std::vector<std::tuple<int, int, bool>> es;
    es.reserve(g.edges.size());
    for (const GraphEdge& e : g.edges) es.emplace_back(e.from, e.to, e.dihedral);
    std::sort(es.begin(), es.end());
    for (const auto& [from, to, dihedral] : es)
        out += "  n" + std::to_string(from) + " -> n" + std::to_string(to) + " [label=\"" +
               (dihedral ? "dihedral" : "cyclic") + "\"];\n";
    out += "}\n";
    return out;
}

std::string summary_json(const ConstructionGraph& g) {
    nlohmann::ordered_json j;
    j["order"] = g.nodes.empty() ? 0 : g.nodes[0].fp.n;
    j["classes"] = g.nodes.size();
    j["seeds"] = g.seed_ids;
    nlohmann::ordered_json comps = nlohmann::ordered_json::array();
    for (const ComponentReport& c : components(g)) {
        nlohmann::ordered_json jc;
        jc["size"] = c.members.size();
        jc["nucleus"] = c.nucleus_size;
        jc["associator"] = c.assoc_size;
        jc["members"] = c.members;
        comps.push_back(std::move(jc));
    }
    j["components"] = std::move(comps);
    size_t cyc = 0, dih = 0;
    for (const GraphEdge& e : g.edges) (e.dihedral ? dih : cyc)++;
    j["edges"]["cyclic"] = cyc;
    j["edges"]["dihedral"] = dih;
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (int id : sorted_node_order(g)) {
        const Fingerprint& fp = g.nodes[id].fp;
        nlohmann::ordered_json jn;
        jn["id"] = id;
        jn["center"] = fp.center_size;
        jn["nucleus"] = fp.nucleus_size;
        jn["associator"] = fp.assoc_subloop_size;
        jn["squares"] = fp.squares_size;
        nodes.push_back(std::move(jn));
    }
    j["nodes"] = std::move(nodes);
    return j.dump(2) + "\n";
}

} // namespace moufang
