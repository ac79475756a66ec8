#include "moufang/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "moufang/catalog.hpp"
#include "moufang/chein.hpp"
#include "moufang/code_loops.hpp"
#include "moufang/constructions.hpp"
#include "moufang/errors.hpp"
#include "moufang/explorer.hpp"
#include "moufang/factor_sets.hpp"
#include "moufang/loop.hpp"

namespace moufang {

namespace {

const char* yn(bool b) { return b ? "yes" : "no"; }

// table arguments accept builtin names, "mg2:<spec>" doubles, or file paths
LoopTable resolve_table_spec(const std::string& spec) {
    if (spec.rfind("mg2:", 0) == 0) return mg2(resolve_table_spec(spec.substr(4))).table;
    if (spec.find('/') == std::string::npos && spec.find('.') == std::string::npos) {
        try {
            return builtin(spec);
        } catch (const Error& e) {
            if (e.kind() != "UnknownName" || !std::filesystem::exists(spec)) throw;
        }
    }
    return read_table_file(spec);
}

void emit_table(const LoopTable& t, const std::string& out_path, std::ostream& out) {
    if (out_path.empty())
        write_table(out, t);
    else
        write_table_file(out_path, t);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) fail("IoError", "cannot open for writing: " + path);
    f << text;
    if (!f.good()) fail("IoError", "write failed: " + path);
}

std::string slurp_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail("IoError", "cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

std::string bits_string(const std::vector<uint8_t>& bits) {
    std::string s;
    s.reserve(bits.size());
    for (uint8_t b : bits) s += static_cast<char>('0' + b);
    return s;
}

const char* short_class(FactorSetClass c) {
    switch (c) {
    case FactorSetClass::NotFactorSet: return "none";
    case FactorSetClass::Plain: return "plain";
    case FactorSetClass::Moufang: return "moufang";
    case FactorSetClass::Associative: return "associative";
    }
    return "?";
}

void print_invariants(const LoopTable& L, std::ostream& out) {
    out << "order: " << L.size() << "\n";
    out << "moufang: " << yn(is_moufang(L)) << "\n";
    out << "associative: " << yn(is_associative(L)) << "\n";
    out << "center: " << center(L).size() << "\n";
    out << "nucleus: " << nucleus(L).size() << "\n";
    out << "associator_subloop: " << associator_subloop(L).size() << "\n";
    out << "squares: " << squares(L).size() << "\n";
    std::map<int, int> mult;
    for (int o : element_orders(L)) ++mult[o];
    out << "orders:";
    for (const auto& [o, c] : mult) out << ' ' << o << ':' << c;
    out << "\n";
}

// the extension over the factor set read off a transversal embeds back into
// the original table by (coset, exponent) -> rep(coset) * h^exponent
void check_extension_embeds(const FactorSet& fs, const LoopTable& target,
                            const DerivedFactorSets& d) {
    LoopTable ext = build_extension(fs);
    const int da = fs.action.coeff_order;
    const int n = ext.size();
    if (n != target.size()) fail("Internal", "extension order mismatch");
    std::vector<int> theta(n), seen(n, 0);
    for (int c = 0; c < fs.action.quotient.size(); ++c)
        for (int a = 0; a < da; ++a) {
            int img = target.mul(d.coset_rep[c], d.h_power[a]);
            theta[c * da + a] = img;
            if (seen[img]++) fail("Internal", "transversal embedding is not a bijection");
        }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (theta[ext.mul(x, y)] != target.mul(theta[x], theta[y]))
                fail("Internal", "transversal embedding is not a homomorphism");
}

template <typename Params>
void verify_derived(const LoopTable& L, const Params& p, const char* kind,
                    const LoopTable& modified, std::ostream& out) {
    DerivedFactorSets d = derive_factor_sets(p);
    FactorSetClass ce = classify(d.eta);
    if (ce != FactorSetClass::Moufang && ce != FactorSetClass::Associative)
        fail("Internal", "derived factor set is not Moufang");
    FactorSetClass cs = classify(d.eta_star);
    if (cs != FactorSetClass::Moufang && cs != FactorSetClass::Associative)
        fail("Internal", "modified factor set is not Moufang");
    if (classify(d.mu) != FactorSetClass::Associative)
        fail("Internal", "difference factor set is not associative");
    if (!check_inverse_identity(d.eta)) fail("Internal", "inverse identity fails");
    if (!check_associator_preservation(d.eta, d.mu))
        fail("Internal", "difference factor set moves associators");
    check_extension_embeds(d.eta, L, d);
    check_extension_embeds(d.eta_star, modified, d);
    out << kind << ' ' << to_text(p) << ": eta=" << short_class(ce) << " star=" << short_class(cs)
        << " mu=associative inverse=ok preserved=ok embed=ok\n";
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite Moufang loop toolkit"};
    app.name("moufang");
    app.require_subcommand(1);

    std::string v_table;
    CLI::App* validate = app.add_subcommand("validate", "check a table file and report its law");
    validate->add_option("table", v_table, "table file or builtin name")->required();
    validate->callback([&] {
        LoopTable L = resolve_table_spec(v_table);
        out << "valid loop of order " << L.size() << "\n";
        out << "moufang: " << yn(is_moufang(L)) << "\n";
        out << "associative: " << yn(is_associative(L)) << "\n";
    });

    std::string i_table;
    CLI::App* invariants = app.add_subcommand("invariants", "print structural invariants");
    invariants->add_option("table", i_table, "table file or builtin name")->required();
    invariants->callback([&] { print_invariants(resolve_table_spec(i_table), out); });

    std::string c_kind, c_table, c_params, c_out;
    int c_index = -1;
    bool c_enumerate = false;
    CLI::App* construct = app.add_subcommand("construct", "enumerate or apply table modifications");
    construct->add_option("kind", c_kind, "cyclic or dihedral")
        ->required()
        ->check(CLI::IsMember({"cyclic", "dihedral"}));
    construct->add_option("table", c_table, "table file or builtin name")->required();
    construct->add_flag("--enumerate", c_enumerate, "list all parameter tuples");
    construct->add_option("--params", c_params, "parameter text to apply");
    construct->add_option("--index", c_index, "apply the i-th enumerated tuple");
    construct->add_option("-o,--output", c_out, "output table file (default stdout)");
    construct->callback([&] {
        int modes = (c_enumerate ? 1 : 0) + (c_params.empty() ? 0 : 1) + (c_index >= 0 ? 1 : 0);
        if (modes != 1)
            throw CLI::ValidationError("construct",
                                       "exactly one of --enumerate, --params, --index is required");
        LoopTable L = resolve_table_spec(c_table);
        if (c_kind == "cyclic") {
            if (!c_params.empty()) {
                emit_table(apply_cyclic(cyclic_params_from_text(L, c_params)), c_out, out);
                return;
            }
            std::vector<CyclicParams> ps = find_cyclic_params(L);
            if (c_enumerate) {
                for (size_t i = 0; i < ps.size(); ++i) out << i << ": " << to_text(ps[i]) << "\n";
                return;
            }
            if (c_index >= static_cast<int>(ps.size()))
                fail("InvalidParams", "index out of range: " + std::to_string(ps.size()) + " tuples");
            emit_table(apply_cyclic(ps[c_index]), c_out, out);
        } else {
            if (!c_params.empty()) {
                emit_table(apply_dihedral(dihedral_params_from_text(L, c_params)), c_out, out);
                return;
            }
            std::vector<DihedralParams> ps = find_dihedral_params(L);
            if (c_enumerate) {
                for (size_t i = 0; i < ps.size(); ++i) out << i << ": " << to_text(ps[i]) << "\n";
                return;
            }
            if (c_index >= static_cast<int>(ps.size()))
                fail("InvalidParams", "index out of range: " + std::to_string(ps.size()) + " tuples");
            emit_table(apply_dihedral(ps[c_index]), c_out, out);
        }
    });

    std::string m_group, m_out;
    CLI::App* mg2cmd = app.add_subcommand("mg2", "double a group");
    mg2cmd->add_option("group", m_group, "group table file or builtin name")->required();
    mg2cmd->add_option("-o,--output", m_out, "output table file (default stdout)");
    mg2cmd->callback([&] { emit_table(mg2(resolve_table_spec(m_group)).table, m_out, out); });

    std::string t_group, t_out;
    int t_h = -1;
    CLI::App* mgth = app.add_subcommand("mgth", "double a group twisted by inversion and h");
    mgth->set_help_flag("--help", "print help"); // frees -h for the option below
    mgth->add_option("group", t_group, "group table file or builtin name")->required();
    mgth->add_option("--h", t_h, "element index of the central involution h")->required();
    mgth->add_option("-o,--output", t_out, "output table file (default stdout)");
    mgth->callback([&] {
        LoopTable g = resolve_table_spec(t_group);
        emit_table(mg_theta_h(inversion_double(g, t_h)), t_out, out);
    });

    CLI::App* codeloop = app.add_subcommand("codeloop", "squaring-map calculus");
    codeloop->require_subcommand(1);
    std::string ca_table;
    CLI::App* cl_analyze = codeloop->add_subcommand("analyze", "extract and classify the squaring map");
    cl_analyze->add_option("table", ca_table, "table file or builtin name")->required();
    cl_analyze->callback([&] {
        LoopTable L = resolve_table_spec(ca_table);
        out << "moufang: " << yn(is_moufang(L)) << "\n";
        std::optional<SymplecticData> sd = symplectic_analyze(L);
        if (!sd) {
            out << "symplectic: no\n";
            out << "code_loop: no\n";
            return;
        }
        out << "symplectic: yes\n";
        out << "z: " << sd->z << "\n";
        out << "dim: " << sd->dim << "\n";
        out << "power_map: " << bits_string(sd->power.values) << "\n";
        int d = cdeg(sd->power);
        out << "cdeg: " << d << "\n";
        if (d <= 3) out << "radical_dim: " << radical(sd->power).size() << "\n";
        out << "code_loop: " << yn(is_code_loop(L)) << "\n";
    });
    std::string cb_file, cb_out;
    CLI::App* cl_build = codeloop->add_subcommand("build", "build a loop realizing a power map");
    cl_build->add_option("powermap", cb_file, "power map text file")->required();
    cl_build->add_option("-o,--output", cb_out, "output table file (default stdout)");
    cl_build->callback(
        [&] { emit_table(build_code_loop(power_map_from_text(slurp_file(cb_file))), cb_out, out); });
    std::string cp_from, cp_to;
    CLI::App* cl_path = codeloop->add_subcommand("path", "plan steps between two power maps");
    cl_path->add_option("from", cp_from, "power map text file")->required();
    cl_path->add_option("to", cp_to, "power map text file")->required();
    cl_path->callback([&] {
        std::vector<CodePathStep> steps = plan_code_path(power_map_from_text(slurp_file(cp_from)),
                                                         power_map_from_text(slurp_file(cp_to)));
        out << "steps: " << steps.size() << "\n";
        for (size_t i = 0; i < steps.size(); ++i) {
            const CodePathStep& st = steps[i];
            if (st.dihedral)
                out << i << ": dihedral u1=" << st.u1 << " u2=" << st.u2
                    << " fixed=" << join_ints(st.fixed_space) << "\n";
            else
                out << i << ": cyclic fixed=" << join_ints(st.fixed_space) << "\n";
        }
    });

    CLI::App* verify = app.add_subcommand("verify", "re-derive and check internal certificates");
    verify->require_subcommand(1);
    std::string ve_table;
    CLI::App* v_ext = verify->add_subcommand("extensions", "factor-set suite over all parameter tuples");
    v_ext->add_option("table", ve_table, "table file or builtin name")->required();
    v_ext->callback([&] {
        LoopTable L = resolve_table_spec(ve_table);
        int count = 0;
        for (const CyclicParams& p : find_cyclic_params(L)) {
            verify_derived(L, p, "cyclic", apply_cyclic(p), out);
            ++count;
        }
        for (const DihedralParams& p : find_dihedral_params(L)) {
            verify_derived(L, p, "dihedral", apply_dihedral(p), out);
            ++count;
        }
        out << "ok: " << count << " tuples\n";
    });

    std::string iso_a, iso_b;
    CLI::App* iso = app.add_subcommand("iso", "decide isomorphism of two tables");
    iso->add_option("a", iso_a, "table file or builtin name")->required();
    iso->add_option("b", iso_b, "table file or builtin name")->required();
    iso->callback([&] {
        LoopTable A = resolve_table_spec(iso_a);
        LoopTable B = resolve_table_spec(iso_b);
        std::optional<std::vector<int>> m = find_isomorphism(A, B);
        out << "isomorphic: " << yn(m.has_value()) << "\n";
        if (m) out << "map: " << join_ints(*m) << "\n";
    });

    std::vector<std::string> cl_seeds;
    int cl_order = 0, cl_jobs = 0;
    bool cl_groups = false;
    std::string cl_dot, cl_summary;
    CLI::App* clo = app.add_subcommand("closure", "closure search over isomorphism classes");
    clo->add_option("--seeds", cl_seeds, "seed specs (builtin, mg2:<spec>, or file)")
        ->required()
        ->delimiter(',');
    clo->add_option("--order", cl_order, "require this loop order");
    clo->add_option("--jobs", cl_jobs, "worker threads (default MOUFANG_JOBS or hardware)");
    clo->add_flag("--include-groups", cl_groups, "keep associative classes");
    clo->add_option("--dot", cl_dot, "write DOT graph to this file");
    clo->add_option("--summary", cl_summary, "write JSON summary to this file");
    clo->callback([&] {
        std::vector<LoopTable> seeds;
        seeds.reserve(cl_seeds.size());
        for (const std::string& s : cl_seeds) seeds.push_back(resolve_table_spec(s));
        if (cl_order > 0)
            for (const LoopTable& s : seeds)
                if (s.size() != cl_order)
                    fail("InvalidParams", "seed order " + std::to_string(s.size()) +
                                              " does not match --order " + std::to_string(cl_order));
        ClosureOptions o;
        o.nonassociative_only = !cl_groups;
        o.jobs = cl_jobs;
        ConstructionGraph g = closure(seeds, o);
        std::vector<ComponentReport> comps = components(g);
        out << "classes: " << g.nodes.size() << "\n";
        out << "components: " << comps.size() << "\n";
        for (size_t i = 0; i < comps.size(); ++i)
            out << "component " << i << ": size=" << comps[i].members.size()
                << " nucleus=" << comps[i].nucleus_size << " associator=" << comps[i].assoc_size
                << "\n";
        if (!cl_dot.empty()) write_text_file(cl_dot, export_dot(g));
        if (!cl_summary.empty()) write_text_file(cl_summary, summary_json(g));
    });

    std::string d_a, d_b;
    CLI::App* dist = app.add_subcommand("distance", "count differing cells of two tables");
    dist->add_option("a", d_a, "table file or builtin name")->required();
    dist->add_option("b", d_b, "table file or builtin name")->required();
    dist->callback(
        [&] { out << table_distance(resolve_table_spec(d_a), resolve_table_spec(d_b)) << "\n"; });

    CLI::App* catalog = app.add_subcommand("catalog", "builtin tables");
    catalog->require_subcommand(1);
    CLI::App* cat_list = catalog->add_subcommand("list", "list builtin names");
    cat_list->callback([&] {
        for (const std::string& n : builtin_names()) out << n << "\n";
    });
    std::string ce_name, ce_out;
    CLI::App* cat_emit = catalog->add_subcommand("emit", "write a builtin table");
    cat_emit->add_option("name", ce_name, "builtin name")->required();
    cat_emit->add_option("-o,--output", ce_out, "output table file (default stdout)");
    cat_emit->callback([&] { emit_table(builtin(ce_name), ce_out, out); });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace moufang
