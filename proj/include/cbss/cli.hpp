// Command line surface: check / solve / ds / reduce / verify-reduction /
// bench. Results go to stdout (or --out, written atomically); diagnostics go
// to stderr. Exit codes: 0 = yes/solution/valid, 2 = no/bottom, 1 = usage or
// input errors.
#pragma once

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <tuple>

#include "bench.hpp"
#include "io.hpp"
#include "reduce.hpp"
#include "solve.hpp"

namespace cbss {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidInput("cannot open file for writing: " + tmp);
        out << content;
        out.flush();
        if (!out) throw InvalidInput("failed writing: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw InvalidInput("cannot move output into place: " + path);
}

namespace detail {

inline void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file_atomic(out_path, content);
}

inline ProblemKind kind_arg(const std::string& name) {
    auto k = parse_kind(name);
    if (!k) throw InvalidInput("unknown problem kind '" + name + "'");
    return *k;
}

inline Strategy strategy_arg(const std::string& name) {
    auto s = parse_strategy(name);
    if (!s) throw InvalidInput("unknown strategy '" + name + "'");
    return *s;
}

// "name=lo..hi" -> (name, lo, hi)
inline std::tuple<std::string, int, int> parse_sweep(const std::string& spec) {
    const std::size_t eq = spec.find('=');
    const std::size_t dots = spec.find("..");
    if (eq == std::string::npos || dots == std::string::npos || dots < eq)
        throw InvalidInput("--sweep expects NAME=LO..HI, got '" + spec + "'");
    const std::string name = spec.substr(0, eq);
    int lo = 0, hi = 0;
    try {
        std::size_t used = 0;
        lo = std::stoi(spec.substr(eq + 1, dots - eq - 1), &used);
        if (used != dots - eq - 1) throw std::invalid_argument("lo");
        hi = std::stoi(spec.substr(dots + 2), &used);
        if (used != spec.size() - dots - 2) throw std::invalid_argument("hi");
    } catch (const std::exception&) {
        throw InvalidInput("--sweep expects NAME=LO..HI, got '" + spec + "'");
    }
    if (lo > hi) throw InvalidInput("sweep range is empty: '" + spec + "'");
    return {name, lo, hi};
}

inline std::string join_vertices(const std::vector<int>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(vs[i]);
    }
    return out;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"exact workbench for two-level selector/procedure systems"};
    app.require_subcommand(1);
    int exit_code = 0;

    const std::vector<std::string> strategies{"baseline", "normalized", "library-product"};

    // check
    auto* check = app.add_subcommand("check", "parse and validate an instance document");
    std::string check_file;
    check->add_option("file", check_file, "instance document")->required();
    check->callback([&] {
        const ProblemInstance inst = parse_instance(read_file(check_file));
        std::cout << "ok: " << kind_name(inst.kind) << " instance\n"
                  << "vars=" << inst.alphabet.num_vars << '\n'
                  << "actions=" << inst.alphabet.num_actions << '\n'
                  << "requirements=" << inst.requirements.size() << '\n';
        if (!inst.new_requirements.empty())
            std::cout << "new_requirements=" << inst.new_requirements.size() << '\n';
    });

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "run the exact solver on an instance document");
    std::string solve_file, solve_strategy = "baseline", solve_out;
    unsigned solve_workers = 1;
    solve_cmd->add_option("file", solve_file, "instance document")->required();
    solve_cmd->add_option("--strategy", solve_strategy, "search strategy")
        ->check(CLI::IsMember(strategies));
    solve_cmd->add_option("--workers", solve_workers, "parallel workers")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--out", solve_out, "write the solution document to this file");
    solve_cmd->callback([&] {
        const ProblemInstance inst = parse_instance(read_file(solve_file));
        const SolveOutcome out =
            solve(inst, detail::strategy_arg(solve_strategy), solve_workers);
        detail::emit(solution_document(inst, out), solve_out);
        exit_code = out.witness ? 0 : 2;
    });

    // ds
    auto* ds_cmd = app.add_subcommand("ds", "exhaustive dominating-set oracle on a graph file");
    std::string ds_file;
    int ds_k = 0;
    ds_cmd->add_option("graph", ds_file, "graph file")->required();
    ds_cmd->add_option("k", ds_k, "maximum set size")->required()->check(CLI::NonNegativeNumber);
    ds_cmd->callback([&] {
        const Graph g = parse_graph(read_file(ds_file));
        const auto ds = ds_oracle(DSQuery{g, ds_k});
        if (ds) {
            std::cout << "vertices=" << detail::join_vertices(*ds) << '\n'
                      << "size=" << ds->size() << '\n';
        } else {
            std::cout << "none\n";
            exit_code = 2;
        }
    });

    // reduce
    auto* red_cmd =
        app.add_subcommand("reduce", "emit the instance a graph reduces to, as a document");
    std::string red_kind, red_file, red_out;
    int red_k = 0;
    red_cmd->add_option("kind", red_kind, "problem kind")->required();
    red_cmd->add_option("graph", red_file, "graph file")->required();
    red_cmd->add_option("k", red_k, "dominating-set budget")
        ->required()
        ->check(CLI::NonNegativeNumber);
    red_cmd->add_option("--out", red_out, "write the instance document to this file");
    red_cmd->callback([&] {
        const Graph g = parse_graph(read_file(red_file));
        const ReducedInstance red = reduce(detail::kind_arg(red_kind), g, red_k);
        std::ostringstream doc;
        doc << "# reduction of dominating-set query (n=" << g.n << ", m=" << g.edges.size()
            << ", k=" << red_k << ") to " << kind_name(red.kind) << '\n';
        doc << "# vertex_to_var:";
        for (int v = 1; v <= g.n; ++v)
            doc << ' ' << 'v' << v << "->i" << red.vertex_to_var[static_cast<std::size_t>(v - 1)] + 1;
        doc << '\n';
        if (red.degenerate_default_selector) doc << "# degenerate_default_selector=yes\n";
        doc << serialize_instance(red.instance);
        detail::emit(doc.str(), red_out);
    });

    // verify-reduction
    auto* ver_cmd = app.add_subcommand(
        "verify-reduction", "compare the DS oracle and the solver on a reduced instance");
    std::string ver_kind, ver_file, ver_strategy = "baseline";
    int ver_k = 0;
    ver_cmd->add_option("kind", ver_kind, "problem kind")->required();
    ver_cmd->add_option("graph", ver_file, "graph file")->required();
    ver_cmd->add_option("k", ver_k, "dominating-set budget")
        ->required()
        ->check(CLI::NonNegativeNumber);
    ver_cmd->add_option("--strategy", ver_strategy, "search strategy")
        ->check(CLI::IsMember(strategies));
    ver_cmd->callback([&] {
        const Graph g = parse_graph(read_file(ver_file));
        const ReductionReport rep = verify_reduction(detail::kind_arg(ver_kind), g, ver_k,
                                                     detail::strategy_arg(ver_strategy));
        std::cout << "ds=" << (rep.ds_answer ? "yes" : "no") << '\n';
        if (rep.dominating_set)
            std::cout << "vertices=" << detail::join_vertices(*rep.dominating_set) << '\n';
        std::cout << "solver=" << (rep.solver_answer ? "yes" : "no") << '\n'
                  << "equivalent=" << (rep.equivalent ? "yes" : "no") << '\n'
                  << "witness="
                  << (rep.witness_checked ? (rep.witness_ok ? "ok" : "failed") : "skipped") << '\n'
                  << "degenerate_default_selector="
                  << (rep.degenerate_default_selector ? "yes" : "no") << '\n';
        const bool pass = rep.equivalent && (!rep.witness_checked || rep.witness_ok);
        exit_code = pass ? 0 : 2;
    });

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "seeded parameter sweep, CSV output");
    std::string bench_kind, bench_sweep, bench_out, bench_strategy;
    std::uint64_t bench_seed = 1;
    unsigned bench_workers = 1;
    GenConfig cfg;
    bench_cmd->add_option("kind", bench_kind, "problem kind")->required();
    bench_cmd->add_option("--sweep", bench_sweep, "swept parameter as NAME=LO..HI")->required();
    bench_cmd->add_option("--seed", bench_seed, "generator seed");
    bench_cmd->add_option("--workers", bench_workers, "parallel workers")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--strategy", bench_strategy, "restrict to one strategy")
        ->check(CLI::IsMember(strategies));
    bench_cmd->add_option("--out", bench_out, "write the CSV to this file");
    bench_cmd->add_option("--vars", cfg.vars, "generator: variable count");
    bench_cmd->add_option("--actions", cfg.actions, "generator: action count");
    bench_cmd->add_option("--sel-max", cfg.sel_max, "generator: selector condition cap");
    bench_cmd->add_option("--prc-max", cfg.prc_max, "generator: procedure condition cap");
    bench_cmd->add_option("--lib-sel", cfg.lib_selectors, "generator: library selectors");
    bench_cmd->add_option("--lib-prc", cfg.lib_procedures, "generator: library procedures");
    bench_cmd->add_option("--reqs", cfg.requirements, "generator: requirement rows");
    bench_cmd->add_option("--new-reqs", cfg.new_requirements, "generator: new requirement rows");
    bench_cmd->add_option("--d", cfg.d, "generator: component-type budget");
    bench_cmd->add_option("--cc", cfg.c_c, "generator: code-change budget");
    bench_cmd->add_option("--cl", cfg.c_l, "generator: component-change budget");
    bench_cmd->callback([&] {
        const auto [param, from, to] = detail::parse_sweep(bench_sweep);
        std::optional<Strategy> only;
        if (!bench_strategy.empty()) only = detail::strategy_arg(bench_strategy);
        const auto records = run_bench(detail::kind_arg(bench_kind), param, from, to, bench_seed,
                                       cfg, bench_workers, only);
        detail::emit(bench_csv(records), bench_out);
    });

    std::vector<std::string> argv_store{"cbss"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_store.size());
    for (const std::string& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const ParseError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const InvalidInput& e) {
        std::cerr << "error[input]: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}

}  // namespace cbss
