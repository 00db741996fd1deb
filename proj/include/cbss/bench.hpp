// Seeded instance generation and the benchmark sweep harness. All draws go
// through one RNG wrapper so identical seeds reproduce identical instances,
// node counts, and CSV bytes on every platform.
#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <sstream>

#include "enumerate.hpp"
#include "reduce.hpp"
#include "solve.hpp"

namespace cbss {

struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}
    std::uint64_t next() { return eng(); }
    // Not uniform-distribution based: the standard one is implementation
    // defined, which would break cross-platform byte-identical output.
    int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<unsigned>(n)); }
    bool coin() { return (next() & 1) != 0; }
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// ---- random pieces ---------------------------------------------------------

inline Situation random_situation(Rng& rng, int vars) {
    Situation s;
    s.values.reserve(static_cast<std::size_t>(vars));
    for (int i = 0; i < vars; ++i) s.values.push_back(rng.coin());
    return s;
}

inline Literal random_literal(Rng& rng, const Alphabet& ab) {
    return Literal{rng.below(ab.num_vars), rng.coin()};
}

inline Procedure random_procedure(Rng& rng, const Alphabet& ab, int max_conds) {
    Procedure p;
    const int c = rng.below(max_conds + 1);
    for (int t = 0; t < c; ++t)
        p.branches.push_back(Branch{random_literal(rng, ab), rng.below(ab.num_actions)});
    p.else_action = rng.below(ab.num_actions);
    return p;
}

inline Selector random_selector(Rng& rng, const Alphabet& ab, int max_conds) {
    Selector sel;
    const int c = rng.below(max_conds + 1);
    for (int t = 0; t < c; ++t) sel.conditions.push_back(random_literal(rng, ab));
    return sel;
}

inline Libraries random_libraries(Rng& rng, const Alphabet& ab, int sel_max, int prc_max,
                                  int n_selectors, int n_procedures) {
    Libraries libs;
    for (int i = 0; i < std::max(1, n_selectors); ++i)
        libs.selectors.push_back(random_selector(rng, ab, sel_max));
    for (int i = 0; i < std::max(1, n_procedures); ++i)
        libs.procedures.push_back(random_procedure(rng, ab, prc_max));
    canonicalize(libs);
    return libs;
}

inline System random_assembly(Rng& rng, const Libraries& libs) {
    System sys;
    sys.selector = libs.selectors[static_cast<std::size_t>(
        rng.below(static_cast<int>(libs.selectors.size())))];
    const int slots = sys.selector.slot_count();
    for (int i = 0; i < slots; ++i)
        sys.slots.push_back(libs.procedures[static_cast<std::size_t>(
            rng.below(static_cast<int>(libs.procedures.size())))]);
    return sys;
}

inline Graph random_graph(Rng& rng, int min_n, int max_n) {
    Graph g;
    g.n = min_n + rng.below(max_n - min_n + 1);
    for (int u = 1; u <= g.n; ++u)
        for (int v = u + 1; v <= g.n; ++v)
            if (rng.coin()) g.edges.emplace_back(u, v);
    return g;
}

// ---- random instances -------------------------------------------------------

struct GenConfig {
    int vars = 3;
    int actions = 2;
    int sel_max = 1;
    int prc_max = 1;
    int lib_selectors = 2;
    int lib_procedures = 3;
    int requirements = 3;
    int new_requirements = 1;
    int d = 3;
    int c_c = 1;
    int c_l = 1;
};

inline bool set_config_param(GenConfig& cfg, const std::string& name, int value) {
    if (name == "vars") cfg.vars = value;
    else if (name == "actions") cfg.actions = value;
    else if (name == "sel_max") cfg.sel_max = value;
    else if (name == "prc_max") cfg.prc_max = value;
    else if (name == "lib_selectors") cfg.lib_selectors = value;
    else if (name == "lib_procedures") cfg.lib_procedures = value;
    else if (name == "requirements") cfg.requirements = value;
    else if (name == "new_requirements") cfg.new_requirements = value;
    else if (name == "d") cfg.d = value;
    else if (name == "c_c") cfg.c_c = value;
    else if (name == "c_l") cfg.c_l = value;
    else return false;
    return true;
}

namespace detail {

inline std::vector<Requirement> derived_requirements(Rng& rng, const System& sys, int vars,
                                                     int count) {
    std::vector<Requirement> reqs;
    for (int i = 0; i < count; ++i) {
        Situation s = random_situation(rng, vars);
        const int a = eval_system(sys, s);
        reqs.push_back(Requirement{std::move(s), a});
    }
    return reqs;
}

inline std::vector<Requirement> random_requirements(Rng& rng, const Alphabet& ab, int count) {
    std::vector<Requirement> reqs;
    for (int i = 0; i < count; ++i)
        reqs.push_back(Requirement{random_situation(rng, ab.num_vars), rng.below(ab.num_actions)});
    return reqs;
}

}  // namespace detail

// Deterministic in (kind, cfg, rng state); always yields a valid instance.
// Creation kinds flip between free requirements and requirements read off a
// random structure so both answers occur.
inline ProblemInstance random_instance(ProblemKind kind, const GenConfig& cfg, Rng& rng) {
    ProblemInstance inst;
    inst.kind = kind;
    inst.alphabet = {cfg.vars, cfg.actions};
    const Alphabet& ab = inst.alphabet;

    switch (kind) {
        case ProblemKind::scre_spec: {
            inst.sel_max = cfg.sel_max;
            inst.prc_max = cfg.prc_max;
            if (rng.coin()) {
                System target{random_selector(rng, ab, cfg.sel_max), {}};
                for (int i = 0; i < target.selector.slot_count(); ++i)
                    target.slots.push_back(random_procedure(rng, ab, cfg.prc_max));
                inst.requirements =
                    detail::derived_requirements(rng, target, ab.num_vars, cfg.requirements);
            } else {
                inst.requirements = detail::random_requirements(rng, ab, cfg.requirements);
            }
            break;
        }
        case ProblemKind::scre_comp:
        case ProblemKind::scre_compa: {
            Libraries libs = random_libraries(rng, ab, cfg.sel_max, cfg.prc_max,
                                              cfg.lib_selectors, cfg.lib_procedures);
            if (rng.coin()) {
                System target = random_assembly(rng, libs);
                inst.requirements =
                    detail::derived_requirements(rng, target, ab.num_vars, cfg.requirements);
            } else {
                inst.requirements = detail::random_requirements(rng, ab, cfg.requirements);
            }
            inst.libraries = std::move(libs);
            inst.max_types = cfg.d;
            if (kind == ProblemKind::scre_compa) inst.max_code_changes = cfg.c_c;
            break;
        }
        case ProblemKind::srec_spec: {
            inst.sel_max = cfg.sel_max;
            inst.prc_max = cfg.prc_max;
            System base{random_selector(rng, ab, cfg.sel_max), {}};
            for (int i = 0; i < base.selector.slot_count(); ++i)
                base.slots.push_back(random_procedure(rng, ab, cfg.prc_max));
            inst.requirements =
                detail::derived_requirements(rng, base, ab.num_vars, cfg.requirements);
            inst.new_requirements = detail::random_requirements(rng, ab, cfg.new_requirements);
            inst.base_system = std::move(base);
            inst.max_code_changes = cfg.c_c;
            break;
        }
        case ProblemKind::srec_comp:
        case ProblemKind::srec_compa: {
            Libraries libs = random_libraries(rng, ab, cfg.sel_max, cfg.prc_max,
                                              cfg.lib_selectors, cfg.lib_procedures);
            System base = random_assembly(rng, libs);
            inst.requirements =
                detail::derived_requirements(rng, base, ab.num_vars, cfg.requirements);
            inst.new_requirements = detail::random_requirements(rng, ab, cfg.new_requirements);
            inst.libraries = std::move(libs);
            inst.base_system = std::move(base);
            inst.max_types = cfg.d;
            inst.max_component_changes = cfg.c_l;
            if (kind == ProblemKind::srec_compa) inst.max_code_changes = cfg.c_c;
            break;
        }
    }
    validate_instance(inst);
    return inst;
}

// ---- sweeps ------------------------------------------------------------------

struct BenchRecord {
    ProblemKind kind = ProblemKind::scre_spec;
    Strategy strategy = Strategy::baseline;
    std::string param;
    int value = 0;
    unsigned long long nodes = 0;
    long long millis = 0;
    bool answer = false;
    // not part of the CSV; kept for bound checks on library-driven kinds
    std::optional<unsigned long long> product_bound;
};

inline std::vector<Strategy> applicable_strategies(ProblemKind kind) {
    std::vector<Strategy> out{Strategy::baseline, Strategy::normalized};
    if (strategy_applicable(kind, Strategy::library_product))
        out.push_back(Strategy::library_product);
    return out;
}

inline std::vector<BenchRecord> run_bench(ProblemKind kind, const std::string& param, int from,
                                          int to, std::uint64_t seed, GenConfig base_cfg,
                                          unsigned workers = 1,
                                          std::optional<Strategy> only = std::nullopt) {
    std::vector<BenchRecord> records;
    for (int value = from; value <= to; ++value) {
        GenConfig cfg = base_cfg;
        if (!set_config_param(cfg, param, value))
            throw InvalidInput("unknown sweep parameter '" + param + "'");
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(value)));
        const ProblemInstance inst = random_instance(kind, cfg, rng);
        std::vector<Strategy> strategies =
            only ? std::vector<Strategy>{*only} : applicable_strategies(kind);
        for (Strategy st : strategies) {
            const auto t0 = std::chrono::steady_clock::now();
            const SolveOutcome out = solve(inst, st, workers);
            const auto t1 = std::chrono::steady_clock::now();
            BenchRecord rec;
            rec.kind = kind;
            rec.strategy = st;
            rec.param = param;
            rec.value = value;
            rec.nodes = out.nodes;
            rec.millis = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
            rec.answer = out.witness.has_value();
            if (inst.libraries) rec.product_bound = library_product_bound(*inst.libraries);
            records.push_back(std::move(rec));
        }
    }
    return records;
}

inline std::string bench_csv(const std::vector<BenchRecord>& records) {
    std::ostringstream out;
    out << "kind,strategy,param,value,nodes,millis,answer\n";
    for (const BenchRecord& r : records)
        out << kind_name(r.kind) << ',' << strategy_name(r.strategy) << ',' << r.param << ','
            << r.value << ',' << r.nodes << ',' << r.millis << ',' << (r.answer ? "yes" : "no")
            << '\n';
    return out.str();
}

}  // namespace cbss
