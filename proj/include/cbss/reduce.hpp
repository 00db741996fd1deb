// Dominating-Set reductions: graph parsing, an exhaustive DS oracle, the six
// instance builders (one per problem kind), forward witness construction from
// a dominating set, and an empirical equivalence verifier.
#pragma once

#include <cstdint>
#include <sstream>
#include <string>

#include "model.hpp"
#include "solve.hpp"

namespace cbss {

struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // 1-based, stored u < v, deduped

    friend bool operator==(const Graph&, const Graph&) = default;
};

// Text format: first line "n m", then m lines "u v" (1-based). Lines starting
// with '#' and blank lines are skipped.
inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto next_data_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::size_t i = line.find_first_not_of(" \t");
            if (i == std::string::npos || line[i] == '#') continue;
            out = line;
            return true;
        }
        return false;
    };
    auto fail = [&](const std::string& msg) -> void {
        throw InvalidInput("graph line " + std::to_string(lineno) + ": " + msg);
    };

    std::string header;
    if (!next_data_line(header)) throw InvalidInput("graph file is empty");
    Graph g;
    long m = -1;
    {
        std::istringstream hs(header);
        if (!(hs >> g.n >> m)) fail("expected header 'n m'");
        std::string rest;
        if (hs >> rest) fail("unexpected trailing content after 'n m'");
        if (g.n < 1) fail("vertex count must be at least 1");
        if (m < 0) fail("edge count must be nonnegative");
    }
    for (long e = 0; e < m; ++e) {
        std::string ln;
        if (!next_data_line(ln)) throw InvalidInput("graph: expected " + std::to_string(m) +
                                                    " edge lines, got " + std::to_string(e));
        std::istringstream es(ln);
        int u = 0, v = 0;
        if (!(es >> u >> v)) fail("expected edge 'u v'");
        std::string rest;
        if (es >> rest) fail("unexpected trailing content after edge");
        if (u < 1 || u > g.n || v < 1 || v > g.n) fail("edge endpoint out of range");
        if (u == v) fail("self-loops are not allowed");
        if (u > v) std::swap(u, v);
        g.edges.emplace_back(u, v);
    }
    std::string extra;
    if (next_data_line(extra)) fail("unexpected content after the edge list");
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

inline std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << g.n << ' ' << g.edges.size() << '\n';
    for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
    return out.str();
}

// v together with its neighbors, sorted ascending (1-based).
inline std::vector<int> closed_neighborhood(const Graph& g, int v) {
    if (v < 1 || v > g.n) throw InvalidInput("vertex out of range");
    std::vector<int> nb{v};
    for (auto [a, b] : g.edges) {
        if (a == v) nb.push_back(b);
        if (b == v) nb.push_back(a);
    }
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    return nb;
}

inline bool is_dominating(const Graph& g, const std::vector<int>& set) {
    std::vector<char> covered(static_cast<std::size_t>(g.n) + 1, 0);
    for (int v : set) {
        if (v < 1 || v > g.n) return false;
        for (int u : closed_neighborhood(g, v)) covered[static_cast<std::size_t>(u)] = 1;
    }
    for (int v = 1; v <= g.n; ++v)
        if (!covered[static_cast<std::size_t>(v)]) return false;
    return true;
}

struct DSQuery {
    Graph graph;
    int k = 0;
};

// Exhaustive: sizes ascending, subsets in lexicographic order, so the result
// is the lexicographically first among the minimum-size dominating sets of
// size <= k, or nullopt.
inline std::optional<std::vector<int>> ds_oracle(const DSQuery& q) {
    const Graph& g = q.graph;
    if (q.k < 0) return std::nullopt;
    std::vector<std::uint64_t> masks(static_cast<std::size_t>(g.n) + 1, 0);
    if (g.n > 63) throw InvalidInput("ds oracle supports at most 63 vertices");
    for (int v = 1; v <= g.n; ++v)
        for (int u : closed_neighborhood(g, v)) masks[static_cast<std::size_t>(v)] |= 1ull << u;
    std::uint64_t all = 0;
    for (int v = 1; v <= g.n; ++v) all |= 1ull << v;

    std::vector<int> pick;
    auto combos = [&](auto&& self, int start, int remaining, std::uint64_t covered) -> bool {
        if (covered == all) return true;
        if (remaining == 0) return false;
        for (int v = start; v <= g.n; ++v) {
            pick.push_back(v);
            if (self(self, v + 1, remaining - 1, covered | masks[static_cast<std::size_t>(v)]))
                return true;
            pick.pop_back();
        }
        return false;
    };
    const int cap = std::min(q.k, g.n);
    for (int size = 0; size <= cap; ++size) {
        pick.clear();
        if (combos(combos, 1, size, 0)) return pick;
    }
    return std::nullopt;
}

// ---- reduction builders --------------------------------------------------

struct ReductionParams {
    std::optional<int> num_vars, num_actions, sel_max, prc_max, size_bound;
    std::optional<int> d, c_c, c_l, new_reqs, lib_selectors, lib_procedures;
};

struct ReducedInstance {
    ProblemKind kind = ProblemKind::scre_spec;
    ProblemInstance instance;
    std::vector<int> vertex_to_var;  // vertex v (1-based) -> 0-based encoding variable
    ReductionParams params;
    bool degenerate_default_selector = false;
};

namespace detail {

inline Situation blank_situation(int vars) {
    return Situation{std::vector<bool>(static_cast<std::size_t>(vars), false)};
}

// Rows demanding action 1 for each vertex's closed-neighborhood pattern
// (offset into the variable block), plus optionally an all-false row -> 0.
inline std::vector<Requirement> coverage_rows(const Graph& g, int vars, int offset,
                                              bool mark_row_var, bool extra_true_var,
                                              bool all_false_row) {
    std::vector<Requirement> reqs;
    for (int i = 1; i <= g.n; ++i) {
        Requirement r{blank_situation(vars), 1};
        if (mark_row_var) r.situation.values[static_cast<std::size_t>(i - 1)] = true;
        for (int j : closed_neighborhood(g, i))
            r.situation.values[static_cast<std::size_t>(offset + j - 1)] = true;
        if (extra_true_var) r.situation.values[static_cast<std::size_t>(vars - 1)] = true;
        reqs.push_back(std::move(r));
    }
    if (all_false_row) reqs.push_back(Requirement{blank_situation(vars), 0});
    return reqs;
}

// k guarded branches "if i_t then 1", repeating variable 0 once t exceeds n.
inline Procedure ladder_procedure(int k, int n) {
    Procedure p;
    p.else_action = 0;
    for (int t = 1; t <= k; ++t)
        p.branches.push_back(Branch{Literal{t <= n ? t - 1 : 0, false}, 1});
    return p;
}

inline int smallest_dominator(const Graph& g, int vertex, const std::vector<int>& ds) {
    for (int v : ds) {  // ds is kept sorted ascending
        auto nb = closed_neighborhood(g, v);
        if (std::binary_search(nb.begin(), nb.end(), vertex)) return v;
    }
    throw InvalidInput("set does not dominate the graph");
}

}  // namespace detail

inline ReducedInstance reduce(ProblemKind kind, const Graph& g, int k) {
    if (g.n < 1) throw InvalidInput("graph must have at least one vertex");
    if (k < 0) throw InvalidInput("k must be nonnegative");
    const int n = g.n;
    ReducedInstance red;
    red.kind = kind;
    red.instance.kind = kind;

    switch (kind) {
        case ProblemKind::scre_spec: {
            red.instance.alphabet = {n, 2};
            red.instance.requirements = detail::coverage_rows(g, n, 0, false, false, true);
            red.instance.sel_max = 0;
            red.instance.prc_max = k;
            for (int v = 1; v <= n; ++v) red.vertex_to_var.push_back(v - 1);
            red.params = {n, 2, 0, k, (0 + 1) * (k + 2), 2, {}, {}, {}, {}, {}};
            break;
        }
        case ProblemKind::scre_compa: {
            red.instance.alphabet = {n, 2};
            red.instance.requirements = detail::coverage_rows(g, n, 0, false, false, true);
            Libraries libs;
            libs.selectors.push_back(Selector{});
            libs.procedures.push_back(detail::ladder_procedure(k, n));
            canonicalize(libs);
            red.instance.libraries = std::move(libs);
            red.instance.max_types = 2;
            red.instance.max_code_changes = k;
            for (int v = 1; v <= n; ++v) red.vertex_to_var.push_back(v - 1);
            red.params = {n, 2, 0, k, (0 + 1) * (k + 2), 2, k, {}, {}, 1, 1};
            break;
        }
        case ProblemKind::scre_comp: {
            red.instance.alphabet = {2 * n, 2};
            red.instance.requirements = detail::coverage_rows(g, 2 * n, n, true, false, true);
            Libraries libs;
            Selector sel;
            for (int j = 1; j <= n - 1; ++j) sel.conditions.push_back(Literal{j - 1, false});
            red.degenerate_default_selector = sel.is_default();
            libs.selectors.push_back(sel);
            for (int j = 1; j <= n; ++j)
                libs.procedures.push_back(Procedure{{Branch{Literal{n + j - 1, false}, 1}}, 0});
            canonicalize(libs);
            red.instance.libraries = std::move(libs);
            red.instance.max_types = k + 1;
            for (int v = 1; v <= n; ++v) red.vertex_to_var.push_back(n + v - 1);
            red.params = {2 * n, 2, n - 1, 1, {}, k + 1, {}, {}, {}, 1, n};
            break;
        }
        case ProblemKind::srec_spec:
        case ProblemKind::srec_compa: {
            red.instance.alphabet = {n + 1, 3};
            red.instance.requirements = detail::coverage_rows(g, n + 1, 0, false, true, true);
            Procedure base = detail::ladder_procedure(k, n);
            base.branches.push_back(Branch{Literal{n, false}, 1});
            System sys{Selector{}, {base}};
            Requirement fresh{detail::blank_situation(n + 1), 2};
            fresh.situation.values[static_cast<std::size_t>(n)] = true;
            red.instance.base_system = sys;
            red.instance.new_requirements = {fresh};
            red.instance.max_code_changes = k + 1;
            if (kind == ProblemKind::srec_spec) {
                red.instance.sel_max = 0;
                red.instance.prc_max = k + 1;
                red.params = {n + 1, 3, 0, k + 1, (0 + 1) * (k + 3), 2, k + 1, {}, 1, {}, {}};
            } else {
                Libraries libs;
                libs.selectors.push_back(Selector{});
                libs.procedures.push_back(base);
                canonicalize(libs);
                red.instance.libraries = std::move(libs);
                red.instance.max_types = 2;
                red.instance.max_component_changes = 0;
                red.params = {n + 1, 3, 0, k + 1, (0 + 1) * (k + 3), 2, k + 1, 0, 1, 1, 1};
            }
            for (int v = 1; v <= n; ++v) red.vertex_to_var.push_back(v - 1);
            break;
        }
        case ProblemKind::srec_comp: {
            red.instance.alphabet = {2 * n + 1, 2};
            std::vector<Requirement> reqs =
                detail::coverage_rows(g, 2 * n + 1, n, true, true, false);
            std::vector<Requirement> fresh;
            for (int i = 1; i <= n; ++i) {
                Requirement r{detail::blank_situation(2 * n + 1), 0};
                r.situation.values[static_cast<std::size_t>(i - 1)] = true;
                r.situation.values[static_cast<std::size_t>(2 * n)] = true;
                fresh.push_back(std::move(r));
            }
            Selector pos;
            pos.conditions.push_back(Literal{2 * n, false});
            for (int j = 1; j <= n - 1; ++j) pos.conditions.push_back(Literal{j - 1, false});
            Selector neg = pos;
            neg.conditions[0].negated = true;
            Procedure q{{Branch{Literal{2 * n, false}, 1}}, 1};
            Libraries libs;
            libs.selectors = {pos, neg};
            libs.procedures.push_back(q);
            for (int j = 1; j <= n; ++j)
                libs.procedures.push_back(Procedure{{Branch{Literal{n + j - 1, false}, 1}}, 0});
            canonicalize(libs);
            System sys{pos, std::vector<Procedure>(static_cast<std::size_t>(n) + 1, q)};
            red.instance.requirements = std::move(reqs);
            red.instance.new_requirements = std::move(fresh);
            red.instance.libraries = std::move(libs);
            red.instance.base_system = std::move(sys);
            // d must be k+2: a solution keeps the swapped selector, the
            // always-1 procedure (the swap budget n+1 cannot clear every
            // slot), and up to k coverage procedures, and k+1 would reject
            // valid dominating sets (e.g. two disjoint edges, k = 2).
            red.instance.max_types = k + 2;
            red.instance.max_component_changes = n + 1;
            for (int v = 1; v <= n; ++v) red.vertex_to_var.push_back(n + v - 1);
            red.params = {2 * n + 1, 2, n, 1, {}, k + 2, {}, n + 1, n, 2, n + 1};
            break;
        }
    }
    validate_instance(red.instance);
    return red;
}

// Builds the solution system that a dominating set induces (the forward
// direction of the reduction argument). `ds` must dominate g and have size
// <= the k used to build the instance.
inline System witness_from_ds(ProblemKind kind, const Graph& g, int k,
                              const std::vector<int>& ds_in) {
    std::vector<int> ds = ds_in;
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    if (!is_dominating(g, ds)) throw InvalidInput("set does not dominate the graph");
    if (static_cast<int>(ds.size()) > k) throw InvalidInput("dominating set larger than k");
    const int n = g.n;

    switch (kind) {
        case ProblemKind::scre_spec: {
            Procedure p;
            p.else_action = 0;
            for (int v : ds) p.branches.push_back(Branch{Literal{v - 1, false}, 1});
            return System{Selector{}, {p}};
        }
        case ProblemKind::scre_compa: {
            Procedure p;
            p.else_action = 0;
            for (int t = 0; t < k; ++t) {
                const int v = t < static_cast<int>(ds.size()) ? ds[static_cast<std::size_t>(t)]
                                                              : ds.front();
                p.branches.push_back(Branch{Literal{v - 1, false}, 1});
            }
            return System{Selector{}, {p}};
        }
        case ProblemKind::scre_comp: {
            Selector sel;
            for (int j = 1; j <= n - 1; ++j) sel.conditions.push_back(Literal{j - 1, false});
            System sys{sel, {}};
            for (int slot = 1; slot <= n; ++slot) {
                const int dom = detail::smallest_dominator(g, slot, ds);
                sys.slots.push_back(Procedure{{Branch{Literal{n + dom - 1, false}, 1}}, 0});
            }
            return sys;
        }
        case ProblemKind::srec_spec:
        case ProblemKind::srec_compa: {
            Procedure p;
            p.else_action = 0;
            for (int t = 0; t < k; ++t) {
                const int v = t < static_cast<int>(ds.size()) ? ds[static_cast<std::size_t>(t)]
                                                              : ds.front();
                p.branches.push_back(Branch{Literal{v - 1, false}, 1});
            }
            p.branches.push_back(Branch{Literal{n, false}, 2});
            return System{Selector{}, {p}};
        }
        case ProblemKind::srec_comp: {
            Selector neg;
            neg.conditions.push_back(Literal{2 * n, true});
            for (int j = 1; j <= n - 1; ++j) neg.conditions.push_back(Literal{j - 1, false});
            Procedure q{{Branch{Literal{2 * n, false}, 1}}, 1};
            System sys{neg, {q}};
            for (int slot = 1; slot <= n; ++slot) {
                const int dom = detail::smallest_dominator(g, slot, ds);
                sys.slots.push_back(Procedure{{Branch{Literal{n + dom - 1, false}, 1}}, 0});
            }
            return sys;
        }
    }
    throw InvalidInput("unknown problem kind");
}

struct ReductionReport {
    bool ds_answer = false;
    bool solver_answer = false;
    bool equivalent = false;
    bool witness_checked = false;
    bool witness_ok = false;
    bool degenerate_default_selector = false;
    std::optional<std::vector<int>> dominating_set;
};

// Runs DS oracle and problem solver on the same (G, k) and compares answers;
// when a dominating set exists, also validates the forward witness against
// the instance's own acceptance predicate.
inline ReductionReport verify_reduction(ProblemKind kind, const Graph& g, int k,
                                        Strategy strategy = Strategy::baseline) {
    ReducedInstance red = reduce(kind, g, k);
    ReductionReport rep;
    rep.degenerate_default_selector = red.degenerate_default_selector;
    rep.dominating_set = ds_oracle(DSQuery{g, k});
    rep.ds_answer = rep.dominating_set.has_value();
    rep.solver_answer = decide(red.instance, strategy);
    rep.equivalent = rep.ds_answer == rep.solver_answer;
    if (rep.ds_answer) {
        rep.witness_checked = true;
        System w = witness_from_ds(kind, g, k, *rep.dominating_set);
        rep.witness_ok = instance_accepts(red.instance, w);
    }
    return rep;
}

}  // namespace cbss
