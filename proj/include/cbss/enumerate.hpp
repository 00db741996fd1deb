// Lazy enumeration of procedures, selectors, whole systems, and edit/swap
// neighborhoods, all in canonical ascending order, plus closed-form space
// counts and the loose theoretical bounds used by the bench harness.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include "model.hpp"

namespace cbss {

// Literals are indexed var*2 + negated; index order == canonical order.
inline int literal_index(const Literal& l) { return l.var * 2 + (l.negated ? 1 : 0); }
inline Literal literal_from_index(int idx) { return Literal{idx / 2, (idx % 2) != 0}; }
inline int literal_domain(const Alphabet& ab) { return 2 * ab.num_vars; }

namespace detail {

inline int block_cond_cap(const Alphabet& ab, int max_conds, bool distinct_vars) {
    if (max_conds < 0) return -1;
    return distinct_vars ? std::min(max_conds, ab.num_vars) : max_conds;
}

inline bool var_used(const std::vector<char>& used, int var) {
    return used[static_cast<std::size_t>(var)] != 0;
}

}  // namespace detail

// Visitors return false to stop the stream early; the for_each_* functions
// propagate that (false == stopped early, true == ran to completion).

template <typename F>
bool for_each_procedure(const Alphabet& ab, int max_conds, bool distinct_vars, F&& visit) {
    if (!ab.valid()) throw InvalidInput("alphabet must have at least one variable and one action");
    Procedure p;
    for (int a = 0; a < ab.num_actions; ++a) {
        p.else_action = a;
        if (!visit(static_cast<const Procedure&>(p))) return false;
    }
    const int cap = detail::block_cond_cap(ab, max_conds, distinct_vars);
    const int lits = literal_domain(ab);
    std::vector<char> used(static_cast<std::size_t>(ab.num_vars), 0);

    // Fills branch `depth` of a c-branch procedure; literal-major, action
    // minor, else action innermost: canonical order within each c.
    auto fill = [&](auto&& self, int depth, int c) -> bool {
        if (depth == c) {
            for (int a = 0; a < ab.num_actions; ++a) {
                p.else_action = a;
                if (!visit(static_cast<const Procedure&>(p))) return false;
            }
            return true;
        }
        for (int li = 0; li < lits; ++li) {
            Literal l = literal_from_index(li);
            if (distinct_vars && detail::var_used(used, l.var)) continue;
            if (distinct_vars) used[static_cast<std::size_t>(l.var)] = 1;
            for (int a = 0; a < ab.num_actions; ++a) {
                p.branches[static_cast<std::size_t>(depth)] = Branch{l, a};
                if (!self(self, depth + 1, c)) return false;
            }
            if (distinct_vars) used[static_cast<std::size_t>(l.var)] = 0;
        }
        return true;
    };

    for (int c = 1; c <= cap; ++c) {
        p.branches.assign(static_cast<std::size_t>(c), Branch{});
        p.else_action = 0;
        if (!fill(fill, 0, c)) return false;
    }
    return true;
}

template <typename F>
bool for_each_selector(const Alphabet& ab, int max_conds, bool distinct_vars, F&& visit) {
    if (!ab.valid()) throw InvalidInput("alphabet must have at least one variable and one action");
    Selector sel;
    if (!visit(static_cast<const Selector&>(sel))) return false;  // Default first
    const int cap = detail::block_cond_cap(ab, max_conds, distinct_vars);
    const int lits = literal_domain(ab);
    std::vector<char> used(static_cast<std::size_t>(ab.num_vars), 0);

    auto fill = [&](auto&& self, int depth, int c) -> bool {
        if (depth == c) return visit(static_cast<const Selector&>(sel));
        for (int li = 0; li < lits; ++li) {
            Literal l = literal_from_index(li);
            if (distinct_vars && detail::var_used(used, l.var)) continue;
            if (distinct_vars) used[static_cast<std::size_t>(l.var)] = 1;
            sel.conditions[static_cast<std::size_t>(depth)] = l;
            if (!self(self, depth + 1, c)) return false;
            if (distinct_vars) used[static_cast<std::size_t>(l.var)] = 0;
        }
        return true;
    };

    for (int c = 1; c <= cap; ++c) {
        sel.conditions.assign(static_cast<std::size_t>(c), Literal{});
        if (!fill(fill, 0, c)) return false;
    }
    return true;
}

namespace detail {

// Odometer over slot assignments from a fixed ascending block list.
template <typename F>
bool fill_slots(System& sys, const std::vector<Procedure>& procs, std::size_t idx, F&& visit) {
    if (idx == sys.slots.size()) return visit(static_cast<const System&>(sys));
    for (const Procedure& p : procs) {
        sys.slots[idx] = p;
        if (!fill_slots(sys, procs, idx + 1, visit)) return false;
    }
    return true;
}

}  // namespace detail

// Every system consistent with the structure spec, canonical ascending.
template <typename F>
bool for_each_system_spec(const StructureSpec& spec, bool distinct_vars, F&& visit) {
    std::vector<Procedure> procs;
    for_each_procedure(spec.alphabet, spec.prc_max, distinct_vars, [&](const Procedure& p) {
        procs.push_back(p);
        return true;
    });
    System sys;
    return for_each_selector(spec.alphabet, spec.sel_max, distinct_vars, [&](const Selector& sel) {
        sys.selector = sel;
        sys.slots.assign(static_cast<std::size_t>(sel.slot_count()), Procedure{});
        return detail::fill_slots(sys, procs, 0, visit);
    });
}

// Every assembly of library components (optionally restricted to selectors
// with at most sel_cap conditions), canonical ascending. Empty libraries
// yield an empty stream.
template <typename F>
bool for_each_system_comp(const Libraries& libs, std::optional<int> sel_cap, F&& visit) {
    Libraries local = libs;
    canonicalize(local);
    if (sel_cap)
        local.selectors.erase(
            std::remove_if(local.selectors.begin(), local.selectors.end(),
                           [&](const Selector& s) { return s.cond_count() > *sel_cap; }),
            local.selectors.end());
    if (local.selectors.empty() || local.procedures.empty()) return true;
    System sys;
    for (const Selector& sel : local.selectors) {
        sys.selector = sel;
        sys.slots.assign(static_cast<std::size_t>(sel.slot_count()), Procedure{});
        if (!detail::fill_slots(sys, local.procedures, 0, visit)) return false;
    }
    return true;
}

// Every system within `max_changes` token replacements of `base` (same
// skeleton; condition literals and action tokens are replaceable), base
// included, in canonical == lexicographic token order, each exactly once.
template <typename F>
bool for_each_code_neighbor(const System& base, int max_changes, const Alphabet& ab, F&& visit) {
    validate_system(base, ab);
    if (max_changes < 0) return true;
    System cur = base;

    struct Tok {
        Literal* lit = nullptr;
        int* act = nullptr;
    };
    std::vector<Tok> toks;
    for (Literal& l : cur.selector.conditions) toks.push_back({&l, nullptr});
    for (Procedure& p : cur.slots) {
        for (Branch& b : p.branches) {
            toks.push_back({&b.condition, nullptr});
            toks.push_back({nullptr, &b.action});
        }
        toks.push_back({nullptr, &p.else_action});
    }
    std::vector<int> basev(toks.size());
    for (std::size_t i = 0; i < toks.size(); ++i)
        basev[i] = toks[i].lit ? literal_index(*toks[i].lit) : *toks[i].act;

    const int lits = literal_domain(ab);
    // Invariant: tokens >= idx currently hold their base values.
    auto walk = [&](auto&& self, std::size_t idx, int rem) -> bool {
        if (idx == toks.size() || rem == 0) return visit(static_cast<const System&>(cur));
        const Tok& t = toks[idx];
        const int domain = t.lit ? lits : ab.num_actions;
        for (int v = 0; v < domain; ++v) {
            if (t.lit)
                *t.lit = literal_from_index(v);
            else
                *t.act = v;
            if (!self(self, idx + 1, rem - (v != basev[idx]))) return false;
        }
        if (t.lit)
            *t.lit = literal_from_index(basev[idx]);
        else
            *t.act = basev[idx];
        return true;
    };
    return walk(walk, 0, max_changes);
}

// Every system reachable from `base` by at most `max_changes` component
// swaps against the libraries, base included, canonical ascending, each
// exactly once.
template <typename F>
bool for_each_component_neighbor(const System& base, const Libraries& libs, int max_changes,
                                 F&& visit) {
    if (static_cast<int>(base.slots.size()) != base.selector.slot_count())
        throw InvalidInput("system must supply exactly one procedure per selector slot");
    if (max_changes < 0) return true;

    std::vector<Selector> sels;
    for (const Selector& s : libs.selectors)
        if (s.cond_count() == base.selector.cond_count()) sels.push_back(s);
    sels.push_back(base.selector);
    std::sort(sels.begin(), sels.end());
    sels.erase(std::unique(sels.begin(), sels.end()), sels.end());

    std::vector<Procedure> lib_procs = libs.procedures;
    std::sort(lib_procs.begin(), lib_procs.end());
    lib_procs.erase(std::unique(lib_procs.begin(), lib_procs.end()), lib_procs.end());
    std::vector<std::vector<Procedure>> slot_cands(base.slots.size());
    for (std::size_t i = 0; i < base.slots.size(); ++i) {
        auto& c = slot_cands[i];
        c = lib_procs;
        auto pos = std::lower_bound(c.begin(), c.end(), base.slots[i]);
        if (pos == c.end() || *pos != base.slots[i]) c.insert(pos, base.slots[i]);
    }

    System cur;
    auto fill = [&](auto&& self, std::size_t idx, int rem) -> bool {
        if (idx == cur.slots.size()) return visit(static_cast<const System&>(cur));
        for (const Procedure& p : slot_cands[idx]) {
            const int cost = p != base.slots[idx] ? 1 : 0;
            if (cost > rem) continue;
            cur.slots[idx] = p;
            if (!self(self, idx + 1, rem - cost)) return false;
        }
        return true;
    };
    for (const Selector& s : sels) {
        const int cost = s != base.selector ? 1 : 0;
        if (cost > max_changes) continue;
        cur.selector = s;
        cur.slots.assign(base.slots.size(), Procedure{});
        if (!fill(fill, 0, max_changes - cost)) return false;
    }
    return true;
}

// ---- closed-form counts ------------------------------------------------

inline unsigned long long sat_add(unsigned long long a, unsigned long long b) {
    unsigned long long r = a + b;
    return r < a ? std::numeric_limits<unsigned long long>::max() : r;
}

inline unsigned long long sat_mul(unsigned long long a, unsigned long long b) {
    if (a == 0 || b == 0) return 0;
    if (a > std::numeric_limits<unsigned long long>::max() / b)
        return std::numeric_limits<unsigned long long>::max();
    return a * b;
}

inline unsigned long long sat_pow(unsigned long long base, unsigned exp) {
    unsigned long long r = 1;
    while (exp--) r = sat_mul(r, base);
    return r;
}

// Number of condition-list arrangements of length c.
inline unsigned long long count_condition_lists(const Alphabet& ab, int c, bool distinct_vars) {
    if (c == 0) return 1;
    if (!distinct_vars) return sat_pow(static_cast<unsigned long long>(literal_domain(ab)),
                                       static_cast<unsigned>(c));
    if (c > ab.num_vars) return 0;
    unsigned long long r = 1;
    for (int t = 0; t < c; ++t)
        r = sat_mul(r, 2ull * static_cast<unsigned long long>(ab.num_vars - t));
    return r;
}

inline unsigned long long count_procedures(const Alphabet& ab, int max_conds, bool distinct_vars) {
    const int cap = detail::block_cond_cap(ab, max_conds, distinct_vars);
    const auto acts = static_cast<unsigned long long>(ab.num_actions);
    unsigned long long total = acts;  // single-action forms
    for (int c = 1; c <= cap; ++c)
        total = sat_add(total, sat_mul(count_condition_lists(ab, c, distinct_vars),
                                       sat_pow(acts, static_cast<unsigned>(c) + 1)));
    return total;
}

inline unsigned long long count_selectors(const Alphabet& ab, int max_conds, bool distinct_vars) {
    const int cap = detail::block_cond_cap(ab, max_conds, distinct_vars);
    unsigned long long total = 1;  // Default
    for (int c = 1; c <= cap; ++c)
        total = sat_add(total, count_condition_lists(ab, c, distinct_vars));
    return total;
}

inline unsigned long long count_systems_spec(const StructureSpec& spec, bool distinct_vars) {
    const unsigned long long procs = count_procedures(spec.alphabet, spec.prc_max, distinct_vars);
    const int cap = detail::block_cond_cap(spec.alphabet, spec.sel_max, distinct_vars);
    unsigned long long total = 0;
    for (int c = 0; c <= cap; ++c)
        total = sat_add(total, sat_mul(count_condition_lists(spec.alphabet, c, distinct_vars),
                                       sat_pow(procs, static_cast<unsigned>(c) + 1)));
    return total;
}

inline unsigned long long count_systems_comp(const Libraries& libs, std::optional<int> sel_cap) {
    Libraries local = libs;
    canonicalize(local);
    unsigned long long total = 0;
    for (const Selector& s : local.selectors) {
        if (sel_cap && s.cond_count() > *sel_cap) continue;
        total = sat_add(total, sat_pow(static_cast<unsigned long long>(local.procedures.size()),
                                       static_cast<unsigned>(s.slot_count())));
    }
    return total;
}

// ---- loose theoretical bounds -----------------------------------------

// Bound on the number of normalized blocks over n variables:
// (n+1) * (2n)^(n+1) * (n+1)^(n+1). Deliberately loose.
inline long double spec_block_bound(int num_vars) {
    const long double n = num_vars;
    return (n + 1) * std::pow(2 * n, n + 1) * std::pow(n + 1, n + 1);
}

// Bound on the number of normalized systems over n variables:
// block_bound^(n+3) * (n+2)^(n+2). Deliberately loose.
inline long double spec_system_bound(int num_vars) {
    const long double n = num_vars;
    return std::pow(spec_block_bound(num_vars), n + 3) * std::pow(n + 2, n + 2);
}

// Exact assembly-space size: sum over library selectors of
// |procedures|^slot_count. Also an upper bound for swap neighborhoods of a
// library-assembled base.
inline unsigned long long library_product_bound(const Libraries& libs,
                                                std::optional<int> sel_cap = std::nullopt) {
    return count_systems_comp(libs, sel_cap);
}

struct SearchSpaceStats {
    unsigned long long exact_count = 0;
    long double theoretical_bound = 0;
};

inline SearchSpaceStats spec_space_stats(const StructureSpec& spec, bool distinct_vars) {
    return {count_systems_spec(spec, distinct_vars), spec_system_bound(spec.alphabet.num_vars)};
}

inline SearchSpaceStats comp_space_stats(const Libraries& libs,
                                         std::optional<int> sel_cap = std::nullopt) {
    const unsigned long long n = count_systems_comp(libs, sel_cap);
    return {n, static_cast<long double>(n)};
}

}  // namespace cbss
