// Core value types for two-level selector/procedure systems: literals,
// procedures, selectors, systems, requirements, plus evaluation, satisfaction,
// metrics, distances and behavior-preserving normalization.
#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cbss {

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Alphabet {
    int num_vars = 1;
    int num_actions = 1;

    bool valid() const { return num_vars >= 1 && num_actions >= 1; }
    friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

// A situation assigns a truth value to every input variable.
struct Situation {
    std::vector<bool> values;

    std::size_t size() const { return values.size(); }
    bool operator[](std::size_t i) const { return values[i]; }
    friend bool operator==(const Situation&, const Situation&) = default;
    friend auto operator<=>(const Situation&, const Situation&) = default;
};

struct Requirement {
    Situation situation;
    int action = 0;

    friend bool operator==(const Requirement&, const Requirement&) = default;
};

// Ordered (var asc, positive before negated); this ordering is load-bearing
// for canonical enumeration order.
struct Literal {
    int var = 0;
    bool negated = false;

    bool holds(const Situation& s) const { return s[static_cast<std::size_t>(var)] != negated; }
    friend bool operator==(const Literal&, const Literal&) = default;
    friend auto operator<=>(const Literal&, const Literal&) = default;
};

struct Branch {
    Literal condition;
    int action = 0;

    friend bool operator==(const Branch&, const Branch&) = default;
    friend auto operator<=>(const Branch&, const Branch&) = default;
};

// A procedure is a decision list. An empty branch list is the unconditional
// single-action form; else_action is then the action it always performs.
struct Procedure {
    std::vector<Branch> branches;
    int else_action = 0;

    bool single_action() const { return branches.empty(); }
    int cond_count() const { return static_cast<int>(branches.size()); }

    friend bool operator==(const Procedure&, const Procedure&) = default;
    // Canonical order: condition count first, then branch list, then else.
    friend std::strong_ordering operator<=>(const Procedure& a, const Procedure& b) {
        if (auto c = a.branches.size() <=> b.branches.size(); c != 0) return c;
        for (std::size_t i = 0; i < a.branches.size(); ++i)
            if (auto c = a.branches[i] <=> b.branches[i]; c != 0) return c;
        return a.else_action <=> b.else_action;
    }
};

// Selector shape: an empty condition list is the Default selector (one slot);
// with c conditions it routes to c+1 slots (one per condition plus a final
// fall-through slot). Guarded selectors must have at least one condition.
struct Selector {
    std::vector<Literal> conditions;

    bool is_default() const { return conditions.empty(); }
    int cond_count() const { return static_cast<int>(conditions.size()); }
    int slot_count() const { return static_cast<int>(conditions.size()) + 1; }

    friend bool operator==(const Selector&, const Selector&) = default;
    friend std::strong_ordering operator<=>(const Selector& a, const Selector& b) {
        if (auto c = a.conditions.size() <=> b.conditions.size(); c != 0) return c;
        for (std::size_t i = 0; i < a.conditions.size(); ++i)
            if (auto c = a.conditions[i] <=> b.conditions[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }
};

// A system pairs a selector with one procedure per slot.
struct System {
    Selector selector;
    std::vector<Procedure> slots;

    friend bool operator==(const System&, const System&) = default;
    friend std::strong_ordering operator<=>(const System& a, const System& b) {
        if (auto c = a.selector <=> b.selector; c != 0) return c;
        if (auto c = a.slots.size() <=> b.slots.size(); c != 0) return c;
        for (std::size_t i = 0; i < a.slots.size(); ++i)
            if (auto c = a.slots[i] <=> b.slots[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }
};

struct StructureSpec {
    Alphabet alphabet;
    int sel_max = 0;  // max selector conditions
    int prc_max = 0;  // max procedure conditions

    friend bool operator==(const StructureSpec&, const StructureSpec&) = default;
};

struct Libraries {
    std::vector<Selector> selectors;
    std::vector<Procedure> procedures;

    friend bool operator==(const Libraries&, const Libraries&) = default;
};

inline void canonicalize(Libraries& libs) {
    std::sort(libs.selectors.begin(), libs.selectors.end());
    libs.selectors.erase(std::unique(libs.selectors.begin(), libs.selectors.end()),
                         libs.selectors.end());
    std::sort(libs.procedures.begin(), libs.procedures.end());
    libs.procedures.erase(std::unique(libs.procedures.begin(), libs.procedures.end()),
                          libs.procedures.end());
}

// ---- validity ---------------------------------------------------------

inline bool valid_literal(const Literal& l, const Alphabet& ab) {
    return l.var >= 0 && l.var < ab.num_vars;
}

inline bool valid_action(int a, const Alphabet& ab) { return a >= 0 && a < ab.num_actions; }

inline bool valid_procedure(const Procedure& p, const Alphabet& ab) {
    for (const Branch& b : p.branches)
        if (!valid_literal(b.condition, ab) || !valid_action(b.action, ab)) return false;
    return valid_action(p.else_action, ab);
}

inline bool valid_selector(const Selector& sel, const Alphabet& ab) {
    for (const Literal& l : sel.conditions)
        if (!valid_literal(l, ab)) return false;
    return true;
}

inline bool valid_system(const System& sys, const Alphabet& ab) {
    if (static_cast<int>(sys.slots.size()) != sys.selector.slot_count()) return false;
    if (!valid_selector(sys.selector, ab)) return false;
    for (const Procedure& p : sys.slots)
        if (!valid_procedure(p, ab)) return false;
    return true;
}

inline void validate_system(const System& sys, const Alphabet& ab) {
    if (!ab.valid()) throw InvalidInput("alphabet must have at least one variable and one action");
    if (static_cast<int>(sys.slots.size()) != sys.selector.slot_count())
        throw InvalidInput("system must supply exactly one procedure per selector slot");
    if (!valid_system(sys, ab)) throw InvalidInput("system references indices outside the alphabet");
}

// Largest variable index mentioned anywhere in the system, or -1.
inline int max_var(const System& sys) {
    int m = -1;
    for (const Literal& l : sys.selector.conditions) m = std::max(m, l.var);
    for (const Procedure& p : sys.slots)
        for (const Branch& b : p.branches) m = std::max(m, b.condition.var);
    return m;
}

// ---- evaluation -------------------------------------------------------

namespace detail {

inline int eval_procedure_unchecked(const Procedure& p, const Situation& s) {
    for (const Branch& b : p.branches)
        if (b.condition.holds(s)) return b.action;
    return p.else_action;
}

inline int eval_system_unchecked(const System& sys, const Situation& s) {
    const auto& conds = sys.selector.conditions;
    for (std::size_t i = 0; i < conds.size(); ++i)
        if (conds[i].holds(s)) return eval_procedure_unchecked(sys.slots[i], s);
    return eval_procedure_unchecked(sys.slots.back(), s);
}

}  // namespace detail

inline int eval_procedure(const Procedure& p, const Situation& s) {
    for (const Branch& b : p.branches)
        if (b.condition.var < 0 || static_cast<std::size_t>(b.condition.var) >= s.size())
            throw InvalidInput("procedure condition variable out of range for situation");
    return detail::eval_procedure_unchecked(p, s);
}

inline int eval_system(const System& sys, const Situation& s) {
    if (static_cast<int>(sys.slots.size()) != sys.selector.slot_count())
        throw InvalidInput("system must supply exactly one procedure per selector slot");
    if (max_var(sys) >= static_cast<int>(s.size()))
        throw InvalidInput("system variable out of range for situation");
    return detail::eval_system_unchecked(sys, s);
}

struct EvalCount {
    int action = 0;
    int conditions_evaluated = 0;
};

// Instrumented evaluation; counts every condition test performed.
inline EvalCount eval_system_counted(const System& sys, const Situation& s) {
    if (static_cast<int>(sys.slots.size()) != sys.selector.slot_count())
        throw InvalidInput("system must supply exactly one procedure per selector slot");
    if (max_var(sys) >= static_cast<int>(s.size()))
        throw InvalidInput("system variable out of range for situation");
    EvalCount ec;
    const Procedure* chosen = &sys.slots.back();
    const auto& conds = sys.selector.conditions;
    for (std::size_t i = 0; i < conds.size(); ++i) {
        ++ec.conditions_evaluated;
        if (conds[i].holds(s)) {
            chosen = &sys.slots[i];
            break;
        }
    }
    for (const Branch& b : chosen->branches) {
        ++ec.conditions_evaluated;
        if (b.condition.holds(s)) {
            ec.action = b.action;
            return ec;
        }
    }
    ec.action = chosen->else_action;
    return ec;
}

struct Satisfaction {
    bool ok = true;
    std::vector<int> violations;  // indices into the requirement list
};

namespace detail {

inline void check_requirements_against(const System& sys, const std::vector<Requirement>& reqs) {
    if (reqs.empty()) return;
    const std::size_t len = reqs.front().situation.size();
    for (const Requirement& r : reqs)
        if (r.situation.size() != len)
            throw InvalidInput("requirement situations disagree on variable count");
    if (max_var(sys) >= static_cast<int>(len))
        throw InvalidInput("system variable out of range for requirement situations");
    if (static_cast<int>(sys.slots.size()) != sys.selector.slot_count())
        throw InvalidInput("system must supply exactly one procedure per selector slot");
}

}  // namespace detail

// Full verdict: every violated requirement index, in input order.
inline Satisfaction satisfies(const System& sys, const std::vector<Requirement>& reqs) {
    detail::check_requirements_against(sys, reqs);
    Satisfaction v;
    for (std::size_t i = 0; i < reqs.size(); ++i)
        if (detail::eval_system_unchecked(sys, reqs[i].situation) != reqs[i].action) {
            v.ok = false;
            v.violations.push_back(static_cast<int>(i));
        }
    return v;
}

// Early-exit variant for search loops.
inline bool satisfies_all(const System& sys, const std::vector<Requirement>& reqs) {
    detail::check_requirements_against(sys, reqs);
    for (const Requirement& r : reqs)
        if (detail::eval_system_unchecked(sys, r.situation) != r.action) return false;
    return true;
}

// ---- metrics ----------------------------------------------------------

inline bool consistent_with(const System& sys, const StructureSpec& spec) {
    if (!valid_system(sys, spec.alphabet)) return false;
    if (sys.selector.cond_count() > spec.sel_max) return false;
    for (const Procedure& p : sys.slots)
        if (p.cond_count() > spec.prc_max) return false;
    return true;
}

// Size budget of any structure within the spec: (sel_max+1)*(prc_max+2).
inline int size_bound(const StructureSpec& spec) {
    return (spec.sel_max + 1) * (spec.prc_max + 2);
}

// 1 for the selector plus the number of structurally distinct slot procedures.
inline int component_type_count(const System& sys) {
    std::set<Procedure> distinct(sys.slots.begin(), sys.slots.end());
    return 1 + static_cast<int>(distinct.size());
}

struct SystemMetrics {
    int selector_conds = 0;
    int max_procedure_conds = 0;
    int size_bound = 0;  // (selector_conds+1)*(max_procedure_conds+2)
    int component_types = 0;
};

inline SystemMetrics system_metrics(const System& sys) {
    SystemMetrics m;
    m.selector_conds = sys.selector.cond_count();
    for (const Procedure& p : sys.slots) m.max_procedure_conds = std::max(m.max_procedure_conds, p.cond_count());
    m.size_bound = (m.selector_conds + 1) * (m.max_procedure_conds + 2);
    m.component_types = component_type_count(sys);
    return m;
}

// ---- distances --------------------------------------------------------

// Hamming distance over the token sequence (condition literals and action
// tokens), defined only for systems sharing a skeleton: same selector
// condition count and slot-wise equal branch counts.
inline std::optional<int> code_distance(const System& a, const System& b) {
    if (a.selector.cond_count() != b.selector.cond_count()) return std::nullopt;
    if (a.slots.size() != b.slots.size()) return std::nullopt;
    for (std::size_t i = 0; i < a.slots.size(); ++i)
        if (a.slots[i].branches.size() != b.slots[i].branches.size()) return std::nullopt;
    int d = 0;
    for (std::size_t i = 0; i < a.selector.conditions.size(); ++i)
        d += a.selector.conditions[i] != b.selector.conditions[i];
    for (std::size_t i = 0; i < a.slots.size(); ++i) {
        const Procedure& pa = a.slots[i];
        const Procedure& pb = b.slots[i];
        for (std::size_t j = 0; j < pa.branches.size(); ++j) {
            d += pa.branches[j].condition != pb.branches[j].condition;
            d += pa.branches[j].action != pb.branches[j].action;
        }
        d += pa.else_action != pb.else_action;
    }
    return d;
}

// Number of component swaps turning a into b: selector swap (requires the
// replacement to come from the library and keep the condition count, slots
// map positionally) plus one per replaced slot (replacement from the
// library). Defined only when the swap moves suffice.
inline std::optional<int> component_distance(const System& a, const System& b,
                                             const Libraries& libs) {
    if (a.selector.cond_count() != b.selector.cond_count()) return std::nullopt;
    if (a.slots.size() != b.slots.size()) return std::nullopt;
    int d = 0;
    if (a.selector != b.selector) {
        if (std::find(libs.selectors.begin(), libs.selectors.end(), b.selector) ==
            libs.selectors.end())
            return std::nullopt;
        ++d;
    }
    for (std::size_t i = 0; i < a.slots.size(); ++i) {
        if (a.slots[i] == b.slots[i]) continue;
        if (std::find(libs.procedures.begin(), libs.procedures.end(), b.slots[i]) ==
            libs.procedures.end())
            return std::nullopt;
        ++d;
    }
    return d;
}

// True iff the system is a library assembly: selector and every slot drawn
// from the libraries.
inline bool assembled_from(const System& sys, const Libraries& libs) {
    if (std::find(libs.selectors.begin(), libs.selectors.end(), sys.selector) ==
        libs.selectors.end())
        return false;
    for (const Procedure& p : sys.slots)
        if (std::find(libs.procedures.begin(), libs.procedures.end(), p) == libs.procedures.end())
            return false;
    return true;
}

// ---- normalization ----------------------------------------------------

// Removes branches whose condition is already implied false (duplicate
// literal seen positively) and truncates at the first branch whose condition
// is implied true (the negation was seen). Behavior-preserving.
inline Procedure normalize(const Procedure& p) {
    Procedure out;
    out.else_action = p.else_action;
    std::vector<std::pair<int, bool>> seen;
    auto lookup = [&](int var) -> const bool* {
        for (const auto& [v, neg] : seen)
            if (v == var) return &neg;
        return nullptr;
    };
    for (const Branch& b : p.branches) {
        if (const bool* neg = lookup(b.condition.var)) {
            if (*neg == b.condition.negated) continue;  // can never fire
            out.else_action = b.action;                 // always fires here on
            return out;
        }
        seen.emplace_back(b.condition.var, b.condition.negated);
        out.branches.push_back(b);
    }
    return out;
}

// Same walk for selectors. Returns the normalized selector plus the original
// slot index kept for each surviving slot (last entry is the slot that the
// fall-through routes to).
inline std::pair<Selector, std::vector<int>> normalize(const Selector& sel) {
    if (sel.is_default()) return {sel, {0}};
    Selector out;
    std::vector<int> kept;
    std::vector<std::pair<int, bool>> seen;
    auto lookup = [&](int var) -> const bool* {
        for (const auto& [v, neg] : seen)
            if (v == var) return &neg;
        return nullptr;
    };
    const int m = sel.cond_count();
    for (int t = 0; t < m; ++t) {
        const Literal& l = sel.conditions[t];
        if (const bool* neg = lookup(l.var)) {
            if (*neg == l.negated) continue;  // slot t unreachable
            kept.push_back(t);                // slot t catches everything from here
            return {out, kept};
        }
        seen.emplace_back(l.var, l.negated);
        out.conditions.push_back(l);
        kept.push_back(t);
    }
    kept.push_back(m);
    return {out, kept};
}

inline System normalize(const System& sys) {
    auto [sel, kept] = normalize(sys.selector);
    System out;
    out.selector = std::move(sel);
    out.slots.reserve(kept.size());
    for (int idx : kept) out.slots.push_back(normalize(sys.slots[static_cast<std::size_t>(idx)]));
    return out;
}

}  // namespace cbss
