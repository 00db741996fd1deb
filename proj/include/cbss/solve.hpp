// Exact solvers for the six creation/reconfiguration problems: canonical
// first-witness search over the relevant space, deterministic node counts,
// optional strided multi-worker scanning, and an independent acceptance
// predicate used to cross-check solutions.
#pragma once

#include <climits>
#include <cstdint>
#include <functional>
#include <thread>

#include "enumerate.hpp"
#include "model.hpp"

namespace cbss {

enum class ProblemKind {
    scre_spec,
    scre_comp,
    scre_compa,
    srec_spec,
    srec_comp,
    srec_compa,
};

enum class Strategy {
    baseline,
    normalized,
    library_product,
};

inline const char* kind_name(ProblemKind k) {
    switch (k) {
        case ProblemKind::scre_spec: return "scre-spec";
        case ProblemKind::scre_comp: return "scre-comp";
        case ProblemKind::scre_compa: return "scre-compa";
        case ProblemKind::srec_spec: return "srec-spec";
        case ProblemKind::srec_comp: return "srec-comp";
        case ProblemKind::srec_compa: return "srec-compa";
    }
    return "?";
}

inline std::optional<ProblemKind> parse_kind(const std::string& s) {
    for (ProblemKind k : {ProblemKind::scre_spec, ProblemKind::scre_comp, ProblemKind::scre_compa,
                          ProblemKind::srec_spec, ProblemKind::srec_comp, ProblemKind::srec_compa})
        if (s == kind_name(k)) return k;
    return std::nullopt;
}

inline const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::baseline: return "baseline";
        case Strategy::normalized: return "normalized";
        case Strategy::library_product: return "library-product";
    }
    return "?";
}

inline std::optional<Strategy> parse_strategy(const std::string& s) {
    for (Strategy st : {Strategy::baseline, Strategy::normalized, Strategy::library_product})
        if (s == strategy_name(st)) return st;
    return std::nullopt;
}

// `library_product` only makes sense where the search space is the library
// assembly product; the other two apply everywhere.
inline bool strategy_applicable(ProblemKind k, Strategy s) {
    if (s != Strategy::library_product) return true;
    return k == ProblemKind::scre_comp || k == ProblemKind::srec_comp;
}

struct ProblemInstance {
    ProblemKind kind = ProblemKind::scre_spec;
    Alphabet alphabet;
    std::vector<Requirement> requirements;
    // creation-from-spec / reconfiguration-within-spec
    std::optional<int> sel_max;
    std::optional<int> prc_max;
    // library-driven kinds
    std::optional<Libraries> libraries;
    // reconfiguration kinds
    std::optional<System> base_system;
    std::vector<Requirement> new_requirements;
    // budgets
    std::optional<int> max_types;              // d
    std::optional<int> max_code_changes;       // c_c
    std::optional<int> max_component_changes;  // c_l

    StructureSpec structure() const {
        return StructureSpec{alphabet, sel_max.value_or(0), prc_max.value_or(0)};
    }
    friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

namespace detail {

inline void check_requirement_list(const std::vector<Requirement>& reqs, const Alphabet& ab,
                                   const char* label) {
    for (const Requirement& r : reqs) {
        if (static_cast<int>(r.situation.size()) != ab.num_vars)
            throw InvalidInput(std::string(label) + ": situation length must equal vars");
        if (!valid_action(r.action, ab))
            throw InvalidInput(std::string(label) + ": action index out of range");
    }
}

inline void require(bool cond, const char* msg) {
    if (!cond) throw InvalidInput(msg);
}

inline std::vector<Requirement> all_requirements(const ProblemInstance& inst) {
    std::vector<Requirement> all = inst.requirements;
    all.insert(all.end(), inst.new_requirements.begin(), inst.new_requirements.end());
    return all;
}

}  // namespace detail

inline void validate_instance(const ProblemInstance& inst) {
    using detail::require;
    require(inst.alphabet.valid(), "alphabet must have at least one variable and one action");
    detail::check_requirement_list(inst.requirements, inst.alphabet, "requirement");
    detail::check_requirement_list(inst.new_requirements, inst.alphabet, "new requirement");

    const bool spec_kind =
        inst.kind == ProblemKind::scre_spec || inst.kind == ProblemKind::srec_spec;
    const bool lib_kind = !spec_kind;
    const bool rec_kind = inst.kind == ProblemKind::srec_spec ||
                          inst.kind == ProblemKind::srec_comp ||
                          inst.kind == ProblemKind::srec_compa;
    const bool wants_d = inst.kind == ProblemKind::scre_comp ||
                         inst.kind == ProblemKind::scre_compa ||
                         inst.kind == ProblemKind::srec_comp ||
                         inst.kind == ProblemKind::srec_compa;
    const bool wants_cc = inst.kind == ProblemKind::scre_compa ||
                          inst.kind == ProblemKind::srec_spec ||
                          inst.kind == ProblemKind::srec_compa;
    const bool wants_cl =
        inst.kind == ProblemKind::srec_comp || inst.kind == ProblemKind::srec_compa;

    require(spec_kind == inst.sel_max.has_value(), "sel_max applies to spec-driven kinds only");
    require(spec_kind == inst.prc_max.has_value(), "prc_max applies to spec-driven kinds only");
    require(lib_kind == inst.libraries.has_value(), "libraries apply to library-driven kinds only");
    require(rec_kind == inst.base_system.has_value(),
            "base system applies to reconfiguration kinds only");
    require(rec_kind || inst.new_requirements.empty(),
            "new requirements apply to reconfiguration kinds only");
    require(wants_d == inst.max_types.has_value(), "budget d not applicable to this kind");
    require(wants_cc == inst.max_code_changes.has_value(),
            "budget c_c not applicable to this kind");
    require(wants_cl == inst.max_component_changes.has_value(),
            "budget c_l not applicable to this kind");

    if (inst.sel_max) require(*inst.sel_max >= 0, "sel_max must be nonnegative");
    if (inst.prc_max) require(*inst.prc_max >= 0, "prc_max must be nonnegative");
    if (inst.max_types) require(*inst.max_types >= 0, "budget d must be nonnegative");
    if (inst.max_code_changes) require(*inst.max_code_changes >= 0, "budget c_c must be nonnegative");
    if (inst.max_component_changes)
        require(*inst.max_component_changes >= 0, "budget c_l must be nonnegative");

    if (inst.libraries) {
        require(!inst.libraries->selectors.empty(), "library must contain at least one selector");
        require(!inst.libraries->procedures.empty(), "library must contain at least one procedure");
        for (const Selector& s : inst.libraries->selectors)
            require(valid_selector(s, inst.alphabet), "library selector outside the alphabet");
        for (const Procedure& p : inst.libraries->procedures)
            require(valid_procedure(p, inst.alphabet), "library procedure outside the alphabet");
    }

    if (inst.base_system) {
        validate_system(*inst.base_system, inst.alphabet);
        if (inst.kind == ProblemKind::srec_spec)
            require(consistent_with(*inst.base_system, inst.structure()),
                    "base system exceeds the structure spec");
        else
            require(assembled_from(*inst.base_system, *inst.libraries),
                    "base system must be assembled from the libraries");
        require(satisfies_all(*inst.base_system, inst.requirements),
                "base system must satisfy the existing requirements");
    }
}

struct SolveMetrics {
    std::optional<int> component_types;
    std::optional<int> code_changes;
    std::optional<int> component_changes;
};

struct SolveOutcome {
    std::optional<System> witness;
    SolveMetrics metrics;
    unsigned long long nodes = 0;
};

namespace detail {

struct EarlyResult {
    std::optional<std::pair<unsigned long long, System>> hit;
    unsigned long long scanned = 0;  // own-stride items evaluated without a hit
};

// Canonical-first search with early exit. `stream` must replay the same
// sequence on every call; workers stride it by global index.
template <typename StreamFn, typename PredFn>
EarlyResult search_early(const StreamFn& stream, const PredFn& pred, unsigned workers) {
    if (workers <= 1) {
        EarlyResult r;
        unsigned long long idx = 0;
        stream([&](const System& s) {
            if (pred(s)) {
                r.hit = {idx, s};
                return false;
            }
            ++idx;
            return true;
        });
        r.scanned = idx;
        return r;
    }
    std::vector<EarlyResult> parts(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            EarlyResult& r = parts[w];
            unsigned long long gidx = 0;
            stream([&](const System& s) {
                const unsigned long long g = gidx++;
                if (g % workers != w) return true;
                if (pred(s)) {
                    r.hit = {g, s};
                    return false;
                }
                ++r.scanned;
                return true;
            });
        });
    for (auto& t : pool) t.join();
    EarlyResult merged;
    for (const EarlyResult& r : parts) {
        merged.scanned += r.scanned;
        if (r.hit && (!merged.hit || r.hit->first < merged.hit->first)) merged.hit = r.hit;
    }
    return merged;
}

struct MinScanResult {
    std::optional<System> best;
    unsigned long long nodes = 0;
};

// Full scan minimizing the witness over (base x edit) pairs; bases strided
// across workers, every edit candidate of a qualifying base is counted.
template <typename OuterFn, typename QualFn, typename InnerFn, typename PredFn>
MinScanResult search_min_over(const OuterFn& outer, const QualFn& qualifies, const InnerFn& inner,
                              const PredFn& pred, unsigned workers) {
    auto run = [&](unsigned w, unsigned total) {
        MinScanResult r;
        unsigned long long base_idx = 0;
        outer([&](const System& base) {
            const unsigned long long g = base_idx++;
            if (g % total != w) return true;
            if (!qualifies(base)) return true;
            inner(base, [&](const System& cand) {
                ++r.nodes;
                if (pred(cand) && (!r.best || cand < *r.best)) r.best = cand;
                return true;
            });
            return true;
        });
        return r;
    };
    if (workers <= 1) return run(0, 1);
    std::vector<MinScanResult> parts(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] { parts[w] = run(w, workers); });
    for (auto& t : pool) t.join();
    MinScanResult merged;
    for (MinScanResult& r : parts) {
        merged.nodes += r.nodes;
        if (r.best && (!merged.best || *r.best < *merged.best)) merged.best = r.best;
    }
    return merged;
}

// Early-exit variant of the two-level scan, for decide().
template <typename OuterFn, typename QualFn, typename InnerFn, typename PredFn>
bool exists_over(const OuterFn& outer, const QualFn& qualifies, const InnerFn& inner,
                 const PredFn& pred) {
    bool found = false;
    outer([&](const System& base) {
        if (!qualifies(base)) return true;
        inner(base, [&](const System& cand) {
            if (pred(cand)) {
                found = true;
                return false;
            }
            return true;
        });
        return !found;
    });
    return found;
}

}  // namespace detail

// ---- per-kind search plumbing ------------------------------------------

namespace detail {

template <typename V>
void stream_for(const ProblemInstance& inst, Strategy strategy, V&& visit) {
    switch (inst.kind) {
        case ProblemKind::scre_spec:
            for_each_system_spec(inst.structure(), strategy == Strategy::normalized, visit);
            return;
        case ProblemKind::scre_comp:
            for_each_system_comp(*inst.libraries, std::nullopt, visit);
            return;
        case ProblemKind::srec_spec:
            for_each_code_neighbor(*inst.base_system, *inst.max_code_changes, inst.alphabet, visit);
            return;
        case ProblemKind::srec_comp:
            for_each_component_neighbor(*inst.base_system, *inst.libraries,
                                        *inst.max_component_changes, visit);
            return;
        default:
            throw InvalidInput("two-level kinds have no flat stream");
    }
}

inline std::function<bool(const System&)> predicate_for(const ProblemInstance& inst) {
    switch (inst.kind) {
        case ProblemKind::scre_spec:
            return [&inst](const System& s) { return satisfies_all(s, inst.requirements); };
        case ProblemKind::scre_comp:
            return [&inst](const System& s) {
                return component_type_count(s) <= *inst.max_types &&
                       satisfies_all(s, inst.requirements);
            };
        case ProblemKind::srec_spec: {
            auto spec = inst.structure();
            auto reqs = all_requirements(inst);
            return [&inst, spec, reqs](const System& s) {
                return consistent_with(s, spec) && satisfies_all(s, reqs);
            };
        }
        case ProblemKind::srec_comp: {
            auto reqs = all_requirements(inst);
            return [&inst, reqs](const System& s) {
                return component_type_count(s) <= *inst.max_types && satisfies_all(s, reqs);
            };
        }
        case ProblemKind::scre_compa:
            return [&inst](const System& s) { return satisfies_all(s, inst.requirements); };
        case ProblemKind::srec_compa: {
            auto reqs = all_requirements(inst);
            return [reqs](const System& s) { return satisfies_all(s, reqs); };
        }
    }
    return [](const System&) { return false; };
}

template <typename V>
void outer_stream_for(const ProblemInstance& inst, V&& visit) {
    if (inst.kind == ProblemKind::scre_compa)
        for_each_system_comp(*inst.libraries, std::nullopt, visit);
    else
        for_each_component_neighbor(*inst.base_system, *inst.libraries,
                                    *inst.max_component_changes, visit);
}

// Metrics are derived from the witness after the search so that they do not
// depend on the path that found it.
inline SolveMetrics metrics_for(const ProblemInstance& inst, const System& w) {
    SolveMetrics m;
    switch (inst.kind) {
        case ProblemKind::scre_spec:
        case ProblemKind::scre_comp:
            m.component_types = component_type_count(w);
            break;
        case ProblemKind::srec_spec:
            m.component_types = component_type_count(w);
            m.code_changes = code_distance(*inst.base_system, w);
            break;
        case ProblemKind::srec_comp:
            m.component_types = component_type_count(w);
            m.component_changes = component_distance(*inst.base_system, w, *inst.libraries);
            break;
        case ProblemKind::scre_compa: {
            int best_cc = INT_MAX;
            int best_d = INT_MAX;
            for_each_system_comp(*inst.libraries, std::nullopt, [&](const System& base) {
                if (component_type_count(base) > *inst.max_types) return true;
                auto dist = code_distance(base, w);
                if (!dist || *dist > *inst.max_code_changes) return true;
                if (*dist < best_cc) {
                    best_cc = *dist;
                    best_d = component_type_count(base);
                } else if (*dist == best_cc) {
                    best_d = std::min(best_d, component_type_count(base));
                }
                return true;
            });
            m.code_changes = best_cc;
            m.component_types = best_d;
            break;
        }
        case ProblemKind::srec_compa: {
            int best_cl = INT_MAX;
            int best_cc = INT_MAX;
            int best_d = INT_MAX;
            for_each_component_neighbor(
                *inst.base_system, *inst.libraries, *inst.max_component_changes,
                [&](const System& mid) {
                    if (component_type_count(mid) > *inst.max_types) return true;
                    auto cdist = code_distance(mid, w);
                    if (!cdist || *cdist > *inst.max_code_changes) return true;
                    auto swaps = component_distance(*inst.base_system, mid, *inst.libraries);
                    if (!swaps) return true;
                    auto key = std::tuple(*swaps, *cdist, component_type_count(mid));
                    if (key < std::tuple(best_cl, best_cc, best_d)) {
                        best_cl = *swaps;
                        best_cc = *cdist;
                        best_d = component_type_count(mid);
                    }
                    return true;
                });
            m.component_changes = best_cl;
            m.code_changes = best_cc;
            m.component_types = best_d;
            break;
        }
    }
    return m;
}

}  // namespace detail

inline SolveOutcome solve(const ProblemInstance& inst, Strategy strategy = Strategy::baseline,
                          unsigned workers = 1) {
    validate_instance(inst);
    if (!strategy_applicable(inst.kind, strategy))
        throw InvalidInput(std::string("strategy ") + strategy_name(strategy) +
                           " is not applicable to " + kind_name(inst.kind));
    SolveOutcome out;
    const bool two_level =
        inst.kind == ProblemKind::scre_compa || inst.kind == ProblemKind::srec_compa;
    if (!two_level) {
        auto stream = [&](auto&& v) { detail::stream_for(inst, strategy, v); };
        auto pred = detail::predicate_for(inst);
        auto r = detail::search_early(stream, pred, workers);
        out.nodes = r.hit ? r.hit->first + 1 : r.scanned;
        if (r.hit) out.witness = r.hit->second;
    } else {
        auto outer = [&](auto&& v) { detail::outer_stream_for(inst, v); };
        auto qual = [&](const System& base) {
            return component_type_count(base) <= *inst.max_types;
        };
        auto inner = [&](const System& base, auto&& v) {
            for_each_code_neighbor(base, *inst.max_code_changes, inst.alphabet, v);
        };
        auto pred = detail::predicate_for(inst);
        auto r = detail::search_min_over(outer, qual, inner, pred, workers);
        out.nodes = r.nodes;
        if (r.best) out.witness = *r.best;
    }
    if (out.witness) out.metrics = detail::metrics_for(inst, *out.witness);
    return out;
}

// Existence only; early exit everywhere.
inline bool decide(const ProblemInstance& inst, Strategy strategy = Strategy::baseline) {
    validate_instance(inst);
    if (!strategy_applicable(inst.kind, strategy))
        throw InvalidInput(std::string("strategy ") + strategy_name(strategy) +
                           " is not applicable to " + kind_name(inst.kind));
    const bool two_level =
        inst.kind == ProblemKind::scre_compa || inst.kind == ProblemKind::srec_compa;
    auto pred = detail::predicate_for(inst);
    if (!two_level) {
        bool found = false;
        detail::stream_for(inst, strategy, [&](const System& s) {
            if (pred(s)) {
                found = true;
                return false;
            }
            return true;
        });
        return found;
    }
    auto outer = [&](auto&& v) { detail::outer_stream_for(inst, v); };
    auto qual = [&](const System& base) { return component_type_count(base) <= *inst.max_types; };
    auto inner = [&](const System& base, auto&& v) {
        for_each_code_neighbor(base, *inst.max_code_changes, inst.alphabet, v);
    };
    return detail::exists_over(outer, qual, inner, pred);
}

// ---- independent acceptance predicate ----------------------------------

namespace detail {

inline int token_diffs(const Procedure& a, const Procedure& b) {
    int d = 0;
    for (std::size_t j = 0; j < a.branches.size(); ++j) {
        d += a.branches[j].condition != b.branches[j].condition;
        d += a.branches[j].action != b.branches[j].action;
    }
    d += a.else_action != b.else_action;
    return d;
}

inline int distinct_type_count_with_selector(const std::vector<const Procedure*>& chosen) {
    std::set<Procedure> s;
    for (const Procedure* p : chosen) s.insert(*p);
    return 1 + static_cast<int>(s.size());
}

// Is there a library assembly with w's skeleton, <= d types, within cc token
// edits of w? Plain nested search, independent of the enumeration module.
inline bool base_within_reach(const System& w, const Libraries& libs, int d, int cc) {
    for (const Selector& sel : libs.selectors) {
        if (sel.cond_count() != w.selector.cond_count()) continue;
        int sd = 0;
        for (std::size_t i = 0; i < sel.conditions.size(); ++i)
            sd += sel.conditions[i] != w.selector.conditions[i];
        if (sd > cc) continue;
        std::vector<std::vector<std::pair<const Procedure*, int>>> cands(w.slots.size());
        bool feasible = true;
        for (std::size_t i = 0; i < w.slots.size() && feasible; ++i) {
            for (const Procedure& p : libs.procedures)
                if (p.branches.size() == w.slots[i].branches.size())
                    cands[i].push_back({&p, token_diffs(p, w.slots[i])});
            feasible = !cands[i].empty();
        }
        if (!feasible) continue;
        std::vector<const Procedure*> chosen;
        auto dfs = [&](auto&& self, std::size_t idx, int rem) -> bool {
            if (idx == cands.size()) return distinct_type_count_with_selector(chosen) <= d;
            for (const auto& [p, cost] : cands[idx]) {
                if (cost > rem) continue;
                chosen.push_back(p);
                if (self(self, idx + 1, rem - cost)) return true;
                chosen.pop_back();
            }
            return false;
        };
        if (dfs(dfs, 0, cc - sd)) return true;
    }
    return false;
}

// Is there a mid system (swaps from base against libs, <= cl swaps, <= d
// types) within cc token edits of w? Requires shared skeletons throughout.
inline bool mid_within_reach(const System& base, const System& w, const Libraries& libs, int d,
                             int cl, int cc) {
    if (base.selector.cond_count() != w.selector.cond_count()) return false;
    if (base.slots.size() != w.slots.size()) return false;

    std::vector<std::pair<Selector, int>> sel_cands;  // (selector, swap cost)
    sel_cands.push_back({base.selector, 0});
    for (const Selector& s : libs.selectors)
        if (s.cond_count() == base.selector.cond_count() && s != base.selector)
            sel_cands.push_back({s, 1});

    struct SlotCand {
        const Procedure* p;
        int swap_cost;
        int edit_cost;
    };
    std::vector<std::vector<SlotCand>> cands(w.slots.size());
    for (std::size_t i = 0; i < w.slots.size(); ++i) {
        if (base.slots[i].branches.size() == w.slots[i].branches.size())
            cands[i].push_back({&base.slots[i], 0, token_diffs(base.slots[i], w.slots[i])});
        for (const Procedure& p : libs.procedures)
            if (p.branches.size() == w.slots[i].branches.size() && p != base.slots[i])
                cands[i].push_back({&p, 1, token_diffs(p, w.slots[i])});
        if (cands[i].empty()) return false;
    }
    std::vector<const Procedure*> chosen;
    for (const auto& [sel, sel_swap] : sel_cands) {
        if (sel_swap > cl) continue;
        int sel_edit = 0;
        for (std::size_t i = 0; i < sel.conditions.size(); ++i)
            sel_edit += sel.conditions[i] != w.selector.conditions[i];
        if (sel_edit > cc) continue;
        auto dfs = [&](auto&& self, std::size_t idx, int rem_cl, int rem_cc) -> bool {
            if (idx == cands.size()) return distinct_type_count_with_selector(chosen) <= d;
            for (const SlotCand& c : cands[idx]) {
                if (c.swap_cost > rem_cl || c.edit_cost > rem_cc) continue;
                chosen.push_back(c.p);
                if (self(self, idx + 1, rem_cl - c.swap_cost, rem_cc - c.edit_cost)) return true;
                chosen.pop_back();
            }
            return false;
        };
        if (dfs(dfs, 0, cl - sel_swap, cc - sel_edit)) return true;
    }
    return false;
}

}  // namespace detail

// True iff `w` is a correct solution for the instance; checked from the
// problem definition, not from the search machinery.
inline bool instance_accepts(const ProblemInstance& inst, const System& w) {
    validate_instance(inst);
    if (!valid_system(w, inst.alphabet)) return false;
    switch (inst.kind) {
        case ProblemKind::scre_spec:
            return consistent_with(w, inst.structure()) && satisfies_all(w, inst.requirements);
        case ProblemKind::scre_comp:
            return assembled_from(w, *inst.libraries) &&
                   component_type_count(w) <= *inst.max_types &&
                   satisfies_all(w, inst.requirements);
        case ProblemKind::scre_compa:
            return satisfies_all(w, inst.requirements) &&
                   detail::base_within_reach(w, *inst.libraries, *inst.max_types,
                                             *inst.max_code_changes);
        case ProblemKind::srec_spec: {
            auto dist = code_distance(*inst.base_system, w);
            return dist && *dist <= *inst.max_code_changes &&
                   consistent_with(w, inst.structure()) &&
                   satisfies_all(w, detail::all_requirements(inst));
        }
        case ProblemKind::srec_comp: {
            auto swaps = component_distance(*inst.base_system, w, *inst.libraries);
            return swaps && *swaps <= *inst.max_component_changes &&
                   component_type_count(w) <= *inst.max_types &&
                   satisfies_all(w, detail::all_requirements(inst));
        }
        case ProblemKind::srec_compa:
            return satisfies_all(w, detail::all_requirements(inst)) &&
                   detail::mid_within_reach(*inst.base_system, w, *inst.libraries,
                                            *inst.max_types, *inst.max_component_changes,
                                            *inst.max_code_changes);
    }
    return false;
}

}  // namespace cbss
