// Instance and solution documents: a line-based key=value format with a
// leading version field, canonical serialization (round-trip stable), and
// fail-fast diagnostics carrying a code, the line, and the offending field.
// External indices are 1-based; internal representation is 0-based.
#pragma once

#include <cctype>
#include <sstream>
#include <string>

#include "model.hpp"
#include "solve.hpp"

namespace cbss {

enum class DiagCode { syntax, range, precondition };

inline const char* diag_name(DiagCode c) {
    switch (c) {
        case DiagCode::syntax: return "syntax";
        case DiagCode::range: return "range";
        case DiagCode::precondition: return "precondition";
    }
    return "?";
}

struct ParseError : std::runtime_error {
    DiagCode code;
    int line;  // 1-based; 0 when the document as a whole is at fault
    std::string field;

    ParseError(DiagCode c, int ln, std::string fld, const std::string& msg)
        : std::runtime_error(std::string("error[") + diag_name(c) + "] line " +
                             std::to_string(ln) + ", field '" + fld + "': " + msg),
          code(c),
          line(ln),
          field(std::move(fld)) {}
};

// ---- primitive formatting ------------------------------------------------

inline std::string format_literal(const Literal& l) {
    return (l.negated ? "!i" : "i") + std::to_string(l.var + 1);
}

inline std::string format_situation(const Situation& s) {
    std::string out;
    out.reserve(s.size());
    for (bool b : s.values) out.push_back(b ? 'T' : 'F');
    return out;
}

inline std::string format_action(int a) { return std::to_string(a + 1); }

inline std::string format_selector(const Selector& sel) {
    if (sel.is_default()) return "*";
    std::string out;
    for (std::size_t i = 0; i < sel.conditions.size(); ++i) {
        if (i) out.push_back(',');
        out += format_literal(sel.conditions[i]);
    }
    return out;
}

inline std::string format_procedure(const Procedure& p) {
    if (p.single_action()) return "do:" + format_action(p.else_action);
    std::string out;
    for (const Branch& b : p.branches) {
        out += format_literal(b.condition);
        out.push_back(':');
        out += format_action(b.action);
        out.push_back(',');
    }
    out += "else:" + format_action(p.else_action);
    return out;
}

inline std::string format_requirement(const Requirement& r) {
    return format_situation(r.situation) + ":" + format_action(r.action);
}

// ---- primitive parsing -----------------------------------------------------

namespace detail {

struct FieldCtx {
    int line = 0;
    std::string field;

    [[noreturn]] void fail(DiagCode c, const std::string& msg) const {
        throw ParseError(c, line, field, msg);
    }
};

inline int parse_uint(const std::string& s, const FieldCtx& ctx, const char* what) {
    if (s.empty()) ctx.fail(DiagCode::syntax, std::string("empty ") + what);
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) ctx.fail(DiagCode::syntax, std::string("malformed ") + what);
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            ctx.fail(DiagCode::syntax, std::string("malformed ") + what + " '" + s + "'");
    long long v = 0;
    try {
        v = std::stoll(s);
    } catch (const std::exception&) {
        ctx.fail(DiagCode::range, std::string(what) + " out of range");
    }
    if (v < 0) ctx.fail(DiagCode::range, std::string(what) + " must be nonnegative");
    if (v > 1000000000) ctx.fail(DiagCode::range, std::string(what) + " unreasonably large");
    return static_cast<int>(v);
}

}  // namespace detail

inline Literal parse_literal(const std::string& s, const Alphabet& ab,
                             const detail::FieldCtx& ctx) {
    std::string body = s;
    Literal l;
    if (!body.empty() && body[0] == '!') {
        l.negated = true;
        body.erase(0, 1);
    }
    if (body.size() < 2 || body[0] != 'i')
        ctx.fail(DiagCode::syntax, "expected literal like i3 or !i3, got '" + s + "'");
    const int idx = detail::parse_uint(body.substr(1), ctx, "variable index");
    if (idx < 1 || idx > ab.num_vars)
        ctx.fail(DiagCode::range, "variable index " + std::to_string(idx) + " outside 1.." +
                                      std::to_string(ab.num_vars));
    l.var = idx - 1;
    return l;
}

inline int parse_action(const std::string& s, const Alphabet& ab, const detail::FieldCtx& ctx) {
    const int a = detail::parse_uint(s, ctx, "action index");
    if (a < 1 || a > ab.num_actions)
        ctx.fail(DiagCode::range, "action index " + std::to_string(a) + " outside 1.." +
                                      std::to_string(ab.num_actions));
    return a - 1;
}

inline Situation parse_situation(const std::string& s, const Alphabet& ab,
                                 const detail::FieldCtx& ctx) {
    if (static_cast<int>(s.size()) != ab.num_vars)
        ctx.fail(DiagCode::range, "situation has " + std::to_string(s.size()) +
                                      " values, expected " + std::to_string(ab.num_vars));
    Situation out;
    out.values.reserve(s.size());
    for (char c : s) {
        if (c != 'T' && c != 'F')
            ctx.fail(DiagCode::syntax, std::string("situation values must be T or F, got '") + c +
                                           "'");
        out.values.push_back(c == 'T');
    }
    return out;
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace detail

inline Selector parse_selector(const std::string& s, const Alphabet& ab,
                               const detail::FieldCtx& ctx) {
    if (s == "*") return Selector{};
    if (s.empty()) ctx.fail(DiagCode::syntax, "empty selector; use '*' for the default form");
    Selector sel;
    for (const std::string& part : detail::split(s, ','))
        sel.conditions.push_back(parse_literal(part, ab, ctx));
    return sel;
}

inline Procedure parse_procedure(const std::string& s, const Alphabet& ab,
                                 const detail::FieldCtx& ctx) {
    const auto parts = detail::split(s, ',');
    auto item = [&](const std::string& part) -> std::pair<std::string, std::string> {
        const std::size_t colon = part.find(':');
        if (colon == std::string::npos)
            ctx.fail(DiagCode::syntax, "expected LHS:ACTION in procedure item '" + part + "'");
        return {part.substr(0, colon), part.substr(colon + 1)};
    };
    Procedure p;
    if (parts.size() == 1) {
        auto [lhs, rhs] = item(parts[0]);
        if (lhs != "do")
            ctx.fail(DiagCode::syntax,
                     "single-item procedure must be do:ACTION, got '" + parts[0] + "'");
        p.else_action = parse_action(rhs, ab, ctx);
        return p;
    }
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        auto [lhs, rhs] = item(parts[i]);
        if (lhs == "else" || lhs == "do")
            ctx.fail(DiagCode::syntax, "'" + lhs + "' must not appear before the final item");
        p.branches.push_back(Branch{parse_literal(lhs, ab, ctx), parse_action(rhs, ab, ctx)});
    }
    auto [lhs, rhs] = item(parts.back());
    if (lhs != "else")
        ctx.fail(DiagCode::syntax, "guarded procedure must end with else:ACTION");
    p.else_action = parse_action(rhs, ab, ctx);
    return p;
}

inline Requirement parse_requirement(const std::string& s, const Alphabet& ab,
                                     const detail::FieldCtx& ctx) {
    const std::size_t colon = s.find(':');
    if (colon == std::string::npos)
        ctx.fail(DiagCode::syntax, "expected SITUATION:ACTION, got '" + s + "'");
    return Requirement{parse_situation(s.substr(0, colon), ab, ctx),
                       parse_action(s.substr(colon + 1), ab, ctx)};
}

// ---- instance documents ----------------------------------------------------

namespace detail {

struct RawField {
    std::string key;
    std::string value;
    int line = 0;
};

inline std::vector<RawField> raw_fields(const std::string& text) {
    std::vector<RawField> fields;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(DiagCode::syntax, lineno, line, "expected key=value");
        fields.push_back({line.substr(0, eq), line.substr(eq + 1), lineno});
    }
    return fields;
}

}  // namespace detail

inline ProblemInstance parse_instance(const std::string& text) {
    const auto fields = detail::raw_fields(text);
    if (fields.empty()) throw ParseError(DiagCode::syntax, 0, "format", "document is empty");
    if (fields[0].key != "format" || fields[0].value != "1")
        throw ParseError(DiagCode::syntax, fields[0].line, fields[0].key,
                         "document must start with format=1");
    if (fields.size() < 2 || fields[1].key != "problem")
        throw ParseError(DiagCode::syntax, fields.size() < 2 ? 0 : fields[1].line, "problem",
                         "problem=KIND must follow format=1");
    const auto kind = parse_kind(fields[1].value);
    if (!kind)
        throw ParseError(DiagCode::range, fields[1].line, "problem",
                         "unknown problem kind '" + fields[1].value + "'");

    ProblemInstance inst;
    inst.kind = *kind;

    const bool spec_kind = *kind == ProblemKind::scre_spec || *kind == ProblemKind::srec_spec;
    const bool lib_kind = !spec_kind;
    const bool rec_kind = *kind == ProblemKind::srec_spec || *kind == ProblemKind::srec_comp ||
                          *kind == ProblemKind::srec_compa;
    const bool wants_d = lib_kind;
    const bool wants_cc = *kind == ProblemKind::scre_compa || *kind == ProblemKind::srec_spec ||
                          *kind == ProblemKind::srec_compa;
    const bool wants_cl = *kind == ProblemKind::srec_comp || *kind == ProblemKind::srec_compa;

    auto allowed = [&](const std::string& key) {
        if (key == "vars" || key == "actions" || key == "req") return true;
        if (key == "sel_max" || key == "prc_max") return spec_kind;
        if (key == "lib_sel" || key == "lib_prc") return lib_kind;
        if (key == "base_sel" || key == "base_slot" || key == "new_req") return rec_kind;
        if (key == "d") return wants_d;
        if (key == "c_c") return wants_cc;
        if (key == "c_l") return wants_cl;
        return false;
    };

    // First pass: alphabet (needed to interpret everything else).
    std::optional<int> vars, actions;
    for (std::size_t i = 2; i < fields.size(); ++i) {
        const auto& f = fields[i];
        detail::FieldCtx ctx{f.line, f.key};
        if (f.key == "format" || f.key == "problem")
            ctx.fail(DiagCode::syntax, "duplicate header field");
        if (!allowed(f.key))
            ctx.fail(DiagCode::syntax, "unknown field for " + std::string(kind_name(*kind)));
        if (f.key == "vars") {
            if (vars) ctx.fail(DiagCode::syntax, "duplicate field");
            vars = detail::parse_uint(f.value, ctx, "variable count");
            if (*vars < 1) ctx.fail(DiagCode::range, "vars must be at least 1");
        } else if (f.key == "actions") {
            if (actions) ctx.fail(DiagCode::syntax, "duplicate field");
            actions = detail::parse_uint(f.value, ctx, "action count");
            if (*actions < 1) ctx.fail(DiagCode::range, "actions must be at least 1");
        }
    }
    if (!vars) throw ParseError(DiagCode::syntax, 0, "vars", "missing required field");
    if (!actions) throw ParseError(DiagCode::syntax, 0, "actions", "missing required field");
    inst.alphabet = {*vars, *actions};

    Libraries libs;
    std::optional<Selector> base_sel;
    std::vector<Procedure> base_slots;

    for (std::size_t i = 2; i < fields.size(); ++i) {
        const auto& f = fields[i];
        detail::FieldCtx ctx{f.line, f.key};
        auto once = [&](auto& opt) {
            if (opt) ctx.fail(DiagCode::syntax, "duplicate field");
        };
        if (f.key == "vars" || f.key == "actions") continue;
        if (f.key == "req") {
            inst.requirements.push_back(parse_requirement(f.value, inst.alphabet, ctx));
        } else if (f.key == "new_req") {
            inst.new_requirements.push_back(parse_requirement(f.value, inst.alphabet, ctx));
        } else if (f.key == "sel_max") {
            once(inst.sel_max);
            inst.sel_max = detail::parse_uint(f.value, ctx, "sel_max");
        } else if (f.key == "prc_max") {
            once(inst.prc_max);
            inst.prc_max = detail::parse_uint(f.value, ctx, "prc_max");
        } else if (f.key == "lib_sel") {
            libs.selectors.push_back(parse_selector(f.value, inst.alphabet, ctx));
        } else if (f.key == "lib_prc") {
            libs.procedures.push_back(parse_procedure(f.value, inst.alphabet, ctx));
        } else if (f.key == "base_sel") {
            once(base_sel);
            base_sel = parse_selector(f.value, inst.alphabet, ctx);
        } else if (f.key == "base_slot") {
            base_slots.push_back(parse_procedure(f.value, inst.alphabet, ctx));
        } else if (f.key == "d") {
            once(inst.max_types);
            inst.max_types = detail::parse_uint(f.value, ctx, "d");
        } else if (f.key == "c_c") {
            once(inst.max_code_changes);
            inst.max_code_changes = detail::parse_uint(f.value, ctx, "c_c");
        } else if (f.key == "c_l") {
            once(inst.max_component_changes);
            inst.max_component_changes = detail::parse_uint(f.value, ctx, "c_l");
        }
    }

    if (lib_kind) {
        canonicalize(libs);
        inst.libraries = std::move(libs);
    }
    if (rec_kind) {
        if (!base_sel) throw ParseError(DiagCode::syntax, 0, "base_sel", "missing required field");
        inst.base_system = System{*base_sel, base_slots};
    }
    if (spec_kind) {
        if (!inst.sel_max)
            throw ParseError(DiagCode::syntax, 0, "sel_max", "missing required field");
        if (!inst.prc_max)
            throw ParseError(DiagCode::syntax, 0, "prc_max", "missing required field");
    }
    if (wants_d && !inst.max_types)
        throw ParseError(DiagCode::syntax, 0, "d", "missing required field");
    if (wants_cc && !inst.max_code_changes)
        throw ParseError(DiagCode::syntax, 0, "c_c", "missing required field");
    if (wants_cl && !inst.max_component_changes)
        throw ParseError(DiagCode::syntax, 0, "c_l", "missing required field");

    try {
        validate_instance(inst);
    } catch (const InvalidInput& e) {
        throw ParseError(DiagCode::precondition, 0, "instance", e.what());
    }
    return inst;
}

inline std::string serialize_instance(const ProblemInstance& inst) {
    std::ostringstream out;
    out << "format=1\n";
    out << "problem=" << kind_name(inst.kind) << '\n';
    out << "vars=" << inst.alphabet.num_vars << '\n';
    out << "actions=" << inst.alphabet.num_actions << '\n';
    for (const Requirement& r : inst.requirements) out << "req=" << format_requirement(r) << '\n';
    if (inst.sel_max) out << "sel_max=" << *inst.sel_max << '\n';
    if (inst.prc_max) out << "prc_max=" << *inst.prc_max << '\n';
    if (inst.libraries) {
        for (const Selector& s : inst.libraries->selectors)
            out << "lib_sel=" << format_selector(s) << '\n';
        for (const Procedure& p : inst.libraries->procedures)
            out << "lib_prc=" << format_procedure(p) << '\n';
    }
    if (inst.base_system) {
        out << "base_sel=" << format_selector(inst.base_system->selector) << '\n';
        for (const Procedure& p : inst.base_system->slots)
            out << "base_slot=" << format_procedure(p) << '\n';
    }
    for (const Requirement& r : inst.new_requirements)
        out << "new_req=" << format_requirement(r) << '\n';
    if (inst.max_types) out << "d=" << *inst.max_types << '\n';
    if (inst.max_code_changes) out << "c_c=" << *inst.max_code_changes << '\n';
    if (inst.max_component_changes) out << "c_l=" << *inst.max_component_changes << '\n';
    return out.str();
}

// ---- solution documents ----------------------------------------------------

inline std::string solution_document(const ProblemInstance& inst, const SolveOutcome& out) {
    std::ostringstream doc;
    doc << "format=1\n";
    doc << "problem=" << kind_name(inst.kind) << '\n';
    doc << "result=" << (out.witness ? "solution" : "bottom") << '\n';
    doc << "nodes=" << out.nodes << '\n';
    if (out.witness) {
        doc << "sel=" << format_selector(out.witness->selector) << '\n';
        for (const Procedure& p : out.witness->slots) doc << "slot=" << format_procedure(p) << '\n';
        if (out.metrics.component_types) doc << "d_used=" << *out.metrics.component_types << '\n';
        if (out.metrics.code_changes) doc << "c_c_used=" << *out.metrics.code_changes << '\n';
        if (out.metrics.component_changes)
            doc << "c_l_used=" << *out.metrics.component_changes << '\n';
    }
    return doc.str();
}

}  // namespace cbss
