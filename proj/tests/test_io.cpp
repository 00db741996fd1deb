#include <doctest.h>

#include <cbss/bench.hpp>
#include <cbss/io.hpp>
#include <cbss/reduce.hpp>

#include "fixtures.hpp"

using namespace cbss;

namespace {

const char* kWorkedExampleDoc =
    "# behavior table with five rows\n"
    "format=1\n"
    "problem=scre-spec\n"
    "vars=5\n"
    "actions=3\n"
    "req=TTTTT:2\n"
    "req=TFFFT:1\n"
    "req=FFFFF:2\n"
    "req=FFFFF:2\n"
    "req=TTTFT:3\n"
    "sel_max=2\n"
    "prc_max=3\n";

ProblemInstance worked_instance() {
    ProblemInstance inst;
    inst.kind = ProblemKind::scre_spec;
    inst.alphabet = fx::alphabet();
    inst.requirements = fx::requirements();
    inst.sel_max = 2;
    inst.prc_max = 3;
    return inst;
}

detail::FieldCtx ctx_at(int line, const char* field) { return detail::FieldCtx{line, field}; }

template <typename Fn>
ParseError capture(Fn&& fn) {
    try {
        fn();
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a ParseError");
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("primitive formatting uses 1-based external names") {
    CHECK(format_literal({2, false}) == "i3");
    CHECK(format_literal({4, true}) == "!i5");
    CHECK(format_situation(fx::sit("TFTFT")) == "TFTFT");
    CHECK(format_action(0) == "1");
    CHECK(format_selector(Selector{}) == "*");
    CHECK(format_selector(fx::guarded_selector()) == "i1,i5");
    CHECK(format_procedure(fx::p4()) == "do:2");
    CHECK(format_procedure(fx::p1()) == "i4:2,!i3:1,i5:3,else:1");
    CHECK(format_requirement({fx::sit("TTTFT"), 2}) == "TTTFT:3");
}

TEST_CASE("primitive parsing undoes formatting") {
    const Alphabet ab = fx::alphabet();
    const auto ctx = ctx_at(1, "test");
    CHECK(parse_literal("i3", ab, ctx) == Literal{2, false});
    CHECK(parse_literal("!i5", ab, ctx) == Literal{4, true});
    CHECK(parse_action("3", ab, ctx) == 2);
    CHECK(parse_situation("TFTFT", ab, ctx) == fx::sit("TFTFT"));
    CHECK(parse_selector("*", ab, ctx) == Selector{});
    CHECK(parse_selector("i1,i5", ab, ctx) == fx::guarded_selector());
    CHECK(parse_procedure("do:2", ab, ctx) == fx::p4());
    CHECK(parse_procedure("i4:2,!i3:1,i5:3,else:1", ab, ctx) == fx::p1());
    const Requirement r = parse_requirement("TTTFT:3", ab, ctx);
    CHECK(r.situation == fx::sit("TTTFT"));
    CHECK(r.action == 2);
}

TEST_CASE("random components survive a format/parse round trip") {
    Rng rng(31);
    const auto ctx = ctx_at(1, "roundtrip");
    for (int trial = 0; trial < 400; ++trial) {
        const Alphabet ab{1 + rng.below(5), 1 + rng.below(4)};
        const Selector sel = random_selector(rng, ab, 3);
        CHECK(parse_selector(format_selector(sel), ab, ctx) == sel);
        const Procedure p = random_procedure(rng, ab, 3);
        CHECK(parse_procedure(format_procedure(p), ab, ctx) == p);
        const Requirement r{random_situation(rng, ab.num_vars), rng.below(ab.num_actions)};
        const Requirement back = parse_requirement(format_requirement(r), ab, ctx);
        CHECK(back.situation == r.situation);
        CHECK(back.action == r.action);
    }
}

TEST_CASE("primitive parse failures carry code, line, and field") {
    const Alphabet ab = fx::alphabet();
    const auto ctx = ctx_at(7, "req");

    ParseError e = capture([&] { parse_literal("x3", ab, ctx); });
    CHECK(e.code == DiagCode::syntax);
    CHECK(e.line == 7);
    CHECK(e.field == "req");
    CHECK(std::string(e.what()).find("error[syntax] line 7, field 'req'") == 0);

    CHECK(capture([&] { parse_literal("i0", ab, ctx); }).code == DiagCode::range);
    CHECK(capture([&] { parse_literal("i6", ab, ctx); }).code == DiagCode::range);
    CHECK(capture([&] { parse_literal("i", ab, ctx); }).code == DiagCode::syntax);
    CHECK(capture([&] { parse_literal("!", ab, ctx); }).code == DiagCode::syntax);
    CHECK(capture([&] { parse_literal("i2x", ab, ctx); }).code == DiagCode::syntax);

    CHECK(capture([&] { parse_action("0", ab, ctx); }).code == DiagCode::range);
    CHECK(capture([&] { parse_action("4", ab, ctx); }).code == DiagCode::range);
    CHECK(capture([&] { parse_action("-2", ab, ctx); }).code == DiagCode::range);
    CHECK(capture([&] { parse_action("two", ab, ctx); }).code == DiagCode::syntax);
    CHECK(capture([&] { parse_action("99999999999999999999", ab, ctx); }).code ==
          DiagCode::range);

    CHECK(capture([&] { parse_situation("TTT", ab, ctx); }).code == DiagCode::range);
    CHECK(capture([&] { parse_situation("TTXTT", ab, ctx); }).code == DiagCode::syntax);

    CHECK(capture([&] { parse_selector("", ab, ctx); }).code == DiagCode::syntax);
    CHECK(capture([&] { parse_selector("i1,,i2", ab, ctx); }).code == DiagCode::syntax);

    CHECK(capture([&] { parse_procedure("i1:2", ab, ctx); }).code == DiagCode::syntax);
    CHECK(capture([&] { parse_procedure("do:1,else:2", ab, ctx); }).code == DiagCode::syntax);
    CHECK(capture([&] { parse_procedure("else:1,i1:2,else:2", ab, ctx); }).code ==
          DiagCode::syntax);
    CHECK(capture([&] { parse_procedure("i1;2", ab, ctx); }).code == DiagCode::syntax);

    CHECK(capture([&] { parse_requirement("TTTTT", ab, ctx); }).code == DiagCode::syntax);
}

TEST_CASE("the worked example document parses to the expected instance") {
    const ProblemInstance inst = parse_instance(kWorkedExampleDoc);
    CHECK(inst == worked_instance());
    // canonical serialization: same fields, fixed order, comments dropped
    CHECK(serialize_instance(inst) == std::string(kWorkedExampleDoc).substr(
                                          std::string(kWorkedExampleDoc).find("format=")));
    CHECK(parse_instance(serialize_instance(inst)) == inst);
}

TEST_CASE("field order outside the header is free") {
    const std::string shuffled =
        "format=1\n"
        "problem=scre-spec\n"
        "sel_max=2\n"
        "req=TTTTT:2\n"
        "vars=5\n"
        "req=TFFFT:1\n"
        "req=FFFFF:2\n"
        "req=FFFFF:2\n"
        "prc_max=3\n"
        "req=TTTFT:3\n"
        "actions=3\n";
    CHECK(parse_instance(shuffled) == worked_instance());
}

TEST_CASE("windows line endings and comments are tolerated") {
    const std::string doc =
        "format=1\r\nproblem=scre-spec\r\n# note\r\nvars=1\r\nactions=1\r\n"
        "req=T:1\r\nsel_max=0\r\nprc_max=0\r\n";
    const ProblemInstance inst = parse_instance(doc);
    CHECK(inst.alphabet == Alphabet{1, 1});
    CHECK(inst.requirements.size() == 1);
}

TEST_CASE("instance documents for every kind survive a serialize/parse round trip") {
    GenConfig cfg;
    cfg.vars = 3;
    cfg.actions = 2;
    cfg.sel_max = 1;
    cfg.prc_max = 2;
    for (ProblemKind kind : {ProblemKind::scre_spec, ProblemKind::scre_comp,
                             ProblemKind::scre_compa, ProblemKind::srec_spec,
                             ProblemKind::srec_comp, ProblemKind::srec_compa}) {
        for (int trial = 0; trial < 40; ++trial) {
            Rng rng(mix_seed(1337, static_cast<std::uint64_t>(trial * 8 + (int)kind)));
            const ProblemInstance inst = random_instance(kind, cfg, rng);
            const std::string doc = serialize_instance(inst);
            const ProblemInstance back = parse_instance(doc);
            CHECK(back == inst);
            CHECK(serialize_instance(back) == doc);
        }
    }
}

TEST_CASE("reduced instances for every kind round-trip through documents") {
    const Graph g = parse_graph("3 2\n1 2\n2 3\n");
    for (ProblemKind kind : {ProblemKind::scre_spec, ProblemKind::scre_comp,
                             ProblemKind::scre_compa, ProblemKind::srec_spec,
                             ProblemKind::srec_comp, ProblemKind::srec_compa}) {
        const ProblemInstance inst = reduce(kind, g, 1).instance;
        CHECK(parse_instance(serialize_instance(inst)) == inst);
    }
}

TEST_CASE("document-level failures carry precise diagnostics") {
    ParseError e = capture([] { parse_instance(""); });
    CHECK(e.code == DiagCode::syntax);
    CHECK(e.field == "format");

    e = capture([] { parse_instance("problem=scre-spec\nformat=1\n"); });
    CHECK(e.code == DiagCode::syntax);
    CHECK(e.line == 1);

    e = capture([] { parse_instance("format=1\n"); });
    CHECK(e.field == "problem");

    e = capture([] { parse_instance("format=1\nproblem=mystery\n"); });
    CHECK(e.code == DiagCode::range);
    CHECK(e.field == "problem");

    e = capture([] { parse_instance("format=1\nproblem=scre-spec\nnot a field line\n"); });
    CHECK(e.code == DiagCode::syntax);
    CHECK(e.line == 3);

    e = capture([] {
        parse_instance("format=1\nproblem=scre-spec\nvars=1\nactions=1\nlib_sel=*\n");
    });
    CHECK(e.code == DiagCode::syntax);
    CHECK(e.line == 5);
    CHECK(e.field == "lib_sel");

    e = capture([] {
        parse_instance(
            "format=1\nproblem=scre-spec\nvars=1\nactions=1\nsel_max=0\nsel_max=1\nprc_max=0\n");
    });
    CHECK(e.code == DiagCode::syntax);
    CHECK(e.line == 6);

    e = capture([] {
        parse_instance(
            "format=1\nproblem=scre-spec\nvars=1\nactions=1\nreq=T:9\nsel_max=0\nprc_max=0\n");
    });
    CHECK(e.code == DiagCode::range);
    CHECK(e.line == 5);
    CHECK(e.field == "req");

    e = capture([] {
        parse_instance("format=1\nproblem=scre-spec\nactions=1\nreq=T:1\nsel_max=0\nprc_max=0\n");
    });
    CHECK(e.code == DiagCode::syntax);
    CHECK(e.field == "vars");
    CHECK(e.line == 0);

    e = capture([] {
        parse_instance("format=1\nproblem=scre-spec\nvars=1\nactions=1\nreq=T:1\nsel_max=0\n");
    });
    CHECK(e.field == "prc_max");

    e = capture([] { parse_instance("format=1\nproblem=scre-spec\nvars=0\nactions=1\n"); });
    CHECK(e.code == DiagCode::range);

    // structurally fine, semantically impossible: base violates its own table
    e = capture([] {
        parse_instance(
            "format=1\nproblem=srec-spec\nvars=1\nactions=2\nreq=T:2\n"
            "base_sel=*\nbase_slot=do:1\nnew_req=F:1\nsel_max=0\nprc_max=0\nc_c=1\n");
    });
    CHECK(e.code == DiagCode::precondition);
    CHECK(e.field == "instance");

    e = capture([] {
        parse_instance("format=1\nproblem=srec-spec\nvars=1\nactions=2\nreq=T:1\n"
                       "base_slot=do:1\nnew_req=F:1\nsel_max=0\nprc_max=0\nc_c=1\n");
    });
    CHECK(e.field == "base_sel");
}

TEST_CASE("solution documents freeze the result shape") {
    ProblemInstance tiny;
    tiny.kind = ProblemKind::scre_spec;
    tiny.alphabet = Alphabet{1, 2};
    tiny.requirements = {{Situation{{true}}, 1}};
    tiny.sel_max = 0;
    tiny.prc_max = 1;
    CHECK(solution_document(tiny, solve(tiny)) ==
          "format=1\n"
          "problem=scre-spec\n"
          "result=solution\n"
          "nodes=2\n"
          "sel=*\n"
          "slot=do:2\n"
          "d_used=2\n");

    ProblemInstance stuck = tiny;
    stuck.requirements = {{Situation{{true}}, 0}, {Situation{{true}}, 1}};
    stuck.prc_max = 0;
    CHECK(solution_document(stuck, solve(stuck)) ==
          "format=1\n"
          "problem=scre-spec\n"
          "result=bottom\n"
          "nodes=2\n");

    ProblemInstance rec;
    rec.kind = ProblemKind::srec_compa;
    rec.alphabet = Alphabet{1, 2};
    rec.libraries = Libraries{{Selector{}}, {Procedure{{}, 0}, Procedure{{}, 1}}};
    rec.base_system = System{Selector{}, {Procedure{{}, 0}}};
    rec.new_requirements = {{Situation{{true}}, 1}};
    rec.max_types = 2;
    rec.max_component_changes = 1;
    rec.max_code_changes = 0;
    CHECK(solution_document(rec, solve(rec)) ==
          "format=1\n"
          "problem=srec-compa\n"
          "result=solution\n"
          "nodes=2\n"
          "sel=*\n"
          "slot=do:2\n"
          "d_used=2\n"
          "c_c_used=0\n"
          "c_l_used=1\n");
}

TEST_SUITE_END();
