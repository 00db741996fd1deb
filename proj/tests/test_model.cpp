#include <doctest.h>

#include <cbss/bench.hpp>
#include <cbss/model.hpp>

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace cbss;

TEST_SUITE_BEGIN("model");

TEST_CASE("evaluation walks branches first-match-first") {
    const Situation s = fx::sit("TFTFT");
    CHECK(Literal{0, false}.holds(s));
    CHECK_FALSE(Literal{1, false}.holds(s));
    CHECK(Literal{1, true}.holds(s));

    const Procedure single{{}, 2};
    CHECK(eval_procedure(single, s) == 2);

    // first matching branch wins even when later branches also hold
    const Procedure two{{{{0, false}, 1}, {{2, false}, 0}}, 2};
    CHECK(eval_procedure(two, s) == 1);
    CHECK(eval_procedure(two, fx::sit("FFTFF")) == 0);
    CHECK(eval_procedure(two, fx::sit("FFFFF")) == 2);

    CHECK_THROWS_AS(eval_procedure(two, fx::sit("TF")), InvalidInput);
    CHECK_THROWS_AS(eval_system(fx::system_a(), fx::sit("TTT")), InvalidInput);
}

TEST_CASE("worked example: first system satisfies everything") {
    const System a = fx::system_a();
    const auto reqs = fx::requirements();
    const int expected[] = {1, 0, 1, 1, 2};
    for (std::size_t i = 0; i < reqs.size(); ++i)
        CHECK(eval_system(a, reqs[i].situation) == expected[i]);
    const Satisfaction v = satisfies(a, reqs);
    CHECK(v.ok);
    CHECK(v.violations.empty());
    CHECK(satisfies_all(a, reqs));
}

TEST_CASE("worked example: second system violates rows 1,3,4,5 with known outputs") {
    const System b = fx::system_b();
    const auto reqs = fx::requirements();
    const Satisfaction v = satisfies(b, reqs);
    CHECK_FALSE(v.ok);
    CHECK(v.violations == std::vector<int>{0, 2, 3, 4});
    // outputs on the violated rows: a3, a1, a1, a2
    CHECK(eval_system(b, reqs[0].situation) == 2);
    CHECK(eval_system(b, reqs[2].situation) == 0);
    CHECK(eval_system(b, reqs[3].situation) == 0);
    CHECK(eval_system(b, reqs[4].situation) == 1);
    CHECK_FALSE(satisfies_all(b, reqs));
}

TEST_CASE("metrics match the published table") {
    const SystemMetrics ma = system_metrics(fx::system_a());
    CHECK(ma.selector_conds == 2);
    CHECK(ma.max_procedure_conds == 3);
    CHECK(ma.size_bound == 15);
    CHECK(ma.component_types == 4);

    const SystemMetrics mb = system_metrics(fx::system_b());
    CHECK(mb.selector_conds == 0);
    CHECK(mb.max_procedure_conds == 2);
    CHECK(mb.size_bound == 4);
    CHECK(mb.component_types == 2);

    CHECK(size_bound(StructureSpec{fx::alphabet(), 2, 3}) == 15);
    CHECK(size_bound(StructureSpec{fx::alphabet(), 0, 2}) == 4);

    // repeated identical slots count once
    System twin{fx::guarded_selector(), {fx::p4(), fx::p4(), fx::p4()}};
    CHECK(component_type_count(twin) == 2);
}

TEST_CASE("structure-spec consistency") {
    CHECK(consistent_with(fx::system_a(), {fx::alphabet(), 2, 3}));
    CHECK_FALSE(consistent_with(fx::system_a(), {fx::alphabet(), 1, 3}));
    CHECK_FALSE(consistent_with(fx::system_a(), {fx::alphabet(), 2, 2}));
    CHECK(consistent_with(fx::system_b(), {fx::alphabet(), 0, 2}));
    // alphabet violations are inconsistency, not an exception
    CHECK_FALSE(consistent_with(fx::system_a(), {{3, 3}, 2, 3}));
    CHECK_FALSE(consistent_with(fx::system_a(), {{5, 2}, 2, 3}));
    // slot-count mismatch is structurally invalid
    System broken{fx::guarded_selector(), {fx::p1()}};
    CHECK_FALSE(consistent_with(broken, {fx::alphabet(), 2, 3}));
    CHECK_THROWS_AS(validate_system(broken, fx::alphabet()), InvalidInput);
}

TEST_CASE("canonical ordering: condition count dominates, then tokens") {
    const Procedure single0{{}, 0};
    const Procedure single1{{}, 1};
    const Procedure one_a{{{{1, false}, 0}}, 0};     // if i2 then a1 else a1
    const Procedure two_a{{{{0, false}, 0}, {{0, false}, 0}}, 0};
    CHECK(single0 < single1);
    CHECK(single1 < one_a);
    CHECK(one_a < two_a);  // fewer conditions first, despite larger first literal

    const Literal pos{1, false}, neg{1, true};
    CHECK(pos < neg);                  // positive before negated
    CHECK(Literal{0, true} < pos);     // variable index first

    const Procedure else0{{{{1, false}, 0}}, 0};
    const Procedure else1{{{{1, false}, 0}}, 1};
    CHECK(else0 < else1);

    const Selector def{};
    const Selector g1{{{0, false}}};
    const Selector g2{{{0, true}}};
    CHECK(def < g1);
    CHECK(g1 < g2);

    const System sys1{def, {single0}};
    const System sys2{def, {single1}};
    const System sys3{g1, {single0, single0}};
    CHECK(sys1 < sys2);
    CHECK(sys2 < sys3);
}

TEST_CASE("code distance is token hamming over a shared skeleton") {
    const System a = fx::system_a();
    CHECK(code_distance(a, a) == 0);

    System b = a;
    b.slots[2].else_action = 0;  // single-action slot tweaked
    CHECK(code_distance(a, b) == 1);
    CHECK(code_distance(b, a) == 1);

    System c = b;
    c.selector.conditions[1] = {2, true};
    CHECK(code_distance(a, c) == 2);

    // skeleton mismatches: selector arity, slot count, branch count
    CHECK_FALSE(code_distance(a, fx::system_b()).has_value());
    System d = a;
    d.slots[1].branches.push_back({{0, false}, 0});
    CHECK_FALSE(code_distance(a, d).has_value());
}

TEST_CASE("code distance triangle inequality on random shared skeletons") {
    Rng rng(42);
    const Alphabet ab{3, 2};
    for (int trial = 0; trial < 200; ++trial) {
        System base{random_selector(rng, ab, 2), {}};
        for (int i = 0; i < base.selector.slot_count(); ++i)
            base.slots.push_back(random_procedure(rng, ab, 2));
        auto mutate = [&](System s) {
            for (auto& l : s.selector.conditions)
                if (rng.coin()) l = random_literal(rng, ab);
            for (auto& p : s.slots) {
                for (auto& br : p.branches) {
                    if (rng.coin()) br.condition = random_literal(rng, ab);
                    if (rng.coin()) br.action = rng.below(ab.num_actions);
                }
                if (rng.coin()) p.else_action = rng.below(ab.num_actions);
            }
            return s;
        };
        const System x = mutate(base), y = mutate(base), z = mutate(base);
        const int dxy = *code_distance(x, y);
        const int dyz = *code_distance(y, z);
        const int dxz = *code_distance(x, z);
        CHECK(dxy == *code_distance(y, x));
        CHECK(dxz <= dxy + dyz);
        CHECK((dxy == 0) == (x == y));
    }
}

TEST_CASE("component distance counts slot swaps backed by the library") {
    const Libraries libs = fx::library();
    const System a = fx::system_a();
    CHECK(component_distance(a, a, libs) == 0);

    System one_swap = a;
    one_swap.slots[1] = fx::p2();
    CHECK(component_distance(a, one_swap, libs) == 1);

    System sel_swap = a;  // no same-arity selector in the library other than a's
    sel_swap.selector = Selector{{{0, false}, {1, false}}};
    CHECK_FALSE(component_distance(a, sel_swap, libs).has_value());

    Libraries wide = libs;
    wide.selectors.push_back(Selector{{{0, false}, {1, false}}});
    CHECK(component_distance(a, sel_swap, wide) == 1);

    System foreign = a;
    foreign.slots[0] = Procedure{{}, 0};  // not a library member
    CHECK_FALSE(component_distance(a, foreign, libs).has_value());

    CHECK_FALSE(component_distance(a, fx::system_b(), libs).has_value());

    System two = a;
    two.slots[0] = fx::p2();
    two.slots[2] = fx::p3();
    CHECK(component_distance(a, two, libs) == 2);

    CHECK(assembled_from(a, libs));
    CHECK(assembled_from(fx::system_b(), libs));
    CHECK_FALSE(assembled_from(foreign, libs));
}

TEST_CASE("normalization drops dead branches and truncates implied ones") {
    // duplicate literal: second occurrence can never fire
    const Procedure dup{{{{0, false}, 0}, {{0, false}, 1}}, 2};
    const Procedure dup_n = normalize(dup);
    CHECK(dup_n == Procedure{{{{0, false}, 0}}, 2});

    // negated occurrence: always fires once reached; tail is unreachable
    const Procedure trunc{{{{0, false}, 0}, {{0, true}, 1}, {{1, false}, 2}}, 0};
    const Procedure trunc_n = normalize(trunc);
    CHECK(trunc_n == Procedure{{{{0, false}, 0}}, 1});

    // selector normalization reports which slots survive
    const Selector messy{{{0, false}, {0, false}, {0, true}}};
    const auto [sel_n, kept] = normalize(messy);
    CHECK(sel_n == Selector{{{0, false}}});
    CHECK(kept == std::vector<int>{0, 2});

    const auto [def_n, def_kept] = normalize(Selector{});
    CHECK(def_n == Selector{});
    CHECK(def_kept == std::vector<int>{0});

    // slots follow the surviving selector conditions
    System sys{messy, {Procedure{{}, 0}, Procedure{{}, 1}, Procedure{{}, 2}, Procedure{{}, 0}}};
    const System sys_n = normalize(sys);
    CHECK(sys_n.selector == Selector{{{0, false}}});
    REQUIRE(sys_n.slots.size() == 2);
    CHECK(sys_n.slots[0] == Procedure{{}, 0});
    CHECK(sys_n.slots[1] == Procedure{{}, 2});
}

TEST_CASE("normalization preserves behavior exhaustively on the small alphabet") {
    const Alphabet ab{2, 2};
    std::vector<Situation> sits;
    for (int bits = 0; bits < 4; ++bits)
        sits.push_back(Situation{{(bits & 1) != 0, (bits & 2) != 0}});
    int checked = 0;
    for (const System& sys : oracle::all_systems(ab, 1, 2)) {
        const System n = normalize(sys);
        for (const Situation& s : sits) CHECK(eval_system(n, s) == eval_system(sys, s));
        CHECK(oracle::has_distinct_vars(n));
        CHECK(normalize(n) == n);
        CHECK(n.selector.cond_count() <= sys.selector.cond_count());
        ++checked;
    }
    CHECK(checked > 1000);
}

TEST_CASE("normalization preserves behavior on random larger systems") {
    Rng rng(7);
    for (int trial = 0; trial < 1500; ++trial) {
        const Alphabet ab{3 + rng.below(2), 1 + rng.below(3)};
        System sys{random_selector(rng, ab, 3), {}};
        for (int i = 0; i < sys.selector.slot_count(); ++i)
            sys.slots.push_back(random_procedure(rng, ab, 3));
        const System n = normalize(sys);
        CHECK(oracle::has_distinct_vars(n));
        for (int bits = 0; bits < (1 << ab.num_vars); ++bits) {
            Situation s;
            for (int v = 0; v < ab.num_vars; ++v) s.values.push_back((bits >> v) & 1);
            CHECK(eval_system(n, s) == eval_system(sys, s));
        }
    }
}

TEST_CASE("instrumented evaluation stays within the structural budget") {
    const System a = fx::system_a();
    const auto reqs = fx::requirements();
    // r1 routes through the first selector condition into p1's first branch
    const EvalCount e1 = eval_system_counted(a, reqs[0].situation);
    CHECK(e1.action == 1);
    CHECK(e1.conditions_evaluated == 2);
    // r3 exhausts both selector conditions and lands in the single-action slot
    const EvalCount e3 = eval_system_counted(a, reqs[2].situation);
    CHECK(e3.action == 1);
    CHECK(e3.conditions_evaluated == 2);

    Rng rng(11);
    const Alphabet ab{3, 2};
    const StructureSpec spec{ab, 2, 2};
    for (int trial = 0; trial < 300; ++trial) {
        System sys{random_selector(rng, ab, spec.sel_max), {}};
        for (int i = 0; i < sys.selector.slot_count(); ++i)
            sys.slots.push_back(random_procedure(rng, ab, spec.prc_max));
        const Situation s = random_situation(rng, ab.num_vars);
        const EvalCount e = eval_system_counted(sys, s);
        CHECK(e.action == eval_system(sys, s));
        CHECK(e.conditions_evaluated <= (spec.sel_max + 1) + (spec.prc_max + 1));
    }
}

TEST_CASE("satisfaction validates the requirement list") {
    const System a = fx::system_a();
    CHECK(satisfies(a, {}).ok);
    std::vector<Requirement> ragged{{fx::sit("TTTTT"), 0}, {fx::sit("TT"), 0}};
    CHECK_THROWS_AS(satisfies(a, ragged), InvalidInput);
    std::vector<Requirement> narrow{{fx::sit("TTT"), 0}};
    CHECK_THROWS_AS(satisfies(a, narrow), InvalidInput);
}

TEST_CASE("solution size bound holds for consistent systems") {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const Alphabet ab{1 + rng.below(4), 1 + rng.below(3)};
        const StructureSpec spec{ab, rng.below(3), rng.below(3)};
        System sys{random_selector(rng, ab, spec.sel_max), {}};
        for (int i = 0; i < sys.selector.slot_count(); ++i)
            sys.slots.push_back(random_procedure(rng, ab, spec.prc_max));
        REQUIRE(consistent_with(sys, spec));
        const SystemMetrics m = system_metrics(sys);
        CHECK(m.size_bound <= size_bound(spec));
        CHECK(m.component_types <= m.selector_conds + 2);
    }
}

TEST_SUITE_END();
