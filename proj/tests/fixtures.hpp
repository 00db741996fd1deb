// Shared golden fixtures: the worked two-system example used across suites.
// All indices are internal (0-based); externally these are i1..i5 / a1..a3.
#pragma once

#include <cbss/model.hpp>

namespace fx {

inline cbss::Alphabet alphabet() { return {5, 3}; }

// if i4 then a2 elsif !i3 then a1 elsif i5 then a3 else a1
inline cbss::Procedure p1() {
    return {{{{3, false}, 1}, {{2, true}, 0}, {{4, false}, 2}}, 0};
}

// if !i2 then a1 elsif !i4 then a2 else a3
inline cbss::Procedure p2() { return {{{{1, true}, 0}, {{3, true}, 1}}, 2}; }

// if i4 then a2 else a2
inline cbss::Procedure p3() { return {{{{3, false}, 1}}, 1}; }

// a2
inline cbss::Procedure p4() { return {{}, 1}; }

// if i1 ... elsif i5 ... else ...
inline cbss::Selector guarded_selector() { return {{{0, false}, {4, false}}}; }

inline cbss::Selector default_selector() { return {}; }

inline cbss::System system_a() { return {guarded_selector(), {p1(), p3(), p4()}}; }

inline cbss::System system_b() { return {default_selector(), {p2()}}; }

inline cbss::Situation sit(const char* bits) {
    cbss::Situation s;
    for (const char* c = bits; *c; ++c) s.values.push_back(*c == 'T');
    return s;
}

// r1..r5 of the worked example.
inline std::vector<cbss::Requirement> requirements() {
    return {
        {sit("TTTTT"), 1}, {sit("TFFFT"), 0}, {sit("FFFFF"), 1},
        {sit("FFFFF"), 1}, {sit("TTTFT"), 2},
    };
}

inline cbss::Libraries library() {
    return {{default_selector(), guarded_selector()}, {p1(), p2(), p3(), p4()}};
}

}  // namespace fx
