// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cutstack/scenarios.hpp"
#include "cutstack/snapshot.hpp"

using namespace cutstack;

namespace {
bool towers_equal(const Tower& a, const Tower& b) {
    if (a.alphabet_size != b.alphabet_size || a.spacer_symbol != b.spacer_symbol) return false;
    if (a.columns.size() != b.columns.size() || a.stage_log != b.stage_log) return false;
    for (size_t i = 0; i < a.columns.size(); ++i)
        if (a.columns[i].levels != b.columns[i].levels || a.columns[i].width != b.columns[i].width)
            return false;
    return true;
}
}  // namespace

TEST_CASE("round trip is structurally lossless") {
    Tower t = make_initial_tower({{"0110", Rational(1, 12)}, {"1001", Rational(1, 6)}});
    t.stage_log = {"built for test", "second entry"};
    CHECK(towers_equal(snapshot_from_string(snapshot_to_string(t)), t));
}

TEST_CASE("huge denominators survive the num/den encoding") {
    // A width whose denominator is far past 2^64, as repeated halvings make.
    Tower t = make_initial_tower({{"01", Rational(1, 2)}});
    t.columns[0].width = Rational(3, (BigInt(1) << 80) + 1);
    CHECK(rat_den(t.columns[0].width) > (BigInt(1) << 64));
    const Tower back = snapshot_from_string(snapshot_to_string(t));
    CHECK(back.columns[0].width == t.columns[0].width);
    CHECK(back.columns[0].levels == t.columns[0].levels);
}

TEST_CASE("empty stage log round-trips") {
    Tower t = make_initial_tower({{"0", Rational(1)}});
    CHECK(t.stage_log.empty());
    CHECK(towers_equal(snapshot_from_string(snapshot_to_string(t)), t));
}

TEST_CASE("malformed snapshots fail with diagnostics") {
    CHECK_THROWS_AS(snapshot_from_string("{not json"), Error);
    CHECK_THROWS_AS(snapshot_from_string("{\"format\": \"wrong/9\"}"), Error);
    // wrong symbol for the alphabet
    const char* bad_symbol = R"({"format":"cutstack-tower/1","alphabet_size":2,
        "spacer_symbol":1,"columns":[{"levels":"012","width":"1/3"}],"stage_log":[]})";
    CHECK_THROWS_AS(snapshot_from_string(bad_symbol), Error);
    try {
        snapshot_from_string(bad_symbol);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse);
        CHECK(std::string(e.what()).find("columns[0]") != std::string::npos);
    }
    // zero-denominator width
    const char* bad_width = R"({"format":"cutstack-tower/1","alphabet_size":2,
        "spacer_symbol":1,"columns":[{"levels":"01","width":"1/0"}],"stage_log":[]})";
    CHECK_THROWS_AS(snapshot_from_string(bad_width), Error);
}

TEST_CASE("schedule serialization round-trips through the config format") {
    StageSchedule s;
    s.provenance = "test schedule";
    s.stages.push_back(StageDesc{StageKind::two_word, 4, 0, 0, 0});
    s.stages.push_back(StageDesc{StageKind::ics, 0, 3, 0, 0});
    s.stages.push_back(StageDesc{StageKind::weak_mixing, 0, 0, 0, 0});
    s.stages.push_back(StageDesc{StageKind::rigidity, 0, 0, 5, 0});
    s.stages.push_back(StageDesc{StageKind::cut_stack, 12, 0, 0, 0});
    s.stages.push_back(StageDesc{StageKind::swap, 2, 1, 0, 3});
    const StageSchedule back = schedule_from_json(schedule_to_json(s));
    CHECK(back.provenance == s.provenance);
    REQUIRE(back.stages.size() == s.stages.size());
    for (size_t i = 0; i < s.stages.size(); ++i) {
        CHECK(back.stages[i].kind == s.stages[i].kind);
        CHECK(back.stages[i].k == s.stages[i].k);
        CHECK(back.stages[i].s == s.stages[i].s);
        CHECK(back.stages[i].r == s.stages[i].r);
        CHECK(back.stages[i].n == s.stages[i].n);
    }
    CHECK_THROWS_AS(schedule_from_json("{\"stages\":[{\"stage\":\"warp\"}]}"), Error);
}
