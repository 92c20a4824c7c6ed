#include "prosim/scenario.hpp"

#include <random>
#include <string>

#include <gtest/gtest.h>

namespace prosim {
namespace {

TEST(ScenarioParseTest, SmallestValidScript) {
  const ParseResult r = parse_scenario("dt 0.001\nduration 1\nat 0 press ELBOW_UP");
  ASSERT_TRUE(r.ok()) << format_diagnostic(r.diagnostics.at(0));
  const Scenario& s = *r.scenario;
  EXPECT_EQ(s.dt, 0.001);
  EXPECT_EQ(s.duration, 1.0);
  ASSERT_EQ(s.events.size(), 1u);
  EXPECT_EQ(s.events[0].kind, EventKind::kPress);
  EXPECT_EQ(s.events[0].target, SwitchName::kElbowUp);
  EXPECT_EQ(s.events[0].time, 0.0);
  EXPECT_EQ(s.events[0].line, 3);
}

TEST(ScenarioParseTest, UnknownSwitchReportedAtLineOne) {
  const ParseResult r = parse_scenario("at 0 press WRIST");
  EXPECT_FALSE(r.ok());
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0].line, 1);
  EXPECT_EQ(r.diagnostics[0].column, 12);
  EXPECT_EQ(r.diagnostics[0].message, "unknown switch WRIST");
}

TEST(ScenarioParseTest, EnumAssertion) {
  const ParseResult r = parse_scenario("duration 1\nexpect 0.5 grip_state = HOLDING\n");
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.scenario->assertions.size(), 1u);
  const ScenarioAssertion& a = r.scenario->assertions[0];
  EXPECT_EQ(a.time, 0.5);
  EXPECT_EQ(a.field, TraceField::kGripState);
  EXPECT_EQ(a.token, "HOLDING");
}

TEST(ScenarioParseTest, FullGrammar) {
  const ParseResult r = parse_scenario(
      "# lift with a payload\n"
      "dt 0.0005\n"
      "duration 2   # seconds\n"
      "param payload_lever 0.25\n"
      "at 1.5 release ELBOW_UP\n"
      "at 0 press ELBOW_UP\n"
      "at 0.2 set-payload 1.5\n"
      "at 0.1 place-object 0.05 2000\n"
      "expect 1 theta 0.05 0.1\n"
      "expect 0 elbow_state = IDLE\n"
      "expect 2 comparator = 0\n");
  ASSERT_TRUE(r.ok()) << format_diagnostic(r.diagnostics.at(0));
  const Scenario& s = *r.scenario;
  ASSERT_EQ(s.params.size(), 1u);
  EXPECT_EQ(s.params[0].name, "payload_lever");
  EXPECT_EQ(s.params[0].value, "0.25");
  ASSERT_EQ(s.events.size(), 4u);
  EXPECT_EQ(s.events[0].kind, EventKind::kPress);
  EXPECT_EQ(s.events[1].kind, EventKind::kPlaceObject);
  EXPECT_EQ(s.events[1].object_size, 0.05);
  EXPECT_EQ(s.events[1].stiffness, 2000.0);
  EXPECT_EQ(s.events[2].kind, EventKind::kSetPayload);
  EXPECT_EQ(s.events[2].mass, 1.5);
  EXPECT_EQ(s.events[3].kind, EventKind::kRelease);
  ASSERT_EQ(s.assertions.size(), 3u);
  EXPECT_EQ(s.assertions[0].field, TraceField::kElbowState);
  EXPECT_EQ(s.assertions[1].min, 0.05);
  EXPECT_EQ(s.assertions[1].max, 0.1);
  EXPECT_EQ(s.assertions[2].token, "0");
}

TEST(ScenarioParseTest, EqualTimesKeepFileOrder) {
  const ParseResult r =
      parse_scenario("duration 1\nat 0.5 press GRIP\nat 0.5 release GRIP\nat 0.1 press GRIP\n");
  ASSERT_TRUE(r.ok());
  const auto& ev = r.scenario->events;
  ASSERT_EQ(ev.size(), 3u);
  EXPECT_EQ(ev[0].line, 4);
  EXPECT_EQ(ev[1].line, 2);
  EXPECT_EQ(ev[2].line, 3);
}

TEST(ScenarioParseTest, CollectsEveryError) {
  const ParseResult r = parse_scenario(
      "duration 1\n"
      "at x press GRIP\n"
      "at 0 squeeze GRIP\n"
      "ok\n"
      "expect 0.5 theta 1 0\n"
      "at 2 press GRIP\n");
  EXPECT_FALSE(r.ok());
  std::vector<int> lines;
  for (const auto& d : r.diagnostics) {
    lines.push_back(d.line);
  }
  EXPECT_EQ(lines, (std::vector<int>{2, 3, 4, 5, 6}));
}

TEST(ScenarioParseTest, MissingDuration) {
  const ParseResult r = parse_scenario("dt 0.001\n");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].message, "missing 'duration' directive");
}

TEST(ScenarioParseTest, ParamValuesValidated) {
  EXPECT_FALSE(parse_scenario("duration 1\nparam debounce_ticks zero\n").ok());
  EXPECT_FALSE(parse_scenario("duration 1\nparam wrist 1\n").ok());
  EXPECT_FALSE(parse_scenario("duration 1\nparam dt 0.001\n").ok());
  EXPECT_TRUE(parse_scenario("duration 1\nparam object_size none\n").ok());
}

TEST(ScenarioParseTest, DiagnosticFormatting) {
  EXPECT_EQ(format_diagnostic({3, 7, "boom"}), "line 3, column 7: boom");
}

TEST(ScenarioFormatTest, RoundTrip) {
  const std::string text =
      "dt 0.0005\nduration 2.5\nparam payload_mass 5\nparam object_size none\n"
      "at 0 press ELBOW_UP\nat 0.3333333333333333 release ELBOW_UP\n"
      "at 0.1 place-object 0.05 2000\nat 1 set-payload 0\n"
      "expect 0.1 theta -0.01 0.01\nexpect 2 grip_state = OPENING\nexpect 2.5 adc_code 0 255\n";
  const ParseResult a = parse_scenario(text);
  ASSERT_TRUE(a.ok());
  const std::string canonical = format_scenario(*a.scenario);
  const ParseResult b = parse_scenario(canonical);
  ASSERT_TRUE(b.ok()) << canonical;
  EXPECT_TRUE(same_content(*a.scenario, *b.scenario));
  EXPECT_EQ(format_scenario(*b.scenario), canonical);
}

TEST(ScenarioParseTest, RandomBytesNeverCrash) {
  std::mt19937_64 rng(11);
  const std::string alphabet = "at press release expect dt duration param GRIP 0.5 -1 = #\n\t x";
  for (int i = 0; i < 2000; ++i) {
    std::string text;
    const int len = static_cast<int>(rng() % 120);
    for (int k = 0; k < len; ++k) {
      text += (rng() % 4 == 0) ? static_cast<char>(rng() % 256) : alphabet[rng() % alphabet.size()];
    }
    const ParseResult r = parse_scenario(text);
    EXPECT_NE(r.ok(), !r.diagnostics.empty());
    int lines = 1;
    for (char c : text) {
      lines += c == '\n';
    }
    for (const auto& d : r.diagnostics) {
      EXPECT_GE(d.line, 1);
      EXPECT_LE(d.line, lines);
      EXPECT_GE(d.column, 1);
    }
  }
}

TEST(TickIndexTest, FirstTickAtOrAfter) {
  EXPECT_EQ(first_tick_at_or_after(0.0, 0.001), 0);
  EXPECT_EQ(first_tick_at_or_after(0.05, 0.001), 50);
  EXPECT_EQ(first_tick_at_or_after(0.3, 0.001), 300);
  EXPECT_EQ(first_tick_at_or_after(0.0505, 0.001), 51);
  EXPECT_EQ(first_tick_at_or_after(0.1, 0.0005), 200);
  EXPECT_EQ(first_tick_at_or_after(1.0, 0.001), 1000);
}

}  // namespace
}  // namespace prosim
