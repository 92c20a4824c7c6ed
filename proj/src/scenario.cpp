#include "prosim/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "prosim/error.hpp"
#include "prosim/settings.hpp"

namespace prosim {

namespace {

struct Token {
  std::string_view text;
  int column = 0;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
      ++i;
    }
    if (i >= line.size()) {
      break;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
      ++i;
    }
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

constexpr std::array<std::string_view, 3> kElbowTokens{"IDLE", "MOVING_UP", "MOVING_DOWN"};
constexpr std::array<std::string_view, 4> kGripTokens{"OPEN", "CLOSING", "HOLDING", "OPENING"};
constexpr std::array<std::string_view, 2> kComparatorTokens{"0", "1"};

bool is_enum_field(TraceField f) {
  return f == TraceField::kElbowState || f == TraceField::kGripState;
}

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view token) {
  return std::find(set.begin(), set.end(), token) != set.end();
}

class LineParser {
 public:
  LineParser(int line, std::vector<Diagnostic>& diags) : line_(line), diags_(diags) {}

  void error(int column, std::string message) {
    diags_.push_back({line_, column, std::move(message)});
  }

  bool number(const Token& t, std::string_view what, double& out) {
    if (!parse_number(t.text, out)) {
      error(t.column, fmt::format("malformed {} '{}'", what, t.text));
      return false;
    }
    return true;
  }

  bool time(const Token& t, double& out) {
    if (!number(t, "time", out)) {
      return false;
    }
    if (out < 0.0) {
      error(t.column, fmt::format("time {} is negative", t.text));
      return false;
    }
    return true;
  }

  bool arity(const std::vector<Token>& toks, std::size_t expected, std::string_view form) {
    if (toks.size() == expected) {
      return true;
    }
    const int column = toks.size() > expected ? toks[expected].column : toks.back().column;
    error(column, fmt::format("expected '{}'", form));
    return false;
  }

  int line() const { return line_; }

 private:
  int line_;
  std::vector<Diagnostic>& diags_;
};

struct PendingTime {
  double time;
  int line;
  int column;
};

}  // namespace

std::string_view to_token(SwitchName s) {
  switch (s) {
    case SwitchName::kElbowUp: return "ELBOW_UP";
    case SwitchName::kElbowDown: return "ELBOW_DOWN";
    case SwitchName::kGrip: return "GRIP";
  }
  return "?";
}

std::string_view to_token(TraceField f) {
  switch (f) {
    case TraceField::kTheta: return "theta";
    case TraceField::kOmega: return "omega";
    case TraceField::kAperture: return "aperture";
    case TraceField::kGripCurrent: return "grip_current";
    case TraceField::kAdcCode: return "adc_code";
    case TraceField::kElbowState: return "elbow_state";
    case TraceField::kGripState: return "grip_state";
    case TraceField::kComparator: return "comparator";
  }
  return "?";
}

std::optional<SwitchName> switch_from_token(std::string_view token) {
  for (auto s : {SwitchName::kElbowUp, SwitchName::kElbowDown, SwitchName::kGrip}) {
    if (to_token(s) == token) {
      return s;
    }
  }
  return std::nullopt;
}

std::optional<TraceField> field_from_token(std::string_view token) {
  for (auto f : {TraceField::kTheta, TraceField::kOmega, TraceField::kAperture,
                 TraceField::kGripCurrent, TraceField::kAdcCode, TraceField::kElbowState,
                 TraceField::kGripState, TraceField::kComparator}) {
    if (to_token(f) == token) {
      return f;
    }
  }
  return std::nullopt;
}

std::string format_diagnostic(const Diagnostic& d) {
  return fmt::format("line {}, column {}: {}", d.line, d.column, d.message);
}

ParseResult parse_scenario(std::string_view text) {
  ParseResult result;
  auto& diags = result.diagnostics;
  Scenario sc;
  std::optional<int> duration_line;
  std::optional<int> dt_line;
  std::vector<PendingTime> times;
  int line_no = 0;

  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    const auto toks = tokenize(raw);
    if (toks.empty()) {
      continue;
    }
    LineParser lp(line_no, diags);
    const auto head = toks[0].text;

    if (head == "dt" || head == "duration") {
      if (!lp.arity(toks, 2, fmt::format("{} <seconds>", head))) {
        continue;
      }
      double v = 0.0;
      if (!lp.number(toks[1], head, v)) {
        continue;
      }
      if (v <= 0.0) {
        lp.error(toks[1].column, fmt::format("{} must be > 0", head));
        continue;
      }
      auto& seen = head == "dt" ? dt_line : duration_line;
      if (seen) {
        lp.error(toks[0].column, fmt::format("duplicate '{}' (first on line {})", head, *seen));
        continue;
      }
      seen = line_no;
      if (head == "dt") {
        sc.dt = v;
      } else {
        sc.duration = v;
      }
    } else if (head == "param") {
      if (!lp.arity(toks, 3, "param <name> <value>")) {
        continue;
      }
      if (!is_known_setting(toks[1].text)) {
        lp.error(toks[1].column, fmt::format("unknown parameter '{}'", toks[1].text));
        continue;
      }
      if (toks[1].text == "dt") {
        lp.error(toks[1].column, "set the time step with the 'dt' directive");
        continue;
      }
      SimSettings scratch;
      try {
        apply_setting(scratch, toks[1].text, toks[2].text);
      } catch (const ValidationError& e) {
        lp.error(toks[2].column, e.what());
        continue;
      }
      sc.params.push_back({std::string(toks[1].text), std::string(toks[2].text), line_no});
    } else if (head == "at") {
      if (toks.size() < 3) {
        lp.error(toks.back().column, "expected 'at <t> <action> ...'");
        continue;
      }
      ScenarioEvent ev;
      ev.line = line_no;
      const bool time_ok = lp.time(toks[1], ev.time);
      const auto verb = toks[2].text;
      bool ok = time_ok;
      if (verb == "press" || verb == "release") {
        ev.kind = verb == "press" ? EventKind::kPress : EventKind::kRelease;
        if (!lp.arity(toks, 4, fmt::format("at <t> {} <SWITCH>", verb))) {
          continue;
        }
        if (const auto sw = switch_from_token(toks[3].text)) {
          ev.target = *sw;
        } else {
          lp.error(toks[3].column, fmt::format("unknown switch {}", toks[3].text));
          ok = false;
        }
      } else if (verb == "set-payload") {
        ev.kind = EventKind::kSetPayload;
        if (!lp.arity(toks, 4, "at <t> set-payload <kg>")) {
          continue;
        }
        if (!lp.number(toks[3], "mass", ev.mass)) {
          ok = false;
        } else if (ev.mass < 0.0) {
          lp.error(toks[3].column, "payload mass must be >= 0");
          ok = false;
        }
      } else if (verb == "place-object") {
        ev.kind = EventKind::kPlaceObject;
        if (!lp.arity(toks, 5, "at <t> place-object <size_m> <stiffness_N_per_m>")) {
          continue;
        }
        if (!lp.number(toks[3], "object size", ev.object_size)) {
          ok = false;
        } else if (ev.object_size <= 0.0) {
          lp.error(toks[3].column, "object size must be > 0");
          ok = false;
        }
        if (!lp.number(toks[4], "stiffness", ev.stiffness)) {
          ok = false;
        } else if (ev.stiffness <= 0.0) {
          lp.error(toks[4].column, "stiffness must be > 0");
          ok = false;
        }
      } else {
        lp.error(toks[2].column, fmt::format("unknown action '{}'", verb));
        continue;
      }
      if (ok) {
        times.push_back({ev.time, line_no, toks[1].column});
        sc.events.push_back(ev);
      }
    } else if (head == "expect") {
      if (toks.size() < 3) {
        lp.error(toks.back().column, "expected 'expect <t> <field> ...'");
        continue;
      }
      ScenarioAssertion as;
      as.line = line_no;
      bool ok = lp.time(toks[1], as.time);
      const auto field = field_from_token(toks[2].text);
      if (!field) {
        lp.error(toks[2].column, fmt::format("unknown field '{}'", toks[2].text));
        continue;
      }
      as.field = *field;
      if (toks.size() >= 4 && toks[3].text == "=") {
        if (!lp.arity(toks, 5, fmt::format("expect <t> {} = <TOKEN>", toks[2].text))) {
          continue;
        }
        const auto tok = toks[4].text;
        const bool valid = (as.field == TraceField::kElbowState && contains(kElbowTokens, tok)) ||
                           (as.field == TraceField::kGripState && contains(kGripTokens, tok)) ||
                           (as.field == TraceField::kComparator && contains(kComparatorTokens, tok));
        if (!valid) {
          if (!is_enum_field(as.field) && as.field != TraceField::kComparator) {
            lp.error(toks[3].column,
                     fmt::format("field {} takes a range '<min> <max>'", toks[2].text));
          } else {
            lp.error(toks[4].column, fmt::format("invalid token {} for {}", tok, toks[2].text));
          }
          continue;
        }
        as.token = std::string(tok);
      } else {
        if (is_enum_field(as.field)) {
          lp.error(toks[2].column, fmt::format("field {} takes '= <TOKEN>'", toks[2].text));
          continue;
        }
        if (!lp.arity(toks, 5, fmt::format("expect <t> {} <min> <max>", toks[2].text))) {
          continue;
        }
        const bool lo = lp.number(toks[3], "minimum", as.min);
        const bool hi = lp.number(toks[4], "maximum", as.max);
        if (lo && hi && as.min > as.max) {
          lp.error(toks[3].column, "minimum exceeds maximum");
          ok = false;
        }
        ok = ok && lo && hi;
      }
      if (ok) {
        times.push_back({as.time, line_no, toks[1].column});
        sc.assertions.push_back(as);
      }
    } else {
      lp.error(toks[0].column, fmt::format("unknown directive '{}'", head));
    }
  }

  if (!duration_line) {
    diags.push_back({std::max(1, line_no), 1, "missing 'duration' directive"});
  } else {
    for (const auto& t : times) {
      if (t.time > sc.duration) {
        diags.push_back({t.line, t.column,
                         fmt::format("time {} is beyond duration {}", t.time, sc.duration)});
      }
    }
  }

  if (!diags.empty()) {
    std::stable_sort(diags.begin(), diags.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
    return result;
  }
  std::stable_sort(sc.events.begin(), sc.events.end(),
                   [](const auto& a, const auto& b) { return a.time < b.time; });
  std::stable_sort(sc.assertions.begin(), sc.assertions.end(),
                   [](const auto& a, const auto& b) { return a.time < b.time; });
  result.scenario = std::move(sc);
  return result;
}

std::string format_scenario(const Scenario& s) {
  std::string out;
  if (s.dt) {
    out += fmt::format("dt {}\n", *s.dt);
  }
  out += fmt::format("duration {}\n", s.duration);
  for (const auto& p : s.params) {
    out += fmt::format("param {} {}\n", p.name, p.value);
  }
  for (const auto& e : s.events) {
    switch (e.kind) {
      case EventKind::kPress:
        out += fmt::format("at {} press {}\n", e.time, to_token(e.target));
        break;
      case EventKind::kRelease:
        out += fmt::format("at {} release {}\n", e.time, to_token(e.target));
        break;
      case EventKind::kSetPayload:
        out += fmt::format("at {} set-payload {}\n", e.time, e.mass);
        break;
      case EventKind::kPlaceObject:
        out += fmt::format("at {} place-object {} {}\n", e.time, e.object_size, e.stiffness);
        break;
    }
  }
  for (const auto& a : s.assertions) {
    if (a.token) {
      out += fmt::format("expect {} {} = {}\n", a.time, to_token(a.field), *a.token);
    } else {
      out += fmt::format("expect {} {} {} {}\n", a.time, to_token(a.field), a.min, a.max);
    }
  }
  return out;
}

bool same_content(const Scenario& a, const Scenario& b) {
  if (a.dt != b.dt || a.duration != b.duration || a.params.size() != b.params.size() ||
      a.events.size() != b.events.size() || a.assertions.size() != b.assertions.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    if (a.params[i].name != b.params[i].name || a.params[i].value != b.params[i].value) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    const auto& x = a.events[i];
    const auto& y = b.events[i];
    if (x.time != y.time || x.kind != y.kind) {
      return false;
    }
    const bool same_args = (x.kind == EventKind::kPress || x.kind == EventKind::kRelease)
                               ? x.target == y.target
                           : x.kind == EventKind::kSetPayload
                               ? x.mass == y.mass
                               : x.object_size == y.object_size && x.stiffness == y.stiffness;
    if (!same_args) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.assertions.size(); ++i) {
    const auto& x = a.assertions[i];
    const auto& y = b.assertions[i];
    if (x.time != y.time || x.field != y.field || x.token != y.token) {
      return false;
    }
    if (!x.token && (x.min != y.min || x.max != y.max)) {
      return false;
    }
  }
  return true;
}

long long first_tick_at_or_after(double time, double dt) {
  if (time <= 0.0) {
    return 0;
  }
  // n * dt is compared with a relative slack so that e.g. 0.3 s lands on tick
  // 300 at dt = 1 ms despite 300 * 0.001 != 0.3 in binary.
  const double q = time / dt;
  const double nearest = std::round(q);
  if (std::abs(q - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    return static_cast<long long>(nearest);
  }
  return static_cast<long long>(std::ceil(q));
}

}  // namespace prosim
