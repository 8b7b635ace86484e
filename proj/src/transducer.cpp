// Copyright 2026 The negabase Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "negabase/transducer.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace negabase {

namespace {

std::string digits_text(const std::vector<int>& digits) {
  std::string s;
  for (int d : digits) s += std::to_string(d);
  return s;
}

std::vector<int> concat(const WindowState& w, const std::vector<int>& tail) {
  std::vector<int> out(w.begin(), w.end());
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

std::vector<int> concat(const std::vector<int>& head, const WindowState& w) {
  std::vector<int> out(head);
  out.insert(out.end(), w.begin(), w.end());
  return out;
}

bool is_prefix(const std::vector<int>& a, std::span<const int> b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

RunError::RunError(WindowState state, std::vector<int> remaining)
    : std::runtime_error("no transition from state " + negabase::to_string(state) +
                         " on remaining input " + digits_text(remaining)),
      state_(state),
      remaining_(std::move(remaining)) {}

Transducer::Transducer(std::string policy, std::vector<int> input_alphabet,
                       std::vector<int> output_alphabet, std::vector<Edge> edges)
    : policy_(std::move(policy)),
      input_alphabet_(std::move(input_alphabet)),
      output_alphabet_(std::move(output_alphabet)),
      edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 0; i < edges_.size();) {
    std::size_t j = i;
    while (j < edges_.size() && edges_[j].from == edges_[i].from) ++j;
    index_[edges_[i].from] = {i, j};
    i = j;
  }
}

std::vector<WindowState> Transducer::states() const {
  std::set<WindowState> s{initial_};
  for (const Edge& e : edges_) {
    s.insert(e.from);
    s.insert(e.to);
  }
  return {s.begin(), s.end()};
}

std::vector<WindowState> Transducer::reachable_states() const {
  std::set<WindowState> seen{initial_};
  std::deque<WindowState> todo{initial_};
  while (!todo.empty()) {
    WindowState q = todo.front();
    todo.pop_front();
    for (const Edge& e : edges_from(q)) {
      if (seen.insert(e.to).second) todo.push_back(e.to);
    }
  }
  return {seen.begin(), seen.end()};
}

std::span<const Edge> Transducer::edges_from(const WindowState& state) const {
  auto it = index_.find(state);
  if (it == index_.end()) return {};
  return std::span<const Edge>(edges_).subspan(it->second.first,
                                               it->second.second - it->second.first);
}

const Edge* Transducer::match(const WindowState& state, std::span<const int> remaining) const {
  for (const Edge& e : edges_from(state)) {
    if (is_prefix(e.input, remaining)) return &e;
  }
  return nullptr;
}

const Edge* Transducer::find(const WindowState& state, const std::vector<int>& input) const {
  for (const Edge& e : edges_from(state)) {
    if (e.input == input) return &e;
  }
  return nullptr;
}

std::array<int, 4> zero_word(const CubicBase& base) {
  return {1, static_cast<int>(base.m()), -static_cast<int>(base.m()),
          static_cast<int>(base.n())};
}

const Transducer& t_minus() {
  static const Transducer t = [] {
    using W = WindowState;
    auto e = [](W from, int in, int out, W to) { return Edge{from, {in}, {out}, to}; };
    std::vector<Edge> edges = {
        e({0, 0, 0}, 0, 0, {0, 0, 0}),     e({0, 0, 0}, -1, 0, {0, 0, -1}),
        e({0, 0, -1}, 0, 0, {0, -1, 0}),   e({0, 0, -1}, -1, 0, {0, -1, -1}),
        e({0, -1, -1}, 0, 0, {-1, -1, 0}), e({0, -1, -1}, -1, 1, {0, -2, 0}),
        e({0, -2, 0}, 0, 1, {-1, -1, 1}),  e({0, -2, 0}, -1, 1, {-1, -1, 0}),
        e({-1, -1, 1}, 0, 0, {0, 0, 1}),   e({-1, -1, 1}, -1, 0, {0, 0, 0}),
        e({-1, -1, 0}, 0, 0, {0, -1, 1}),  e({-1, -1, 0}, -1, 0, {0, -1, 0}),
        e({0, -1, 0}, 0, 1, {0, -1, 1}),   e({0, -1, 0}, -1, 1, {0, -1, 0}),
        e({0, -1, 1}, 0, 1, {0, 0, 1}),    e({0, -1, 1}, -1, 1, {0, 0, 0}),
        e({0, 0, 1}, 0, 0, {0, 1, 0}),     e({0, 0, 1}, -1, 1, {1, 0, 0}),
        e({1, 0, 0}, 0, 1, {0, 0, 0}),     e({1, 0, 0}, -1, 1, {0, 0, -1}),
        e({0, 1, 0}, 0, 0, {1, 0, 0}),     e({0, 1, 0}, -1, 0, {1, 0, -1}),
        e({1, 0, -1}, 0, 1, {0, -1, 0}),   e({1, 0, -1}, -1, 1, {0, -1, -1}),
    };
    return Transducer("table", {-1, 0}, {0, 1}, std::move(edges));
  }();
  return t;
}

FieldElement window_value(const WindowState& w, const CubicBase& base) {
  return value_of(DigitWord({w[0], w[1], w[2]}, 2), base);
}

// ---------------------------------------------------------------------------
// Construction of the addition transducer

namespace {

constexpr int kMinStateDigit = -2;
constexpr int kMaxStateDigit = 3;
constexpr int kMaxCorrection = 2;
constexpr std::array<int, 3> kAdditionInput = {0, 1, 2};

bool output_digit(int d) { return d == 0 || d == 1; }

bool state_digits(const WindowState& w) {
  return std::all_of(w.begin(), w.end(),
                     [](int d) { return d >= kMinStateDigit && d <= kMaxStateDigit; });
}

struct Single {
  int k;
  int out;
  WindowState to;
};

struct Double {
  int k1;
  int k2;
  std::array<int, 2> out;
  WindowState to;
};

class Builder {
 public:
  Builder(const TieBreakPolicy& policy, const CubicBase& base)
      : policy_(policy), zero_(zero_word(base)) {
    for (int a = kMinStateDigit; a <= kMaxStateDigit; ++a) {
      for (int b = kMinStateDigit; b <= kMaxStateDigit; ++b) {
        for (int c = kMinStateDigit; c <= kMaxStateDigit; ++c) {
          WindowState w{a, b, c};
          FieldElement v = window_value(w, base);
          bool ok = sign(v - FieldElement(policy.lower, 0, 0), base) >= 0 &&
                    sign(v - FieldElement(policy.upper, 0, 0), base) <= 0;
          if (ok) admissible_windows_.insert(w);
        }
      }
    }
    // Round one: a trap has a letter with no usable edge. Later rounds add
    // states with a letter that forces a run into a known trap.
    int rounds = policy.avoid_traps ? policy.trap_rounds : 1;
    for (bool grew = true; grew && rounds-- > 0;) {
      grew = false;
      std::set<WindowState> before = traps_;
      for (const WindowState& w : admissible_windows_) {
        if (traps_.count(w)) continue;
        for (int a : kAdditionInput) {
          if (forced_into(w, a, before)) {
            traps_.insert(w);
            grew = true;
            break;
          }
        }
      }
    }
  }

  bool forced_into(const WindowState& q, int a, const std::set<WindowState>& avoid) const {
    for (const Single& s : singles(q, a)) {
      if (!avoid.count(s.to)) return false;
    }
    return !complete_lookahead(q, a, avoid);
  }

  bool valid_successor(const WindowState& w) const {
    return state_digits(w) && admissible_windows_.count(w) > 0;
  }

  // Sorted by |k|, positive k first.
  std::vector<Single> singles(const WindowState& q, int a) const {
    std::vector<Single> out;
    for (int k = -kMaxCorrection; k <= kMaxCorrection; ++k) {
      std::array<int, 4> w{q[0] + k * zero_[0], q[1] + k * zero_[1], q[2] + k * zero_[2],
                           a + k * zero_[3]};
      WindowState to{w[1], w[2], w[3]};
      if (output_digit(w[0]) && valid_successor(to)) out.push_back({k, w[0], to});
    }
    std::sort(out.begin(), out.end(), [](const Single& x, const Single& y) {
      return std::make_tuple(std::abs(x.k), -x.k) < std::make_tuple(std::abs(y.k), -y.k);
    });
    return out;
  }

  // Sorted by |k1|+|k2|, then |k1|, positive k1 first, positive k2 first.
  std::vector<Double> doubles(const WindowState& q, int a, int b) const {
    std::vector<Double> out;
    for (int k1 = -kMaxCorrection; k1 <= kMaxCorrection; ++k1) {
      std::array<int, 5> w1{q[0], q[1], q[2], a, b};
      for (int i = 0; i < 4; ++i) w1[i] += k1 * zero_[i];
      if (!output_digit(w1[0])) continue;
      for (int k2 = -kMaxCorrection; k2 <= kMaxCorrection; ++k2) {
        std::array<int, 5> w2 = w1;
        for (int i = 0; i < 4; ++i) w2[i + 1] += k2 * zero_[i];
        WindowState to{w2[2], w2[3], w2[4]};
        if (output_digit(w2[1]) && valid_successor(to)) {
          out.push_back({k1, k2, {w2[0], w2[1]}, to});
        }
      }
    }
    auto key = [](const Double& d) {
      return std::make_tuple(std::abs(d.k1) + std::abs(d.k2), std::abs(d.k1), -d.k1, -d.k2);
    };
    std::sort(out.begin(), out.end(),
              [&](const Double& x, const Double& y) { return key(x) < key(y); });
    return out;
  }

  // One option per second letter, each leading to a state allowed by `allowed`.
  // With `fallback`, a second letter whose options all lead into `forbidden`
  // takes its first option anyway.
  std::optional<std::vector<std::pair<int, Double>>> complete_lookahead(
      const WindowState& q, int a, const std::set<WindowState>& forbidden,
      bool fallback = false) const {
    std::vector<std::pair<int, Double>> chosen;
    for (int b : kAdditionInput) {
      std::vector<Double> options = doubles(q, a, b);
      auto it = std::find_if(options.begin(), options.end(),
                             [&](const Double& d) { return !forbidden.count(d.to); });
      if (it == options.end() && fallback && !options.empty()) it = options.begin();
      if (it == options.end()) return std::nullopt;
      chosen.emplace_back(b, *it);
    }
    return chosen;
  }

  Transducer build() const {
    std::vector<Edge> edges;
    std::set<WindowState> seen{{0, 0, 0}};
    std::deque<WindowState> todo{{0, 0, 0}};
    std::vector<std::pair<WindowState, int>> holes;
    const std::set<WindowState> none;
    const std::set<WindowState>& avoid = policy_.avoid_traps ? traps_ : none;
    while (!todo.empty()) {
      WindowState q = todo.front();
      todo.pop_front();
      for (int a : kAdditionInput) {
        std::vector<Edge> installed = choose(q, a, avoid, false);
        if (installed.empty()) installed = choose(q, a, avoid, true);
        if (installed.empty()) installed = choose(q, a, none, false);
        if (installed.empty()) holes.emplace_back(q, a);
        for (Edge& e : installed) {
          if (seen.insert(e.to).second) todo.push_back(e.to);
          edges.push_back(std::move(e));
        }
      }
    }
    for (const auto& hole : holes) {
      if (std::find(policy_.permitted_holes.begin(), policy_.permitted_holes.end(), hole) ==
          policy_.permitted_holes.end()) {
        throw ConstructionError("no valid correction from state " + to_string(hole.first) +
                                " on input " + std::to_string(hole.second) +
                                ", even with a two-letter lookahead");
      }
    }
    return Transducer(policy_.name, {0, 1, 2}, {0, 1}, std::move(edges));
  }

 private:
  std::vector<Edge> choose(const WindowState& q, int a, const std::set<WindowState>& forbidden,
                           bool fallback) const {
    for (const Single& s : singles(q, a)) {
      if (!forbidden.count(s.to)) return {Edge{q, {a}, {s.out}, s.to}};
    }
    std::vector<Edge> out;
    if (auto la = complete_lookahead(q, a, forbidden, fallback)) {
      for (const auto& [b, d] : *la) out.push_back(Edge{q, {a, b}, {d.out[0], d.out[1]}, d.to});
    }
    return out;
  }

  const TieBreakPolicy& policy_;
  std::array<int, 4> zero_;
  std::set<WindowState> admissible_windows_;
  std::set<WindowState> traps_;
};

}  // namespace

Transducer build_t_plus(const TieBreakPolicy& policy) {
  return Builder(policy, CubicBase::tribonacci()).build();
}

const std::vector<Edge>& addition_anchor_edges() {
  static const std::vector<Edge> anchors = {
      {{0, 0, 0}, {2}, {0}, {0, 0, 2}},      {{0, 0, 2}, {1}, {1}, {1, 1, 2}},
      {{1, 1, 2}, {2}, {1}, {1, 2, 2}},      {{1, 2, 2}, {0}, {1}, {2, 2, 0}},
      {{2, 2, 0}, {0}, {1}, {1, 1, -1}},     {{1, 1, -1}, {0}, {0}, {0, 0, -1}},
      {{0, 0, -1}, {0}, {0}, {0, -1, 0}},    {{0, -1, 0}, {0}, {1}, {0, -1, 1}},
      {{0, -1, 1}, {0}, {1}, {0, 0, 1}},     {{0, 0, 1}, {0, 0}, {0, 0}, {1, 0, 0}},
      {{1, 0, 0}, {0}, {1}, {0, 0, 0}},      {{0, 0, 0}, {0}, {0}, {0, 0, 0}},
  };
  return anchors;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

// Coefficients c_j with diff = sum_j c_j * (zero word shifted by j), if any.
std::optional<std::vector<int>> zero_word_certificate(std::vector<int> diff,
                                                      const std::array<int, 4>& zero,
                                                      std::size_t shifts) {
  std::vector<int> coefficients;
  for (std::size_t j = 0; j < shifts; ++j) {
    int c = diff[j];
    coefficients.push_back(c);
    for (std::size_t i = 0; i < zero.size(); ++i) diff[j + i] -= c * zero[i];
  }
  if (std::any_of(diff.begin(), diff.end(), [](int d) { return d != 0; })) return std::nullopt;
  return coefficients;
}

bool prefix_comparable(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t n = std::min(a.size(), b.size());
  return std::equal(a.begin(), a.begin() + static_cast<long>(n), b.begin());
}

bool in(const std::vector<int>& alphabet, int d) {
  return std::find(alphabet.begin(), alphabet.end(), d) != alphabet.end();
}

}  // namespace

ValidationReport validate(const Transducer& t, const CubicBase& base) {
  ValidationReport report;
  const auto zero = zero_word(base);
  for (const Edge& e : t.edges()) {
    ++report.edges_checked;
    auto issue = [&](const std::string& why) { report.issues.push_back({e, why}); };
    if (e.input.empty() || e.input.size() != e.output.size()) {
      issue("input and output lengths differ");
      continue;
    }
    if (!std::all_of(e.input.begin(), e.input.end(),
                     [&](int d) { return in(t.input_alphabet(), d); })) {
      issue("input digit outside the input alphabet");
    }
    if (!std::all_of(e.output.begin(), e.output.end(),
                     [&](int d) { return in(t.output_alphabet(), d); })) {
      issue("output digit outside the output alphabet");
    }
    const long top = static_cast<long>(e.input.size()) + 2;
    std::vector<int> before = concat(e.from, e.input);
    std::vector<int> after = concat(e.output, e.to);
    if (value_of(DigitWord(before, top), base) == value_of(DigitWord(after, top), base)) {
      ++report.value_preserving;
    } else {
      issue("value not preserved");
    }
    std::vector<int> diff(before.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = after[i] - before[i];
    auto cert = zero_word_certificate(diff, zero, e.input.size());
    bool bounded = cert && std::all_of(cert->begin(), cert->end(),
                                       [](int c) { return std::abs(c) <= kMaxCorrection; });
    if (bounded) {
      ++report.certified;
    } else {
      issue("difference is not a bounded combination of zero words");
    }
  }
  for (const WindowState& q : t.states()) {
    auto out = t.edges_from(q);
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = i + 1; j < out.size(); ++j) {
        if (prefix_comparable(out[i].input, out[j].input)) report.deterministic = false;
      }
    }
  }
  for (const WindowState& q : t.reachable_states()) {
    for (int a : t.input_alphabet()) {
      if (t.find(q, {a})) continue;
      bool any_long = false;
      for (const Edge& e : t.edges_from(q)) any_long |= e.input.size() > 1 && e.input[0] == a;
      if (!any_long) {
        report.holes.emplace_back(q, std::vector<int>{a});
        continue;
      }
      for (int b : t.input_alphabet()) {
        if (!t.find(q, {a, b})) report.holes.emplace_back(q, std::vector<int>{a, b});
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Execution

RunResult run(const Transducer& t, std::span<const int> input) {
  RunResult r;
  r.final_state = t.initial();
  std::size_t i = 0;
  while (i < input.size()) {
    const Edge* e = t.match(r.final_state, input.subspan(i));
    if (!e) throw RunError(r.final_state, {input.begin() + i, input.end()});
    r.output.insert(r.output.end(), e->output.begin(), e->output.end());
    r.final_state = e->to;
    i += e->input.size();
  }
  return r;
}

DigitWord apply(const Transducer& t, const DigitWord& input) {
  constexpr std::size_t kMaxDrain = 32;
  std::vector<int> letters = input.digits();
  const std::size_t limit = letters.size() + kMaxDrain;
  WindowState state = t.initial();
  std::vector<int> output;
  std::size_t i = 0;
  while (true) {
    std::span<const int> rest = std::span<const int>(letters).subspan(i);
    if (rest.empty()) {
      if (state == t.initial() || letters.size() >= limit) break;
      letters.push_back(0);
      continue;
    }
    const Edge* e = t.match(state, rest);
    if (!e) {
      // The input may end inside a two-letter edge; zeros follow it.
      bool partial = false;
      for (const Edge& cand : t.edges_from(state)) {
        partial |= cand.input.size() > rest.size() &&
                   std::equal(rest.begin(), rest.end(), cand.input.begin());
      }
      if (partial && letters.size() < limit) {
        letters.push_back(0);
        continue;
      }
      throw RunError(state, {rest.begin(), rest.end()});
    }
    output.insert(output.end(), e->output.begin(), e->output.end());
    state = e->to;
    i += e->input.size();
  }
  std::vector<int> digits = concat(output, state);
  return DigitWord(std::move(digits), input.leading_exponent() + 3);
}

// ---------------------------------------------------------------------------
// Zero tails

ZeroTailReport zero_tail_analysis(const Transducer& t) {
  ZeroTailReport report;
  const std::array<int, 2> zeros{0, 0};
  for (const WindowState& q : t.reachable_states()) {
    ZeroTail tail;
    WindowState s = q;
    std::set<WindowState> visited;
    while (s != t.initial() && visited.insert(s).second) {
      const Edge* e = t.match(s, zeros);
      if (!e) break;
      tail.emitted.insert(tail.emitted.end(), e->output.begin(), e->output.end());
      tail.zeros_read += e->input.size();
      s = e->to;
    }
    tail.reaches_initial = s == t.initial();
    if (tail.reaches_initial) {
      report.max_zeros_read = std::max(report.max_zeros_read, tail.zeros_read);
      for (std::size_t j = tail.emitted.size(); j > 0; --j) {
        if (tail.emitted[j - 1] != 0) {
          report.max_last_nonzero = std::max(report.max_last_nonzero, j);
          break;
        }
      }
    } else {
      report.stuck.push_back(q);
    }
    report.tails.emplace(q, std::move(tail));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Text forms

std::string to_string(const WindowState& w) {
  return std::to_string(w[0]) + std::to_string(w[1]) + std::to_string(w[2]);
}

std::string to_string(const Edge& e) {
  return to_string(e.from) + "|" + digits_text(e.input) + " -> " + digits_text(e.output) +
         "|" + to_string(e.to);
}

namespace {

using nlohmann::json;

std::string compact(const json& j) { return j.dump(); }

}  // namespace

std::string export_json(const Transducer& t) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"policy\": " << compact(t.policy()) << ",\n";
  out << "  \"initial\": " << compact(t.initial()) << ",\n";
  out << "  \"input_alphabet\": " << compact(t.input_alphabet()) << ",\n";
  out << "  \"output_alphabet\": " << compact(t.output_alphabet()) << ",\n";
  out << "  \"states\": [\n";
  auto states = t.states();
  for (std::size_t i = 0; i < states.size(); ++i) {
    out << "    " << compact(states[i]) << (i + 1 < states.size() ? ",\n" : "\n");
  }
  out << "  ],\n";
  out << "  \"edges\": [\n";
  const auto& edges = t.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    out << "    {\"from\":" << compact(e.from) << ",\"input\":" << compact(e.input)
        << ",\"output\":" << compact(e.output) << ",\"to\":" << compact(e.to) << "}"
        << (i + 1 < edges.size() ? ",\n" : "\n");
  }
  out << "  ]\n";
  out << "}\n";
  return out.str();
}

Transducer parse_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
    std::vector<Edge> edges;
    for (const json& e : j.at("edges")) {
      edges.push_back(Edge{e.at("from").get<WindowState>(), e.at("input").get<std::vector<int>>(),
                           e.at("output").get<std::vector<int>>(),
                           e.at("to").get<WindowState>()});
    }
    if (j.at("initial").get<WindowState>() != WindowState{0, 0, 0}) {
      throw std::invalid_argument("initial state must be [0,0,0]");
    }
    return Transducer(j.value("policy", std::string()),
                      j.at("input_alphabet").get<std::vector<int>>(),
                      j.at("output_alphabet").get<std::vector<int>>(), std::move(edges));
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("malformed transducer JSON: ") + ex.what());
  }
}

namespace {

std::string overlined(int d) {
  return d < 0 ? std::to_string(-d) + "̄" : std::to_string(d);
}

std::string label(const std::vector<int>& digits) {
  std::string s;
  for (int d : digits) s += overlined(d);
  return s;
}

std::string node_id(const WindowState& w) {
  return "\"" + std::to_string(w[0]) + "," + std::to_string(w[1]) + "," +
         std::to_string(w[2]) + "\"";
}

}  // namespace

std::string export_dot(const Transducer& t) {
  std::ostringstream out;
  out << "digraph transducer {\n";
  out << "  rankdir=LR;\n";
  for (const WindowState& q : t.states()) {
    out << "  " << node_id(q) << " [label=\"" << label({q[0], q[1], q[2]}) << "\""
        << (q == t.initial() ? ", shape=doublecircle" : "") << "];\n";
  }
  for (const Edge& e : t.edges()) {
    out << "  " << node_id(e.from) << " -> " << node_id(e.to) << " [label=\""
        << label(e.input) << " → " << label(e.output) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace negabase
