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

#ifndef NEGABASE_TRANSDUCER_HPP
#define NEGABASE_TRANSDUCER_HPP

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "negabase/expansion.hpp"
#include "negabase/field.hpp"

namespace negabase {

/// Pending digits (a, b, c), most significant first.
using WindowState = std::array<int, 3>;

struct Edge {
  WindowState from{};
  std::vector<int> input;
  std::vector<int> output;
  WindowState to{};

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Raised when a run reaches a (state, input) pair with no edge.
class RunError : public std::runtime_error {
 public:
  RunError(WindowState state, std::vector<int> remaining);
  const WindowState& state() const { return state_; }
  const std::vector<int>& remaining() const { return remaining_; }

 private:
  WindowState state_;
  std::vector<int> remaining_;
};

/// Deterministic sliding-window transducer. Edges are kept sorted.
class Transducer {
 public:
  Transducer(std::string policy, std::vector<int> input_alphabet,
             std::vector<int> output_alphabet, std::vector<Edge> edges);

  const std::string& policy() const { return policy_; }
  const WindowState& initial() const { return initial_; }
  const std::vector<int>& input_alphabet() const { return input_alphabet_; }
  const std::vector<int>& output_alphabet() const { return output_alphabet_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Every state that appears on some edge, sorted.
  std::vector<WindowState> states() const;
  /// States reachable from the initial state.
  std::vector<WindowState> reachable_states() const;
  /// Edges leaving `state`.
  std::span<const Edge> edges_from(const WindowState& state) const;
  /// The edge whose input is a prefix of `remaining`, if any.
  const Edge* match(const WindowState& state, std::span<const int> remaining) const;
  const Edge* find(const WindowState& state, const std::vector<int>& input) const;

 private:
  std::string policy_;
  WindowState initial_{0, 0, 0};
  std::vector<int> input_alphabet_;
  std::vector<int> output_alphabet_;
  std::vector<Edge> edges_;
  std::map<WindowState, std::pair<std::size_t, std::size_t>> index_;
};

/// The zero word (1, m, -m, n): a digit string of value 0.
std::array<int, 4> zero_word(const CubicBase& base);

/// The 24-edge subtraction transducer over input {0, -1}.
const Transducer& t_minus();

/// Rule used to pick one edge when several corrections are valid.
struct TieBreakPolicy {
  std::string name = "value-window-v2";
  /// Successor windows must satisfy lower <= value(window) <= upper.
  Rational lower = Rational(-5, 4);
  Rational upper = Rational(9, 2);
  /// Avoid successor states that are traps, unless nothing else fits.
  bool avoid_traps = true;
  /// Rounds of trap propagation: 1 marks states with a letter that has no
  /// usable edge, each further round adds states forced into a trap.
  int trap_rounds = 2;
  /// Holes the construction is allowed to leave.
  std::vector<std::pair<WindowState, int>> permitted_holes = {{{1, 0, 1}, 0}};
};

/// Raised when construction leaves a hole the policy does not permit.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sliding-window closure from (0,0,0) over input letters {0,1,2}.
Transducer build_t_plus(const TieBreakPolicy& policy = {});

/// The transitions the addition transducer must contain.
const std::vector<Edge>& addition_anchor_edges();

struct EdgeIssue {
  Edge edge;
  std::string reason;
};

struct ValidationReport {
  std::size_t edges_checked = 0;
  std::size_t value_preserving = 0;
  std::size_t certified = 0;
  std::vector<EdgeIssue> issues;
  bool deterministic = true;
  /// (state, input prefix) pairs with no matching edge, reachable states only.
  std::vector<std::pair<WindowState, std::vector<int>>> holes;

  bool all_edges_valid() const { return issues.empty(); }
};

ValidationReport validate(const Transducer& t, const CubicBase& base);

/// Value of the window (a, b, c) read at positions 2, 1, 0.
FieldElement window_value(const WindowState& w, const CubicBase& base);

struct RunResult {
  std::vector<int> output;
  WindowState final_state{};
};

/// Greedy execution from the initial state. Output digit j sits three positions
/// above input digit j; output followed by the final window equals the input in value.
RunResult run(const Transducer& t, std::span<const int> input);

/// Runs `t` on an integer-positioned word, appending zeros until the window drains.
/// The result carries output and final window at their true positions.
DigitWord apply(const Transducer& t, const DigitWord& input);

struct ZeroTail {
  bool reaches_initial = false;
  /// Zero letters read until the initial state.
  std::size_t zeros_read = 0;
  std::vector<int> emitted;
};

struct ZeroTailReport {
  std::map<WindowState, ZeroTail> tails;
  std::size_t max_zeros_read = 0;
  /// Largest 1-based index of a nonzero emitted digit over all tails.
  std::size_t max_last_nonzero = 0;
  std::vector<WindowState> stuck;
};

ZeroTailReport zero_tail_analysis(const Transducer& t);

std::string export_json(const Transducer& t);
Transducer parse_json(std::string_view text);
std::string export_dot(const Transducer& t);

/// "abc|u -> v|def" with negative digits written as -1.
std::string to_string(const Edge& e);
std::string to_string(const WindowState& w);

}  // namespace negabase

#endif  // NEGABASE_TRANSDUCER_HPP
