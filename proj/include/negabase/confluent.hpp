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

#ifndef NEGABASE_CONFLUENT_HPP
#define NEGABASE_CONFLUENT_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "negabase/expansion.hpp"

// Bases x^3 - m x^2 - m x - n and the add-one rewriting automaton.
namespace negabase {

using ZeroIdentity = std::array<int, 4>;

/// (1, m, -m, n) and its negation; both have value 0.
std::pair<ZeroIdentity, ZeroIdentity> zero_identities(const CubicBase& base);

/// Expansion of -1; for m = n asserts the form 1 m . 0 0 m.
ExpansionResult minus_one(const CubicBase& base);

enum class QTag {
  kQI, kQII, kQ1, kQ2, kQ3, kQ4, kQ5, kQ6, kQ7, kQ8, kQ9, kQ10, kQ11, kQ12, kQ13,
};

std::string to_string(QTag tag);

struct ConfluentStep {
  QTag tag;
  /// Live window before the rewrite.
  std::array<int, 3> window;
  /// Digits of the starting representation under window slots 2 and 3 (y, z).
  std::array<int, 2> original;
  int input;
  ZeroIdentity rewrite;
  int output;
};

enum class Termination {
  kTrivial,      // x0 != m, plain increment
  kInitialStop,  // the initial rewrite already lands in the alphabet
  kStop,         // window entered the alphabet
  kLoopExit,     // stopped in Q_10 on the zero tail
};

struct ConfluentTrace {
  /// x + 1 with the digit m + 1 at position 0 (or the plain increment).
  DigitWord start;
  /// The word after the initial classification rewrite, if one was applied.
  std::optional<DigitWord> initialized;
  std::vector<ConfluentStep> steps;
  Termination termination = Termination::kTrivial;
  /// State in which the automaton stopped.
  std::optional<QTag> final_tag;
  std::array<int, 3> final_window{};
  /// Representation of x + 1 over {0, ..., m}.
  DigitWord result;

  /// Tags of all visited states, the stopping state included.
  std::vector<QTag> path() const;
  /// One line per step, "Qtag | window=a,b,c | in=d | rewrite=w | out=e",
  /// framed by a start line and a STOP or LOOP-EXIT line.
  std::string to_string() const;
};

class ConfluentBudgetExceeded : public BudgetExceeded {
 public:
  ConfluentBudgetExceeded(const std::string& what, ConfluentTrace partial)
      : BudgetExceeded(what), partial_(std::move(partial)) {}
  const ConfluentTrace& partial() const { return partial_; }

 private:
  ConfluentTrace partial_;
};

struct AddOneOptions {
  std::size_t max_steps = kDefaultMaxSteps;
  /// Reject non-admissible x before running.
  bool require_admissible = true;
};

/// Representation of x + 1 over {0, ..., m} for x over that alphabet; m = n only.
/// Throws std::domain_error on bad input and ConfluentBudgetExceeded on budget.
ConfluentTrace add_one(const DigitWord& x, const CubicBase& base, const AddOneOptions& options = {});

struct ProbeWitness {
  FieldElement x;
  ExpansionResult expansion;
};

struct ProbeReport {
  std::size_t checked = 0;
  std::size_t finite = 0;
  std::vector<ProbeWitness> infinite;
  std::vector<FieldElement> budget_exceeded;

  bool all_finite() const { return infinite.empty() && budget_exceeded.empty(); }
};

/// Expands every integer-coordinate element with |c_i| <= coord_bound.
ProbeReport finiteness_probe(const CubicBase& base, long coord_bound,
                             std::size_t max_steps = kDefaultMaxSteps, unsigned threads = 0);

}  // namespace negabase

#endif  // NEGABASE_CONFLUENT_HPP
