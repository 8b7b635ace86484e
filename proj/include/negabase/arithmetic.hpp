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

#ifndef NEGABASE_ARITHMETIC_HPP
#define NEGABASE_ARITHMETIC_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "negabase/expansion.hpp"

// Arithmetic in base -gamma, gamma the Tribonacci constant.
namespace negabase {

/// Position-wise sum of two words aligned at the radix point.
DigitWord digitwise_sum(const DigitWord& x, const DigitWord& y);

/// A result together with the transducer stage that produced it.
struct Computation {
  ExpansionResult result;
  /// The word fed to the addition transducer (empty for negate).
  DigitWord transducer_input;
  /// Transducer output over {0,1} followed by its final window.
  DigitWord raw;
};

/// x + y for words over {0,1}, at least one of them admissible.
/// Throws std::domain_error on bad operands and std::logic_error if the
/// addition transducer gets stuck.
Computation add_traced(const DigitWord& x, const DigitWord& y);
/// -x for an admissible word x.
Computation negate_traced(const DigitWord& x);
/// x - y = x + T-(-y) for admissible x and y.
Computation subtract_traced(const DigitWord& x, const DigitWord& y);

/// As the traced forms; for integer operands also asserts fr <= 6.
ExpansionResult add(const DigitWord& x, const DigitWord& y);
ExpansionResult negate(const DigitWord& x);
ExpansionResult subtract(const DigitWord& x, const DigitWord& y);

struct FrWitness {
  std::string op;
  DigitWord x;
  DigitWord y;
  ExpansionResult result;
};

using FrHistogram = std::map<std::size_t, std::size_t>;

/// Statistics of raw transducer outputs over a scan.
struct RawOutputChecks {
  std::size_t max_fr_raw = 0;
  /// fr of the normalized result exceeded fr of the raw output.
  std::size_t dominance_violations = 0;
  /// fr_raw >= 2 without the suffix 0010^w.
  std::size_t suffix_violations = 0;
  /// Addition only: last sum digit != 2 yet fr_raw > 5.
  std::size_t small_tail_violations = 0;
  std::vector<FrWitness> small_tail_examples;
  FrHistogram raw_histogram;
};

struct FrScanReport {
  std::size_t words = 0;
  std::size_t max_fr_add = 0;
  std::size_t max_fr_sub = 0;
  std::size_t max_fr_neg = 0;
  FrHistogram add_histogram;
  FrHistogram sub_histogram;
  FrHistogram neg_histogram;
  /// All three operations together.
  FrHistogram histogram;
  /// At most 16 per (operation, fr).
  std::vector<FrWitness> witnesses;
  std::size_t value_failures = 0;
  RawOutputChecks add_raw;
  RawOutputChecks neg_raw;

  std::size_t max_fr() const;
};

/// All ordered pairs of admissible integer words of length <= max_len.
/// Pairs are partitioned by first operand over `threads` workers (0 = hardware).
FrScanReport scan_fr(std::size_t max_len, unsigned threads = 0);

}  // namespace negabase

#endif  // NEGABASE_ARITHMETIC_HPP
