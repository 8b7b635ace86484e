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

#ifndef NEGABASE_EXPANSION_HPP
#define NEGABASE_EXPANSION_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "negabase/field.hpp"

namespace negabase {

constexpr std::size_t kDefaultMaxSteps = 10000;

/// Raised when an iteration exceeds its step budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite digit string; digit i (0-based) sits at position leading_exponent - i
/// and contributes digit * (-beta)^position.
class DigitWord {
 public:
  DigitWord() = default;
  DigitWord(std::vector<int> digits, long leading_exponent);
  /// Digits most significant first, the last one at position 0.
  static DigitWord integer(std::vector<int> digits);

  const std::vector<int>& digits() const { return digits_; }
  long leading_exponent() const { return leading_; }
  long lowest_exponent() const { return leading_ - static_cast<long>(digits_.size()) + 1; }
  bool empty() const { return digits_.empty(); }
  /// Digit at a position; zero outside the stored range.
  int at(long position) const;

  /// Strips leading and trailing zeros. The empty word has exponent 0.
  DigitWord canonical() const;
  /// Number of nonzero-terminated positions below the radix point.
  std::size_t fractional_length() const;
  /// The same digits moved `by` positions up, i.e. multiplied by (-beta)^by.
  DigitWord shifted(long by) const { return DigitWord(digits_, leading_ + by); }

  friend bool operator==(const DigitWord& a, const DigitWord& b) {
    return a.leading_ == b.leading_ && a.digits_ == b.digits_;
  }

 private:
  std::vector<int> digits_;
  long leading_ = 0;
};

/// preperiod followed by period repeated forever; an empty period means 0^w.
class EventuallyPeriodicWord {
 public:
  EventuallyPeriodicWord() = default;
  EventuallyPeriodicWord(std::vector<int> preperiod, std::vector<int> period);

  const std::vector<int>& preperiod() const { return preperiod_; }
  const std::vector<int>& period() const { return period_; }
  bool is_finite() const { return period_.empty(); }
  /// Digit at 0-based index i.
  int at(std::size_t i) const;
  /// The word with its first i digits removed.
  EventuallyPeriodicWord suffix(std::size_t i) const;

  friend bool operator==(const EventuallyPeriodicWord& a, const EventuallyPeriodicWord& b) {
    return a.preperiod_ == b.preperiod_ && a.period_ == b.period_;
  }

 private:
  void canonicalize();

  std::vector<int> preperiod_;
  std::vector<int> period_;
};

/// Number of fractional digits; infinity is a distinct state, not a number.
class Fr {
 public:
  static Fr finite(std::size_t digits) { return Fr(digits); }
  static Fr infinite() { return Fr(std::nullopt); }

  bool is_finite() const { return digits_.has_value(); }
  /// Throws std::logic_error when infinite.
  std::size_t value() const;
  std::string to_string() const;

  friend bool operator==(const Fr& a, const Fr& b) { return a.digits_ == b.digits_; }

 private:
  explicit Fr(std::optional<std::size_t> digits) : digits_(digits) {}
  std::optional<std::size_t> digits_;
};

/// Expansion anchored at the radix point.
struct ExpansionResult {
  /// Integer-part digits, most significant first, no leading zeros.
  std::vector<int> integer_digits;
  EventuallyPeriodicWord fractional;
  Fr fr = Fr::finite(0);

  /// The finite expansion as a word; throws std::logic_error when fr is infinite.
  DigitWord word() const;
  std::string to_string() const;

  friend bool operator==(const ExpansionResult& a, const ExpansionResult& b) {
    return a.integer_digits == b.integer_digits && a.fractional == b.fractional;
  }
};

/// Greedy digits of x in [ell, ell+1) with exact period detection.
EventuallyPeriodicWord d_of(const FieldElement& x, const CubicBase& base,
                            std::size_t max_steps = kDefaultMaxSteps);
/// The upper reference string derived from d(ell).
EventuallyPeriodicWord d_star_of(const EventuallyPeriodicWord& d_ell);

struct ReferenceStrings {
  EventuallyPeriodicWord lower;  // d(ell)
  EventuallyPeriodicWord upper;  // d*(ell + 1)
};
/// Cached per base.
const ReferenceStrings& reference_strings(const CubicBase& base);

ExpansionResult expansion_of(const FieldElement& x, const CubicBase& base,
                             std::size_t max_steps = kDefaultMaxSteps);
FieldElement value_of(const DigitWord& w, const CubicBase& base);
FieldElement value_of(const ExpansionResult& e, const CubicBase& base);

enum class AltOrder { kLess, kEqual, kGreater };

/// Alternate order decided at the first difference within `horizon` digits.
AltOrder alt_lex_compare(const EventuallyPeriodicWord& u, const EventuallyPeriodicWord& v,
                         std::size_t horizon);

bool is_admissible(const EventuallyPeriodicWord& w, const CubicBase& base);
/// The canonical digits followed by 0^w.
bool is_admissible(const DigitWord& w, const CubicBase& base);

/// Every admissible word of length <= max_len with no leading zero, shortest first,
/// then in digit order. The empty word stands for 0.
void enumerate_admissible(const CubicBase& base, std::size_t max_len,
                          const std::function<void(const DigitWord&)>& visit);
std::vector<DigitWord> enumerate_admissible(const CubicBase& base, std::size_t max_len);

/// "1 1 0 . 0 1"; the empty word prints as "0 .".
std::string to_string(const DigitWord& w);
/// "1 0 (1)^w"; 0^w prints as "(0)^w".
std::string to_string(const EventuallyPeriodicWord& w);

/// Accepts the spaced form ("2 1 2 .", "-1 0 .") and the compact form ("212.").
/// Text without a radix point is an integer. Throws std::invalid_argument.
DigitWord parse_digit_word(std::string_view text);
/// Digits with an optional "(...)^w" tail; a radix point, if present, is ignored.
EventuallyPeriodicWord parse_sequence(std::string_view text);

}  // namespace negabase

#endif  // NEGABASE_EXPANSION_HPP
