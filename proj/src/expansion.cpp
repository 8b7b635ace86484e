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

#include "negabase/expansion.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <regex>
#include <sstream>
#include <utility>

namespace negabase {

// ---------------------------------------------------------------------------
// DigitWord

DigitWord::DigitWord(std::vector<int> digits, long leading_exponent)
    : digits_(std::move(digits)), leading_(leading_exponent) {}

DigitWord DigitWord::integer(std::vector<int> digits) {
  long leading = static_cast<long>(digits.size()) - 1;
  return DigitWord(std::move(digits), leading);
}

int DigitWord::at(long position) const {
  if (position > leading_ || position < lowest_exponent()) return 0;
  return digits_[static_cast<std::size_t>(leading_ - position)];
}

DigitWord DigitWord::canonical() const {
  auto first = std::find_if(digits_.begin(), digits_.end(), [](int d) { return d != 0; });
  if (first == digits_.end()) return {};
  auto last = std::find_if(digits_.rbegin(), digits_.rend(), [](int d) { return d != 0; });
  long skipped = first - digits_.begin();
  return DigitWord(std::vector<int>(first, last.base()), leading_ - skipped);
}

std::size_t DigitWord::fractional_length() const {
  DigitWord c = canonical();
  if (c.empty() || c.lowest_exponent() >= 0) return 0;
  return static_cast<std::size_t>(-c.lowest_exponent());
}

// ---------------------------------------------------------------------------
// EventuallyPeriodicWord

EventuallyPeriodicWord::EventuallyPeriodicWord(std::vector<int> preperiod,
                                               std::vector<int> period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
  canonicalize();
}

void EventuallyPeriodicWord::canonicalize() {
  if (std::all_of(period_.begin(), period_.end(), [](int d) { return d == 0; })) {
    period_.clear();
  }
  const std::size_t q = period_.size();
  for (std::size_t p = 1; p < q; ++p) {
    if (q % p != 0) continue;
    bool repeats = true;
    for (std::size_t i = p; i < q && repeats; ++i) repeats = period_[i] == period_[i - p];
    if (repeats) {
      period_.resize(p);
      break;
    }
  }
  while (!period_.empty() && !preperiod_.empty() && preperiod_.back() == period_.back()) {
    preperiod_.pop_back();
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
  }
  if (period_.empty()) {
    while (!preperiod_.empty() && preperiod_.back() == 0) preperiod_.pop_back();
  }
}

int EventuallyPeriodicWord::at(std::size_t i) const {
  if (i < preperiod_.size()) return preperiod_[i];
  if (period_.empty()) return 0;
  return period_[(i - preperiod_.size()) % period_.size()];
}

EventuallyPeriodicWord EventuallyPeriodicWord::suffix(std::size_t i) const {
  if (i < preperiod_.size()) {
    return EventuallyPeriodicWord(std::vector<int>(preperiod_.begin() + i, preperiod_.end()),
                                  period_);
  }
  if (period_.empty()) return {};
  std::vector<int> rotated(period_);
  std::size_t r = (i - preperiod_.size()) % period_.size();
  std::rotate(rotated.begin(), rotated.begin() + r, rotated.end());
  return EventuallyPeriodicWord({}, std::move(rotated));
}

// ---------------------------------------------------------------------------
// Fr and ExpansionResult

std::size_t Fr::value() const {
  if (!digits_) throw std::logic_error("fr is infinite");
  return *digits_;
}

std::string Fr::to_string() const { return digits_ ? std::to_string(*digits_) : "inf"; }

DigitWord ExpansionResult::word() const {
  if (!fr.is_finite()) throw std::logic_error("expansion is infinite");
  std::vector<int> digits(integer_digits);
  digits.insert(digits.end(), fractional.preperiod().begin(), fractional.preperiod().end());
  return DigitWord(std::move(digits), static_cast<long>(integer_digits.size()) - 1);
}

std::string ExpansionResult::to_string() const {
  std::ostringstream out;
  if (integer_digits.empty()) {
    out << "0";
  } else {
    for (std::size_t i = 0; i < integer_digits.size(); ++i) {
      out << (i ? " " : "") << integer_digits[i];
    }
  }
  out << " .";
  for (int d : fractional.preperiod()) out << ' ' << d;
  if (!fractional.is_finite()) {
    out << " (";
    for (std::size_t i = 0; i < fractional.period().size(); ++i) {
      out << (i ? " " : "") << fractional.period()[i];
    }
    out << ")^w";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// The digit map

namespace {

struct CoordinateLess {
  bool operator()(const FieldElement& a, const FieldElement& b) const {
    for (int i = 0; i < 3; ++i) {
      int c = cmp(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

bool in_half_open(const FieldElement& x, const CubicBase& base) {
  return sign(x - base.ell(), base) >= 0 &&
         sign(x - base.ell() - FieldElement::one(), base) < 0;
}

bool in_open(const FieldElement& x, const CubicBase& base) {
  return sign(x - base.ell(), base) > 0 &&
         sign(x - base.ell() - FieldElement::one(), base) < 0;
}

}  // namespace

EventuallyPeriodicWord d_of(const FieldElement& x, const CubicBase& base,
                            std::size_t max_steps) {
  if (!in_half_open(x, base)) {
    throw std::domain_error("d_of: " + to_string(x) + " is outside [ell, ell+1)");
  }
  std::map<FieldElement, std::size_t, CoordinateLess> seen;
  std::vector<int> digits;
  FieldElement t = x;
  for (std::size_t step = 0;; ++step) {
    if (t.is_zero()) return EventuallyPeriodicWord(std::move(digits), {});
    auto [it, inserted] = seen.emplace(t, digits.size());
    if (!inserted) {
      std::vector<int> pre(digits.begin(), digits.begin() + it->second);
      std::vector<int> per(digits.begin() + it->second, digits.end());
      return EventuallyPeriodicWord(std::move(pre), std::move(per));
    }
    if (step >= max_steps) {
      throw BudgetExceeded("d_of: no orbit recurrence within " + std::to_string(max_steps) +
                           " steps");
    }
    FieldElement scaled = times_neg_beta(t, base);
    Integer digit = floor(scaled - base.ell(), base);
    digits.push_back(static_cast<int>(digit.get_si()));
    t = scaled - FieldElement(Rational(digit), 0, 0);
  }
}

EventuallyPeriodicWord d_star_of(const EventuallyPeriodicWord& d_ell) {
  const auto& q = d_ell.period();
  if (d_ell.preperiod().empty() && q.size() % 2 == 1) {
    if (q.back() == 0) {
      throw std::invalid_argument("d_star_of: odd purely periodic word ending in 0");
    }
    std::vector<int> period{0};
    period.insert(period.end(), q.begin(), q.end() - 1);
    period.push_back(q.back() - 1);
    return EventuallyPeriodicWord({}, std::move(period));
  }
  std::vector<int> pre{0};
  pre.insert(pre.end(), d_ell.preperiod().begin(), d_ell.preperiod().end());
  return EventuallyPeriodicWord(std::move(pre), q);
}

const ReferenceStrings& reference_strings(const CubicBase& base) {
  static std::mutex mutex;
  static std::map<std::pair<long, long>, ReferenceStrings> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(base.m(), base.n());
  auto it = cache.find(key);
  if (it == cache.end()) {
    EventuallyPeriodicWord lower = d_of(base.ell(), base);
    EventuallyPeriodicWord upper = d_star_of(lower);
    it = cache.emplace(key, ReferenceStrings{lower, upper}).first;
  }
  return it->second;
}

ExpansionResult expansion_of(const FieldElement& x, const CubicBase& base,
                             std::size_t max_steps) {
  if (x.is_zero()) return {};
  FieldElement y = x;
  std::size_t k = 0;
  while (!in_open(y, base)) {
    if (++k > max_steps) {
      throw BudgetExceeded("expansion_of: no scaling exponent within " +
                           std::to_string(max_steps));
    }
    y = div_neg_beta(y, base);
  }
  EventuallyPeriodicWord d = d_of(y, base, max_steps);
  ExpansionResult result;
  for (std::size_t i = 0; i < k; ++i) {
    int digit = d.at(i);
    if (result.integer_digits.empty() && digit == 0) continue;
    result.integer_digits.push_back(digit);
  }
  result.fractional = d.suffix(k);
  result.fr = result.fractional.is_finite() ? Fr::finite(result.fractional.preperiod().size())
                                            : Fr::infinite();
  return result;
}

FieldElement value_of(const DigitWord& w, const CubicBase& base) {
  FieldElement acc;
  for (int d : w.digits()) acc = times_neg_beta(acc, base) + FieldElement(d);
  long low = w.lowest_exponent();
  for (long i = 0; i < low; ++i) acc = times_neg_beta(acc, base);
  for (long i = 0; i > low; --i) acc = div_neg_beta(acc, base);
  return acc;
}

FieldElement value_of(const ExpansionResult& e, const CubicBase& base) {
  return value_of(e.word(), base);
}

// ---------------------------------------------------------------------------
// Admissibility

AltOrder alt_lex_compare(const EventuallyPeriodicWord& u, const EventuallyPeriodicWord& v,
                         std::size_t horizon) {
  for (std::size_t i = 0; i < horizon; ++i) {
    int diff = u.at(i) - v.at(i);
    if (diff == 0) continue;
    // 1-based index k = i + 1; u < v iff (-1)^k (u_k - v_k) < 0.
    bool odd = (i % 2) == 0;
    bool less = odd ? diff > 0 : diff < 0;
    return less ? AltOrder::kLess : AltOrder::kGreater;
  }
  return AltOrder::kEqual;
}

namespace {

std::size_t period_or_one(const EventuallyPeriodicWord& w) {
  return std::max<std::size_t>(w.period().size(), 1);
}

bool digits_in_alphabet(const std::vector<int>& digits, long m) {
  return std::all_of(digits.begin(), digits.end(), [m](int d) { return d >= 0 && d <= m; });
}

}  // namespace

bool is_admissible(const EventuallyPeriodicWord& w, const CubicBase& base) {
  if (!digits_in_alphabet(w.preperiod(), base.m()) || !digits_in_alphabet(w.period(), base.m())) {
    return false;
  }
  const ReferenceStrings& refs = reference_strings(base);
  std::size_t q = std::lcm(period_or_one(w),
                           std::lcm(period_or_one(refs.lower), period_or_one(refs.upper)));
  std::size_t horizon = w.preperiod().size() + refs.lower.preperiod().size() +
                        refs.upper.preperiod().size() + 2 * q + 2;
  std::size_t shifts = w.preperiod().size() + period_or_one(w);
  for (std::size_t i = 0; i < shifts; ++i) {
    EventuallyPeriodicWord s = w.suffix(i);
    if (alt_lex_compare(refs.lower, s, horizon) == AltOrder::kGreater) return false;
    if (alt_lex_compare(s, refs.upper, horizon) != AltOrder::kLess) return false;
  }
  return true;
}

bool is_admissible(const DigitWord& w, const CubicBase& base) {
  return is_admissible(EventuallyPeriodicWord(w.canonical().digits(), {}), base);
}

namespace {

// True when some suffix of `prefix` is already known to break the condition.
bool violates_prefix(const std::vector<int>& prefix, const ReferenceStrings& refs) {
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    for (std::size_t j = i; j < prefix.size(); ++j) {
      int diff = refs.lower.at(j - i) - prefix[j];
      if (diff == 0) continue;
      bool odd = ((j - i) % 2) == 0;
      bool lower_greater = odd ? diff < 0 : diff > 0;
      if (lower_greater) return true;
      break;
    }
    for (std::size_t j = i; j < prefix.size(); ++j) {
      int diff = prefix[j] - refs.upper.at(j - i);
      if (diff == 0) continue;
      bool odd = ((j - i) % 2) == 0;
      bool greater = odd ? diff < 0 : diff > 0;
      if (greater) return true;
      break;
    }
  }
  return false;
}

void enumerate_from(std::vector<int>& prefix, std::size_t max_len, const CubicBase& base,
                    const ReferenceStrings& refs, std::vector<DigitWord>& out) {
  if (is_admissible(EventuallyPeriodicWord(prefix, {}), base)) {
    out.push_back(DigitWord::integer(prefix));
  }
  if (prefix.size() == max_len) return;
  for (int d = prefix.empty() ? 1 : 0; d <= base.m(); ++d) {
    prefix.push_back(d);
    if (!violates_prefix(prefix, refs)) enumerate_from(prefix, max_len, base, refs, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<DigitWord> enumerate_admissible(const CubicBase& base, std::size_t max_len) {
  std::vector<DigitWord> out;
  std::vector<int> prefix;
  enumerate_from(prefix, max_len, base, reference_strings(base), out);
  std::sort(out.begin(), out.end(), [](const DigitWord& a, const DigitWord& b) {
    if (a.digits().size() != b.digits().size()) return a.digits().size() < b.digits().size();
    return a.digits() < b.digits();
  });
  return out;
}

void enumerate_admissible(const CubicBase& base, std::size_t max_len,
                          const std::function<void(const DigitWord&)>& visit) {
  for (const DigitWord& w : enumerate_admissible(base, max_len)) visit(w);
}

// ---------------------------------------------------------------------------
// Text format

std::string to_string(const DigitWord& w) {
  long top = std::max(w.leading_exponent(), 0L);
  long bottom = w.empty() ? 0 : std::min(w.lowest_exponent(), 0L);
  std::ostringstream out;
  for (long p = top; p >= bottom; --p) {
    if (p != top) out << ' ';
    out << w.at(p);
    if (p == 0) out << " .";
  }
  return out.str();
}

std::string to_string(const EventuallyPeriodicWord& w) {
  std::ostringstream out;
  for (int d : w.preperiod()) out << d << ' ';
  out << '(';
  if (w.is_finite()) {
    out << 0;
  } else {
    for (std::size_t i = 0; i < w.period().size(); ++i) out << (i ? " " : "") << w.period()[i];
  }
  out << ")^w";
  return out.str();
}

namespace {

struct Tokens {
  std::vector<int> integer;
  std::vector<int> fractional;
  std::vector<int> period;
  bool radix = false;
  bool periodic = false;
};

bool is_compact(std::string_view text) {
  return !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  });
}

Tokens tokenize(std::string_view text) {
  Tokens t;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("malformed digit word '" + std::string(text) + "': " + why);
  };
  std::vector<std::string> tokens;
  if (is_compact(text)) {
    for (char c : text) tokens.emplace_back(1, c);
  } else {
    std::string spaced;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '(') {
        spaced += " ( ";
      } else if (text.substr(i, 3) == ")^w") {
        spaced += " )^w ";
        i += 2;
      } else {
        spaced += text[i];
      }
    }
    std::istringstream in(spaced);
    for (std::string tok; in >> tok;) tokens.push_back(tok);
  }
  static const std::regex digit(R"(^-?\d+$)");
  bool in_period = false;
  bool closed = false;
  for (const std::string& tok : tokens) {
    if (closed) fail("text after periodic tail");
    if (tok == ".") {
      if (t.radix || in_period) fail("misplaced radix point");
      t.radix = true;
    } else if (tok == "(") {
      if (in_period) fail("nested period");
      in_period = true;
      t.periodic = true;
    } else if (tok == ")^w") {
      if (!in_period || t.period.empty()) fail("empty or unopened period");
      in_period = false;
      closed = true;
    } else if (std::regex_match(tok, digit)) {
      int d = std::stoi(tok);
      if (in_period) {
        t.period.push_back(d);
      } else if (t.radix) {
        t.fractional.push_back(d);
      } else {
        t.integer.push_back(d);
      }
    } else {
      fail("unexpected token '" + tok + "'");
    }
  }
  if (in_period) fail("unterminated period");
  if (t.integer.empty() && t.fractional.empty() && !t.periodic) fail("no digits");
  return t;
}

}  // namespace

DigitWord parse_digit_word(std::string_view text) {
  Tokens t = tokenize(text);
  if (t.periodic) {
    throw std::invalid_argument("periodic tail not allowed in a finite digit word: " +
                                std::string(text));
  }
  long leading = static_cast<long>(t.integer.size()) - 1;
  std::vector<int> digits(std::move(t.integer));
  digits.insert(digits.end(), t.fractional.begin(), t.fractional.end());
  return DigitWord(std::move(digits), leading);
}

EventuallyPeriodicWord parse_sequence(std::string_view text) {
  Tokens t = tokenize(text);
  std::vector<int> pre(std::move(t.integer));
  pre.insert(pre.end(), t.fractional.begin(), t.fractional.end());
  return EventuallyPeriodicWord(std::move(pre), std::move(t.period));
}

}  // namespace negabase
