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

#include <regex>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "negabase/expansion.hpp"
#include "test_util.hpp"

namespace negabase {
namespace {

// Tribonacci words over {0,1} followed by 0^w are expansions exactly when they
// avoid 1 0 1^(2k-1) 0, k >= 1.
bool tribonacci_admissible_oracle(const std::string& w) {
  static const std::regex forbidden("101(11)*0");
  return !std::regex_search(w + "0", forbidden);
}

std::vector<std::string> binary_words(std::size_t max_len) {
  std::vector<std::string> out{""};
  std::vector<std::string> frontier{"1"};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& w : frontier) {
      out.push_back(w);
      next.push_back(w + "0");
      next.push_back(w + "1");
    }
    frontier = std::move(next);
  }
  return out;
}

std::string digits_of(const DigitWord& w) {
  std::string s;
  for (int d : w.digits()) s += std::to_string(d);
  return s;
}

// Sum of d * (-beta)^p, with powers built by repeated multiplication.
FieldElement power_sum(const DigitWord& w, const CubicBase& base) {
  FieldElement total;
  for (long p = w.lowest_exponent(); p <= w.leading_exponent(); ++p) {
    FieldElement power = FieldElement::one();
    FieldElement factor = p >= 0 ? -FieldElement::beta() : inv(-FieldElement::beta(), base);
    for (long i = 0; i < std::labs(p); ++i) power = mul(power, factor, base);
    total = total + Rational(w.at(p)) * power;
  }
  return total;
}

TEST_CASE("d of zero and of ell") {
  CHECK(d_of(FieldElement(), CubicBase::tribonacci()) == EventuallyPeriodicWord({}, {0}));
  for (long m : {1, 2, 3, 5}) {
    CubicBase base(m, m);
    const int mi = static_cast<int>(m);
    EventuallyPeriodicWord d = d_of(base.ell(), base);
    CHECK(d == EventuallyPeriodicWord({mi, 0}, {mi}));
    CHECK(d_star_of(d) == EventuallyPeriodicWord({0, mi, 0}, {mi}));
  }
}

TEST_CASE("d_of rejects points outside the interval") {
  const CubicBase& base = CubicBase::tribonacci();
  CHECK_THROWS_AS(d_of(base.ell() + FieldElement::one(), base), std::domain_error);
  CHECK_THROWS_AS(d_of(FieldElement(-1), base), std::domain_error);
  CHECK_NOTHROW(d_of(base.ell(), base));
}

TEST_CASE("d_of budget is a distinct error") {
  CubicBase base(2, 1);
  CHECK_THROWS_AS(d_of(base.ell(), base, 1), BudgetExceeded);
  CHECK_NOTHROW(d_of(base.ell(), base, 8));
}

TEST_CASE("d_star rule branches") {
  CHECK(d_star_of(EventuallyPeriodicWord({}, {2, 1, 1})) == EventuallyPeriodicWord({}, {0, 2, 1, 0}));
  CHECK(d_star_of(EventuallyPeriodicWord({}, {2, 1})) == EventuallyPeriodicWord({0}, {2, 1}));
  CHECK_THROWS_AS(d_star_of(EventuallyPeriodicWord({}, {2, 1, 0})), std::invalid_argument);
}

TEST_CASE("expansion examples") {
  const CubicBase& t = CubicBase::tribonacci();
  ExpansionResult e = expansion_of(FieldElement(2, -1, 2), t);
  CHECK(e.to_string() == "1 1 1 1 0 . 0 1 1 0 0 1");
  CHECK(e.fr == Fr::finite(6));
  CHECK(expansion_of(FieldElement(), t).to_string() == "0 .");
  CHECK(expansion_of(FieldElement(), t).fr == Fr::finite(0));
  for (long m : {1, 2, 3}) {
    CubicBase base(m, m);
    ExpansionResult minus = expansion_of(FieldElement(-1), base);
    std::string mm = std::to_string(m);
    CHECK(minus.to_string() == "1 " + mm + " . 0 0 " + mm);
    CHECK(minus.fr == Fr::finite(3));
  }
}

TEST_CASE("infinite expansions carry fr = infinity") {
  CubicBase base(2, 1);
  ExpansionResult e = expansion_of(FieldElement(-2, -2, -2), base);
  CHECK_FALSE(e.fr.is_finite());
  CHECK(e.fr.to_string() == "inf");
  CHECK_THROWS_AS(e.fr.value(), std::logic_error);
  CHECK_THROWS_AS(e.word(), std::logic_error);
  CHECK(is_admissible(EventuallyPeriodicWord(
                          [&] {
                            std::vector<int> pre(e.integer_digits);
                            pre.insert(pre.end(), e.fractional.preperiod().begin(),
                                       e.fractional.preperiod().end());
                            return pre;
                          }(),
                          e.fractional.period()),
                      base));
}

TEST_CASE("value_of examples and power-sum oracle") {
  const CubicBase& t = CubicBase::tribonacci();
  CHECK(value_of(parse_digit_word("2 1 2 ."), t) == FieldElement(2, -1, 2));
  CHECK(value_of(parse_digit_word("1 1 1 1 0 . 0 1 1 0 0 1"), t) == FieldElement(2, -1, 2));
  CHECK(value_of(parse_digit_word("0"), t) == FieldElement());
  testing::ElementGenerator gen(23);
  std::uniform_int_distribution<int> digit(-2, 3), len(1, 9), lead(-4, 6);
  for (auto base : {CubicBase(1, 1), CubicBase(2, 1), CubicBase(3, 3)}) {
    for (int i = 0; i < 50; ++i) {
      std::vector<int> d(static_cast<std::size_t>(len(gen.rng())));
      for (int& x : d) x = digit(gen.rng());
      DigitWord w(d, lead(gen.rng()));
      CHECK(value_of(w, base) == power_sum(w, base));
    }
  }
}

TEST_CASE("alternate order") {
  CHECK(alt_lex_compare(EventuallyPeriodicWord({0, 0}, {}), EventuallyPeriodicWord({0, 1}, {}), 10) ==
        AltOrder::kLess);
  CHECK(alt_lex_compare(EventuallyPeriodicWord({1}, {}), EventuallyPeriodicWord({0}, {}), 10) ==
        AltOrder::kLess);
  CHECK(alt_lex_compare(EventuallyPeriodicWord({0}, {}), EventuallyPeriodicWord({1}, {}), 10) ==
        AltOrder::kGreater);
  EventuallyPeriodicWord u({1, 0}, {1});
  CHECK(alt_lex_compare(u, u, 50) == AltOrder::kEqual);
}

TEST_CASE("admissibility of forbidden factors") {
  const CubicBase& t = CubicBase::tribonacci();
  CHECK_FALSE(is_admissible(parse_digit_word("1010"), t));
  CHECK_FALSE(is_admissible(parse_digit_word("110100"), t));
  CHECK(is_admissible(parse_digit_word("11110"), t));
  CHECK(is_admissible(EventuallyPeriodicWord(), t));
  CHECK_FALSE(is_admissible(parse_digit_word("2"), t));
  for (int m : {2, 3}) {
    CubicBase base(m, m);
    for (int k = 1; k <= 3; ++k) {
      for (int n = 0; n < m; ++n) {
        std::vector<int> w{m, 0};
        for (int i = 0; i < 2 * k - 1; ++i) w.push_back(m);
        w.push_back(n);
        CHECK_FALSE(is_admissible(DigitWord::integer(w), base));
      }
    }
  }
  // Reference strings and periodic tails.
  CHECK(is_admissible(parse_sequence("1 0 (1)^w"), t));
  CHECK_FALSE(is_admissible(parse_sequence("0 1 0 (1)^w"), t));
}

TEST_CASE("enumeration matches brute force") {
  const CubicBase& t = CubicBase::tribonacci();
  std::vector<DigitWord> only_empty = enumerate_admissible(t, 0);
  REQUIRE(only_empty.size() == 1);
  CHECK(only_empty.front().empty());
  for (std::size_t len : {4u, 8u}) {
    std::set<std::string> expected;
    for (const auto& w : binary_words(len)) {
      if (tribonacci_admissible_oracle(w)) expected.insert(w);
    }
    std::set<std::string> got;
    for (const auto& w : enumerate_admissible(t, len)) got.insert(digits_of(w));
    CHECK(got == expected);
  }
  CHECK(enumerate_admissible(t, 8).size() == 149);
  // Every candidate, kept or not, agrees with the generic check.
  for (const auto& w : binary_words(8)) {
    DigitWord d;
    std::vector<int> digits;
    for (char c : w) digits.push_back(c - '0');
    CHECK(is_admissible(DigitWord::integer(digits), t) == tribonacci_admissible_oracle(w));
  }
}

TEST_CASE("round trip of enumerated words") {
  for (auto base : {CubicBase(1, 1), CubicBase(2, 2), CubicBase(2, 1), CubicBase(3, 1)}) {
    for (const DigitWord& w : enumerate_admissible(base, 5)) {
      ExpansionResult e = expansion_of(value_of(w, base), base);
      CHECK(e.fr == Fr::finite(0));
      CHECK(e.integer_digits == w.digits());
    }
  }
}

TEST_CASE("expansions are admissible and shift with powers of -beta") {
  testing::ElementGenerator gen(29, 6, 1);
  for (auto base : {CubicBase(1, 1), CubicBase(2, 2)}) {
    for (int i = 0; i < 25; ++i) {
      FieldElement x = gen.element();
      ExpansionResult e = expansion_of(x, base);
      REQUIRE(e.fr.is_finite());
      DigitWord w = e.word();
      CHECK(value_of(w, base) == x);
      CHECK(is_admissible(w, base));
      for (long d : {-3L, -1L, 2L}) {
        FieldElement y = x;
        for (long k = 0; k < std::labs(d); ++k) {
          y = d > 0 ? times_neg_beta(y, base) : div_neg_beta(y, base);
        }
        CHECK(expansion_of(y, base).word().canonical() == w.shifted(d).canonical());
      }
    }
  }
}

TEST_CASE("greedy digits respect the order of reals") {
  const CubicBase& base = CubicBase::tribonacci();
  testing::ElementGenerator gen(31, 4, 3);
  std::vector<FieldElement> points;
  while (points.size() < 30) {
    FieldElement x = gen.element();
    if (sign(x - base.ell(), base) >= 0 &&
        sign(x - base.ell() - FieldElement::one(), base) < 0) {
      points.push_back(x);
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      int c = compare(points[i], points[j], base);
      if (c >= 0) continue;
      EventuallyPeriodicWord u = d_of(points[i], base);
      EventuallyPeriodicWord v = d_of(points[j], base);
      std::size_t horizon = u.preperiod().size() + v.preperiod().size() +
                            2 * (u.period().size() + 1) * (v.period().size() + 1) + 2;
      CHECK(alt_lex_compare(u, v, horizon) == AltOrder::kLess);
    }
  }
}

TEST_CASE("boundary points scale past the open interval") {
  const CubicBase& base = CubicBase::tribonacci();
  // ell itself is excluded from (ell, ell+1), so its expansion uses k >= 1.
  ExpansionResult e = expansion_of(base.ell(), base);
  REQUIRE_FALSE(e.fr.is_finite());
  CHECK(e.integer_digits == std::vector<int>{1, 1});
  CHECK(e.to_string() == "1 1 . 0 (1)^w");
}

TEST_CASE("digit-word text format") {
  for (std::string s : {"2 1 2 .", "1 1 1 1 0 . 0 1 1 0 0 1", "0 .", "0 . 0 1", "-1 0 2 . -1"}) {
    CHECK(to_string(parse_digit_word(s)) == s);
  }
  CHECK(parse_digit_word("212.") == parse_digit_word("2 1 2 ."));
  CHECK(parse_digit_word("11110.011001") == parse_digit_word("1 1 1 1 0 . 0 1 1 0 0 1"));
  CHECK(parse_digit_word("2 1 2") == parse_digit_word("2 1 2 ."));
  CHECK(to_string(DigitWord({1, 1}, 2)) == "1 1 0 .");
  CHECK(to_string(DigitWord()) == "0 .");
  CHECK_THROWS_AS(parse_digit_word("1 . 2 . 3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_digit_word("1 x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_digit_word("1 (2)^w"), std::invalid_argument);
  CHECK_THROWS_AS(parse_digit_word(""), std::invalid_argument);

  CHECK(to_string(parse_sequence("2 0 (2)^w")) == "2 0 (2)^w");
  CHECK(parse_sequence("2 0 ( 2 )^w") == parse_sequence("2 0 (2)^w"));
  CHECK(to_string(EventuallyPeriodicWord({1, 0, 1}, {0})) == "1 0 1 (0)^w");
  CHECK(EventuallyPeriodicWord({1, 2, 1, 2}, {1, 2}) == EventuallyPeriodicWord({}, {1, 2}));
  CHECK(EventuallyPeriodicWord({3}, {1, 2, 1, 2}) == EventuallyPeriodicWord({3}, {1, 2}));

  ExpansionResult e = expansion_of(FieldElement(-2, -2, -2), CubicBase(2, 1));
  CHECK(e.to_string() == "1 0 1 2 . 1 (2)^w");
}

TEST_CASE("fractional lengths of short alphabet words stay within m") {
  for (int m : {1, 2}) {
    CubicBase base(m, m);
    std::vector<int> digits(static_cast<std::size_t>(4 + m), 0);
    for (;;) {
      DigitWord w(digits, 3);
      ExpansionResult e = expansion_of(value_of(w, base), base);
      REQUIRE(e.fr.is_finite());
      CHECK(e.fr.value() <= static_cast<std::size_t>(m));
      std::size_t i = 0;
      while (i < digits.size() && digits[i] == m) digits[i++] = 0;
      if (i == digits.size()) break;
      ++digits[i];
    }
  }
}

}  // namespace
}  // namespace negabase
