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

#ifndef NEGABASE_FIELD_HPP
#define NEGABASE_FIELD_HPP

#include <gmpxx.h>

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

namespace negabase {

using Rational = mpq_class;
using Integer = mpz_class;

/// Element c0 + c1*beta + c2*beta^2 of Q(beta), with exact rational coordinates.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(Rational c0, Rational c1, Rational c2);
  explicit FieldElement(long value) : c_{Rational(value), Rational(0), Rational(0)} {}

  static FieldElement zero() { return {}; }
  static FieldElement one() { return FieldElement(1L); }
  /// The generator beta itself.
  static FieldElement beta();

  const Rational& operator[](int i) const { return c_[i]; }
  bool is_zero() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a);
  friend FieldElement operator*(const Rational& s, const FieldElement& a);

 private:
  std::array<Rational, 3> c_;
};

/// The root beta in (m, m+1) of x^3 - m x^2 - m x - n, m >= n >= 1.
///
/// Copies share one lazily refined ladder of isolating intervals; refinement
/// is synchronized, so a base may be used from several threads at once.
class CubicBase {
 public:
  CubicBase(long m, long n);

  /// The shared Tribonacci instance m = n = 1.
  static const CubicBase& tribonacci();

  long m() const { return m_; }
  long n() const { return n_; }
  /// ell = -beta / (beta + 1), the left end of the digit-map interval.
  const FieldElement& ell() const { return ell_; }
  /// Isolating interval for beta after `level` refinements (level 0 is (m, m+1)).
  std::pair<Rational, Rational> beta_interval(std::size_t level = 0) const;

  friend bool operator==(const CubicBase& a, const CubicBase& b) {
    return a.m_ == b.m_ && a.n_ == b.n_;
  }

  struct Ladder;

 private:
  friend int sign(const FieldElement& a, const CubicBase& base);
  friend Integer floor(const FieldElement& a, const CubicBase& base);

  long m_;
  long n_;
  std::shared_ptr<Ladder> ladder_;
  FieldElement ell_;
};

FieldElement mul(const FieldElement& a, const FieldElement& b, const CubicBase& base);
/// Multiplicative inverse; throws std::domain_error on zero.
FieldElement inv(const FieldElement& a, const CubicBase& base);
/// a * (-beta), cheaper than a general mul.
FieldElement times_neg_beta(const FieldElement& a, const CubicBase& base);
/// a / (-beta).
FieldElement div_neg_beta(const FieldElement& a, const CubicBase& base);

/// Exact sign of the real number a(beta).
int sign(const FieldElement& a, const CubicBase& base);
/// Largest integer f with f <= a(beta).
Integer floor(const FieldElement& a, const CubicBase& base);

inline int compare(const FieldElement& a, const FieldElement& b, const CubicBase& base) {
  return sign(a - b, base);
}

/// "c0,c1,c2" with each coordinate an integer or p/q.
std::string to_string(const FieldElement& a);
/// Inverse of to_string; throws std::invalid_argument on malformed text.
FieldElement parse_field_element(std::string_view text);

}  // namespace negabase

#endif  // NEGABASE_FIELD_HPP
