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

#include <array>
#include <thread>
#include <vector>

#include "doctest.h"
#include "negabase/field.hpp"
#include "test_util.hpp"

namespace negabase {
namespace {

using Matrix = std::array<std::array<Rational, 3>, 3>;

Rational det(const Matrix& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

// Inverse by Cramer's rule on the matrix of multiplication by a.
FieldElement cramer_inverse(const FieldElement& a, const CubicBase& base) {
  Matrix mat;
  FieldElement column = a;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) mat[i][j] = column[i];
    // column * beta, written out from beta^3 = m beta^2 + m beta + n.
    column = FieldElement(base.n() * column[2], column[0] + base.m() * column[2],
                          column[1] + base.m() * column[2]);
  }
  const Rational d = det(mat);
  std::array<Rational, 3> x;
  for (int j = 0; j < 3; ++j) {
    Matrix replaced = mat;
    for (int i = 0; i < 3; ++i) replaced[i][j] = i == 0 ? 1 : 0;
    x[j] = det(replaced) / d;
  }
  return FieldElement(x[0], x[1], x[2]);
}

const std::vector<std::pair<long, long>> kBases = {{1, 1}, {2, 1}, {2, 2}, {3, 2}, {5, 5}};

TEST_CASE("mul reduces by the minimal polynomial") {
  for (auto [m, n] : kBases) {
    CubicBase base(m, n);
    CHECK(mul(FieldElement::beta(), FieldElement::beta(), base) == FieldElement(0, 0, 1));
    CHECK(mul(FieldElement(0, 0, 1), FieldElement::beta(), base) == FieldElement(n, m, m));
    FieldElement a(1, 1, 0);
    CHECK(mul(a, inv(a, base), base) == FieldElement::one());
  }
}

TEST_CASE("inv matches an independent linear solve") {
  testing::ElementGenerator gen(7);
  for (auto [m, n] : kBases) {
    CubicBase base(m, n);
    CHECK(inv(FieldElement::one(), base) == FieldElement::one());
    CHECK(inv(FieldElement::beta(), base) ==
          FieldElement(Rational(-m, n), Rational(-m, n), Rational(1, n)));
    CHECK(inv(FieldElement(1, 1, 0), base) == cramer_inverse(FieldElement(1, 1, 0), base));
    for (int i = 0; i < 40; ++i) {
      FieldElement a = gen.nonzero();
      CHECK(inv(a, base) == cramer_inverse(a, base));
      CHECK(mul(a, inv(a, base), base) == FieldElement::one());
    }
  }
  CHECK_THROWS_AS(inv(FieldElement(), CubicBase(1, 1)), std::domain_error);
}

TEST_CASE("ring axioms on sampled triples") {
  testing::ElementGenerator gen(11);
  for (auto [m, n] : kBases) {
    CubicBase base(m, n);
    for (int i = 0; i < 30; ++i) {
      FieldElement a = gen.element(), b = gen.element(), c = gen.element();
      CHECK(mul(mul(a, b, base), c, base) == mul(a, mul(b, c, base), base));
      CHECK(mul(a, b + c, base) == mul(a, b, base) + mul(a, c, base));
      CHECK(mul(a, b, base) == mul(b, a, base));
    }
  }
}

TEST_CASE("sign at the integer part of beta") {
  for (auto [m, n] : kBases) {
    CubicBase base(m, n);
    CHECK(sign(FieldElement(), base) == 0);
    CHECK(sign(FieldElement(-m, 1, 0), base) == 1);
    CHECK(sign(FieldElement(-m - 1, 1, 0), base) == -1);
  }
}

TEST_CASE("sign is multiplicative") {
  testing::ElementGenerator gen(13);
  for (auto [m, n] : kBases) {
    CubicBase base(m, n);
    for (int i = 0; i < 60; ++i) {
      FieldElement a = gen.element(), b = gen.element();
      CHECK(sign(a, base) * sign(b, base) == sign(mul(a, b, base), base));
      CHECK(sign(-a, base) == -sign(a, base));
    }
  }
}

TEST_CASE("sign resolves values very close to zero") {
  const CubicBase& base = CubicBase::tribonacci();
  // (beta - 2)^k shrinks towards zero geometrically; alternate signs with k.
  FieldElement small = FieldElement::one();
  FieldElement step(-2, 1, 0);
  for (int k = 1; k <= 60; ++k) {
    small = mul(small, step, base);
    CHECK(sign(small, base) == (k % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("floor examples and contract") {
  for (auto [m, n] : kBases) {
    CubicBase base(m, n);
    CHECK(floor(FieldElement(), base) == 0);
    CHECK(floor(FieldElement::beta(), base) == m);
    CHECK(floor(base.ell(), base) == -1);
  }
  testing::ElementGenerator gen(17, 30, 7);
  for (auto [m, n] : kBases) {
    CubicBase base(m, n);
    for (int i = 0; i < 60; ++i) {
      FieldElement a = gen.element();
      Integer f = floor(a, base);
      CHECK(sign(a - FieldElement(Rational(f), 0, 0), base) >= 0);
      CHECK(sign(a - FieldElement(Rational(f + 1), 0, 0), base) < 0);
    }
  }
  // Integers land exactly on the boundary.
  CHECK(floor(FieldElement(5), CubicBase::tribonacci()) == 5);
  CHECK(floor(FieldElement(-5), CubicBase::tribonacci()) == -5);
}

TEST_CASE("isolating intervals bracket beta") {
  for (auto [m, n] : kBases) {
    CubicBase base(m, n);
    for (std::size_t level = 0; level < 5; ++level) {
      auto [lo, hi] = base.beta_interval(level);
      auto p = [&](const Rational& x) -> Rational { return x * x * x - m * x * x - m * x - n; };
      CHECK(sgn(p(lo)) < 0);
      CHECK(sgn(p(hi)) > 0);
      CHECK(lo < hi);
    }
  }
}

TEST_CASE("ell satisfies (beta + 1) ell = -beta") {
  for (auto [m, n] : kBases) {
    CubicBase base(m, n);
    CHECK(mul(FieldElement(1, 1, 0), base.ell(), base) + FieldElement::beta() == FieldElement());
  }
}

TEST_CASE("base validation") {
  CHECK_THROWS_AS(CubicBase(1, 2), std::domain_error);
  CHECK_THROWS_AS(CubicBase(0, 0), std::domain_error);
  CHECK_NOTHROW(CubicBase(4, 1));
}

TEST_CASE("text round trip") {
  CHECK(to_string(FieldElement(2, -1, 2)) == "2,-1,2");
  CHECK(parse_field_element("2,-1,2") == FieldElement(2, -1, 2));
  CHECK(parse_field_element("1/2,-3/6,+4") == FieldElement(Rational(1, 2), Rational(-1, 2), 4));
  CHECK(to_string(parse_field_element("1/2,-3/6,4")) == "1/2,-1/2,4");
  CHECK_THROWS_AS(parse_field_element("1,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_field_element("1,2,x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_field_element("1,2,3/0"), std::invalid_argument);
}

TEST_CASE("concurrent readers of one base agree") {
  CubicBase base(3, 2);
  testing::ElementGenerator gen(19);
  std::vector<FieldElement> samples;
  for (int i = 0; i < 200; ++i) samples.push_back(gen.element());
  std::vector<int> expected;
  for (const auto& s : samples) expected.push_back(sign(s, CubicBase(3, 2)));
  std::vector<std::vector<int>> seen(4);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      for (const auto& s : samples) seen[t].push_back(sign(s, base));
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& v : seen) CHECK(v == expected);
}

}  // namespace
}  // namespace negabase
