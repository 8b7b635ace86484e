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

#include "negabase/field.hpp"

#include <mutex>
#include <optional>
#include <regex>
#include <stdexcept>
#include <vector>

namespace negabase {

namespace {

// The int128 fast path evaluates at this dyadic precision.
constexpr unsigned kFastShift = 24;
constexpr std::size_t kFastCoordinateBits = 40;
constexpr long kFastMaxM = 1000;

using Int128 = __int128;

Int128 floor_div(Int128 a, Int128 b) {
  Int128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Coordinates scaled to a common denominator: a(beta) = (A0 + A1 beta + A2 beta^2) / D.
struct Scaled {
  std::array<Integer, 3> a;
  Integer denominator;
};

Scaled scale(const FieldElement& x) {
  Scaled s;
  const bool integral = x[0].get_den() == 1 && x[1].get_den() == 1 && x[2].get_den() == 1;
  if (integral) {
    s.denominator = 1;
    for (int i = 0; i < 3; ++i) s.a[i] = x[i].get_num();
    return s;
  }
  Integer d = 1;
  for (int i = 0; i < 3; ++i) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x[i].get_den_mpz_t());
  s.denominator = d;
  for (int i = 0; i < 3; ++i) s.a[i] = x[i].get_num() * (d / x[i].get_den());
  return s;
}

// Sign of p(N / 2^s) for p(x) = x^3 - m x^2 - m x - n.
int poly_sign_at(const Integer& num, unsigned s, long m, long n) {
  Integer one = 1;
  Integer scale1 = one << s;
  Integer scale2 = one << (2 * s);
  Integer scale3 = one << (3 * s);
  Integer v = num * num * num - m * (num * num) * scale1 - m * num * scale2 - n * scale3;
  return sgn(v);
}

struct Bounds {
  Integer lo;
  Integer hi;
};

}  // namespace

struct CubicBase::Ladder {
  struct Level {
    unsigned shift;
    Integer lo;
    Integer hi;
    Integer lo_sq;
    Integer hi_sq;
  };

  long m;
  long n;
  bool fast;
  long long fast_lo = 0;
  long long fast_hi = 0;
  std::mutex mutex;
  std::vector<std::shared_ptr<const Level>> levels;

  Ladder(long m_in, long n_in) : m(m_in), n(n_in), fast(m_in <= kFastMaxM) {
    auto base = std::make_shared<Level>();
    base->shift = 0;
    base->lo = m;
    base->hi = m + 1;
    base->lo_sq = base->lo * base->lo;
    base->hi_sq = base->hi * base->hi;
    levels.push_back(base);
    if (fast) {
      auto l = refine(*base, kFastShift);
      fast_lo = l->lo.get_si();
      fast_hi = l->hi.get_si();
      levels.push_back(l);
    }
  }

  std::shared_ptr<const Level> refine(const Level& from, unsigned shift) const {
    auto out = std::make_shared<Level>();
    out->shift = shift;
    out->lo = from.lo << (shift - from.shift);
    out->hi = from.hi << (shift - from.shift);
    while (out->hi - out->lo > 1) {
      Integer mid = (out->lo + out->hi) >> 1;
      // p has no rational root, so the midpoint never hits beta exactly.
      if (poly_sign_at(mid, shift, m, n) < 0) {
        out->lo = mid;
      } else {
        out->hi = mid;
      }
    }
    out->lo_sq = out->lo * out->lo;
    out->hi_sq = out->hi * out->hi;
    return out;
  }

  std::shared_ptr<const Level> level(std::size_t j) {
    std::lock_guard<std::mutex> lock(mutex);
    while (levels.size() <= j) {
      const Level& last = *levels.back();
      unsigned next = last.shift == 0 ? kFastShift : 2 * last.shift;
      levels.push_back(refine(last, next));
    }
    return levels[j];
  }
};

namespace {

// Numerators of lower/upper bounds of A0 + A1 beta + A2 beta^2 over 2^(2s).
Bounds evaluate(const Scaled& x, const CubicBase::Ladder::Level& l) {
  const auto& [a0, a1, a2] = x.a;
  Integer base = a0 << (2 * l.shift);
  Integer t1lo = a1 * (sgn(a1) >= 0 ? l.lo : l.hi);
  Integer t1hi = a1 * (sgn(a1) >= 0 ? l.hi : l.lo);
  Integer t2lo = a2 * (sgn(a2) >= 0 ? l.lo_sq : l.hi_sq);
  Integer t2hi = a2 * (sgn(a2) >= 0 ? l.hi_sq : l.lo_sq);
  return {base + (t1lo << l.shift) + t2lo, base + (t1hi << l.shift) + t2hi};
}

struct FastBounds {
  Int128 lo;
  Int128 hi;
};

std::optional<FastBounds> evaluate_fast(const Scaled& x, long long lo, long long hi) {
  for (const auto& c : x.a) {
    if (mpz_sizeinbase(c.get_mpz_t(), 2) > kFastCoordinateBits) return std::nullopt;
  }
  const Int128 a0 = x.a[0].get_si();
  const Int128 a1 = x.a[1].get_si();
  const Int128 a2 = x.a[2].get_si();
  const Int128 l = lo;
  const Int128 h = hi;
  const Int128 base = a0 << (2 * kFastShift);
  FastBounds b;
  b.lo = base + ((a1 * (a1 >= 0 ? l : h)) << kFastShift) + a2 * (a2 >= 0 ? l * l : h * h);
  b.hi = base + ((a1 * (a1 >= 0 ? h : l)) << kFastShift) + a2 * (a2 >= 0 ? h * h : l * l);
  return b;
}

}  // namespace

FieldElement::FieldElement(Rational c0, Rational c1, Rational c2)
    : c_{std::move(c0), std::move(c1), std::move(c2)} {
  for (auto& c : c_) c.canonicalize();
}

FieldElement FieldElement::beta() { return FieldElement(0, 1, 0); }

bool FieldElement::is_zero() const {
  return sgn(c_[0]) == 0 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.c_[0] == b.c_[0] && a.c_[1] == b.c_[1] && a.c_[2] == b.c_[2];
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  return FieldElement(a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2]);
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  return FieldElement(a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2]);
}

FieldElement operator-(const FieldElement& a) {
  return FieldElement(-a.c_[0], -a.c_[1], -a.c_[2]);
}

FieldElement operator*(const Rational& s, const FieldElement& a) {
  return FieldElement(s * a.c_[0], s * a.c_[1], s * a.c_[2]);
}

CubicBase::CubicBase(long m, long n) : m_(m), n_(n) {
  if (n < 1 || m < n) {
    throw std::domain_error("cubic base requires m >= n >= 1, got m=" + std::to_string(m) +
                            " n=" + std::to_string(n));
  }
  ladder_ = std::make_shared<Ladder>(m, n);
  ell_ = -mul(FieldElement::beta(), inv(FieldElement(1, 1, 0), *this), *this);
}

const CubicBase& CubicBase::tribonacci() {
  static const CubicBase base(1, 1);
  return base;
}

std::pair<Rational, Rational> CubicBase::beta_interval(std::size_t level) const {
  auto l = ladder_->level(level);
  Rational scale(Integer(1) << l->shift);
  return {Rational(l->lo) / scale, Rational(l->hi) / scale};
}

FieldElement mul(const FieldElement& a, const FieldElement& b, const CubicBase& base) {
  std::array<Rational, 5> p;
  for (int i = 0; i < 3; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; j < 3; ++j) p[i + j] += a[i] * b[j];
  }
  for (int d = 4; d >= 3; --d) {
    p[d - 1] += base.m() * p[d];
    p[d - 2] += base.m() * p[d];
    p[d - 3] += base.n() * p[d];
  }
  return FieldElement(p[0], p[1], p[2]);
}

FieldElement times_neg_beta(const FieldElement& a, const CubicBase& base) {
  return FieldElement(-base.n() * a[2], -(a[0] + base.m() * a[2]), -(a[1] + base.m() * a[2]));
}

FieldElement div_neg_beta(const FieldElement& a, const CubicBase& base) {
  Rational d2 = a[0] / base.n();
  Rational d0 = a[1] - base.m() * d2;
  Rational d1 = a[2] - base.m() * d2;
  return FieldElement(-d0, -d1, -d2);
}

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t shift = a.size() - b.size();
    Rational c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

}  // namespace

FieldElement inv(const FieldElement& a, const CubicBase& base) {
  if (a.is_zero()) throw std::domain_error("inverse of zero");
  Poly r0{Rational(-base.n()), Rational(-base.m()), Rational(-base.m()), Rational(1)};
  Poly r1{a[0], a[1], a[2]};
  trim(r1);
  Poly t0;
  Poly t1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly t = sub(t0, mul(q, t1));
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  // r1 is a nonzero constant because the minimal polynomial is irreducible.
  Rational c = r1.at(0);
  Poly p{Rational(-base.n()), Rational(-base.m()), Rational(-base.m()), Rational(1)};
  Poly t = divmod(t1, p).second;
  t.resize(3);
  return FieldElement(t[0] / c, t[1] / c, t[2] / c);
}

int sign(const FieldElement& a, const CubicBase& base) {
  if (a.is_zero()) return 0;
  Scaled x = scale(a);
  auto& ladder = *base.ladder_;
  std::size_t j = 1;
  if (ladder.fast) {
    if (auto b = evaluate_fast(x, ladder.fast_lo, ladder.fast_hi)) {
      if (b->lo > 0) return 1;
      if (b->hi < 0) return -1;
    }
    j = 2;
  }
  for (;; ++j) {
    Bounds b = evaluate(x, *ladder.level(j));
    if (sgn(b.lo) > 0) return 1;
    if (sgn(b.hi) < 0) return -1;
  }
}

Integer floor(const FieldElement& a, const CubicBase& base) {
  Scaled x = scale(a);
  auto& ladder = *base.ladder_;
  Integer flo;
  Integer fhi;
  bool bracketed = false;
  std::size_t j = 0;
  if (ladder.fast && x.denominator.fits_slong_p() &&
      mpz_sizeinbase(x.denominator.get_mpz_t(), 2) <= kFastCoordinateBits) {
    if (auto b = evaluate_fast(x, ladder.fast_lo, ladder.fast_hi)) {
      const Int128 d = static_cast<Int128>(x.denominator.get_si()) << (2 * kFastShift);
      const Int128 lo = floor_div(b->lo, d);
      const Int128 hi = floor_div(b->hi, d);
      if (lo == hi) return Integer(static_cast<long>(lo));
      if (hi - lo == 1) {
        flo = static_cast<long>(lo);
        fhi = static_cast<long>(hi);
        bracketed = true;
      }
    }
    j = 2;
  }
  while (!bracketed) {
    auto l = ladder.level(j++);
    Bounds b = evaluate(x, *l);
    Integer d = x.denominator << (2 * l->shift);
    mpz_fdiv_q(flo.get_mpz_t(), b.lo.get_mpz_t(), d.get_mpz_t());
    mpz_fdiv_q(fhi.get_mpz_t(), b.hi.get_mpz_t(), d.get_mpz_t());
    if (flo == fhi) return flo;
    bracketed = fhi - flo <= 1;
  }
  // flo <= a < fhi + 1; one exact comparison settles it.
  if (sign(a - FieldElement(Rational(fhi), 0, 0), base) >= 0) return fhi;
  return flo;
}

std::string to_string(const FieldElement& a) {
  return a[0].get_str() + "," + a[1].get_str() + "," + a[2].get_str();
}

FieldElement parse_field_element(std::string_view text) {
  static const std::regex coordinate(R"(^\s*([+-]?)(\d+)(?:/(\d+))?\s*$)");
  std::array<Rational, 3> c;
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    std::size_t comma = text.find(',', start);
    if ((i < 2) != (comma != std::string_view::npos)) {
      throw std::invalid_argument("expected three comma-separated coordinates: " +
                                  std::string(text));
    }
    std::string part(text.substr(start, i < 2 ? comma - start : std::string_view::npos));
    std::smatch match;
    if (!std::regex_match(part, match, coordinate)) {
      throw std::invalid_argument("malformed coordinate: '" + part + "'");
    }
    Integer num(match[2].str());
    Integer den = match[3].matched ? Integer(match[3].str()) : Integer(1);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + part + "'");
    if (match[1].str() == "-") num = -num;
    c[i] = Rational(num, den);
    c[i].canonicalize();
    start = comma + 1;
  }
  return FieldElement(c[0], c[1], c[2]);
}

}  // namespace negabase
