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

#include "negabase/arithmetic.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <utility>

#include "negabase/transducer.hpp"

namespace negabase {

namespace {

constexpr std::size_t kFrBound = 6;
constexpr std::size_t kWitnessesPerValue = 16;

const Transducer& addition_transducer() {
  static const Transducer t = build_t_plus();
  return t;
}

bool binary(const DigitWord& w) {
  return std::all_of(w.digits().begin(), w.digits().end(), [](int d) { return d == 0 || d == 1; });
}

bool integral(const DigitWord& w) { return w.canonical().lowest_exponent() >= 0; }

// Shift making every digit sit at a nonnegative position.
long integer_shift(const DigitWord& x, const DigitWord& y) {
  long low = 0;
  if (!x.empty()) low = std::min(low, x.lowest_exponent());
  if (!y.empty()) low = std::min(low, y.lowest_exponent());
  return -low;
}

Computation finish(DigitWord input, DigitWord raw, const FieldElement& expected) {
  const CubicBase& base = CubicBase::tribonacci();
  if (!binary(raw)) throw std::logic_error("transducer emitted a digit outside {0,1}");
  if (value_of(raw, base) != expected) {
    throw std::logic_error("transducer output " + to_string(raw) + " changed the value");
  }
  Computation c;
  c.result = expansion_of(expected, base);
  if (value_of(c.result, base) != expected) {
    throw std::logic_error("normalized expansion changed the value");
  }
  c.transducer_input = std::move(input);
  c.raw = std::move(raw);
  return c;
}

DigitWord run_addition(const DigitWord& z) {
  if (z.canonical().empty()) return {};
  long s = integer_shift(z, z);
  try {
    return apply(addition_transducer(), z.shifted(s)).shifted(-s);
  } catch (const RunError& e) {
    throw std::logic_error(std::string("addition transducer stuck: ") + e.what());
  }
}

DigitWord run_subtraction(const DigitWord& y) {
  if (y.canonical().empty()) return {};
  std::vector<int> digits(y.digits());
  for (int& d : digits) d = -d;
  long s = integer_shift(y, y);
  return apply(t_minus(), DigitWord(std::move(digits), y.leading_exponent()).shifted(s))
      .shifted(-s);
}

void require_binary(const DigitWord& w, const char* op) {
  if (!binary(w)) {
    throw std::domain_error(std::string(op) + ": digits must be 0 or 1: " + to_string(w));
  }
}

void require_admissible(const DigitWord& w, const char* op) {
  require_binary(w, op);
  if (!is_admissible(w, CubicBase::tribonacci())) {
    throw std::domain_error(std::string(op) + ": not an admissible expansion: " + to_string(w));
  }
}

void check_bound(const ExpansionResult& r, const DigitWord& x, const DigitWord& y) {
  if (integral(x) && integral(y) && (!r.fr.is_finite() || r.fr.value() > kFrBound)) {
    throw std::logic_error("fractional length " + r.fr.to_string() + " exceeds " +
                           std::to_string(kFrBound));
  }
}

}  // namespace

DigitWord digitwise_sum(const DigitWord& x, const DigitWord& y) {
  if (x.empty()) return y;
  if (y.empty()) return x;
  long top = std::max(x.leading_exponent(), y.leading_exponent());
  long low = std::min(x.lowest_exponent(), y.lowest_exponent());
  std::vector<int> digits;
  for (long p = top; p >= low; --p) digits.push_back(x.at(p) + y.at(p));
  return DigitWord(std::move(digits), top);
}

Computation add_traced(const DigitWord& x, const DigitWord& y) {
  require_binary(x, "add");
  require_binary(y, "add");
  const CubicBase& base = CubicBase::tribonacci();
  if (!is_admissible(x, base) && !is_admissible(y, base)) {
    throw std::domain_error("add: at least one summand must be admissible");
  }
  DigitWord z = digitwise_sum(x, y);
  DigitWord raw = run_addition(z);
  return finish(std::move(z), std::move(raw), value_of(x, base) + value_of(y, base));
}

Computation negate_traced(const DigitWord& x) {
  require_admissible(x, "negate");
  return finish({}, run_subtraction(x), -value_of(x, CubicBase::tribonacci()));
}

Computation subtract_traced(const DigitWord& x, const DigitWord& y) {
  require_admissible(x, "subtract");
  require_admissible(y, "subtract");
  const CubicBase& base = CubicBase::tribonacci();
  DigitWord z = digitwise_sum(x, run_subtraction(y));
  DigitWord raw = run_addition(z);
  return finish(std::move(z), std::move(raw), value_of(x, base) - value_of(y, base));
}

ExpansionResult add(const DigitWord& x, const DigitWord& y) {
  ExpansionResult r = add_traced(x, y).result;
  check_bound(r, x, y);
  return r;
}

ExpansionResult negate(const DigitWord& x) {
  ExpansionResult r = negate_traced(x).result;
  check_bound(r, x, x);
  return r;
}

ExpansionResult subtract(const DigitWord& x, const DigitWord& y) {
  ExpansionResult r = subtract_traced(x, y).result;
  check_bound(r, x, y);
  return r;
}

// ---------------------------------------------------------------------------
// Scan

std::size_t FrScanReport::max_fr() const { return std::max({max_fr_add, max_fr_sub, max_fr_neg}); }

namespace {

bool ends_0010(const DigitWord& raw) {
  DigitWord c = raw.canonical();
  long low = c.lowest_exponent();
  return !c.empty() && c.at(low) == 1 && c.at(low + 1) == 0 && c.at(low + 2) == 0;
}

void note_raw(RawOutputChecks& c, const Computation& comp) {
  std::size_t fr_raw = comp.raw.fractional_length();
  c.max_fr_raw = std::max(c.max_fr_raw, fr_raw);
  ++c.raw_histogram[fr_raw];
  if (comp.result.fr.is_finite() && comp.result.fr.value() > fr_raw) ++c.dominance_violations;
  if (fr_raw >= 2 && !ends_0010(comp.raw)) ++c.suffix_violations;
}

struct Partial {
  FrScanReport report;
  std::map<std::pair<std::string, std::size_t>, std::size_t> witness_counts;

  void record(const std::string& op, const DigitWord& x, const DigitWord& y,
              const ExpansionResult& r) {
    if (!r.fr.is_finite()) {
      ++report.value_failures;
      return;
    }
    std::size_t fr = r.fr.value();
    FrHistogram& h = op == "add" ? report.add_histogram
                     : op == "sub" ? report.sub_histogram
                                   : report.neg_histogram;
    std::size_t& max = op == "add" ? report.max_fr_add
                       : op == "sub" ? report.max_fr_sub
                                     : report.max_fr_neg;
    ++h[fr];
    ++report.histogram[fr];
    max = std::max(max, fr);
    if (witness_counts[{op, fr}]++ < kWitnessesPerValue) report.witnesses.push_back({op, x, y, r});
  }
};

void merge_histogram(FrHistogram& into, const FrHistogram& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

void merge_raw(RawOutputChecks& into, const RawOutputChecks& from) {
  into.max_fr_raw = std::max(into.max_fr_raw, from.max_fr_raw);
  into.dominance_violations += from.dominance_violations;
  into.suffix_violations += from.suffix_violations;
  into.small_tail_violations += from.small_tail_violations;
  for (const auto& w : from.small_tail_examples) {
    if (into.small_tail_examples.size() < kWitnessesPerValue) into.small_tail_examples.push_back(w);
  }
  merge_histogram(into.raw_histogram, from.raw_histogram);
}

void scan_block(const std::vector<DigitWord>& words, std::size_t begin, std::size_t end,
                Partial& part) {
  const CubicBase& base = CubicBase::tribonacci();
  const DigitWord none;
  for (std::size_t i = begin; i < end; ++i) {
    const DigitWord& x = words[i];
    const FieldElement vx = value_of(x, base);
    try {
      Computation n = negate_traced(x);
      note_raw(part.report.neg_raw, n);
      part.record("neg", x, none, n.result);
    } catch (const std::logic_error&) {
      ++part.report.value_failures;
    }
    for (const DigitWord& y : words) {
      try {
        Computation a = add_traced(x, y);
        note_raw(part.report.add_raw, a);
        std::size_t fr_raw = a.raw.fractional_length();
        if (a.transducer_input.at(0) != 2 && fr_raw > 5) {
          auto& checks = part.report.add_raw;
          ++checks.small_tail_violations;
          if (checks.small_tail_examples.size() < kWitnessesPerValue) {
            checks.small_tail_examples.push_back({"add", x, y, a.result});
          }
        }
        part.record("add", x, y, a.result);
        Computation s = subtract_traced(x, y);
        part.record("sub", x, y, s.result);
        if (value_of(a.result, base) - value_of(s.result, base) != 2 * FieldElement(value_of(y, base)) ||
            value_of(a.result, base) + value_of(s.result, base) != Rational(2) * vx) {
          ++part.report.value_failures;
        }
      } catch (const std::logic_error&) {
        ++part.report.value_failures;
      }
    }
  }
}

}  // namespace

FrScanReport scan_fr(std::size_t max_len, unsigned threads) {
  const CubicBase& base = CubicBase::tribonacci();
  std::vector<DigitWord> words = enumerate_admissible(base, max_len);
  (void)addition_transducer();
  (void)reference_strings(base);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(words.size(), 1)));
  std::vector<Partial> parts(threads);
  std::vector<std::thread> workers;
  const std::size_t chunk = (words.size() + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    std::size_t begin = std::min(words.size(), w * chunk);
    std::size_t end = std::min(words.size(), begin + chunk);
    if (threads == 1) {
      scan_block(words, begin, end, parts[w]);
    } else {
      workers.emplace_back(scan_block, std::cref(words), begin, end, std::ref(parts[w]));
    }
  }
  for (auto& t : workers) t.join();

  FrScanReport report;
  report.words = words.size();
  std::map<std::pair<std::string, std::size_t>, std::size_t> kept;
  for (const Partial& p : parts) {
    const FrScanReport& r = p.report;
    report.max_fr_add = std::max(report.max_fr_add, r.max_fr_add);
    report.max_fr_sub = std::max(report.max_fr_sub, r.max_fr_sub);
    report.max_fr_neg = std::max(report.max_fr_neg, r.max_fr_neg);
    merge_histogram(report.add_histogram, r.add_histogram);
    merge_histogram(report.sub_histogram, r.sub_histogram);
    merge_histogram(report.neg_histogram, r.neg_histogram);
    merge_histogram(report.histogram, r.histogram);
    report.value_failures += r.value_failures;
    merge_raw(report.add_raw, r.add_raw);
    merge_raw(report.neg_raw, r.neg_raw);
    for (const FrWitness& w : r.witnesses) {
      std::size_t fr = w.result.fr.value();
      if (kept[{w.op, fr}]++ < kWitnessesPerValue) report.witnesses.push_back(w);
    }
  }
  return report;
}

}  // namespace negabase
