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

#include "negabase/confluent.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace negabase {

std::pair<ZeroIdentity, ZeroIdentity> zero_identities(const CubicBase& base) {
  const int m = static_cast<int>(base.m());
  const int n = static_cast<int>(base.n());
  return {{1, m, -m, n}, {-1, -m, m, -n}};
}

ExpansionResult minus_one(const CubicBase& base) {
  ExpansionResult e = expansion_of(FieldElement(-1L), base);
  if (base.m() == base.n()) {
    const int m = static_cast<int>(base.m());
    ExpansionResult expected;
    expected.integer_digits = {1, m};
    expected.fractional = EventuallyPeriodicWord({0, 0, m}, {});
    expected.fr = Fr::finite(3);
    if (!(e == expected)) {
      throw std::logic_error("expansion of -1 is " + e.to_string() + ", expected " +
                             expected.to_string());
    }
  }
  return e;
}

std::string to_string(QTag tag) {
  static const char* const names[] = {"Q_I", "Q_II", "Q_1", "Q_2",  "Q_3",  "Q_4",  "Q_5", "Q_6",
                                      "Q_7", "Q_8",  "Q_9", "Q_10", "Q_11", "Q_12", "Q_13"};
  return names[static_cast<int>(tag)];
}

namespace {

// Sparse digit string indexed by position.
class Digits {
 public:
  explicit Digits(const DigitWord& w) {
    for (long p = w.leading_exponent(); p >= w.lowest_exponent(); --p) set(p, w.at(p));
  }
  int at(long p) const {
    auto it = d_.find(p);
    return it == d_.end() ? 0 : it->second;
  }
  void set(long p, int v) {
    if (v == 0) {
      d_.erase(p);
    } else {
      d_[p] = v;
    }
  }
  void add(long top, const ZeroIdentity& w) {
    for (int i = 0; i < 4; ++i) set(top - i, at(top - i) + w[i]);
  }
  long lowest() const { return d_.empty() ? 0 : d_.begin()->first; }
  DigitWord word() const {
    if (d_.empty()) return {};
    long hi = d_.rbegin()->first;
    long lo = std::min(0L, d_.begin()->first);
    hi = std::max(hi, 0L);
    std::vector<int> digits;
    for (long p = hi; p >= lo; --p) digits.push_back(at(p));
    return DigitWord(std::move(digits), hi);
  }

 private:
  std::map<long, int> d_;
};

std::string join(const int* begin, const int* end) {
  std::string s;
  for (const int* p = begin; p != end; ++p) s += (p == begin ? "" : ",") + std::to_string(*p);
  return s;
}

class Automaton {
 public:
  Automaton(const CubicBase& base, ConfluentTrace& trace, Digits live, Digits original)
      : m_(static_cast<int>(base.m())),
        base_(base),
        trace_(trace),
        live_(std::move(live)),
        original_(std::move(original)),
        value_(value_of(live_.word(), base)) {
    auto [plus, minus] = zero_identities(base);
    plus_ = plus;
    minus_ = minus;
  }

  void run(QTag tag, long top, std::size_t max_steps) {
    check_membership(tag, top);
    while (true) {
      if (trace_.steps.size() >= max_steps) {
        throw ConfluentBudgetExceeded(
            "add_one: no stop within " + std::to_string(max_steps) + " steps", trace_);
      }
      auto [rewrite, next] = transition(tag, original_.at(top - 1));
      ConfluentStep step{tag, window(top), {original_.at(top - 1), original_.at(top - 2)},
                         original_.at(top - 3), rewrite, 0};
      live_.add(top, rewrite);
      step.output = live_.at(top);
      trace_.steps.push_back(step);
      if (step.output < 0 || step.output > m_) {
        throw std::logic_error("add_one: emitted digit " + std::to_string(step.output) +
                               " outside the alphabet in state " + to_string(tag));
      }
      if (value_of(live_.word(), base_) != value_) {
        throw std::logic_error("add_one: rewrite changed the value");
      }
      tag = next;
      --top;
      if (in_alphabet(window(top))) {
        trace_.final_tag = tag;
        trace_.final_window = window(top);
        bool tail = top - 2 < original_.lowest();
        trace_.termination = (tag == QTag::kQ10 && tail) ? Termination::kLoopExit
                                                         : Termination::kStop;
        trace_.result = live_.word();
        return;
      }
      check_membership(tag, top);
    }
  }

 private:
  std::array<int, 3> window(long top) const {
    return {live_.at(top), live_.at(top - 1), live_.at(top - 2)};
  }

  bool in_alphabet(const std::array<int, 3>& w) const {
    return std::all_of(w.begin(), w.end(), [&](int d) { return d >= 0 && d <= m_; });
  }

  std::pair<ZeroIdentity, QTag> transition(QTag tag, int y) const {
    const ZeroIdentity none{0, 0, 0, 0};
    switch (tag) {
      case QTag::kQI: return {minus_, QTag::kQ4};
      case QTag::kQII: return {minus_, QTag::kQ5};
      case QTag::kQ1: return {plus_, QTag::kQ2};
      case QTag::kQ2: return {none, QTag::kQ3};
      case QTag::kQ3: return {minus_, QTag::kQ4};
      case QTag::kQ4: return {minus_, QTag::kQ5};
      case QTag::kQ5: return y != m_ ? std::pair{none, QTag::kQ6} : std::pair{minus_, QTag::kQ7};
      case QTag::kQ6: return {plus_, QTag::kQ9};
      case QTag::kQ7: return {none, QTag::kQ8};
      case QTag::kQ8: return {plus_, QTag::kQ9};
      case QTag::kQ9: return {plus_, QTag::kQ10};
      // With y != 0 only 0000 keeps the window in Q_12 and the output in the alphabet.
      case QTag::kQ10: return y == 0 ? std::pair{plus_, QTag::kQ11} : std::pair{none, QTag::kQ12};
      case QTag::kQ11: return {none, QTag::kQ12};
      case QTag::kQ12: return {minus_, QTag::kQ13};
      case QTag::kQ13: return {minus_, QTag::kQ5};
    }
    throw std::logic_error("unknown state");
  }

  // Non-underlined conditions of the state table; y, z are original digits.
  bool member(QTag tag, const std::array<int, 3>& w, int y, int z) const {
    const int m = m_;
    const int x = w[0];
    switch (tag) {
      case QTag::kQI: return w[1] == m + 1 && w[2] == z && x != 0;
      case QTag::kQII: return x == 1 && w[1] == y + m && w[2] == z - m;
      case QTag::kQ1: return w[1] == 0 && w[2] == m + 1 && x != m;
      case QTag::kQ2: return x == m && w[1] == 1 && w[2] == z + m;
      case QTag::kQ3: return x == 1 && w[1] == y + m && w[2] == z && y != 0;
      case QTag::kQ4:
      case QTag::kQ13: return w[1] == y + m && w[2] == z - m && x != 0;
      case QTag::kQ5: return w[1] == y && w[2] == z - m && (x != 0 || y != m);
      case QTag::kQ6:
      case QTag::kQ8: return w[1] == y - m && w[2] == z && x != m && y != m;
      case QTag::kQ7: return x == 0 && w[1] == y && w[2] == z - m && y != m;
      case QTag::kQ9: return w[1] == y - m && w[2] == z + m && x != m;
      case QTag::kQ10: return w[1] == y && w[2] == z + m && (x != m || y != 0);
      case QTag::kQ11: return x == m && w[1] == y && w[2] == z + m && y != 0;
      case QTag::kQ12: return w[1] == y + m && w[2] == z && x != 0 && y != 0;
    }
    return false;
  }

  void check_membership(QTag tag, long top) const {
    auto w = window(top);
    int y = original_.at(top - 1);
    int z = original_.at(top - 2);
    bool ok = member(tag, w, y, z);
    // The state reached from Q_I is tagged Q_4 and must also lie in Q_II.
    if (ok && tag == QTag::kQ4 && trace_.steps.size() == 1 &&
        trace_.steps.front().tag == QTag::kQI) {
      ok = member(QTag::kQII, w, y, z);
    }
    if (!ok) {
      throw std::logic_error("add_one: window " + join(w.data(), w.data() + 3) +
                             " with y=" + std::to_string(y) + " z=" + std::to_string(z) +
                             " is not in " + to_string(tag));
    }
  }

  int m_;
  const CubicBase& base_;
  ConfluentTrace& trace_;
  Digits live_;
  Digits original_;
  FieldElement value_;
  ZeroIdentity plus_{};
  ZeroIdentity minus_{};
};

}  // namespace

std::vector<QTag> ConfluentTrace::path() const {
  std::vector<QTag> tags;
  for (const ConfluentStep& s : steps) tags.push_back(s.tag);
  if (final_tag) tags.push_back(*final_tag);
  return tags;
}

std::string ConfluentTrace::to_string() const {
  std::ostringstream out;
  out << "start | word=" << negabase::to_string(start) << "\n";
  if (initialized) out << "init | word=" << negabase::to_string(*initialized) << "\n";
  for (const ConfluentStep& s : steps) {
    out << negabase::to_string(s.tag) << " | window=" << join(s.window.data(), s.window.data() + 3)
        << " | in=" << s.input << " | rewrite=" << join(s.rewrite.data(), s.rewrite.data() + 4)
        << " | out=" << s.output << "\n";
  }
  out << (termination == Termination::kLoopExit ? "LOOP-EXIT" : "STOP");
  if (final_tag) {
    out << " | state=" << negabase::to_string(*final_tag)
        << " | window=" << join(final_window.data(), final_window.data() + 3);
  } else {
    out << " | state=" << (termination == Termination::kTrivial ? "trivial" : "init");
  }
  out << " | result=" << negabase::to_string(result) << "\n";
  return out.str();
}

ConfluentTrace add_one(const DigitWord& x, const CubicBase& base, const AddOneOptions& options) {
  if (base.m() != base.n()) {
    throw std::domain_error("add_one: the automaton is defined for m = n only");
  }
  const int m = static_cast<int>(base.m());
  for (int d : x.digits()) {
    if (d < 0 || d > m) {
      throw std::domain_error("add_one: digit " + std::to_string(d) + " outside {0,...," +
                              std::to_string(m) + "}");
    }
  }
  if (options.require_admissible && !is_admissible(x, base)) {
    throw std::domain_error("add_one: not an admissible expansion: " + to_string(x));
  }
  Digits d(x);
  d.set(0, d.at(0) + 1);
  ConfluentTrace trace;
  trace.start = d.word();
  if (d.at(0) != m + 1) {
    trace.termination = Termination::kTrivial;
    trace.result = trace.start;
    return trace;
  }
  auto [plus, minus] = zero_identities(base);
  QTag tag;
  long top;
  if (d.at(1) >= 1) {
    tag = QTag::kQI;
    top = 1;
  } else if (d.at(2) < m) {
    tag = QTag::kQ1;
    top = 2;
  } else if (d.at(3) >= 1) {
    d.add(3, minus);
    trace.initialized = d.word();
    trace.termination = Termination::kInitialStop;
    trace.result = d.word();
    return trace;
  } else {
    if (d.at(4) >= m) {
      throw std::domain_error("add_one: prefix m0m0 makes the representation non-admissible");
    }
    d.add(4, plus);
    trace.initialized = d.word();
    tag = QTag::kQI;
    top = 1;
  }
  Automaton automaton(base, trace, d, d);
  automaton.run(tag, top, options.max_steps);
  return trace;
}

ProbeReport finiteness_probe(const CubicBase& base, long coord_bound, std::size_t max_steps,
                             unsigned threads) {
  std::vector<FieldElement> grid;
  for (long a = -coord_bound; a <= coord_bound; ++a) {
    for (long b = -coord_bound; b <= coord_bound; ++b) {
      for (long c = -coord_bound; c <= coord_bound; ++c) grid.emplace_back(a, b, c);
    }
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));
  std::vector<ProbeReport> parts(threads);
  auto work = [&](unsigned w) {
    const std::size_t chunk = (grid.size() + threads - 1) / threads;
    const std::size_t begin = std::min(grid.size(), w * chunk);
    const std::size_t end = std::min(grid.size(), begin + chunk);
    for (std::size_t i = begin; i < end; ++i) {
      ++parts[w].checked;
      try {
        ExpansionResult e = expansion_of(grid[i], base, max_steps);
        if (e.fr.is_finite()) {
          ++parts[w].finite;
        } else {
          parts[w].infinite.push_back({grid[i], e});
        }
      } catch (const BudgetExceeded&) {
        parts[w].budget_exceeded.push_back(grid[i]);
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  ProbeReport report;
  for (const ProbeReport& p : parts) {
    report.checked += p.checked;
    report.finite += p.finite;
    report.infinite.insert(report.infinite.end(), p.infinite.begin(), p.infinite.end());
    report.budget_exceeded.insert(report.budget_exceeded.end(), p.budget_exceeded.begin(),
                                  p.budget_exceeded.end());
  }
  return report;
}

}  // namespace negabase
