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

#include "negabase/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "negabase/arithmetic.hpp"
#include "negabase/confluent.hpp"
#include "negabase/expansion.hpp"
#include "negabase/transducer.hpp"

namespace negabase::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t max_steps_from_env() {
  const char* env = std::getenv("NEGABASE_MAX_STEPS");
  if (!env || !*env) return kDefaultMaxSteps;
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(env, &pos);
    if (pos != std::string(env).size() || v == 0) throw std::invalid_argument(env);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw UsageError(std::string("NEGABASE_MAX_STEPS must be a positive integer, got '") + env +
                     "'");
  }
}

DigitWord word_arg(const std::string& text) {
  try {
    return parse_digit_word(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void require_tribonacci(const CubicBase& base, const std::string& command) {
  if (!(base == CubicBase::tribonacci())) {
    throw std::domain_error(command + " is implemented for the Tribonacci base only");
  }
}

// "11110.011001"; digits are single characters here.
std::string compact(const DigitWord& w) {
  std::string s = to_string(w);
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

std::string compact(const ExpansionResult& e) {
  std::string s = e.to_string();
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

void print_expansion(std::ostream& out, const ExpansionResult& e) {
  out << e.to_string() << "\n" << "fr=" << e.fr.to_string() << "\n";
}

void print_report(std::ostream& out, const ValidationReport& r) {
  out << "edges=" << r.edges_checked << " value_preserving=" << r.value_preserving
      << " certified=" << r.certified << " deterministic=" << (r.deterministic ? "yes" : "no")
      << " holes=" << r.holes.size() << "\n";
  for (const auto& issue : r.issues) out << "invalid " << to_string(issue.edge) << " : " << issue.reason << "\n";
  for (const auto& [state, input] : r.holes) {
    out << "hole " << to_string(state) << "|";
    for (int d : input) out << d;
    out << "\n";
  }
}

}  // namespace

CubicBase parse_base(const std::string& selector) {
  if (selector == "tribonacci") return CubicBase::tribonacci();
  static const std::regex cubic(R"(^cubic:(\d{1,6})(?:,(\d{1,6}))?$)");
  std::smatch match;
  if (!std::regex_match(selector, match, cubic)) {
    throw std::invalid_argument("base must be 'tribonacci' or 'cubic:m[,n]', got '" + selector +
                                "'");
  }
  long m = std::stol(match[1].str());
  long n = match[2].matched ? std::stol(match[2].str()) : m;
  if (n < 1 || m < n) {
    throw std::invalid_argument("base requires m >= n >= 1, got '" + selector + "'");
  }
  return CubicBase(m, n);
}

CommandResult run_command(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CommandResult result;

  CLI::App app{"Exact numeration in negative cubic bases", "negabase"};
  app.require_subcommand(1);
  std::string base_text = "tribonacci";
  auto add_base = [&](CLI::App* sub) {
    sub->add_option("--base", base_text, "tribonacci or cubic:m[,n]");
  };

  auto* expand = app.add_subcommand("expand", "expansion of c0 + c1 b + c2 b^2");
  std::string coords;
  expand->add_option("coords", coords, "c0,c1,c2 (use -- before negative values)")->required();
  add_base(expand);

  auto* value = app.add_subcommand("value", "coordinates of a digit word");
  std::string word;
  value->add_option("word", word, "digit word, e.g. \"2 1 2 .\" or 212.")->required();
  add_base(value);

  auto* add_cmd = app.add_subcommand("add", "x + y");
  auto* sub_cmd = app.add_subcommand("sub", "x - y");
  std::string x_text;
  std::string y_text;
  for (auto* c : {add_cmd, sub_cmd}) {
    c->add_option("x", x_text)->required();
    c->add_option("y", y_text)->required();
    add_base(c);
  }
  auto* neg_cmd = app.add_subcommand("neg", "-x");
  neg_cmd->add_option("x", x_text)->required();
  add_base(neg_cmd);

  auto* admissible = app.add_subcommand("admissible", "admissibility of a digit sequence");
  admissible->add_option("word", word, "digits, optionally with a (..)^w tail")->required();
  add_base(admissible);

  auto* refstrings = app.add_subcommand("refstrings", "print d(l) and d*(l+1)");
  add_base(refstrings);

  auto* transducer = app.add_subcommand("transducer", "addition and subtraction transducers");
  std::string which;
  std::string export_format;
  bool validate_flag = false;
  transducer->add_option("which", which)->required()->check(
      CLI::IsMember({"build-plus", "show-minus"}));
  transducer->add_option("--export", export_format)->check(CLI::IsMember({"json", "dot"}));
  transducer->add_flag("--validate", validate_flag);

  auto* scan = app.add_subcommand("scan-fr", "fractional lengths over all pairs");
  std::size_t max_len = 0;
  unsigned threads = 0;
  scan->add_option("--max-len", max_len)->required();
  scan->add_option("--threads", threads, "0 = hardware concurrency");

  auto* addone = app.add_subcommand("addone", "trace of the add-one automaton");
  long m = 0;
  long n = 0;
  bool no_check = false;
  addone->add_option("--m", m)->required();
  addone->add_option("--n", n, "defaults to m");
  addone->add_flag("--no-check", no_check, "skip the admissibility check");
  addone->add_option("word", word)->required();

  auto* probe = app.add_subcommand("probe-finiteness", "expand a coordinate grid");
  long bound = 0;
  probe->add_option("--m", m)->required();
  probe->add_option("--n", n, "defaults to m");
  probe->add_option("--bound", bound)->required()->check(CLI::Range(0L, 20L));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    result.exit_code = app.exit(e, out, err);
    if (result.exit_code != 0) result.exit_code = kExitUsage;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  try {
    const std::size_t steps = max_steps_from_env();
    CubicBase base = [&] {
      try {
        return parse_base(base_text);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }();

    if (*expand) {
      FieldElement x = [&] {
        try {
          return parse_field_element(coords);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }();
      print_expansion(out, expansion_of(x, base, steps));
    } else if (*value) {
      out << to_string(value_of(word_arg(word), base)) << "\n";
    } else if (*add_cmd || *sub_cmd) {
      require_tribonacci(base, *add_cmd ? "add" : "sub");
      DigitWord x = word_arg(x_text);
      DigitWord y = word_arg(y_text);
      print_expansion(out, *add_cmd ? add(x, y) : subtract(x, y));
    } else if (*neg_cmd) {
      require_tribonacci(base, "neg");
      print_expansion(out, negate(word_arg(x_text)));
    } else if (*admissible) {
      EventuallyPeriodicWord w = [&] {
        try {
          return parse_sequence(word);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }();
      out << (is_admissible(w, base) ? "yes" : "no") << "\n";
    } else if (*refstrings) {
      const ReferenceStrings& r = reference_strings(base);
      out << "d(l) = " << to_string(r.lower) << "\n";
      out << "d*(l+1) = " << to_string(r.upper) << "\n";
    } else if (*transducer) {
      Transducer t = which == "build-plus" ? build_t_plus() : t_minus();
      std::ostream& report_stream = export_format.empty() ? out : err;
      if (export_format == "json") {
        out << export_json(t);
      } else if (export_format == "dot") {
        out << export_dot(t);
      } else if (!validate_flag) {
        for (const Edge& e : t.edges()) out << to_string(e) << "\n";
      }
      if (validate_flag) {
        ValidationReport r = validate(t, CubicBase::tribonacci());
        print_report(report_stream, r);
        if (!r.all_edges_valid() || !r.deterministic) result.exit_code = kExitDomain;
      }
    } else if (*scan) {
      FrScanReport r = scan_fr(max_len, threads);
      for (const auto& [fr, count] : r.histogram) out << "fr=" << fr << " count=" << count << "\n";
      out << "max=" << r.max_fr() << "\n";
      out << "max_add=" << r.max_fr_add << " max_sub=" << r.max_fr_sub
          << " max_neg=" << r.max_fr_neg << " words=" << r.words
          << " value_failures=" << r.value_failures << "\n";
      for (const FrWitness& w : r.witnesses) {
        std::size_t top = w.op == "add" ? r.max_fr_add : w.op == "sub" ? r.max_fr_sub : r.max_fr_neg;
        if (w.result.fr.value() != top) continue;
        out << "witness op=" << w.op << " fr=" << w.result.fr.to_string() << " x=" << compact(w.x);
        if (w.op != "neg") out << " y=" << compact(w.y);
        out << " result=" << compact(w.result) << "\n";
      }
    } else if (*addone) {
      CubicBase b(m, n == 0 ? m : n);
      AddOneOptions options;
      options.max_steps = steps;
      options.require_admissible = !no_check;
      out << add_one(word_arg(word), b, options).to_string();
    } else if (*probe) {
      CubicBase b(m, n == 0 ? m : n);
      ProbeReport r = finiteness_probe(b, bound, steps);
      out << "checked=" << r.checked << " finite=" << r.finite
          << " infinite=" << r.infinite.size() << " budget=" << r.budget_exceeded.size() << "\n";
      for (const ProbeWitness& w : r.infinite) {
        out << "witness x=" << to_string(w.x) << " expansion=" << w.expansion.to_string() << "\n";
      }
      for (const FieldElement& x : r.budget_exceeded) out << "budget x=" << to_string(x) << "\n";
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    result.exit_code = kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    result.exit_code = kExitDomain;
  }
  result.out = out.str();
  result.err = err.str();
  return result;
}

}  // namespace negabase::cli
