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

#include <string>
#include <vector>

#include "doctest.h"
#include "negabase/cli.hpp"

namespace negabase::cli {
namespace {

CommandResult run(std::vector<std::string> args) { return run_command(args); }

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

TEST_CASE("expand and value") {
  CommandResult r = run({"expand", "2,-1,2"});
  CHECK(r.exit_code == kExitOk);
  CHECK(r.out == "1 1 1 1 0 . 0 1 1 0 0 1\nfr=6\n");
  CHECK(run({"value", "11110.011001"}).out == "2,-1,2\n");
  CHECK(run({"expand", "--", "-1,0,0", "--base", "cubic:2"}).exit_code == kExitUsage);
  CHECK(first_line(run({"expand", "--base", "cubic:2", "--", "-1,0,0"}).out) == "1 2 . 0 0 2");
}

TEST_CASE("expand output feeds value") {
  for (std::string coords : {"0,0,0", "3,1,-2", "-1,1,1"}) {
    CommandResult e = run({"expand", coords});
    REQUIRE(e.exit_code == kExitOk);
    CommandResult v = run({"value", first_line(e.out)});
    CHECK(v.exit_code == kExitOk);
    CHECK(v.out == coords + "\n");
  }
}

TEST_CASE("arithmetic commands") {
  CHECK(first_line(run({"add", "101", "111"}).out) == "1 1 1 1 0 . 0 1 1 0 0 1");
  CHECK(run({"neg", "1"}).out == "1 1 . 0 0 1\nfr=3\n");
  CHECK(first_line(run({"sub", "1", "1"}).out) == "0 .");
  CHECK(run({"add", "1010", "101"}).exit_code == kExitDomain);
  CHECK(run({"add", "1", "1", "--base", "cubic:2"}).exit_code == kExitDomain);
}

TEST_CASE("admissibility and reference strings") {
  CHECK(run({"admissible", "11110"}).out == "yes\n");
  CommandResult no = run({"admissible", "1010"});
  CHECK(no.out == "no\n");
  CHECK(run({"refstrings", "--base", "cubic:2"}).out ==
        "d(l) = 2 0 (2)^w\nd*(l+1) = 0 2 0 (2)^w\n");
}

TEST_CASE("transducer export") {
  CommandResult r = run({"transducer", "show-minus", "--export", "json"});
  CHECK(r.exit_code == kExitOk);
  CHECK(r.out.find("\"policy\"") != std::string::npos);
  CHECK(run({"transducer", "build-plus", "--validate"}).exit_code == kExitOk);
  CHECK(run({"transducer", "show-nothing"}).exit_code == kExitUsage);
}

TEST_CASE("addone and probe") {
  CommandResult r = run({"addone", "--m", "2", "--n", "2", "--no-check", "10202.12012"});
  CHECK(r.exit_code == kExitOk);
  CHECK(r.out.find("STOP | state=Q_9 | window=1,0,2") != std::string::npos);
  CHECK(run({"addone", "--m", "2", "--n", "2", "10202.10022"}).exit_code == kExitDomain);
  CommandResult p = run({"probe-finiteness", "--m", "2", "--n", "1", "--bound", "1"});
  CHECK(p.exit_code == kExitOk);
  CHECK(p.out.rfind("checked=27 ", 0) == 0);
  CHECK(run({"probe-finiteness", "--bound", "99"}).exit_code == kExitUsage);
}

TEST_CASE("usage errors") {
  CHECK(run({}).exit_code == kExitUsage);
  CHECK(run({"bogus"}).exit_code == kExitUsage);
  CHECK(run({"expand"}).exit_code == kExitUsage);
  CHECK(run({"expand", "1,2"}).exit_code != kExitOk);
  CHECK(run({"expand", "1,0,0", "--base", "cubic:1,2"}).exit_code != kExitOk);
}

TEST_CASE("base selectors") {
  CHECK(parse_base("tribonacci") == CubicBase(1, 1));
  CHECK(parse_base("cubic:2") == CubicBase(2, 2));
  CHECK(parse_base("cubic:3,1") == CubicBase(3, 1));
  CHECK_THROWS_AS(parse_base("cubic:"), std::invalid_argument);
  CHECK_THROWS_AS(parse_base("quartic:1"), std::invalid_argument);
}

}  // namespace
}  // namespace negabase::cli
