/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cedl/codegen.hpp"
#include "support.hpp"

using namespace cedl;

namespace
{

CompiledModel golden_model(const char * name, const char * config)
{
  return test::compile_ok(test::read_fixture(std::string("golden/") + name + ".cedl"),
                          test::read_fixture(std::string("golden/") + config + ".json"));
}

std::size_t occurrences(std::string_view text, std::string_view needle)
{
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string_view::npos; at = text.find(needle, at + 1)) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("CPULoadCritical filter statement")
{
  auto units = generate(golden_model("cpu_load", "cpu_load"));
  REQUIRE(units.size() == 1);
  CHECK(units[0].statement_name.str() == "CPULoadCritical");
  CHECK(units[0].text == "insert into CPULoadCritical select * from Observation(source='Server1', CPULoad >= 90)");
  CHECK(units[0].supported);
  CHECK_FALSE(units[0].note.has_value());
}

TEST_CASE("CriticalServer is declared unsupported")
{
  auto model = test::compile_ok(test::read_fixture("corpus/types.cedl") + test::read_fixture("snippets/cpu_load_critical.cedl") +
                                  test::read_fixture("corpus/backup.cedl") + test::read_fixture("snippets/critical_server.cedl"),
                                test::read_fixture("corpus/config.json"));
  auto units = generate(model);
  REQUIRE(units.size() == 3);
  const auto & u = units[2];
  CHECK(u.statement_name.str() == "CriticalServer");
  CHECK_FALSE(u.supported);
  REQUIRE(u.note.has_value());
  CHECK(u.note->find("interval concurrency") != std::string::npos);
  CHECK(u.text.rfind("-- unsupported: ", 0) == 0);
}

TEST_CASE("pattern statements")
{
  auto pattern = [](std::string_view p) {
    auto units = generate(test::engine_model(p));
    REQUIRE(units.size() == 4);
    return units[3];
  };
  CHECK(pattern("FOLLOWS_T(A B; T:Maximum 10)").text.find("every A -> B where timer:within(10 sec)") !=
        std::string::npos);
  CHECK(pattern("FOLLOWS(A B C)").text == "insert into P select * from pattern [every A -> B -> C]");
  CHECK(pattern("EXISTS(A B)").text == "insert into P select * from pattern [every (A and B)]");
  CHECK(pattern("EXISTS(A B).timewin(2.5)").text ==
        "insert into P select * from pattern [every (A and B) where timer:within(2.5 sec)]");
  CHECK(pattern("FOLLOWS(A FOLLOWS(B C))").text == "insert into P select * from pattern [every A -> (B -> C)]");
  CHECK_FALSE(pattern("EXISTS(A CONCURRENT(B C))").supported);
  CHECK_FALSE(pattern("CONCURRENT_T(A B; T:Maximum 3)").supported);
}

TEST_CASE("constraint clauses")
{
  auto units = generate(test::engine_model("EXISTS(A B)"));
  CHECK(units[0].text == "insert into A select * from Observation(source='s0', x >= 5)");
  CHECK(units[1].text == "insert into B select * from Observation(source='s1', y <= 4)");
  CHECK(units[2].text == "insert into C select * from Observation(source='s0', y between 3 and 7)");
}

TEST_CASE("families with no instances cannot be generated")
{
  auto model = test::compile_ok(std::string(test::kEngineBase) +
                                  "SourceType Spare extends LogicalElement\n"
                                  "Event Idle { source OFTYPE Spare ScalarMeasurement x Maximum 1 }\n"
                                  "ComplexEvent P { FOLLOWS(A Idle) }\n",
                                test::kEngineConfig);
  auto units = generate(model);
  REQUIRE(units.size() == 4);
  CHECK_FALSE(units.back().supported);
  CHECK(units.back().note->find("Idle") != std::string::npos);
}

TEST_CASE("render_epl layout")
{
  CHECK(render_epl({}).empty());
  std::vector<GeneratedUnit> units{{Identifier("A"), "x", true, {}}, {Identifier("B"), "-- unsupported: y", false, "y"}};
  CHECK(render_epl(units) == "-- name: A\nx\n\n-- name: B\n-- unsupported: y\n");
}

TEST_CASE("golden files")
{
  CHECK(render_epl(generate(golden_model("cpu_load", "cpu_load"))) == test::read_fixture("golden/cpu_load.epl"));
  CHECK(render_epl(generate(golden_model("patterns", "config"))) == test::read_fixture("golden/patterns.epl"));
}

TEST_CASE("generation is total, deterministic and faithful to constraints")
{
  std::mt19937 rng(77);
  for (int round = 0; round < 200; ++round) {
    auto model = test::engine_model(test::random_pattern(rng, true));
    auto a = generate(model);
    auto b = generate(model);
    CHECK(a == b);
    CHECK(render_epl(a) == render_epl(b));
    REQUIRE(a.size() == model.atomic_events.size() + model.complex_events.size());
    for (std::size_t i = 0; i < model.complex_events.size(); ++i) {
      const auto & u = a[model.atomic_events.size() + i];
      CHECK(u.statement_name == model.complex_events[i].name);
      CHECK(u.supported != u.note.has_value());
      CHECK_FALSE(u.text.empty());
    }
  }

  // Every constraint shows up exactly once in its own statement.
  for (int round = 0; round < 200; ++round) {
    std::uniform_int_distribution<int> v(-500, 500);
    std::string text = "SourceType H extends PhysicalElement\nEvent E { source h";
    std::vector<std::string> clauses;
    for (int k = 0, n = 1 + round % 4; k < n; ++k) {
      const std::string name = "m" + std::to_string(k);
      const double lo = v(rng) / 4.0;
      switch ((round + k) % 3) {
        case 0:
          text += " ScalarMeasurement " + name + " Minimum " + format_number(lo);
          clauses.push_back(name + " >= " + format_number(lo));
          break;
        case 1:
          text += " ScalarMeasurement " + name + " Maximum " + format_number(lo);
          clauses.push_back(name + " <= " + format_number(lo));
          break;
        default:
          text += " ScalarMeasurement " + name + " In (" + format_number(lo) + ", " + format_number(lo + 3) + ")";
          clauses.push_back(name + " between " + format_number(lo) + " and " + format_number(lo + 3));
      }
    }
    text += " }\n";
    auto units = generate(test::compile_ok(text, R"({"instances":[{"name":"h","type":"H"}]})"));
    REQUIRE(units.size() == 1);
    for (const auto & c : clauses) {
      CAPTURE(c);
      CHECK(occurrences(units[0].text, c) == 1);
    }
  }
}
