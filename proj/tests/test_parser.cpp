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

#include "cedl/parser.hpp"
#include "support.hpp"

using namespace cedl;

namespace
{

std::vector<TokenKind> kinds(std::string_view text)
{
  auto r = tokenize(text);
  REQUIRE(std::holds_alternative<std::vector<Token>>(r));
  std::vector<TokenKind> out;
  for (const auto & t : std::get<std::vector<Token>>(r)) {
    out.push_back(t.kind);
  }
  return out;
}

// Recomputes line/column from the byte offset.
SourcePos position_at(std::string_view text, std::size_t offset)
{
  SourcePos p;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  p.byte_offset = offset;
  return p;
}

void check_errors_in_bounds(std::string_view text, const ParseResult & r)
{
  CHECK(r.ok() == r.errors.empty());
  for (const auto & e : r.errors) {
    REQUIRE(e.pos.byte_offset <= text.size());
    CHECK(e.pos == position_at(text, e.pos.byte_offset));
    CHECK_FALSE(e.expected.empty());
  }
}

const char * const kSnippets[] = {
  "snippets/cpu_load_critical.cedl",      "snippets/critical_server.cedl",          "snippets/web_server_stub.cedl",
  "snippets/suspicious_load.cedl", "snippets/webserver_type.cedl", "snippets/load_webserver_critical.cedl",
};

}  // namespace

TEST_CASE("tokenize")
{
  using K = TokenKind;
  CHECK(kinds("Minimum 90") == std::vector{K::KwMinimum, K::Number});
  CHECK(kinds("").empty());
  CHECK(kinds("  // only a comment\n").empty());
  CHECK(
    kinds("In (0.9, 1)") ==
    std::vector{K::KwIn, K::LParen, K::Number, K::Comma, K::Number, K::RParen});
  CHECK(kinds("T:Minimum 30") == std::vector{K::KwT, K::KwMinimum, K::Number});
  CHECK(kinds("T") == std::vector{K::Identifier});
  CHECK(kinds("@Implementation{") == std::vector{K::KwImplementation, K::LBrace});
  CHECK(kinds("EXISTS(a b).timewin(10)") ==
        std::vector{K::KwExists, K::LParen, K::Identifier, K::Identifier, K::RParen, K::Dot,
                    K::KwTimewin, K::LParen, K::Number, K::RParen});

  auto toks = std::get<std::vector<Token>>(tokenize("In (0.9, 1)"));
  CHECK(toks[2].number == 0.9);
  CHECK(toks[4].number == 1);

  auto neg = std::get<std::vector<Token>>(tokenize("Minimum -2.5"));
  CHECK(neg[1].number == -2.5);

  SUBCASE("unrecognized character")
  {
    auto r = tokenize("Event X {\n  source $\n}");
    REQUIRE(std::holds_alternative<ParseError>(r));
    const auto & e = std::get<ParseError>(r);
    CHECK(e.pos.line == 2);
    CHECK(e.pos.column == 10);
    CHECK(e.pos.byte_offset == 19);
  }
  SUBCASE("stray at-sign")
  {
    CHECK(std::holds_alternative<ParseError>(tokenize("@Impl")));
  }
}

TEST_CASE("every reserved word is a keyword")
{
  for (const char * w :
       {"Event", "ComplexEvent", "EventStub", "SourceType", "source", "sourceType", "OFTYPE",
        "implements", "extends", "actions", "Action", "of", "Type", "characteristic",
        "PercentageMeasurement", "ScalarMeasurement", "Minimum", "Maximum", "In", "EXISTS",
        "FOLLOWS", "FOLLOWS_T", "CONCURRENT", "CONCURRENT_T", "timewin"}) {
    CAPTURE(w);
    CHECK(is_keyword(w));
    CHECK(kinds(w).front() != TokenKind::Identifier);
  }
  CHECK_FALSE(is_keyword("CPULoad"));
}

TEST_CASE("reference snippets parse byte for byte")
{
  for (const char * file : kSnippets) {
    CAPTURE(file);
    auto text = test::read_fixture(file);
    auto r = parse_model(text);
    REQUIRE(r.ok());
    auto again = parse_model(pretty_print(*r.model));
    REQUIRE(again.ok());
    CHECK(*again.model == *r.model);
  }
}

TEST_CASE("CPULoadCritical structure")
{
  auto m = test::parse_ok(test::read_fixture("snippets/cpu_load_critical.cedl"));
  REQUIRE(m.events().size() == 1);
  const auto & e = m.events()[0];
  CHECK(e.name.str() == "CPULoadCritical");
  CHECK(std::get<InstanceSource>(e.source).name.str() == "Server1");
  REQUIRE(e.measurements.size() == 1);
  CHECK(e.measurements[0] ==
        MeasurementDecl{MeasurementKind::Percentage, Identifier("CPULoad"), Minimum{90}});
  CHECK(e.actions.empty());
  CHECK_FALSE(e.implements.has_value());
  auto loc = m.location_of("CPULoadCritical");
  REQUIRE(loc.has_value());
  CHECK(loc->line == 1);
  CHECK(loc->column == 7);
}

TEST_CASE("CriticalServer structure")
{
  auto m = test::parse_ok(test::read_fixture("snippets/critical_server.cedl"));
  REQUIRE(m.complex_events().size() == 1);
  const auto & c = m.complex_events()[0];
  CHECK(c.name.str() == "CriticalServer");
  auto expected = OperatorExpr::concurrent(
    {OperatorExpr::ref(Identifier("CPULoadCritical")), OperatorExpr::ref(Identifier("BackupProblem"))},
    DurationBound{DurationBound::Kind::Minimum, 30});
  CHECK(c.pattern == expected);
}

TEST_CASE("web server stub and its implementation")
{
  auto stub = test::parse_ok(test::read_fixture("snippets/web_server_stub.cedl")).stubs().at(0);
  CHECK(stub.source_type.str() == "WebServer");
  REQUIRE(stub.measurements.size() == 1);
  CHECK(stub.measurements[0].is_stub());
  REQUIRE(stub.actions.size() == 1);
  CHECK(stub.actions[0].action_type.str() == "sendWarning");

  auto ev = test::parse_ok(test::read_fixture("snippets/suspicious_load.cedl")).events().at(0);
  CHECK(ev.implements == Identifier("CriticalCPULoadOnWebServer"));
  CHECK(std::get<TypeSource>(ev.source).type_name.str() == "WebServer");
  CHECK(ev.measurements.empty());
  REQUIRE(ev.implementation.size() == 1);
  CHECK(ev.implementation[0].constraint == ValueConstraint{Minimum{90}});
}

TEST_CASE("generated Webserver declarations")
{
  auto m = test::parse_ok(test::read_fixture("snippets/webserver_type.cedl"));
  CHECK(m.source_types().at(0) ==
        SourceTypeDef{Identifier("Webserver"), TopologyElementKind::PhysicalElement});
  auto stub = test::parse_ok(test::read_fixture("snippets/load_webserver_critical.cedl")).stubs().at(0);
  CHECK(stub.characteristic == Identifier("Critical"));
  CHECK(stub.measurements.at(0) ==
        MeasurementDecl{MeasurementKind::Scalar, Identifier("WebserverCritical"), In{0.9, 1}});
}

TEST_CASE("undeclared names are a semantic matter")
{
  auto r = parse_model("Event X { source S1 }");
  REQUIRE(r.ok());
  CHECK(r.model->events().size() == 1);
}

TEST_CASE("pretty printing")
{
  CHECK(pretty_print(ModelAst{}).empty());
  auto stub = pretty_print(test::parse_ok(test::read_fixture("snippets/web_server_stub.cedl")));
  CHECK(stub.find("sourceType WebServer") != std::string::npos);

  // Normalized layout of the reference snippets.
  CHECK(pretty_print(test::parse_ok(test::read_fixture("snippets/cpu_load_critical.cedl"))) ==
        test::read_fixture("snippets/cpu_load_critical.cedl"));
  CHECK(pretty_print(test::parse_ok(test::read_fixture("snippets/load_webserver_critical.cedl"))) ==
        test::read_fixture("snippets/load_webserver_critical.cedl"));
  CHECK(pretty_print(test::parse_ok(test::read_fixture("snippets/critical_server.cedl"))) ==
        "ComplexEvent CriticalServer {\n  CONCURRENT_T(CPULoadCritical BackupProblem; T:Minimum 30)\n}\n");
}

TEST_CASE("format_number")
{
  CHECK(format_number(90) == "90");
  CHECK(format_number(0.9) == "0.9");
  CHECK(format_number(-2.5) == "-2.5");
  CHECK(format_number(1e-7) == "0.0000001");
  CHECK(format_number(0.1 + 0.2) == "0.30000000000000004");
}

TEST_CASE("operator forms")
{
  auto m = test::parse_ok(R"(
ComplexEvent P1 { EXISTS(A B C).timewin(10) }
ComplexEvent P2 { FOLLOWS_T(A B; T:Maximum 2.5) }
ComplexEvent P3 { CONCURRENT(A FOLLOWS(B C)) }
ComplexEvent P4 { CONCURRENT_T(A B; T:Maximum 5) }
ComplexEvent P5 { EXISTS(A B) }
)");
  const auto & c = m.complex_events();
  REQUIRE(c.size() == 5);
  CHECK(c[0].pattern.window == 10);
  CHECK(c[0].pattern.operands.size() == 3);
  CHECK(c[1].pattern.kind == OperatorKind::Follows);
  CHECK(c[1].pattern.window == 2.5);
  CHECK(c[2].pattern.operands[1].kind == OperatorKind::Follows);
  CHECK(c[3].pattern.duration == DurationBound{DurationBound::Kind::Maximum, 5});
  CHECK_FALSE(c[4].pattern.window.has_value());
}

TEST_CASE("syntax errors")
{
  auto first = [](std::string_view text) {
    auto r = parse_model(text);
    REQUIRE_FALSE(r.ok());
    check_errors_in_bounds(text, r);
    return r.errors.front();
  };

  SUBCASE("missing brace")
  {
    auto e = first("Event X source S }");
    CHECK(e.pos.column == 9);
    CHECK(e.found.find("source") != std::string::npos);
    CHECK(e.message.find("'{'") != std::string::npos);
  }
  SUBCASE("one operand")
  {
    CHECK(first("ComplexEvent P { FOLLOWS(A) }").message.find("two operands") != std::string::npos);
  }
  SUBCASE("In needs lo < hi")
  {
    auto e = first("Event X { source S ScalarMeasurement m In (1, 1) }");
    CHECK(e.message.find("lo < hi") != std::string::npos);
  }
  SUBCASE("implementation without implements")
  {
    first("Event X { source S @Implementation { ScalarMeasurement m Minimum 1 } }");
  }
  SUBCASE("FOLLOWS_T takes a maximum window")
  {
    first("ComplexEvent P { FOLLOWS_T(A B; T:Minimum 3) }");
  }
  SUBCASE("timewin only on EXISTS")
  {
    first("ComplexEvent P { FOLLOWS(A B).timewin(3) }");
  }
  SUBCASE("durations are positive")
  {
    first("ComplexEvent P { EXISTS(A B).timewin(0) }");
    first("ComplexEvent P { CONCURRENT_T(A B; T:Minimum -1) }");
  }
  SUBCASE("unknown topology base")
  {
    first("SourceType S extends Server");
  }
  SUBCASE("keyword used as a name")
  {
    first("Event source { source S }");
  }
  SUBCASE("duplicate declaration")
  {
    auto e = first("SourceType S extends PhysicalElement\nEventStub S { sourceType S }");
    CHECK(e.pos.line == 2);
    CHECK(e.pos.column == 11);
  }
  SUBCASE("unexpected end")
  {
    auto text = std::string("Event X { source S");
    auto e = first(text);
    CHECK(e.pos.byte_offset == text.size());
  }
}

TEST_CASE("recovery reports independent errors")
{
  std::string text =
    "Event A { source }\n"
    "Event B { source S1 }\n"
    "ComplexEvent C { FOLLOWS(A) }\n"
    "SourceType T extends PhysicalElement\n"
    "EventStub D { sourceType }\n";
  auto r = parse_model(text);
  REQUIRE_FALSE(r.ok());
  check_errors_in_bounds(text, r);
  REQUIRE(r.errors.size() == 3);
  CHECK(r.errors[0].pos.line == 1);
  CHECK(r.errors[1].pos.line == 3);
  CHECK(r.errors[2].pos.line == 5);
}

TEST_CASE("nesting limit")
{
  auto nested = [](int depth) {
    std::string s;
    for (int i = 0; i < depth; ++i) {
      s += "EXISTS(A ";
    }
    s += "B";
    for (int i = 0; i < depth; ++i) {
      s += ")";
    }
    return "ComplexEvent P { " + s + " }";
  };
  CHECK(parse_model(nested(150)).ok());
  auto deep = nested(5000);
  auto r = parse_model(deep);
  CHECK_FALSE(r.ok());
  check_errors_in_bounds(deep, r);
}

TEST_CASE("round trip over random models")
{
  std::mt19937 rng(20261015);
  test::RandomModel gen(rng);
  for (int i = 0; i < 500; ++i) {
    ModelAst m = gen.make();
    auto text = pretty_print(m);
    auto r = parse_model(text);
    CAPTURE(text);
    REQUIRE(r.ok());
    CHECK(*r.model == m);
    CHECK(pretty_print(*r.model) == text);
  }
}

TEST_CASE("parsing is total")
{
  std::mt19937 rng(7);
  std::string corpus;
  for (const char * file : kSnippets) {
    corpus += test::read_fixture(file);
  }
  corpus += "ComplexEvent P { EXISTS(A FOLLOWS_T(B C; T:Maximum 3)).timewin(4) }\n";
  std::uniform_int_distribution<int> byte(0, 255);
  for (int i = 0; i < 3000; ++i) {
    std::string text;
    if (i % 3 == 0) {
      text.resize(std::uniform_int_distribution<std::size_t>(0, 64)(rng));
      for (auto & c : text) {
        c = static_cast<char>(byte(rng));
      }
    } else {
      // Mutations of valid text reach deeper into the grammar than noise does.
      text = corpus;
      for (int k = 0, n = 1 + byte(rng) % 6; k < n; ++k) {
        std::size_t at = std::uniform_int_distribution<std::size_t>(0, text.size() - 1)(rng);
        switch (byte(rng) % 3) {
          case 0:
            text.erase(at, 1 + byte(rng) % 8);
            break;
          case 1:
            text.insert(at, 1, "{}();:.@-T 0\n"[byte(rng) % 13]);
            break;
          default:
            text[at] = static_cast<char>(byte(rng));
        }
        if (text.empty()) {
          break;
        }
      }
    }
    ParseResult r;
    CHECK_NOTHROW(r = parse_model(text));
    check_errors_in_bounds(text, r);
    if (r.ok()) {
      auto again = parse_model(pretty_print(*r.model));
      REQUIRE(again.ok());
      CHECK(*again.model == *r.model);
    }
  }
}
