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

#include "cedl/parser.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <system_error>
#include <utility>

namespace cedl
{

namespace
{

struct KeywordEntry
{
  std::string_view word;
  TokenKind kind;
};

constexpr std::array kKeywords{
  KeywordEntry{"Event", TokenKind::KwEvent},
  KeywordEntry{"ComplexEvent", TokenKind::KwComplexEvent},
  KeywordEntry{"EventStub", TokenKind::KwEventStub},
  KeywordEntry{"SourceType", TokenKind::KwSourceType},
  KeywordEntry{"source", TokenKind::KwSource},
  KeywordEntry{"sourceType", TokenKind::KwSourceTypeField},
  KeywordEntry{"OFTYPE", TokenKind::KwOfType},
  KeywordEntry{"implements", TokenKind::KwImplements},
  KeywordEntry{"extends", TokenKind::KwExtends},
  KeywordEntry{"actions", TokenKind::KwActions},
  KeywordEntry{"Action", TokenKind::KwAction},
  KeywordEntry{"of", TokenKind::KwOf},
  KeywordEntry{"Type", TokenKind::KwType},
  KeywordEntry{"characteristic", TokenKind::KwCharacteristic},
  KeywordEntry{"PercentageMeasurement", TokenKind::KwPercentageMeasurement},
  KeywordEntry{"ScalarMeasurement", TokenKind::KwScalarMeasurement},
  KeywordEntry{"Minimum", TokenKind::KwMinimum},
  KeywordEntry{"Maximum", TokenKind::KwMaximum},
  KeywordEntry{"In", TokenKind::KwIn},
  KeywordEntry{"EXISTS", TokenKind::KwExists},
  KeywordEntry{"FOLLOWS", TokenKind::KwFollows},
  KeywordEntry{"FOLLOWS_T", TokenKind::KwFollowsT},
  KeywordEntry{"CONCURRENT", TokenKind::KwConcurrent},
  KeywordEntry{"CONCURRENT_T", TokenKind::KwConcurrentT},
  KeywordEntry{"timewin", TokenKind::KwTimewin},
};

constexpr std::size_t kMaxNesting = 200;

bool is_ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_continue(char c) { return is_ident_start(c) || is_digit(c); }

std::string describe_char(unsigned char c)
{
  if (c >= 0x20 && c < 0x7f) {
    return std::string("character '") + static_cast<char>(c) + "'";
  }
  static constexpr char kHex[] = "0123456789abcdef";
  return std::string("byte 0x") + kHex[c >> 4] + kHex[c & 0xf];
}

std::string join_expected(const std::vector<std::string> & expected)
{
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) {
      out += (i + 1 == expected.size()) ? " or " : ", ";
    }
    out += expected[i];
  }
  return out;
}

class Lexer
{
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::variant<std::vector<Token>, ParseError> run()
  {
    std::vector<Token> tokens;
    while (true) {
      skip_trivia();
      if (at_end()) {
        return tokens;
      }
      auto token = next();
      if (!token) {
        return error_;
      }
      tokens.push_back(std::move(*token));
    }
  }

private:
  [[nodiscard]] bool at_end() const { return offset_ >= text_.size(); }
  [[nodiscard]] char peek(std::size_t ahead = 0) const
  {
    return offset_ + ahead < text_.size() ? text_[offset_ + ahead] : '\0';
  }

  void advance()
  {
    if (text_[offset_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++offset_;
  }

  [[nodiscard]] SourcePos here() const { return {line_, column_, offset_}; }

  void skip_trivia()
  {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') {
          advance();
        }
      } else {
        return;
      }
    }
  }

  std::optional<Token> fail(SourcePos pos, std::string found)
  {
    error_.pos = pos;
    error_.expected = {"identifier", "number", "punctuation"};
    error_.found = std::move(found);
    error_.message = "unrecognized " + error_.found + "; expected " + join_expected(error_.expected);
    return std::nullopt;
  }

  std::optional<Token> next()
  {
    const SourcePos start = here();
    const char c = peek();

    auto single = [&](TokenKind kind) {
      advance();
      return Token{kind, std::string(1, c), 0, start};
    };
    switch (c) {
      case '{':
        return single(TokenKind::LBrace);
      case '}':
        return single(TokenKind::RBrace);
      case '(':
        return single(TokenKind::LParen);
      case ')':
        return single(TokenKind::RParen);
      case ',':
        return single(TokenKind::Comma);
      case ';':
        return single(TokenKind::Semicolon);
      case '.':
        return single(TokenKind::Dot);
      default:
        break;
    }

    if (c == '@') {
      constexpr std::string_view kImpl = "@Implementation";
      if (text_.substr(offset_, kImpl.size()) == kImpl && !is_ident_continue(peek(kImpl.size()))) {
        for (std::size_t i = 0; i < kImpl.size(); ++i) {
          advance();
        }
        return Token{TokenKind::KwImplementation, std::string(kImpl), 0, start};
      }
      return fail(start, describe_char('@'));
    }

    if (is_digit(c) || (c == '-' && is_digit(peek(1)))) {
      return number(start);
    }

    if (is_ident_start(c)) {
      while (!at_end() && is_ident_continue(peek())) {
        advance();
      }
      std::string word(text_.substr(start.byte_offset, offset_ - start.byte_offset));
      if (word == "T" && peek() == ':') {
        advance();
        return Token{TokenKind::KwT, "T:", 0, start};
      }
      for (const auto & kw : kKeywords) {
        if (kw.word == word) {
          return Token{kw.kind, std::move(word), 0, start};
        }
      }
      return Token{TokenKind::Identifier, std::move(word), 0, start};
    }

    return fail(start, describe_char(static_cast<unsigned char>(c)));
  }

  std::optional<Token> number(SourcePos start)
  {
    if (peek() == '-') {
      advance();
    }
    while (is_digit(peek())) {
      advance();
    }
    if (peek() == '.' && is_digit(peek(1))) {
      advance();
      while (is_digit(peek())) {
        advance();
      }
    }
    std::string lexeme(text_.substr(start.byte_offset, offset_ - start.byte_offset));
    double value = 0;
    auto [ptr, ec] = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), value);
    if (ec != std::errc{} || ptr != lexeme.data() + lexeme.size() || !std::isfinite(value)) {
      return fail(start, "number '" + lexeme + "' out of range");
    }
    return Token{TokenKind::Number, std::move(lexeme), value, start};
  }

  std::string_view text_;
  std::size_t offset_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  ParseError error_;
};

/// Thrown inside the parser to unwind to the enclosing declaration.
struct SyntaxError
{
};

class Parser
{
public:
  Parser(std::vector<Token> tokens, SourcePos end_pos) : tokens_(std::move(tokens))
  {
    tokens_.push_back(Token{TokenKind::End, "", 0, end_pos});
  }

  ParseResult run()
  {
    ModelAst model;
    while (peek().kind != TokenKind::End) {
      const std::size_t start = pos_;
      try {
        declaration(model);
      } catch (const SyntaxError &) {
        synchronize(start);
      }
    }
    if (!errors_.empty()) {
      return {std::nullopt, std::move(errors_)};
    }
    return {std::move(model), {}};
  }

private:
  [[nodiscard]] const Token & peek() const { return tokens_[pos_]; }

  const Token & take()
  {
    const Token & t = tokens_[pos_];
    if (t.kind != TokenKind::End) {
      ++pos_;
    }
    return t;
  }

  [[noreturn]] void fail(std::vector<std::string> expected, const Token & at, std::string detail = {})
  {
    ParseError err;
    err.pos = at.pos;
    err.expected = std::move(expected);
    err.found = describe_token(at);
    err.message = "expected " + join_expected(err.expected) + ", found " + err.found;
    if (!detail.empty()) {
      err.message += " (" + detail + ")";
    }
    errors_.push_back(std::move(err));
    throw SyntaxError{};
  }

  static std::string describe_token(const Token & t)
  {
    switch (t.kind) {
      case TokenKind::Identifier:
        return "identifier '" + t.text + "'";
      case TokenKind::Number:
        return "number " + t.text;
      case TokenKind::End:
        return "end of input";
      default:
        return describe(t.kind);
    }
  }

  const Token & expect(TokenKind kind)
  {
    if (peek().kind != kind) {
      fail({describe(kind)}, peek());
    }
    return take();
  }

  bool accept(TokenKind kind)
  {
    if (peek().kind == kind) {
      take();
      return true;
    }
    return false;
  }

  Identifier identifier()
  {
    return Identifier(expect(TokenKind::Identifier).text);
  }

  double number() { return expect(TokenKind::Number).number; }

  double positive_duration()
  {
    const Token & t = peek();
    double v = number();
    if (!(v > 0)) {
      fail({"positive duration"}, t);
    }
    return v;
  }

  static bool starts_declaration(TokenKind kind)
  {
    return kind == TokenKind::KwSourceType || kind == TokenKind::KwEventStub ||
           kind == TokenKind::KwEvent || kind == TokenKind::KwComplexEvent;
  }

  // Skips to the next declaration keyword, always making progress past `start`.
  void synchronize(std::size_t start)
  {
    if (pos_ == start) {
      take();
    }
    while (peek().kind != TokenKind::End && !starts_declaration(peek().kind)) {
      take();
    }
  }

  template <typename Decl>
  void insert(ModelAst & model, Decl decl, const Token & name_token)
  {
    try {
      model.add(std::move(decl));
    } catch (const DuplicateNameError &) {
      pos_ = static_cast<std::size_t>(&name_token - tokens_.data());
      fail({"unique declaration name"}, name_token, "name already declared");
    }
    model.set_location(name_token.text, {name_token.pos.line, name_token.pos.column});
  }

  void declaration(ModelAst & model)
  {
    switch (peek().kind) {
      case TokenKind::KwSourceType:
        source_type(model);
        return;
      case TokenKind::KwEventStub:
        event_stub(model);
        return;
      case TokenKind::KwEvent:
        event(model);
        return;
      case TokenKind::KwComplexEvent:
        complex_event(model);
        return;
      default:
        fail({"'SourceType'", "'EventStub'", "'Event'", "'ComplexEvent'"}, peek());
    }
  }

  void source_type(ModelAst & model)
  {
    expect(TokenKind::KwSourceType);
    const Token & name = expect(TokenKind::Identifier);
    expect(TokenKind::KwExtends);
    const Token & base = peek();
    auto kind = topology_kind_from_string(base.text);
    if (base.kind != TokenKind::Identifier || !kind) {
      fail({"'TopologyElement'", "'PhysicalElement'", "'LogicalElement'"}, base);
    }
    take();
    insert(model, SourceTypeDef{Identifier(name.text), *kind}, name);
  }

  void event_stub(ModelAst & model)
  {
    expect(TokenKind::KwEventStub);
    const Token & name = expect(TokenKind::Identifier);
    expect(TokenKind::LBrace);
    expect(TokenKind::KwSourceTypeField);
    EventStubDef stub{Identifier(name.text), identifier(), std::nullopt, {}, {}};
    if (accept(TokenKind::KwCharacteristic)) {
      stub.characteristic = identifier();
    }
    measurements(stub.measurements);
    if (peek().kind == TokenKind::KwActions) {
      actions(stub.actions);
    }
    if (peek().kind != TokenKind::RBrace) {
      fail({"'PercentageMeasurement'", "'ScalarMeasurement'", "'actions'", "'}'"}, peek());
    }
    take();
    insert(model, std::move(stub), name);
  }

  void event(ModelAst & model)
  {
    expect(TokenKind::KwEvent);
    const Token & name = expect(TokenKind::Identifier);
    std::optional<Identifier> implements;
    if (accept(TokenKind::KwImplements)) {
      implements = identifier();
    }
    expect(TokenKind::LBrace);
    expect(TokenKind::KwSource);
    SourceRef source = accept(TokenKind::KwOfType) ? SourceRef{TypeSource{identifier()}}
                                                   : SourceRef{InstanceSource{identifier()}};
    EventDef ev{Identifier(name.text), std::move(source), {}, {}, std::move(implements), {}};
    measurements(ev.measurements);
    if (peek().kind == TokenKind::KwImplementation) {
      if (!ev.implements) {
        fail({"'actions'", "'}'"}, peek(), "@Implementation requires 'implements'");
      }
      take();
      expect(TokenKind::LBrace);
      measurements(ev.implementation);
      if (peek().kind != TokenKind::RBrace) {
        fail({"'PercentageMeasurement'", "'ScalarMeasurement'", "'}'"}, peek());
      }
      take();
    }
    if (peek().kind == TokenKind::KwActions) {
      actions(ev.actions);
    }
    if (peek().kind != TokenKind::RBrace) {
      fail(
        {"'PercentageMeasurement'", "'ScalarMeasurement'", "'@Implementation'", "'actions'", "'}'"},
        peek());
    }
    take();
    insert(model, std::move(ev), name);
  }

  void measurements(std::vector<MeasurementDecl> & out)
  {
    while (peek().kind == TokenKind::KwPercentageMeasurement ||
           peek().kind == TokenKind::KwScalarMeasurement) {
      const auto kind = take().kind == TokenKind::KwPercentageMeasurement
                          ? MeasurementKind::Percentage
                          : MeasurementKind::Scalar;
      MeasurementDecl decl{kind, identifier(), std::nullopt};
      decl.constraint = constraint();
      out.push_back(std::move(decl));
    }
  }

  std::optional<ValueConstraint> constraint()
  {
    if (accept(TokenKind::KwMinimum)) {
      return Minimum{number()};
    }
    if (accept(TokenKind::KwMaximum)) {
      return Maximum{number()};
    }
    if (accept(TokenKind::KwIn)) {
      expect(TokenKind::LParen);
      const double lo = number();
      expect(TokenKind::Comma);
      const Token & hi_token = peek();
      const double hi = number();
      if (!(lo < hi)) {
        fail({"number greater than " + format_number(lo)}, hi_token, "In requires lo < hi");
      }
      expect(TokenKind::RParen);
      return In{lo, hi};
    }
    return std::nullopt;
  }

  void actions(std::vector<ActionDecl> & out)
  {
    expect(TokenKind::KwActions);
    expect(TokenKind::LBrace);
    while (accept(TokenKind::KwAction)) {
      expect(TokenKind::KwOf);
      expect(TokenKind::KwType);
      out.push_back(ActionDecl{identifier()});
    }
    if (peek().kind != TokenKind::RBrace) {
      fail({"'Action'", "'}'"}, peek());
    }
    take();
  }

  void complex_event(ModelAst & model)
  {
    expect(TokenKind::KwComplexEvent);
    const Token & name = expect(TokenKind::Identifier);
    expect(TokenKind::LBrace);
    OperatorExpr pattern = operator_expr(0);
    expect(TokenKind::RBrace);
    insert(model, ComplexEventDef{Identifier(name.text), std::move(pattern)}, name);
  }

  static bool starts_operator(TokenKind kind)
  {
    return kind == TokenKind::KwExists || kind == TokenKind::KwFollows ||
           kind == TokenKind::KwFollowsT || kind == TokenKind::KwConcurrent ||
           kind == TokenKind::KwConcurrentT;
  }

  OperatorExpr operator_expr(std::size_t depth)
  {
    if (depth >= kMaxNesting) {
      fail({"identifier"}, peek(), "operator nesting too deep");
    }
    const Token & head = peek();
    if (!starts_operator(head.kind)) {
      fail({"'EXISTS'", "'FOLLOWS'", "'FOLLOWS_T'", "'CONCURRENT'", "'CONCURRENT_T'"}, head);
    }
    const TokenKind op = take().kind;
    expect(TokenKind::LParen);
    auto ops = operands(depth);

    switch (op) {
      case TokenKind::KwExists: {
        expect(TokenKind::RParen);
        std::optional<double> timewin;
        if (accept(TokenKind::Dot)) {
          expect(TokenKind::KwTimewin);
          expect(TokenKind::LParen);
          timewin = positive_duration();
          expect(TokenKind::RParen);
        }
        return OperatorExpr::exists(std::move(ops), timewin);
      }
      case TokenKind::KwFollows:
        expect(TokenKind::RParen);
        return OperatorExpr::follows(std::move(ops));
      case TokenKind::KwFollowsT: {
        expect(TokenKind::Semicolon);
        expect(TokenKind::KwT);
        if (peek().kind != TokenKind::KwMaximum) {
          fail({"'Maximum'"}, peek(), "FOLLOWS_T takes a window length 'T:Maximum <seconds>'");
        }
        take();
        const double window = positive_duration();
        expect(TokenKind::RParen);
        return OperatorExpr::follows(std::move(ops), window);
      }
      case TokenKind::KwConcurrent:
        expect(TokenKind::RParen);
        return OperatorExpr::concurrent(std::move(ops));
      default: {
        expect(TokenKind::Semicolon);
        expect(TokenKind::KwT);
        DurationBound bound;
        if (accept(TokenKind::KwMinimum)) {
          bound.kind = DurationBound::Kind::Minimum;
        } else if (accept(TokenKind::KwMaximum)) {
          bound.kind = DurationBound::Kind::Maximum;
        } else {
          fail({"'Minimum'", "'Maximum'"}, peek());
        }
        bound.seconds = positive_duration();
        expect(TokenKind::RParen);
        return OperatorExpr::concurrent(std::move(ops), bound);
      }
    }
  }

  std::vector<OperatorExpr> operands(std::size_t depth)
  {
    std::vector<OperatorExpr> out;
    while (true) {
      const TokenKind kind = peek().kind;
      if (kind == TokenKind::Identifier) {
        out.push_back(OperatorExpr::ref(Identifier(take().text)));
      } else if (starts_operator(kind)) {
        out.push_back(operator_expr(depth + 1));
      } else {
        break;
      }
    }
    if (out.size() < 2) {
      fail({"identifier", "operator"}, peek(), "operators take at least two operands");
    }
    return out;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<ParseError> errors_;
};

SourcePos end_position(std::string_view text)
{
  SourcePos pos;
  for (char c : text) {
    if (c == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  pos.byte_offset = text.size();
  return pos;
}

// ----------------------------------------------------------------------------
// Printing
// ----------------------------------------------------------------------------

void print_constraint(std::ostream & os, const ValueConstraint & c)
{
  if (const auto * min = std::get_if<Minimum>(&c)) {
    os << " Minimum " << format_number(min->value);
  } else if (const auto * max = std::get_if<Maximum>(&c)) {
    os << " Maximum " << format_number(max->value);
  } else {
    const auto & in = std::get<In>(c);
    os << " In (" << format_number(in.lo) << ", " << format_number(in.hi) << ")";
  }
}

void print_measurements(
  std::ostream & os, const std::vector<MeasurementDecl> & ms, std::string_view indent)
{
  for (const auto & m : ms) {
    os << indent << to_string(m.kind) << ' ' << m.name;
    if (m.constraint) {
      print_constraint(os, *m.constraint);
    }
    os << '\n';
  }
}

void print_actions(std::ostream & os, const std::vector<ActionDecl> & actions)
{
  if (actions.empty()) {
    return;
  }
  os << "  actions {\n";
  for (const auto & a : actions) {
    os << "    Action of Type " << a.action_type << '\n';
  }
  os << "  }\n";
}

void print_operator(std::ostream & os, const OperatorExpr & e)
{
  if (e.is_ref()) {
    os << *e.event;
    return;
  }
  os << operator_keyword(e) << '(';
  for (std::size_t i = 0; i < e.operands.size(); ++i) {
    if (i > 0) {
      os << ' ';
    }
    print_operator(os, e.operands[i]);
  }
  if (e.kind == OperatorKind::Follows && e.window) {
    os << "; T:Maximum " << format_number(*e.window);
  }
  if (e.kind == OperatorKind::Concurrent && e.duration) {
    os << "; T:" << (e.duration->kind == DurationBound::Kind::Minimum ? "Minimum " : "Maximum ")
       << format_number(e.duration->seconds);
  }
  os << ')';
  if (e.kind == OperatorKind::Exists && e.window) {
    os << ".timewin(" << format_number(*e.window) << ')';
  }
}

}  // namespace

bool is_keyword(std::string_view word)
{
  for (const auto & kw : kKeywords) {
    if (kw.word == word) {
      return true;
    }
  }
  return false;
}

std::string describe(TokenKind kind)
{
  switch (kind) {
    case TokenKind::Identifier:
      return "identifier";
    case TokenKind::Number:
      return "number";
    case TokenKind::KwImplementation:
      return "'@Implementation'";
    case TokenKind::KwT:
      return "'T:'";
    case TokenKind::LBrace:
      return "'{'";
    case TokenKind::RBrace:
      return "'}'";
    case TokenKind::LParen:
      return "'('";
    case TokenKind::RParen:
      return "')'";
    case TokenKind::Comma:
      return "','";
    case TokenKind::Semicolon:
      return "';'";
    case TokenKind::Dot:
      return "'.'";
    case TokenKind::End:
      return "end of input";
    default:
      break;
  }
  for (const auto & kw : kKeywords) {
    if (kw.kind == kind) {
      return "'" + std::string(kw.word) + "'";
    }
  }
  return "token";
}

std::variant<std::vector<Token>, ParseError> tokenize(std::string_view text)
{
  return Lexer(text).run();
}

ParseResult parse_model(std::string_view text)
{
  auto lexed = tokenize(text);
  if (auto * err = std::get_if<ParseError>(&lexed)) {
    return {std::nullopt, {std::move(*err)}};
  }
  return Parser(std::get<std::vector<Token>>(std::move(lexed)), end_position(text)).run();
}

std::string format_number(double value)
{
  std::array<char, 512> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed);
  if (ec != std::errc{}) {
    return "0";
  }
  return std::string(buf.data(), ptr);
}

std::string pretty_print(const ModelAst & model)
{
  std::ostringstream os;
  bool first = true;
  auto separate = [&] {
    if (!first) {
      os << '\n';
    }
    first = false;
  };

  for (const auto & st : model.source_types()) {
    separate();
    os << "SourceType " << st.name << " extends " << to_string(st.extends) << '\n';
  }
  for (const auto & stub : model.stubs()) {
    separate();
    os << "EventStub " << stub.name << " {\n";
    os << "  sourceType " << stub.source_type << '\n';
    if (stub.characteristic) {
      os << "  characteristic " << *stub.characteristic << '\n';
    }
    print_measurements(os, stub.measurements, "  ");
    print_actions(os, stub.actions);
    os << "}\n";
  }
  for (const auto & ev : model.events()) {
    separate();
    os << "Event " << ev.name;
    if (ev.implements) {
      os << " implements " << *ev.implements;
    }
    os << " {\n";
    if (const auto * inst = std::get_if<InstanceSource>(&ev.source)) {
      os << "  source " << inst->name << '\n';
    } else {
      os << "  source OFTYPE " << std::get<TypeSource>(ev.source).type_name << '\n';
    }
    print_measurements(os, ev.measurements, "  ");
    if (!ev.implementation.empty()) {
      os << "  @Implementation {\n";
      print_measurements(os, ev.implementation, "    ");
      os << "  }\n";
    }
    print_actions(os, ev.actions);
    os << "}\n";
  }
  for (const auto & ce : model.complex_events()) {
    separate();
    os << "ComplexEvent " << ce.name << " {\n  ";
    print_operator(os, ce.pattern);
    os << "\n}\n";
  }
  return os.str();
}

}  // namespace cedl
