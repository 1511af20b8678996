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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cedl/model.hpp"

namespace cedl
{

struct SourcePos
{
  std::size_t line = 1;         // 1-based
  std::size_t column = 1;       // 1-based, in bytes
  std::size_t byte_offset = 0;  // 0-based

  friend bool operator==(const SourcePos &, const SourcePos &) = default;
};

struct ParseError
{
  SourcePos pos;
  std::vector<std::string> expected;
  std::string found;
  std::string message;
};

enum class TokenKind {
  Identifier,
  Number,
  KwEvent,
  KwComplexEvent,
  KwEventStub,
  KwSourceType,       // SourceType
  KwSource,           // source
  KwSourceTypeField,  // sourceType
  KwOfType,
  KwImplements,
  KwExtends,
  KwActions,
  KwAction,
  KwOf,
  KwType,
  KwCharacteristic,
  KwPercentageMeasurement,
  KwScalarMeasurement,
  KwMinimum,
  KwMaximum,
  KwIn,
  KwExists,
  KwFollows,
  KwFollowsT,
  KwConcurrent,
  KwConcurrentT,
  KwTimewin,
  KwImplementation,  // @Implementation
  KwT,               // T:
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  Semicolon,
  Dot,
  End,
};

struct Token
{
  TokenKind kind = TokenKind::End;
  std::string text;
  double number = 0;  // valid for TokenKind::Number
  SourcePos pos;
};

/// True for every reserved word of the language.
bool is_keyword(std::string_view word);

/// Human-readable description of a token kind, e.g. `'{'` or `identifier`.
std::string describe(TokenKind kind);

/// Splits `text` into tokens. Whitespace and `//` comments are dropped; no End token
/// is appended.
std::variant<std::vector<Token>, ParseError> tokenize(std::string_view text);

struct ParseResult
{
  std::optional<ModelAst> model;
  std::vector<ParseError> errors;

  [[nodiscard]] bool ok() const noexcept { return model.has_value(); }
};

/// Parses a complete CEDL document. Recovers at declaration boundaries so that one
/// call reports every independent syntax error.
ParseResult parse_model(std::string_view text);

/// Renders `model` as CEDL text that parses back to an equal ModelAst.
std::string pretty_print(const ModelAst & model);

/// Shortest decimal rendering of `value` without an exponent ("90", "0.9").
std::string format_number(double value);

}  // namespace cedl
