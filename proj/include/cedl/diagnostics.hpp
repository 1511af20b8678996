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

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cedl
{

enum class Severity { Error, Warning };

inline const char * to_string(Severity severity)
{
  return severity == Severity::Error ? "error" : "warning";
}

/// A finding from one of the checking stages. `code` is stable (E_UNRESOLVED_NAME, ...);
/// `declaration` names the thing the finding is about.
struct Diagnostic
{
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::string declaration;

  friend bool operator==(const Diagnostic &, const Diagnostic &) = default;
};

inline Diagnostic error(std::string code, std::string message, std::string declaration = {})
{
  return {Severity::Error, std::move(code), std::move(message), std::move(declaration)};
}

inline Diagnostic warning(std::string code, std::string message, std::string declaration = {})
{
  return {Severity::Warning, std::move(code), std::move(message), std::move(declaration)};
}

inline bool has_errors(const std::vector<Diagnostic> & diagnostics)
{
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic & d) {
    return d.severity == Severity::Error;
  });
}

/// A value together with the diagnostics produced while computing it. `value` is
/// absent iff `diagnostics` contains an error; warnings may accompany a value.
template <typename T>
struct Outcome
{
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  [[nodiscard]] bool ok() const noexcept { return value.has_value(); }

  static Outcome success(T v, std::vector<Diagnostic> warnings = {})
  {
    return {std::move(v), std::move(warnings)};
  }
  static Outcome failure(std::vector<Diagnostic> diagnostics)
  {
    return {std::nullopt, std::move(diagnostics)};
  }
  static Outcome failure(Diagnostic diagnostic) { return failure(std::vector{std::move(diagnostic)}); }
};

/// Codes that can be tested for without string typos.
namespace codes
{
inline constexpr const char * kUnresolvedName = "E_UNRESOLVED_NAME";
inline constexpr const char * kDupName = "E_DUP_NAME";
inline constexpr const char * kStubNotImplemented = "E_STUB_NOT_IMPLEMENTED";
inline constexpr const char * kUnconstrained = "E_UNCONSTRAINED";
inline constexpr const char * kSourceTypeMismatch = "E_SOURCE_TYPE_MISMATCH";
inline constexpr const char * kMeasurementKindMismatch = "E_MEASUREMENT_KIND_MISMATCH";
inline constexpr const char * kCycle = "E_CYCLE";
inline constexpr const char * kOfTypeEmpty = "E_OFTYPE_EMPTY";
inline constexpr const char * kConcurrentTPoint = "E_CONCURRENT_T_POINT";
inline constexpr const char * kBadPercent = "E_BAD_PERCENT";
inline constexpr const char * kConfigParse = "E_CONFIG_PARSE";
inline constexpr const char * kNoSuchElement = "E_NO_SUCH_ELEMENT";
inline constexpr const char * kAlreadyStub = "E_ALREADY_STUB";
inline constexpr const char * kKbParse = "E_KB_PARSE";
inline constexpr const char * kKbDanglingRef = "E_KB_DANGLING_REF";
inline constexpr const char * kKbBadRange = "E_KB_BAD_RANGE";
inline constexpr const char * kKbDupName = "E_KB_DUP_NAME";
inline constexpr const char * kKbMultiMapping = "E_KB_MULTI_MAPPING";
inline constexpr const char * kKbNameCollision = "E_KB_NAME_COLLISION";
inline constexpr const char * kLogParse = "E_LOG_PARSE";
inline constexpr const char * kBadObservation = "E_BAD_OBSERVATION";
inline constexpr const char * kBadConfig = "E_BAD_DETECTION_CONFIG";
inline constexpr const char * kParse = "E_PARSE";
}  // namespace codes

}  // namespace cedl
