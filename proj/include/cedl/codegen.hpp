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

#include <optional>
#include <string>
#include <vector>

#include "cedl/model.hpp"
#include "cedl/semantics.hpp"

namespace cedl
{

/// One EPL statement. Unsupported units hold a comment instead of a statement and a
/// note saying why.
struct GeneratedUnit
{
  Identifier statement_name;
  std::string text;
  bool supported = true;
  std::optional<std::string> note;

  friend bool operator==(const GeneratedUnit &, const GeneratedUnit &) = default;
};

/// One unit per atomic event (filter statements) followed by one unit per complex
/// event (pattern statements), in model order.
std::vector<GeneratedUnit> generate(const CompiledModel & model);

/// The `.epl` file layout: `-- name: <statement>` header, statement text, blank line
/// between units.
std::string render_epl(const std::vector<GeneratedUnit> & units);

}  // namespace cedl
