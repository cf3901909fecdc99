#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "sensint/casebook.hpp"

namespace sensint {

/// Reads the flat key-value case format documented in the README. Errors
/// carry ParseError with the source name and line number.
CaseDefinition parse_case_file(std::istream& in, std::string_view source = "<input>");
CaseDefinition load_case_file(const std::string& path);

/// Writes a case so that parse_case_file reproduces it exactly.
void write_case_file(std::ostream& out, const CaseDefinition& c);
std::string case_file_text(const CaseDefinition& c);

}  // namespace sensint
