#pragma once

#include <string>

#include "bracelab/brace.hpp"

namespace bracelab {

/// Parses a brace-v1 document without validating the brace.
Brace parse_brace(const Json& doc);
/// Parses a brace-v1 document and validates the brace before returning it.
Brace load_brace(const Json& doc, const SweepMode& mode = SweepMode::automatic());
/// brace-v1 document with keys format, p, exponents, op. Formula braces keep
/// their formula; anything else is written as a star table (or a lambda table
/// when the star table would be too large).
Json save_brace(const Brace& b);
/// Compact one-line dump followed by a newline.
std::string canonical_text(const Json& doc);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
inline Brace load_brace_file(const std::string& path, const SweepMode& mode = SweepMode::automatic()) {
  return load_brace(read_json_file(path), mode);
}

}  // namespace bracelab
