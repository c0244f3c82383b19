#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "krieger/scheme.hpp"

namespace krieger {

/// A parsed spec file: `type: scheme` (default) or `type: factor`.
using SpecDocument = std::variant<SchemeSpec, FactorSpec>;

/// Parses YAML text. Errors are Error(ParseError) carrying "line L, column C"
/// (1-based) of the offending node. Semantic checks are left to validate().
SpecDocument parse_document(std::string_view text);
SpecDocument load_document(const std::filesystem::path& path);

/// Like parse_document, converting factor files with factor_to_scheme.
SchemeSpec parse_scheme(std::string_view text);
SchemeSpec load_scheme(const std::filesystem::path& path);

/// Canonical YAML text; rationals are written as quoted "p/q" strings.
std::string emit_document(const SpecDocument& doc);

}  // namespace krieger
