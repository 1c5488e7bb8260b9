#pragma once

#include "linfty/bracket_system.hpp"
#include "linfty/superspace.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace linfty {

inline constexpr const char* document_version = "1";

class DocumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bracket system and/or a Delta specification, as read from or written to
/// the versioned JSON format documented in docs/system-document.md.
struct SystemDocument {
  std::optional<BracketSystem> brackets;
  std::optional<DeltaSpec> delta;
};

/// Throws DocumentError on malformed JSON, unknown generators, bad rational
/// literals or degree-rule violations.
SystemDocument parse_document(std::string_view text);
SystemDocument load_document(const std::string& path);

std::string dump_document(const SystemDocument& doc, int indent = 2);
void save_document(const SystemDocument& doc, const std::string& path);

}  // namespace linfty
