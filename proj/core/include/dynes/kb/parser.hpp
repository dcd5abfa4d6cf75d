#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dynes/kb/ast.hpp"

namespace dynes {

struct Diagnostic {
    SourceLoc loc;
    std::string message;

    /// "line:column: message"
    std::string to_string() const;
    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Rejected KRL source. Syntax errors carry exactly one diagnostic;
/// semantic rejection carries every violation found.
class KrlError : public std::runtime_error {
public:
    explicit KrlError(std::vector<Diagnostic> diagnostics);
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

/// Syntax-only parse. Names are not resolved and no invariant beyond the
/// grammar is checked; run validate_kb() next. Throws KrlError.
KnowledgeBase parse_kb_unchecked(std::string_view source, std::string source_name = "<input>");

/// Parse, validate and resolve. Throws KrlError with the diagnostics of
/// validate_kb() when the knowledge base is ill-formed.
KnowledgeBase parse_kb(std::string_view source, std::string source_name = "<input>");

/// Reads and parses a .krl file. Throws std::runtime_error when the file
/// cannot be read and KrlError when it does not parse.
KnowledgeBase load_kb_file(const std::filesystem::path& path);

/// Reads a whole file into a string; std::runtime_error on failure.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace dynes
