#pragma once

#include <string>

#include "dynes/kb/ast.hpp"

namespace dynes {

/// Canonical KRL text. Parsing the output yields a structurally equal
/// knowledge base.
std::string print_kb(const KnowledgeBase& kb);

std::string print_expr(const Expr& expr);

}  // namespace dynes
