#pragma once

#include "lola/ast.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lola {

/// Parse specification text into a typed-but-unchecked AST. Duplicate stream
/// names are rejected here; undeclared references are caught by analysis
/// (name resolution is whole-file, so forward references are fine).
Specification parse_specification(std::string_view source, std::string_view file = "");

/// Rewrite to core form: `const` becomes an output, `ite(c,a,b)` becomes
/// if/else, elif chains become nested if/else. `switch` stays a core node.
Specification desugar(Specification spec);

/// Concatenate specifications: identically declared streams are unified,
/// remaining declarations are appended in file order. Conflicting duplicates
/// (same name, different type or definition) are an error.
Specification merge_specifications(std::vector<Specification> specs);

std::string pretty_print(const Expr& expr);
std::string pretty_print(const Specification& spec);

/// Structural equality, ignoring source spans and annotations.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Specification& a, const Specification& b);

} // namespace lola
