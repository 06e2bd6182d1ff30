#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pafas/term.hpp"

namespace pafas {

/// A parsed source file: named equations plus the closed main term obtained by
/// nesting each equation as a rec binder.
struct SourceProgram {
    Dialect dialect = Dialect::R;
    /// Equation bodies as written; references to other equations are variables.
    std::vector<std::pair<std::string, Term>> equations;
    Term main = Term::nil();
};

/// Accepts either a single term or `Name <= term` equations with an optional
/// `main = term`; without `main` the first equation is the main term.
/// Throws ParseError for every syntactic or well-formedness violation.
SourceProgram parse_program(std::string_view text, Dialect dialect);

/// Convenience: the main term of `parse_program`.
Term parse_term(std::string_view text, Dialect dialect = Dialect::R);

/// Canonical concrete syntax; `parse_term(print(t)) == t`.
std::string print(const Term& t);

/// Resolves equation references by nested rec binders (Bekic-style): the
/// body of `name` becomes `rec name. body` with references to equations that
/// are not currently being defined expanded in place.
Term desugar_equations(const std::vector<std::pair<std::string, Term>>& equations, const std::string& name);

} // namespace pafas
