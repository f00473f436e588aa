#pragma once

// Concrete `.lc` syntax.
//
//   #int x, y 0..9.        #bool p.
//   y = 5.
//   p :- sum{ x; y } > 1.
//   x := 1 :- sum{ x : #true } >= 0.
//   x - (y|3:p) <= 4.
//
// `%` starts a line comment. A statement whose head consists of assignments
// (or is empty) and whose body consists of literals is read as an LC-rule;
// anything else is a formula, with `H :- B` standing for `B -> H`.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "htc/syntax.hpp"

namespace htc {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    /// Message without the position prefix.
    const std::string& detail() const { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

/// Parses and validates a whole file. Throws ParseError or SemanticError.
Theory parse_theory(std::string_view text);
Theory parse_file(const std::string& path);

/// Parses a single formula without declarations (no validation).
Formula parse_formula(std::string_view text);
LinearExpr parse_expr(std::string_view text);

std::string pretty_print(const Theory& th);
std::string pretty_print(const DomainSpec& domain);
std::string pretty_print(const Statement& s);
std::string pretty_print(const Formula& f);
std::string pretty_print(const LCRule& r);
std::string pretty_print(const Assignment& a);
std::string pretty_print(const LinearExpr& e);
std::string pretty_print(const LinearTerm& t);

}  // namespace htc
