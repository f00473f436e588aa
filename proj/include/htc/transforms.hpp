#pragma once

// Program transformations: assignment expansion, unfolding of LC-rules into
// HTC-rules, normal form of linear constraints and elimination of
// conditional terms by fresh variables.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "htc/desugar.hpp"
#include "htc/syntax.hpp"

namespace htc {

/// (lower <= x) & (x <= upper)
Formula phi(const Assignment& a);
/// def(lower) & def(upper), or def(lower) when both bounds coincide.
Formula def_of(const Assignment& a);
/// not not def(A) & (def(A) -> Phi(A))
Formula assignment_formula(const Assignment& a);
/// B(r) -> H(r) with assignments expanded; a rule without body is its head.
Formula rule_formula(const LCRule& r);
/// Statement read as a formula (LC-rules through rule_formula).
Formula statement_formula(const Statement& s);

/// Implications Psi_D for every subset D of the head, largest mask first:
///   OR_{A in D} Phi(A) <- B(r) & AND_{A in D} def(A) & AND_{A' not in D} not Phi(A')
/// Throws std::length_error when the head has more than `max_head` assignments.
std::vector<Formula> unfold_rule(const LCRule& r, std::size_t max_head = 10);

/// L1; ...; Ln :- L(n+1), ..., Lm over literals.
struct HTCRule {
    std::vector<Formula> head;
    std::vector<Formula> body;

    Formula to_formula() const;
    bool operator==(const HTCRule&) const = default;
};

/// Splits one implication into HTC-rules: the head goes to conjunctive and the
/// body to disjunctive normal form over literals (atoms, not a, not not a).
std::vector<HTCRule> distribute(const Formula& implication);
/// unfold_rule followed by distribute on each implication.
std::vector<HTCRule> to_htc_rules(const LCRule& r, std::size_t max_head = 10);

/// Every non-constant term moved to the left (negated when it came from the
/// right), constants summed on the right. Requires relation <=.
Comparison normalize_constraint(const Comparison& c);
/// The two normal-form constraints a equality stands for.
std::pair<Comparison, Comparison> normalize_equality(const Comparison& c);

/// The five implications constraining x to the value of tau:
///   phi & def(s) -> x = s          not phi & def(s') -> x = s'
///   phi & def(x) -> x = s          not phi & def(x) -> x = s'
///   def(x) -> phi | not phi
std::vector<Formula> delta(const ConditionalTerm& tau, const std::string& x);

struct DeltaResult {
    Theory rewritten;                                          // every tau replaced by its variable
    std::vector<Formula> side;                                 // delta(tau) for each occurrence
    /// Occurrence (with a common branch factor k taken out; the occurrence
    /// became k * variable) and its variable.
    std::vector<std::pair<ConditionalTerm, std::string>> mapping;

    /// rewritten plus side formulas (after the statements).
    Theory combined() const;
};

/// Replaces every conditional-term occurrence, left to right, by a fresh
/// variable `__c<k>` ranging over the hull of its branch ranges. Aggregates
/// must be desugared already (std::invalid_argument otherwise); comparison
/// sugar may remain.
DeltaResult eliminate_conditionals(const Theory& th, NameSupply& names);
DeltaResult eliminate_conditionals(const Theory& th);

}  // namespace htc
