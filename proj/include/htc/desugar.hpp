#pragma once

// Removal of surface sugar: comparison abbreviations (<, =, !=, >=, >, def)
// and aggregates (sum, count, min, max). The result uses only ≤-atoms over
// linear expressions (possibly with conditional terms) and Boolean atoms.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "htc/syntax.hpp"

namespace htc {

/// Deterministic supply of fresh variable names `<prefix><k>`. Each prefix has
/// its own monotone counter; names already declared are skipped.
class NameSupply {
public:
    static constexpr std::string_view kMinPrefix = "__min";
    static constexpr std::string_view kMaxPrefix = "__max";
    static constexpr std::string_view kCondPrefix = "__c";

    NameSupply() = default;
    explicit NameSupply(const DomainSpec& taken);

    std::string fresh(std::string_view prefix);
    void reserve(const std::string& name) { taken_.insert(name); }

private:
    std::set<std::string> taken_;
    std::map<std::string, unsigned, std::less<>> counters_;
};

/// Expands <, =, !=, >=, >, def into ≤-atoms, everywhere including
/// conditions of conditional terms and aggregate elements.
Formula desugar_comparisons(const Formula& f);

/// sum{ l1 : f1 ; ... } as (l1|0: f1 & def(l1)) + ...; an element with
/// condition #true yields (l|0: def(l)). The empty sum is the constant 0.
LinearExpr desugar_sum(const Aggregate& agg);

/// count{ f1 ; ... } as sum{ 1 : f1 ; ... }.
Aggregate desugar_count(const Aggregate& agg);

struct MinMaxEncoding {
    VarDecl fresh;             // declaration of x_min / x_max
    LinearTerm replacement;    // coef * x_min
    std::vector<Formula> side; // surface formulas; still contain count{} and <
};

/// Replaces min/max by a fresh variable constrained by
///   def(x) <-> count{ fi & def(si) } >= 1
///   def(x) -> count{ fi & si < x } <= 0 & count{ fi & si <= x } >= 1
/// (max mirrors the comparisons). The fresh variable ranges over the hull
/// of the element ranges.
MinMaxEncoding desugar_minmax(const Aggregate& agg, NameSupply& names, const DomainSpec& domain);

/// Interval hull of the values a linear term can take under `domain`
/// (nullopt when the term can never be an integer).
std::optional<std::pair<Integer, Integer>> term_range(const LinearTerm& t, const DomainSpec& domain);

/// Replaces every aggregate; fresh min/max variables are declared in the
/// returned domain and their side formulas follow the statement that
/// produced them. Comparison sugar is left untouched.
Theory desugar_aggregates(const Theory& th, NameSupply& names);

/// desugar_aggregates followed by desugar_comparisons on every statement.
Theory desugar(const Theory& th, NameSupply& names);
Theory desugar(const Theory& th);

}  // namespace htc
