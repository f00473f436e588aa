#pragma once

// Seeded random construction of terms, formulas, rules and theories over a
// small finite domain (by default x, y in 0..2 and a Boolean p).

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "htc/syntax.hpp"

namespace htc {

struct GenConfig {
    std::vector<std::string> int_vars{"x", "y"};
    Integer lo = 0;
    Integer hi = 2;
    std::vector<std::string> bool_vars{"p"};
    Integer coef_lo = -2;
    Integer coef_hi = 2;
    int max_depth = 3;
};

class Generator {
public:
    explicit Generator(std::uint64_t seed, GenConfig cfg = {});

    const DomainSpec& domain() const { return domain_; }
    std::mt19937_64& rng() { return rng_; }

    int uniform(int lo, int hi);
    bool chance(double p);

    LinearTerm linear_term();
    ConditionalTerm conditional_term();
    /// One or two summands; each may be conditional while `cond_budget` > 0.
    LinearExpr expr(int& cond_budget);
    Formula comparison(int& cond_budget);
    Formula atom(int& cond_budget);
    Formula condition_free_formula(int depth);
    Formula formula(int depth, int& cond_budget);

    Assignment assignment();
    /// At most `max_head` assignments and `max_body` literals over comparisons.
    LCRule lc_rule(std::size_t max_head = 2, std::size_t max_body = 2, bool aggregates = false);
    Theory lc_program(std::size_t rules, bool aggregates = false);

    /// `formulas` statements containing exactly `conditionals` conditional terms.
    Theory theory(std::size_t formulas, int conditionals);

private:
    Integer coefficient();
    Integer constant();
    Relation relation(bool with_def);

    GenConfig cfg_;
    DomainSpec domain_;
    std::mt19937_64 rng_;
};

/// Seed for item `index` of a run; independent of evaluation order.
std::uint64_t item_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace htc
