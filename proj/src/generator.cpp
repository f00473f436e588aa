#include "htc/generator.hpp"

namespace htc {

std::uint64_t item_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 over the pair
    std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + index + 0x632BE59BD9B4E019ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Generator::Generator(std::uint64_t seed, GenConfig cfg) : cfg_(std::move(cfg)), rng_(seed) {
    for (const auto& x : cfg_.int_vars) {
        domain_.add_int(x, cfg_.lo, cfg_.hi);
    }
    for (const auto& p : cfg_.bool_vars) {
        domain_.add_bool(p);
    }
}

int Generator::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

bool Generator::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

Integer Generator::coefficient() {
    return std::uniform_int_distribution<Integer>(cfg_.coef_lo, cfg_.coef_hi)(rng_);
}

Integer Generator::constant() { return std::uniform_int_distribution<Integer>(cfg_.lo - 1, cfg_.hi + 1)(rng_); }

Relation Generator::relation(bool with_def) {
    static constexpr Relation rels[] = {Relation::Le, Relation::Le, Relation::Lt, Relation::Eq,
                                        Relation::Ne, Relation::Ge, Relation::Gt, Relation::Def};
    return rels[uniform(0, with_def ? 7 : 6)];
}

LinearTerm Generator::linear_term() {
    if (cfg_.int_vars.empty() || chance(0.3)) {
        return LinearTerm::constant(constant());
    }
    const auto& x = cfg_.int_vars[static_cast<std::size_t>(uniform(0, static_cast<int>(cfg_.int_vars.size()) - 1))];
    Integer k = coefficient();
    if (chance(0.5)) {
        k = 1;
    }
    return LinearTerm::scaled(k, x);
}

ConditionalTerm Generator::conditional_term() {
    return ConditionalTerm{linear_term(), linear_term(), condition_free_formula(1)};
}

LinearExpr Generator::expr(int& cond_budget) {
    LinearExpr e;
    int n = chance(0.6) ? 1 : 2;
    for (int i = 0; i < n; ++i) {
        if (cond_budget > 0 && chance(0.4)) {
            --cond_budget;
            e.terms.emplace_back(conditional_term());
        } else {
            e.terms.emplace_back(linear_term());
        }
    }
    return e;
}

Formula Generator::comparison(int& cond_budget) {
    Relation r = relation(true);
    LinearExpr lhs = expr(cond_budget);
    if (r == Relation::Def) {
        return def(std::move(lhs));
    }
    return rel(std::move(lhs), r, expr(cond_budget));
}

Formula Generator::atom(int& cond_budget) {
    if (!cfg_.bool_vars.empty() && chance(0.3)) {
        return Formula::boolean(
            cfg_.bool_vars[static_cast<std::size_t>(uniform(0, static_cast<int>(cfg_.bool_vars.size()) - 1))]);
    }
    return comparison(cond_budget);
}

Formula Generator::condition_free_formula(int depth) {
    int none = 0;
    return formula(depth, none);
}

Formula Generator::formula(int depth, int& cond_budget) {
    if (depth <= 0 || chance(0.3)) {
        int pick = uniform(0, 19);
        if (pick == 0) {
            return Formula::bot();
        }
        if (pick == 1) {
            return Formula::top();
        }
        return atom(cond_budget);
    }
    switch (uniform(0, 3)) {
        case 0: {
            Formula a = formula(depth - 1, cond_budget);
            return Formula::conj(std::move(a), formula(depth - 1, cond_budget));
        }
        case 1: {
            Formula a = formula(depth - 1, cond_budget);
            return Formula::disj(std::move(a), formula(depth - 1, cond_budget));
        }
        case 2: {
            Formula a = formula(depth - 1, cond_budget);
            return Formula::implies(std::move(a), formula(depth - 1, cond_budget));
        }
        default: return Formula::negate(formula(depth - 1, cond_budget));
    }
}

Assignment Generator::assignment() {
    const auto& x = cfg_.int_vars[static_cast<std::size_t>(uniform(0, static_cast<int>(cfg_.int_vars.size()) - 1))];
    int none = 0;
    Assignment a{x, expr(none), {}};
    a.upper = chance(0.5) ? a.lower : expr(none);
    return a;
}

LCRule Generator::lc_rule(std::size_t max_head, std::size_t max_body, bool aggregates) {
    LCRule r;
    auto n_head = static_cast<std::size_t>(uniform(0, static_cast<int>(max_head)));
    if (n_head == 0 && chance(0.7)) {
        n_head = 1;
    }
    for (std::size_t i = 0; i < n_head; ++i) {
        Assignment a = assignment();
        if (aggregates && chance(0.25)) {
            Aggregate sum;
            int n = uniform(1, 2);
            for (int k = 0; k < n; ++k) {
                int none = 0;
                sum.elements.push_back({linear_term(), chance(0.5) ? Formula::top() : comparison(none)});
            }
            a.lower = LinearExpr(std::vector<Term>{Term{std::move(sum)}});
            a.upper = a.lower;
        }
        r.head.push_back(std::move(a));
    }
    auto n_body = static_cast<std::size_t>(uniform(0, static_cast<int>(max_body)));
    for (std::size_t i = 0; i < n_body; ++i) {
        int none = 0;
        Formula c = comparison(none);
        r.body.push_back(chance(0.3) ? Formula::negate(c) : c);
    }
    return r;
}

Theory Generator::lc_program(std::size_t rules, bool aggregates) {
    Theory th;
    th.domain = domain_;
    for (std::size_t i = 0; i < rules; ++i) {
        th.add(lc_rule(2, 2, aggregates));
    }
    return th;
}

Theory Generator::theory(std::size_t formulas, int conditionals) {
    for (;;) {
        Theory th;
        th.domain = domain_;
        int budget = conditionals;
        for (std::size_t i = 0; i < formulas; ++i) {
            th.add(formula(cfg_.max_depth - 1, budget));
        }
        if (budget != 0) {
            // Force the remaining conditionals into one extra atom.
            Formula f = Formula::bot();
            while (budget > 0) {
                ConditionalTerm ct = conditional_term();
                f = rel(LinearExpr(std::move(ct)), relation(false), LinearExpr(linear_term()));
                --budget;
                th.add(f);
            }
        }
        return th;
    }
}

}  // namespace htc
