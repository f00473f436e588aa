#include "htc/transforms.hpp"

#include <numeric>
#include <stdexcept>

namespace htc {

Formula phi(const Assignment& a) {
    LinearExpr x = LinearExpr::variable(a.target);
    return Formula::conj(le(a.lower, x), le(x, a.upper));
}

Formula def_of(const Assignment& a) {
    if (a.is_single()) {
        return def(a.lower);
    }
    return Formula::conj(def(a.lower), def(a.upper));
}

Formula assignment_formula(const Assignment& a) {
    Formula d = def_of(a);
    return Formula::conj(Formula::negate(Formula::negate(d)), Formula::implies(d, phi(a)));
}

Formula rule_formula(const LCRule& r) {
    std::vector<Formula> heads;
    heads.reserve(r.head.size());
    for (const auto& a : r.head) {
        heads.push_back(assignment_formula(a));
    }
    Formula head = Formula::disj_all(heads);
    if (r.body.empty()) {
        return head;
    }
    return Formula::implies(Formula::conj_all(r.body), head);
}

Formula statement_formula(const Statement& s) {
    if (const auto* f = std::get_if<Formula>(&s)) {
        return *f;
    }
    return rule_formula(std::get<LCRule>(s));
}

std::vector<Formula> unfold_rule(const LCRule& r, std::size_t max_head) {
    const std::size_t n = r.head.size();
    if (n > max_head) {
        throw std::length_error("rule head has " + std::to_string(n) + " assignments, unfolding is limited to " +
                                std::to_string(max_head));
    }
    std::vector<Formula> out;
    out.reserve(std::size_t{1} << n);
    for (std::size_t mask = (std::size_t{1} << n); mask-- > 0;) {
        std::vector<Formula> heads;
        std::vector<Formula> body = r.body;
        std::vector<Formula> defs;
        std::vector<Formula> negs;
        for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> (n - 1 - i)) & 1U) {
                heads.push_back(phi(r.head[i]));
                defs.push_back(def_of(r.head[i]));
            } else {
                negs.push_back(Formula::negate(phi(r.head[i])));
            }
        }
        body.insert(body.end(), defs.begin(), defs.end());
        body.insert(body.end(), negs.begin(), negs.end());
        out.push_back(Formula::implies(Formula::conj_all(body), Formula::disj_all(heads)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Distribution

Formula HTCRule::to_formula() const { return Formula::implies(Formula::conj_all(body), Formula::disj_all(head)); }

namespace {

using Clauses = std::vector<std::vector<Formula>>;

bool is_atom(const Formula& f) { return f.kind() == Formula::Kind::Compare || f.kind() == Formula::Kind::Bool; }

Clauses product(const Clauses& a, const Clauses& b) {
    Clauses out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a) {
        for (const auto& y : b) {
            auto z = x;
            z.insert(z.end(), y.begin(), y.end());
            out.push_back(std::move(z));
        }
    }
    return out;
}

Clauses concat(Clauses a, const Clauses& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

Clauses body_dnf(const Formula& f);

// Disjunctive normal form of `not f`.
Clauses negated_dnf(const Formula& f) {
    if (is_atom(f)) {
        return {{Formula::negate(f)}};
    }
    switch (f.kind()) {
        case Formula::Kind::Bot: return {{}};
        case Formula::Kind::And: return concat(negated_dnf(f.lhs()), negated_dnf(f.rhs()));
        case Formula::Kind::Or: return product(negated_dnf(f.lhs()), negated_dnf(f.rhs()));
        default: break;
    }
    if (f.is_top()) {
        return {};
    }
    if (!f.is_negation()) {
        // not (a -> b) == not not a & not b
        return product(body_dnf(Formula::negate(Formula::negate(f.lhs()))), negated_dnf(f.rhs()));
    }
    const Formula& g = f.negated_operand();
    if (is_atom(g)) {
        return {{Formula::negate(f)}};
    }
    switch (g.kind()) {
        case Formula::Kind::Bot: return {};
        case Formula::Kind::And:
            return product(body_dnf(Formula::negate(Formula::negate(g.lhs()))),
                           body_dnf(Formula::negate(Formula::negate(g.rhs()))));
        case Formula::Kind::Or:
            return concat(body_dnf(Formula::negate(Formula::negate(g.lhs()))),
                          body_dnf(Formula::negate(Formula::negate(g.rhs()))));
        default: break;
    }
    if (g.is_top()) {
        return {{}};
    }
    if (g.is_negation()) {
        // not not not a == not a
        return negated_dnf(g.negated_operand());
    }
    // not not (a -> b) == not a | not not b
    return concat(negated_dnf(g.lhs()), body_dnf(Formula::negate(Formula::negate(g.rhs()))));
}

Clauses body_dnf(const Formula& f) {
    if (is_atom(f)) {
        return {{f}};
    }
    switch (f.kind()) {
        case Formula::Kind::Bot: return {};
        case Formula::Kind::And: return product(body_dnf(f.lhs()), body_dnf(f.rhs()));
        case Formula::Kind::Or: return concat(body_dnf(f.lhs()), body_dnf(f.rhs()));
        default: break;
    }
    if (f.is_top()) {
        return {{}};
    }
    if (f.is_negation()) {
        return negated_dnf(f.negated_operand());
    }
    throw std::invalid_argument("implication inside a rule body cannot be distributed");
}

Clauses head_cnf(const Formula& f) {
    if (is_atom(f)) {
        return {{f}};
    }
    switch (f.kind()) {
        case Formula::Kind::Bot: return {{}};
        case Formula::Kind::And: return concat(head_cnf(f.lhs()), head_cnf(f.rhs()));
        case Formula::Kind::Or: return product(head_cnf(f.lhs()), head_cnf(f.rhs()));
        default: break;
    }
    if (f.is_top()) {
        return {};
    }
    if (f.is_negation() && (is_atom(f.negated_operand()) ||
                            (f.negated_operand().is_negation() && is_atom(f.negated_operand().negated_operand())))) {
        return {{f}};
    }
    throw std::invalid_argument("rule head is not a combination of literals");
}

}  // namespace

std::vector<HTCRule> distribute(const Formula& implication) {
    Formula head = implication;
    Formula body = Formula::top();
    if (implication.kind() == Formula::Kind::Implies && !implication.is_top()) {
        head = implication.rhs();
        body = implication.lhs();
    }
    std::vector<HTCRule> out;
    Clauses heads = head_cnf(head);
    Clauses bodies = body_dnf(body);
    for (const auto& h : heads) {
        for (const auto& b : bodies) {
            out.push_back(HTCRule{h, b});
        }
    }
    return out;
}

std::vector<HTCRule> to_htc_rules(const LCRule& r, std::size_t max_head) {
    std::vector<HTCRule> out;
    for (const auto& psi : unfold_rule(r, max_head)) {
        auto rules = distribute(psi);
        out.insert(out.end(), rules.begin(), rules.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Normal form

namespace {

Term negate_term(const Term& t) {
    if (const auto* lt = std::get_if<LinearTerm>(&t)) {
        return lt->negated();
    }
    if (const auto* ct = std::get_if<ConditionalTerm>(&t)) {
        return ct->scaled(-1);
    }
    if (const auto* ag = std::get_if<Aggregate>(&t)) {
        Aggregate copy = *ag;
        copy.coef = -copy.coef;
        return copy;
    }
    return t;
}

bool is_constant_term(const Term& t) {
    const auto* lt = std::get_if<LinearTerm>(&t);
    return lt != nullptr && lt->is_constant();
}

}  // namespace

Comparison normalize_constraint(const Comparison& c) {
    if (c.rel != Relation::Le) {
        throw std::invalid_argument("normal form is defined for <= constraints");
    }
    LinearExpr lhs;
    Integer constant = 0;
    for (const auto& t : c.lhs.terms) {
        if (is_constant_term(t)) {
            constant -= std::get<LinearTerm>(t).coef;
        } else {
            lhs.terms.push_back(t);
        }
    }
    for (const auto& t : c.rhs.terms) {
        if (is_constant_term(t)) {
            constant += std::get<LinearTerm>(t).coef;
        } else {
            lhs.terms.push_back(negate_term(t));
        }
    }
    if (lhs.terms.empty()) {
        lhs = LinearExpr::constant(0);
    }
    return Comparison{std::move(lhs), Relation::Le, LinearExpr::constant(constant)};
}

std::pair<Comparison, Comparison> normalize_equality(const Comparison& c) {
    if (c.rel != Relation::Eq) {
        throw std::invalid_argument("normalize_equality expects an equality");
    }
    return {normalize_constraint(Comparison{c.lhs, Relation::Le, c.rhs}),
            normalize_constraint(Comparison{c.rhs, Relation::Le, c.lhs})};
}

// ---------------------------------------------------------------------------
// Conditional terms

std::vector<Formula> delta(const ConditionalTerm& tau, const std::string& x) {
    const Formula& cond = tau.condition;
    const Formula not_cond = Formula::negate(cond);
    const LinearExpr xe = LinearExpr::variable(x);
    const LinearExpr s(tau.then_term);
    const LinearExpr s2(tau.else_term);
    return {
        Formula::implies(Formula::conj(cond, def(s)), rel(xe, Relation::Eq, s)),
        Formula::implies(Formula::conj(not_cond, def(s2)), rel(xe, Relation::Eq, s2)),
        Formula::implies(Formula::conj(cond, def(xe)), rel(xe, Relation::Eq, s)),
        Formula::implies(Formula::conj(not_cond, def(xe)), rel(xe, Relation::Eq, s2)),
        Formula::implies(def(xe), Formula::disj(cond, not_cond)),
    };
}

Theory DeltaResult::combined() const {
    Theory out = rewritten;
    for (const auto& f : side) {
        out.add(f);
    }
    return out;
}

namespace {

class ConditionalEliminator {
public:
    ConditionalEliminator(NameSupply& names, DeltaResult& result) : names_(names), result_(result) {}

    LinearExpr expr(const LinearExpr& e) {
        LinearExpr out;
        out.terms.reserve(e.terms.size());
        for (const auto& t : e.terms) {
            if (std::holds_alternative<Aggregate>(t)) {
                throw std::invalid_argument("aggregates must be desugared before eliminating conditional terms");
            }
            const auto* ct = std::get_if<ConditionalTerm>(&t);
            if (ct == nullptr) {
                out.terms.push_back(t);
                continue;
            }
            // k*(s|s':phi) is replaced by k*x, with k the signed gcd of both
            // branch coefficients, so that -(y|3:p) keeps the branches y and 3.
            Integer k = std::gcd(ct->then_term.coef, ct->else_term.coef);
            if (k == 0) {
                k = 1;
            } else if (ct->then_term.coef <= 0 && ct->else_term.coef <= 0) {
                k = -k;
            }
            const ConditionalTerm tau{{ct->then_term.coef / k, ct->then_term.var},
                                      {ct->else_term.coef / k, ct->else_term.var}, ct->condition};
            std::string x = names_.fresh(NameSupply::kCondPrefix);
            auto& domain = result_.rewritten.domain;
            auto a = term_range(tau.then_term, domain);
            auto b = term_range(tau.else_term, domain);
            std::pair<Integer, Integer> hull{0, 0};
            if (a && b) {
                hull = {std::min(a->first, b->first), std::max(a->second, b->second)};
            } else if (a || b) {
                hull = a ? *a : *b;
            }
            domain.add_int(x, hull.first, hull.second);
            auto side = delta(tau, x);
            result_.side.insert(result_.side.end(), side.begin(), side.end());
            result_.mapping.emplace_back(tau, x);
            out.terms.emplace_back(LinearTerm::scaled(k, x));
        }
        return out;
    }

    Formula formula(const Formula& f) {
        switch (f.kind()) {
            case Formula::Kind::Bot:
            case Formula::Kind::Bool: return f;
            case Formula::Kind::Compare: {
                const auto& c = f.comparison();
                if (!has_conditionals(c.lhs) && !has_conditionals(c.rhs)) {
                    return f;
                }
                LinearExpr lhs = expr(c.lhs);
                LinearExpr rhs = c.rel == Relation::Def ? LinearExpr{} : expr(c.rhs);
                return Formula::compare(Comparison{std::move(lhs), c.rel, std::move(rhs)});
            }
            case Formula::Kind::And: {
                Formula a = formula(f.lhs());
                return Formula::conj(std::move(a), formula(f.rhs()));
            }
            case Formula::Kind::Or: {
                Formula a = formula(f.lhs());
                return Formula::disj(std::move(a), formula(f.rhs()));
            }
            case Formula::Kind::Implies: {
                Formula a = formula(f.lhs());
                return Formula::implies(std::move(a), formula(f.rhs()));
            }
        }
        return f;
    }

private:
    NameSupply& names_;
    DeltaResult& result_;
};

}  // namespace

DeltaResult eliminate_conditionals(const Theory& th, NameSupply& names) {
    DeltaResult result;
    result.rewritten.domain = th.domain;
    for (const auto& d : th.domain.vars()) {
        names.reserve(d.name);
    }
    ConditionalEliminator el(names, result);
    for (const auto& s : th.statements) {
        if (const auto* f = std::get_if<Formula>(&s)) {
            result.rewritten.add(el.formula(*f));
            continue;
        }
        LCRule r = std::get<LCRule>(s);
        for (auto& a : r.head) {
            bool single = a.is_single();
            a.lower = el.expr(a.lower);
            a.upper = single ? a.lower : el.expr(a.upper);
        }
        for (auto& b : r.body) {
            b = el.formula(b);
        }
        result.rewritten.add(std::move(r));
    }
    return result;
}

DeltaResult eliminate_conditionals(const Theory& th) {
    NameSupply names(th.domain);
    return eliminate_conditionals(th, names);
}

}  // namespace htc
