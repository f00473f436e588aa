#include "htc/desugar.hpp"

#include <algorithm>

namespace htc {

NameSupply::NameSupply(const DomainSpec& taken) {
    for (const auto& d : taken.vars()) {
        taken_.insert(d.name);
    }
}

std::string NameSupply::fresh(std::string_view prefix) {
    auto it = counters_.find(prefix);
    if (it == counters_.end()) {
        it = counters_.emplace(std::string(prefix), 0U).first;
    }
    for (;;) {
        std::string name = std::string(prefix) + std::to_string(it->second++);
        if (taken_.insert(name).second) {
            return name;
        }
    }
}

// ---------------------------------------------------------------------------
// Comparisons

namespace {

Formula and_simplified(const Formula& a, Formula b) {
    if (a.is_top()) {
        return b;
    }
    return Formula::conj(a, std::move(b));
}

LinearExpr desugar_expr_conditions(const LinearExpr& e) {
    LinearExpr out;
    out.terms.reserve(e.terms.size());
    for (const auto& t : e.terms) {
        if (const auto* ct = std::get_if<ConditionalTerm>(&t)) {
            out.terms.emplace_back(
                ConditionalTerm{ct->then_term, ct->else_term, desugar_comparisons(ct->condition)});
        } else if (const auto* agg = std::get_if<Aggregate>(&t)) {
            Aggregate copy = *agg;
            for (auto& el : copy.elements) {
                el.condition = desugar_comparisons(el.condition);
            }
            out.terms.emplace_back(std::move(copy));
        } else {
            out.terms.push_back(t);
        }
    }
    return out;
}

}  // namespace

Formula desugar_comparisons(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Bot:
        case Formula::Kind::Bool: return f;
        case Formula::Kind::Compare: {
            const auto& c = f.comparison();
            LinearExpr a = desugar_expr_conditions(c.lhs);
            LinearExpr b = c.rel == Relation::Def ? LinearExpr{} : desugar_expr_conditions(c.rhs);
            auto lt = [](const LinearExpr& x, const LinearExpr& y) {
                return Formula::conj(le(x, y), Formula::negate(le(y, x)));
            };
            switch (c.rel) {
                case Relation::Le: return le(a, b);
                case Relation::Ge: return le(b, a);
                case Relation::Lt: return lt(a, b);
                case Relation::Gt: return lt(b, a);
                case Relation::Eq: return Formula::conj(le(a, b), le(b, a));
                case Relation::Ne: return Formula::disj(lt(a, b), lt(b, a));
                case Relation::Def: return le(a, a);
            }
            return f;
        }
        case Formula::Kind::And:
            return Formula::conj(desugar_comparisons(f.lhs()), desugar_comparisons(f.rhs()));
        case Formula::Kind::Or:
            return Formula::disj(desugar_comparisons(f.lhs()), desugar_comparisons(f.rhs()));
        case Formula::Kind::Implies:
            return Formula::implies(desugar_comparisons(f.lhs()), desugar_comparisons(f.rhs()));
    }
    return f;
}

// ---------------------------------------------------------------------------
// Aggregates

LinearExpr desugar_sum(const Aggregate& agg) {
    LinearExpr out;
    for (const auto& el : agg.elements) {
        LinearTerm term{el.term.coef * agg.coef, el.term.var};
        Formula cond = and_simplified(el.condition, def(LinearExpr(term)));
        out.terms.emplace_back(ConditionalTerm{term, LinearTerm::constant(0), std::move(cond)});
    }
    if (out.terms.empty()) {
        out.terms.emplace_back(LinearTerm::constant(0));
    }
    return out;
}

Aggregate desugar_count(const Aggregate& agg) {
    Aggregate out = agg;
    out.function = AggFunction::Sum;
    for (auto& el : out.elements) {
        el.term = LinearTerm::constant(1);
    }
    return out;
}

std::optional<std::pair<Integer, Integer>> term_range(const LinearTerm& t, const DomainSpec& domain) {
    if (t.is_constant()) {
        return std::pair{t.coef, t.coef};
    }
    const auto* d = domain.find(t.var);
    if (d == nullptr || d->kind != VarKind::Int) {
        return std::nullopt;
    }
    Integer a = t.coef * d->lo;
    Integer b = t.coef * d->hi;
    return std::pair{std::min(a, b), std::max(a, b)};
}

MinMaxEncoding desugar_minmax(const Aggregate& agg, NameSupply& names, const DomainSpec& domain) {
    if (agg.function != AggFunction::Min && agg.function != AggFunction::Max) {
        throw std::invalid_argument("desugar_minmax expects a min or max aggregate");
    }
    const bool is_min = agg.function == AggFunction::Min;
    std::string x = names.fresh(is_min ? NameSupply::kMinPrefix : NameSupply::kMaxPrefix);
    if (domain.contains(x)) {
        throw SemanticError("fresh name '" + x + "' collides with a declared variable");
    }

    std::optional<std::pair<Integer, Integer>> hull;
    for (const auto& el : agg.elements) {
        if (auto r = term_range(el.term, domain)) {
            hull = hull ? std::pair{std::min(hull->first, r->first), std::max(hull->second, r->second)} : *r;
        }
    }
    if (!hull) {
        hull = std::pair<Integer, Integer>{0, 0};
    }

    const LinearExpr xe = LinearExpr::variable(x);
    auto count_of = [&](auto make_cond) {
        Aggregate cnt;
        cnt.function = AggFunction::Count;
        for (const auto& el : agg.elements) {
            cnt.elements.push_back({LinearTerm::constant(1), make_cond(el)});
        }
        return LinearExpr(std::vector<Term>{Term{std::move(cnt)}});
    };

    LinearExpr defined = count_of([](const AggElement& el) {
        return and_simplified(el.condition, def(LinearExpr(el.term)));
    });
    // min: no element strictly below x, one element at or below x.
    // max: no element strictly above x, one element at or above x.
    LinearExpr strictly_beyond = count_of([&](const AggElement& el) {
        LinearExpr s(el.term);
        return and_simplified(el.condition, is_min ? rel(s, Relation::Lt, xe) : rel(xe, Relation::Lt, s));
    });
    LinearExpr reached = count_of([&](const AggElement& el) {
        LinearExpr s(el.term);
        return and_simplified(el.condition, is_min ? rel(s, Relation::Le, xe) : rel(xe, Relation::Le, s));
    });

    MinMaxEncoding enc;
    enc.fresh = VarDecl{x, VarKind::Int, hull->first, hull->second};
    enc.replacement = LinearTerm::scaled(agg.coef, x);
    enc.side.push_back(Formula::iff(def(xe), rel(defined, Relation::Ge, LinearExpr::constant(1))));
    enc.side.push_back(Formula::implies(
        def(xe), Formula::conj(rel(strictly_beyond, Relation::Le, LinearExpr::constant(0)),
                               rel(reached, Relation::Ge, LinearExpr::constant(1)))));
    return enc;
}

namespace {

class AggregateRewriter {
public:
    AggregateRewriter(NameSupply& names, DomainSpec& domain) : names_(names), domain_(domain) {}

    LinearExpr expr(const LinearExpr& e) {
        LinearExpr out;
        for (const auto& t : e.terms) {
            const auto* agg = std::get_if<Aggregate>(&t);
            if (agg == nullptr) {
                out.terms.push_back(t);
                continue;
            }
            LinearExpr repl = aggregate(*agg);
            out.terms.insert(out.terms.end(), repl.terms.begin(), repl.terms.end());
        }
        return out;
    }

    Formula formula(const Formula& f) {
        switch (f.kind()) {
            case Formula::Kind::Bot:
            case Formula::Kind::Bool: return f;
            case Formula::Kind::Compare: {
                const auto& c = f.comparison();
                if (!has_aggregates(c.lhs) && !has_aggregates(c.rhs)) {
                    return f;
                }
                return Formula::compare(Comparison{expr(c.lhs), c.rel,
                                                   c.rel == Relation::Def ? LinearExpr{} : expr(c.rhs)});
            }
            case Formula::Kind::And: return Formula::conj(formula(f.lhs()), formula(f.rhs()));
            case Formula::Kind::Or: return Formula::disj(formula(f.lhs()), formula(f.rhs()));
            case Formula::Kind::Implies: return Formula::implies(formula(f.lhs()), formula(f.rhs()));
        }
        return f;
    }

    std::vector<Formula> take_side() { return std::exchange(side_, {}); }

private:
    LinearExpr aggregate(const Aggregate& agg) {
        switch (agg.function) {
            case AggFunction::Sum: return desugar_sum(agg);
            case AggFunction::Count: return desugar_sum(desugar_count(agg));
            case AggFunction::Min:
            case AggFunction::Max: {
                MinMaxEncoding enc = desugar_minmax(agg, names_, domain_);
                domain_.add(enc.fresh);
                for (const auto& s : enc.side) {
                    // Side formulas contain count{} aggregates of their own.
                    side_.push_back(formula(s));
                }
                return LinearExpr(enc.replacement);
            }
        }
        return {};
    }

    NameSupply& names_;
    DomainSpec& domain_;
    std::vector<Formula> side_;
};

}  // namespace

Theory desugar_aggregates(const Theory& th, NameSupply& names) {
    Theory out;
    out.domain = th.domain;
    for (const auto& d : th.domain.vars()) {
        names.reserve(d.name);
    }
    AggregateRewriter rw(names, out.domain);
    for (const auto& s : th.statements) {
        if (const auto* f = std::get_if<Formula>(&s)) {
            out.add(rw.formula(*f));
        } else {
            LCRule r = std::get<LCRule>(s);
            for (auto& a : r.head) {
                a.lower = rw.expr(a.lower);
                a.upper = rw.expr(a.upper);
            }
            for (auto& b : r.body) {
                b = rw.formula(b);
            }
            out.add(std::move(r));
        }
        for (auto& side : rw.take_side()) {
            out.add(std::move(side));
        }
    }
    return out;
}

Theory desugar(const Theory& th, NameSupply& names) {
    Theory out = desugar_aggregates(th, names);
    for (auto& s : out.statements) {
        if (auto* f = std::get_if<Formula>(&s)) {
            *f = desugar_comparisons(*f);
        } else {
            auto& r = std::get<LCRule>(s);
            for (auto& a : r.head) {
                a.lower = desugar_expr_conditions(a.lower);
                a.upper = desugar_expr_conditions(a.upper);
            }
            for (auto& b : r.body) {
                b = desugar_comparisons(b);
            }
        }
    }
    return out;
}

Theory desugar(const Theory& th) {
    NameSupply names(th.domain);
    return desugar(th, names);
}

}  // namespace htc
