#pragma once

// Brute-force reference semantics used as an oracle by the tests. Written
// directly from the definitions: relations are interpreted as atoms without
// rewriting, sum aggregates are evaluated element by element, and assignments
// are read as not not def(A) & (def(A) -> lower <= x <= upper).

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "htc/semantics.hpp"
#include "htc/syntax.hpp"

namespace oracle {

using htc::DomainSpec;
using htc::Formula;
using htc::Integer;
using htc::Valuation;
using htc::Value;

inline std::vector<Valuation> valuations(const DomainSpec& d) {
    std::vector<Valuation> out{Valuation{}};
    for (const auto& v : d.vars()) {
        std::vector<Value> values{htc::kUndef};
        if (v.kind == htc::VarKind::Bool) {
            values.push_back(htc::kTrue);
        } else {
            for (Integer k = v.lo; k <= v.hi; ++k) {
                values.push_back(k);
            }
        }
        std::vector<Valuation> next;
        for (const auto& prefix : out) {
            for (Value x : values) {
                Valuation w = prefix;
                w.push_back(x);
                next.push_back(std::move(w));
            }
        }
        out = std::move(next);
    }
    return out;
}

inline std::vector<Valuation> below(const Valuation& t) {
    std::vector<Valuation> out{Valuation{}};
    for (Value x : t) {
        std::vector<Valuation> next;
        for (const auto& prefix : out) {
            Valuation a = prefix;
            a.push_back(htc::kUndef);
            next.push_back(std::move(a));
            if (x != htc::kUndef) {
                Valuation b = prefix;
                b.push_back(x);
                next.push_back(std::move(b));
            }
        }
        out = std::move(next);
    }
    return out;
}

struct Evaluator {
    const DomainSpec& d;

    Value get(const Valuation& v, const std::string& name) const { return v[*d.index_of(name)]; }

    std::optional<Integer> linear(const Valuation& v, const htc::LinearTerm& t) const {
        if (t.var.empty()) {
            return t.coef;
        }
        Value x = get(v, t.var);
        if (x == htc::kUndef || x == htc::kTrue) {
            return std::nullopt;
        }
        return t.coef * x;
    }

    // h(eval<h,t>(tau)).
    std::optional<Integer> term(const Valuation& h, const Valuation& t, const htc::Term& tau) const {
        if (const auto* lt = std::get_if<htc::LinearTerm>(&tau)) {
            return linear(h, *lt);
        }
        if (const auto* ct = std::get_if<htc::ConditionalTerm>(&tau)) {
            if (holds(h, t, ct->condition)) {
                return linear(h, ct->then_term);
            }
            if (!holds(t, t, ct->condition)) {
                return linear(h, ct->else_term);
            }
            return std::nullopt;
        }
        if (const auto* ag = std::get_if<htc::Aggregate>(&tau)) {
            if (ag->function != htc::AggFunction::Sum && ag->function != htc::AggFunction::Count) {
                throw std::invalid_argument("oracle handles sum and count only");
            }
            Integer sum = 0;
            for (const auto& e : ag->elements) {
                htc::LinearTerm lt = ag->function == htc::AggFunction::Count ? htc::LinearTerm::constant(1) : e.term;
                // element (l|0: f & def(l))
                auto cond_at = [&](const Valuation& w) {
                    return holds(w, t, e.condition) && linear(w, lt).has_value();
                };
                if (cond_at(h)) {
                    sum += *linear(h, lt);
                } else if (!cond_at(t)) {
                    // contributes 0
                } else {
                    return std::nullopt;
                }
            }
            return ag->coef * sum;
        }
        return std::nullopt;
    }

    std::optional<Integer> expr(const Valuation& h, const Valuation& t, const htc::LinearExpr& e) const {
        Integer sum = 0;
        for (const auto& tau : e.terms) {
            auto x = term(h, t, tau);
            if (!x) {
                return std::nullopt;
            }
            sum += *x;
        }
        return sum;
    }

    // <h,t> |= f. When h == t this is the total interpretation.
    bool holds(const Valuation& h, const Valuation& t, const Formula& f) const {
        switch (f.kind()) {
            case Formula::Kind::Bot: return false;
            case Formula::Kind::Bool: return get(h, f.bool_name()) == htc::kTrue;
            case Formula::Kind::Compare: {
                const auto& c = f.comparison();
                auto a = expr(h, t, c.lhs);
                if (!a) {
                    return false;
                }
                if (c.rel == htc::Relation::Def) {
                    return true;
                }
                auto b = expr(h, t, c.rhs);
                if (!b) {
                    return false;
                }
                switch (c.rel) {
                    case htc::Relation::Le: return *a <= *b;
                    case htc::Relation::Lt: return *a < *b;
                    case htc::Relation::Eq: return *a == *b;
                    case htc::Relation::Ne: return *a != *b;
                    case htc::Relation::Ge: return *a >= *b;
                    case htc::Relation::Gt: return *a > *b;
                    case htc::Relation::Def: return true;
                }
                return false;
            }
            case Formula::Kind::And: return holds(h, t, f.lhs()) && holds(h, t, f.rhs());
            case Formula::Kind::Or: return holds(h, t, f.lhs()) || holds(h, t, f.rhs());
            case Formula::Kind::Implies:
                return (!holds(h, t, f.lhs()) || holds(h, t, f.rhs())) &&
                       (!holds(t, t, f.lhs()) || holds(t, t, f.rhs()));
        }
        return false;
    }
};

inline Formula assignment(const htc::Assignment& a) {
    htc::LinearExpr x = htc::LinearExpr::variable(a.target);
    Formula d = a.lower == a.upper ? htc::def(a.lower) : Formula::conj(htc::def(a.lower), htc::def(a.upper));
    Formula range = Formula::conj(htc::rel(a.lower, htc::Relation::Le, x), htc::rel(x, htc::Relation::Le, a.upper));
    return Formula::conj(Formula::negate(Formula::negate(d)), Formula::implies(d, range));
}

inline Formula statement(const htc::Statement& s) {
    if (const auto* f = std::get_if<Formula>(&s)) {
        return *f;
    }
    const auto& r = std::get<htc::LCRule>(s);
    std::vector<Formula> head;
    for (const auto& a : r.head) {
        head.push_back(assignment(a));
    }
    Formula h = Formula::disj_all(head);
    return r.body.empty() ? h : Formula::implies(Formula::conj_all(r.body), h);
}

inline bool model(const htc::Theory& th, const Valuation& h, const Valuation& t) {
    Evaluator ev{th.domain};
    return std::all_of(th.statements.begin(), th.statements.end(),
                       [&](const htc::Statement& s) { return ev.holds(h, t, statement(s)); });
}

inline std::set<std::pair<Valuation, Valuation>> ht_models(const htc::Theory& th) {
    std::set<std::pair<Valuation, Valuation>> out;
    for (const auto& t : valuations(th.domain)) {
        for (const auto& h : below(t)) {
            if (model(th, h, t)) {
                out.emplace(h, t);
            }
        }
    }
    return out;
}

inline std::set<Valuation> stable_models(const htc::Theory& th) {
    std::set<Valuation> out;
    for (const auto& t : valuations(th.domain)) {
        if (!model(th, t, t)) {
            continue;
        }
        bool minimal = true;
        for (const auto& h : below(t)) {
            if (h != t && model(th, h, t)) {
                minimal = false;
                break;
            }
        }
        if (minimal) {
            out.insert(t);
        }
    }
    return out;
}

}  // namespace oracle
