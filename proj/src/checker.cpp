#include "htc/checker.hpp"

#include <omp.h>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "htc/desugar.hpp"
#include "htc/generator.hpp"
#include "htc/parser.hpp"

namespace htc {

namespace {

std::string format_named(const NamedValuation& v) {
    std::string out = "{";
    bool first = true;
    for (const auto& [name, value] : v) {
        if (!first) {
            out += ",";
        }
        first = false;
        out += "(" + name + "," + format_value(value) + ")";
    }
    return out + "}";
}

std::set<std::string> declared(const DomainSpec& d) {
    std::set<std::string> out;
    for (const auto& v : d.vars()) {
        out.insert(v.name);
    }
    return out;
}

// Position of an interpretation in enumeration order: t's index, then h's
// subvaluation mask.
std::pair<std::uint64_t, std::uint64_t> order_key(const DomainSpec& domain, const Interpretation& i) {
    std::uint64_t idx = 0;
    std::uint64_t mask = 0;
    const auto& vars = domain.vars();
    for (std::size_t k = 0; k < vars.size(); ++k) {
        const Value tv = i.t[k];
        std::uint64_t digit = 0;
        if (tv == kTrue) {
            digit = 1;
        } else if (is_defined(tv)) {
            digit = static_cast<std::uint64_t>(tv - vars[k].lo + 1);
        }
        idx = idx * (vars[k].size() + 1) + digit;
        if (is_defined(tv)) {
            mask = mask * 2 + (is_defined(i.h[k]) ? 1 : 0);
        }
    }
    return {idx, mask};
}

std::set<NamedValuation> projected(const StableModels& sm, const std::set<std::string>& keep) {
    std::set<NamedValuation> out;
    for (const auto& t : sm.models) {
        out.insert(project(sm.domain, t, keep));
    }
    return out;
}

}  // namespace

std::string EquivReport::describe() const {
    if (equal) {
        if (kind == Kind::Strong) {
            return "equal (no counterexample among " + std::to_string(contexts_checked) + " contexts)";
        }
        return "equal";
    }
    const std::string side = witness_in_left ? "left" : "right";
    std::string out = "different: ";
    if (ht_witness) {
        out += "<" + format_valuation(domain, ht_witness->h) + ", " + format_valuation(domain, ht_witness->t) +
               "> is an HT-model of the " + side + " theory only";
    } else if (stable_witness) {
        out += format_named(*stable_witness) + " is a" + std::string(projection ? " projected" : "") +
               " stable model of the " + side + " theory only";
    }
    if (context) {
        out += "; context: " + (context->statements.empty() ? std::string("(empty)") : pretty_print(*context));
    }
    return out;
}

Theory theory_union(const Theory& a, const Theory& b) {
    Theory out = a;
    out.domain.merge(b.domain);
    out.statements.insert(out.statements.end(), b.statements.begin(), b.statements.end());
    return out;
}

EquivReport equivalent(const CoreTheory& a, const CoreTheory& b, const SolveOptions& opts) {
    DomainSpec domain = a.domain;
    domain.merge(b.domain);
    const auto ma = ht_models(CoreTheory{domain, a.formulas}, opts).models;
    const auto mb = ht_models(CoreTheory{domain, b.formulas}, opts).models;

    EquivReport r;
    r.kind = EquivReport::Kind::Ht;
    r.domain = domain;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ma.size() || j < mb.size()) {
        if (i < ma.size() && j < mb.size()) {
            auto ka = order_key(domain, ma[i]);
            auto kb = order_key(domain, mb[j]);
            if (ka == kb) {
                ++i;
                ++j;
                continue;
            }
            r.equal = false;
            r.witness_in_left = ka < kb;
            r.ht_witness = ka < kb ? ma[i] : mb[j];
        } else {
            r.equal = false;
            r.witness_in_left = i < ma.size();
            r.ht_witness = r.witness_in_left ? ma[i] : mb[j];
        }
        break;
    }
    return r;
}

EquivReport equivalent(const Theory& a, const Theory& b, const SolveOptions& opts) {
    return equivalent(prepare(a), prepare(b), opts);
}

EquivReport stable_equivalent(const Theory& a, const Theory& b, const std::optional<std::set<std::string>>& projection,
                              const SolveOptions& opts) {
    std::set<std::string> keep = projection ? *projection : declared(a.domain);
    if (!projection) {
        keep.merge(declared(b.domain));
    }
    const auto sa = projected(stable_models(a, opts), keep);
    const auto sb = projected(stable_models(b, opts), keep);

    EquivReport r;
    r.kind = EquivReport::Kind::Stable;
    r.projection = projection;
    r.domain = a.domain;
    r.domain.merge(b.domain);
    r.domain = r.domain.restricted_to(keep);
    std::vector<NamedValuation> only_a;
    std::vector<NamedValuation> only_b;
    std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(only_a));
    std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(), std::back_inserter(only_b));
    if (only_a.empty() && only_b.empty()) {
        return r;
    }
    r.equal = false;
    r.witness_in_left = only_b.empty() || (!only_a.empty() && only_a.front() < only_b.front());
    r.stable_witness = r.witness_in_left ? only_a.front() : only_b.front();
    return r;
}

std::vector<Theory> context_family(const DomainSpec& x_domain, std::size_t cap) {
    std::vector<std::vector<Formula>> singles;
    std::vector<std::string> bools;
    for (const auto& v : x_domain.vars()) {
        if (v.kind == VarKind::Bool) {
            singles.push_back({Formula::boolean(v.name)});
            bools.push_back(v.name);
            continue;
        }
        for (Integer d = v.lo; d <= v.hi; ++d) {
            singles.push_back({rel(LinearExpr::variable(v.name), Relation::Eq, LinearExpr::constant(d))});
        }
    }
    for (const auto& a : bools) {
        for (const auto& b : bools) {
            if (a != b) {
                singles.push_back({Formula::implies(Formula::boolean(b), Formula::boolean(a))});
            }
        }
    }

    std::vector<Theory> out;
    auto push = [&](std::vector<Formula> fs) {
        if (out.size() >= cap) {
            return;
        }
        Theory th;
        th.domain = x_domain;
        for (auto& f : fs) {
            th.add(std::move(f));
        }
        out.push_back(std::move(th));
    };
    push({});
    for (const auto& s : singles) {
        push(s);
    }
    for (std::size_t i = 0; i < singles.size() && out.size() < cap; ++i) {
        for (std::size_t j = i + 1; j < singles.size() && out.size() < cap; ++j) {
            std::vector<Formula> both = singles[i];
            both.insert(both.end(), singles[j].begin(), singles[j].end());
            push(std::move(both));
        }
    }
    return out;
}

EquivReport strong_equiv_sampled(const Theory& a, const Theory& b, const std::set<std::string>& projection,
                                 const std::vector<Theory>& contexts, const SolveOptions& opts) {
    EquivReport r;
    r.kind = EquivReport::Kind::Strong;
    r.projection = projection;
    for (const auto& ctx : contexts) {
        for (const auto& v : free_vars(ctx)) {
            if (!projection.contains(v)) {
                throw std::invalid_argument("context mentions '" + v + "' outside the projection");
            }
        }
        EquivReport one = stable_equivalent(theory_union(a, ctx), theory_union(b, ctx), projection, opts);
        ++r.contexts_checked;
        r.domain = one.domain;
        if (!one.equal) {
            r.equal = false;
            r.stable_witness = one.stable_witness;
            r.witness_in_left = one.witness_in_left;
            r.context = ctx;
            return r;
        }
    }
    return r;
}

bool is_supported_htc(const Valuation& v, const std::vector<HTCRule>& program, const DomainSpec& domain) {
    const Interpretation total{v, v};
    auto holds = [&](const Formula& f) { return satisfies(total, f, domain); };
    for (std::size_t xi = 0; xi < domain.size(); ++xi) {
        if (!is_defined(v[xi])) {
            continue;
        }
        const std::string& x = domain.vars()[xi].name;
        bool supported = false;
        for (const auto& r : program) {
            const bool has_atom = std::any_of(r.head.begin(), r.head.end(), [&](const Formula& c) {
                return (c.kind() == Formula::Kind::Compare || c.kind() == Formula::Kind::Bool) &&
                       free_vars(c).contains(x);
            });
            if (!has_atom) {
                continue;
            }
            const bool others_false = std::none_of(r.head.begin(), r.head.end(), [&](const Formula& c) {
                return !free_vars(c).contains(x) && holds(c);
            });
            if (others_false && std::all_of(r.body.begin(), r.body.end(), holds)) {
                supported = true;
                break;
            }
        }
        if (!supported) {
            return false;
        }
    }
    return true;
}

Theory shrink(const Theory& th, const std::function<bool(const Theory&)>& fails) {
    Theory cur = th;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < cur.statements.size(); ++i) {
            Theory cand = cur;
            cand.statements.erase(cand.statements.begin() + static_cast<std::ptrdiff_t>(i));
            if (fails(cand)) {
                cur = std::move(cand);
                changed = true;
                break;
            }
        }
    }
    const auto used = free_vars(cur);
    for (const auto& v : declared(cur.domain)) {
        if (used.contains(v)) {
            continue;
        }
        Theory cand = cur;
        auto keep = declared(cur.domain);
        keep.erase(v);
        cand.domain = cur.domain.restricted_to(keep);
        if (fails(cand)) {
            cur = std::move(cand);
        }
    }
    return cur;
}

// ---------------------------------------------------------------------------
// Property suites

namespace {

using Check = std::function<std::optional<std::string>(const Theory&, std::uint64_t& checks)>;

struct Item {
    Theory theory;
    Check check;
    bool shrinkable = true;
};

SolveOptions serial() {
    SolveOptions o;
    o.jobs = 1;
    return o;
}

std::string interp_text(const DomainSpec& d, const Valuation& h, const Valuation& t) {
    return "<" + format_valuation(d, h) + ", " + format_valuation(d, t) + ">";
}

std::vector<Formula> formulas_of(const Theory& th) {
    std::vector<Formula> out;
    for (const auto& s : th.statements) {
        out.push_back(statement_formula(s));
    }
    return out;
}

template <typename F>
std::optional<std::string> for_each_interpretation(const DomainSpec& d, std::uint64_t& checks, F&& body) {
    for (const auto& t : enumerate_valuations(d)) {
        for (const auto& h : subvaluations(t)) {
            ++checks;
            if (auto bad = body(h, t)) {
                return bad;
            }
        }
    }
    return std::nullopt;
}

// persistence / negation --------------------------------------------------

Item persistence_item(std::uint64_t seed) {
    Generator g(seed);
    int budget = 2;
    Theory th;
    th.domain = g.domain();
    th.add(g.formula(3, budget));
    return {th, [](const Theory& th, std::uint64_t& checks) -> std::optional<std::string> {
                for (const auto& f : formulas_of(th)) {
                    auto bad = for_each_interpretation(
                        th.domain, checks, [&](const Valuation& h, const Valuation& t) -> std::optional<std::string> {
                            if (satisfies({h, t}, f, th.domain) && !satisfies({t, t}, f, th.domain)) {
                                return interp_text(th.domain, h, t) + " satisfies the formula but <t,t> does not";
                            }
                            return std::nullopt;
                        });
                    if (bad) {
                        return bad;
                    }
                }
                return std::nullopt;
            }};
}

Item negation_item(std::uint64_t seed) {
    Item it = persistence_item(seed);
    it.check = [](const Theory& th, std::uint64_t& checks) -> std::optional<std::string> {
        for (const auto& f : formulas_of(th)) {
            const Formula nf = Formula::negate(f);
            auto bad = for_each_interpretation(
                th.domain, checks, [&](const Valuation& h, const Valuation& t) -> std::optional<std::string> {
                    if (satisfies({h, t}, nf, th.domain) == satisfies({t, t}, f, th.domain)) {
                        return interp_text(th.domain, h, t) + ": <h,t> |= not f does not match <t,t> |/= f";
                    }
                    return std::nullopt;
                });
            if (bad) {
                return bad;
            }
        }
        return std::nullopt;
    };
    return it;
}

// term persistence ----------------------------------------------------------

std::optional<Integer> value_of(const Interpretation& i, const Valuation& at, const LinearExpr& e,
                                const DomainSpec& d) {
    Integer sum = 0;
    for (const auto& term : e.terms) {
        auto lt = eval_term(i, term, d);
        if (!lt) {
            return std::nullopt;
        }
        auto x = eval_linear_term(at, *lt, d);
        if (!x) {
            return std::nullopt;
        }
        sum += *x;
    }
    return sum;
}

Item term_persistence_item(std::uint64_t seed) {
    Generator g(seed);
    int budget = 2;
    Theory th;
    th.domain = g.domain();
    th.add(def(g.expr(budget)));
    return {th, [](const Theory& th, std::uint64_t& checks) -> std::optional<std::string> {
                for (const auto& s : th.statements) {
                    const auto& e = std::get<Formula>(s).comparison().lhs;
                    auto bad = for_each_interpretation(
                        th.domain, checks, [&](const Valuation& h, const Valuation& t) -> std::optional<std::string> {
                            auto vh = value_of({h, t}, h, e, th.domain);
                            if (!vh) {
                                return std::nullopt;
                            }
                            auto vt = value_of({t, t}, t, e, th.domain);
                            auto vht = value_of({h, t}, t, e, th.domain);
                            if (vt != vh || vht != vh) {
                                return interp_text(th.domain, h, t) + ": value " + std::to_string(*vh) +
                                       " at h is not preserved at t";
                            }
                            return std::nullopt;
                        });
                    if (bad) {
                        return bad;
                    }
                }
                return std::nullopt;
            }};
}

// engine agreement ----------------------------------------------------------

Item engine_item(std::uint64_t seed) {
    Generator g(seed);
    Theory th = g.theory(2, 1);
    th.add(g.lc_rule(2, 2, true));
    return {th, [](const Theory& th, std::uint64_t& checks) -> std::optional<std::string> {
                const CoreTheory core = prepare(th);
                const auto fast = ht_models(core, serial()).models;
                const auto ref = ht_models_reference(core).models;
                checks += interpretation_count(core.domain);
                if (fast != ref) {
                    return "compiled HT-models (" + std::to_string(fast.size()) + ") differ from reference (" +
                           std::to_string(ref.size()) + ")";
                }
                SolveOptions par;
                par.jobs = 2;
                if (ht_models(core, par).models != ref) {
                    return "parallel HT-models differ from reference";
                }
                const auto sfast = stable_models(core, serial()).models;
                const auto sref = stable_models_reference(core).models;
                checks += valuation_count(core.domain);
                if (sfast != sref) {
                    return "compiled stable models differ from reference";
                }
                return std::nullopt;
            }};
}

// denotation laws -----------------------------------------------------------

LinearExpr map_terms(const LinearExpr& e, const std::function<Term(const Term&)>& f) {
    LinearExpr out;
    for (const auto& t : e.terms) {
        out.terms.push_back(f(t));
    }
    return out;
}

Comparison map_comparison(const Comparison& c, const std::function<Term(const Term&)>& f) {
    return {map_terms(c.lhs, f), c.rel, map_terms(c.rhs, f)};
}

// c with the term occurrence number `pos` (counting lhs then rhs) replaced.
Comparison replace_at(const Comparison& c, std::size_t pos, const Term& with) {
    std::size_t k = 0;
    return map_comparison(c, [&](const Term& t) { return k++ == pos ? with : t; });
}

std::size_t occurrence_count(const Comparison& c) {
    return c.lhs.terms.size() + (c.rel == Relation::Def ? 0 : c.rhs.terms.size());
}

std::optional<std::string> condition_free_laws(const Comparison& c, const DomainSpec& d, std::uint64_t& checks) {
    const auto all = enumerate_valuations(d);
    const auto vars = free_vars(Formula::compare(c));
    const std::string text = pretty_print(Formula::compare(c));
    auto fail = [&](const std::string& law, const Valuation& v) {
        return "condition " + law + " fails for " + text + " at " + format_valuation(d, v);
    };

    std::vector<Term> candidates;
    for (Integer k = -1; k <= 2; ++k) {
        candidates.emplace_back(LinearTerm::constant(k));
    }
    for (const auto& v : d.vars()) {
        if (v.kind == VarKind::Int) {
            candidates.emplace_back(LinearTerm::scaled(1, v.name));
            candidates.emplace_back(LinearTerm::scaled(2, v.name));
        }
    }

    for (const auto& v : all) {
        const bool in = denotes(v, c, d);
        if (in) {
            // 1: monotonicity
            for (const auto& w : all) {
                if (subset(v, w)) {
                    ++checks;
                    if (!denotes(w, c, d)) {
                        return fail("1", v) + " (superset " + format_valuation(d, w) + ")";
                    }
                }
            }
            // 2: substitution of a variable by its value
            for (const auto& x : vars) {
                const Value xv = v[*d.index_of(x)];
                Comparison sub = map_comparison(c, [&](const Term& t) -> Term {
                    const auto* lt = std::get_if<LinearTerm>(&t);
                    if (lt == nullptr || lt->var != x) {
                        return t;
                    }
                    if (!is_integer(xv)) {
                        return UndefTerm{};
                    }
                    return LinearTerm::constant(lt->coef * xv);
                });
                ++checks;
                if (!denotes(v, sub, d)) {
                    return fail("2", v) + " (substituting " + x + ")";
                }
            }
        }
        // 3: only vars(c) matter
        Valuation r = v;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (!vars.contains(d.vars()[i].name)) {
                r[i] = kUndef;
            }
        }
        ++checks;
        if (denotes(r, c, d) != in) {
            return fail("3", v);
        }
        // 5: replacing a term by an equal one
        for (std::size_t pos = 0; pos < occurrence_count(c); ++pos) {
            const Term& s = pos < c.lhs.terms.size() ? c.lhs.terms[pos] : c.rhs.terms[pos - c.lhs.terms.size()];
            for (const auto& s2 : candidates) {
                Comparison eq{LinearExpr(std::vector<Term>{s}), Relation::Eq, LinearExpr(std::vector<Term>{s2})};
                if (!denotes(v, eq, d)) {
                    continue;
                }
                ++checks;
                if (denotes(v, replace_at(c, pos, s2), d) != in) {
                    return fail("5", v) + " (replacing term " + std::to_string(pos) + ")";
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> conditional_law(const Comparison& c, const DomainSpec& d, std::uint64_t& checks) {
    std::size_t pos = 0;
    const ConditionalTerm* tau = nullptr;
    std::size_t k = 0;
    for (const auto* side : {&c.lhs, &c.rhs}) {
        if (side == &c.rhs && c.rel == Relation::Def) {
            break;
        }
        for (const auto& t : side->terms) {
            if (const auto* ct = std::get_if<ConditionalTerm>(&t)) {
                if (tau != nullptr) {
                    return std::nullopt;  // only atoms with a single conditional
                }
                tau = ct;
                pos = k;
            }
            ++k;
        }
    }
    if (tau == nullptr) {
        return std::nullopt;
    }
    const Comparison cu = replace_at(c, pos, UndefTerm{});
    const Comparison cs = replace_at(c, pos, tau->then_term);
    const Comparison cs2 = replace_at(c, pos, tau->else_term);
    for (const auto& v : enumerate_valuations(d)) {
        ++checks;
        if (denotes(v, cu, d) && !(denotes(v, cs, d) && denotes(v, cs2, d))) {
            return "condition 4 fails for " + pretty_print(Formula::compare(c)) + " at " + format_valuation(d, v);
        }
    }
    return std::nullopt;
}

Item denotation_item(std::uint64_t seed) {
    Generator g(seed);
    Theory th;
    th.domain = g.domain();
    int none = 0;
    th.add(g.comparison(none));
    for (;;) {
        int one = 1;
        Formula f = g.comparison(one);
        if (one == 0) {
            th.add(f);
            break;
        }
    }
    return {th, [](const Theory& th, std::uint64_t& checks) -> std::optional<std::string> {
                for (const auto& s : th.statements) {
                    const auto& c = std::get<Formula>(s).comparison();
                    if (has_conditionals(std::get<Formula>(s))) {
                        if (auto bad = conditional_law(c, th.domain, checks)) {
                            return bad;
                        }
                    } else if (auto bad = condition_free_laws(c, th.domain, checks)) {
                        return bad;
                    }
                }
                return std::nullopt;
            }};
}

// supportedness -------------------------------------------------------------

Item supportedness_item(std::uint64_t seed) {
    Generator g(seed);
    Theory th = g.lc_program(static_cast<std::size_t>(g.uniform(1, 3)), true);
    return {th, [](const Theory& th, std::uint64_t& checks) -> std::optional<std::string> {
                const auto sm = stable_models(th, serial());
                for (const auto& t : sm.models) {
                    ++checks;
                    if (!is_supported(t, th)) {
                        return "stable model " + format_valuation(sm.domain, t) + " is not supported";
                    }
                }
                const Theory d = desugar(th);
                std::vector<HTCRule> rules;
                CoreTheory core{d.domain, {}};
                for (const auto& r : d.rules()) {
                    for (auto& h : to_htc_rules(r)) {
                        core.formulas.push_back(desugar_comparisons(h.to_formula()));
                        rules.push_back(std::move(h));
                    }
                }
                const auto hsm = stable_models(core, serial());
                if (hsm.models != sm.models) {
                    return std::string("stable models of the HTC-program differ from the LC-program");
                }
                for (const auto& t : hsm.models) {
                    ++checks;
                    if (!is_supported_htc(t, rules, core.domain)) {
                        return "stable model " + format_valuation(core.domain, t) +
                               " is not supported by the HTC-program";
                    }
                }
                return std::nullopt;
            }};
}

// unfolding -----------------------------------------------------------------

Item unfolding_item(std::uint64_t seed) {
    Generator g(seed);
    Theory th;
    th.domain = g.domain();
    th.add(g.lc_rule(2, 2, false));
    return {th, [](const Theory& th, std::uint64_t& checks) -> std::optional<std::string> {
                for (const auto& r : th.rules()) {
                    Theory one{th.domain, {r}};
                    Theory unfolded{th.domain, {}};
                    for (auto& f : unfold_rule(r)) {
                        unfolded.add(std::move(f));
                    }
                    Theory rules{th.domain, {}};
                    for (const auto& h : to_htc_rules(r)) {
                        rules.add(h.to_formula());
                    }
                    checks += 2 * interpretation_count(th.domain);
                    auto e1 = equivalent(one, unfolded, serial());
                    if (!e1.equal) {
                        return "rule vs implications: " + e1.describe();
                    }
                    auto e2 = equivalent(one, rules, serial());
                    if (!e2.equal) {
                        return "rule vs HTC-rules: " + e2.describe();
                    }
                }
                return std::nullopt;
            }};
}

// delta ---------------------------------------------------------------------

Item delta_item(std::uint64_t seed) {
    GenConfig cfg;
    cfg.bool_vars = {"p", "q"};
    Generator g(seed, cfg);
    Theory th = g.theory(2, 1);
    return {th, [](const Theory& th, std::uint64_t& checks) -> std::optional<std::string> {
                bool any = false;
                for (const auto& s : th.statements) {
                    any = any || has_conditionals(statement_formula(s));
                }
                if (!any) {
                    return std::nullopt;
                }
                const DeltaResult dr = eliminate_conditionals(th);
                const Theory combined = dr.combined();
                Theory side{combined.domain, {}};
                for (const auto& f : dr.side) {
                    side.add(f);
                }
                const auto opts = serial();

                // Gamma + delta and Gamma[tau/x] + delta have the same HT-models.
                checks += interpretation_count(combined.domain);
                auto cor = equivalent(theory_union(th, side), combined, opts);
                if (!cor.equal) {
                    return "Gamma + delta vs Gamma[tau/x] + delta: " + cor.describe();
                }

                // Every HT-model of delta(tau) gives x the value of tau in both worlds.
                if (dr.mapping.size() == 1) {
                    const auto& [tau, x] = dr.mapping.front();
                    const std::size_t xi = *side.domain.index_of(x);
                    const Term term{tau};
                    for (const auto& m : ht_models(prepare(side), opts).models) {
                        ++checks;
                        auto at = [&](const Interpretation& i, const Valuation& v) -> Value {
                            auto lt = eval_term(i, term, side.domain);
                            if (!lt) {
                                return kUndef;
                            }
                            auto val = eval_linear_term(v, *lt, side.domain);
                            return val ? *val : kUndef;
                        };
                        if (m.h[xi] != at(m, m.h) || m.t[xi] != at({m.t, m.t}, m.t)) {
                            return "model " + interp_text(side.domain, m.h, m.t) + " of delta gives " + x +
                                   " a value different from the conditional term";
                        }
                    }
                }

                const auto x_vars = declared(th.domain);
                const auto contexts = context_family(th.domain);
                checks += 2 * contexts.size();
                auto thm = strong_equiv_sampled(th, combined, x_vars, contexts, opts);
                if (!thm.equal) {
                    return "Gamma vs Gamma[tau/x] + delta: " + thm.describe();
                }
                auto prop = strong_equiv_sampled(th, theory_union(th, side), x_vars, contexts, opts);
                if (!prop.equal) {
                    return "Gamma vs Gamma + delta: " + prop.describe();
                }
                return std::nullopt;
            }};
}

// assignments ---------------------------------------------------------------

Item assignments_item(std::uint64_t seed) {
    Generator g(seed);
    Theory th;
    th.domain = g.domain();
    th.add(LCRule{{g.assignment()}, {}});
    return {th, [](const Theory& th, std::uint64_t& checks) -> std::optional<std::string> {
                const Formula gamma = Formula::boolean("p");
                for (const auto& r : th.rules()) {
                    for (const auto& a : r.head) {
                        const Formula af = assignment_formula(a);
                        const std::vector<std::pair<Formula, Formula>> pairs = {
                            {Formula::conj(af, def_of(a)), phi(a)},
                            {Formula::negate(af), Formula::negate(phi(a))},
                            {Formula::disj(gamma, af),
                             Formula::conj(Formula::implies(def_of(a), Formula::disj(phi(a), gamma)),
                                           Formula::implies(Formula::negate(phi(a)), gamma))},
                        };
                        for (const auto& [l, rgt] : pairs) {
                            checks += interpretation_count(th.domain);
                            Theory lt{th.domain, {l}};
                            Theory rt{th.domain, {rgt}};
                            auto e = equivalent(lt, rt, serial());
                            if (!e.equal) {
                                return pretty_print(l) + "  vs  " + pretty_print(rgt) + ": " + e.describe();
                            }
                        }
                    }
                }
                return std::nullopt;
            }};
}

// min/max -------------------------------------------------------------------

constexpr Integer kMinMaxLo = -3;
constexpr Integer kMinMaxHi = 3;

// Case `index` of the exhaustive enumeration: function, element count and
// one value per element (nullopt for an undefined element).
struct MinMaxCase {
    AggFunction fn;
    std::vector<std::optional<Integer>> values;
};

constexpr std::size_t kValues = static_cast<std::size_t>(kMinMaxHi - kMinMaxLo + 2);

std::size_t minmax_case_count() { return 2 * (kValues * kValues + kValues * kValues * kValues); }

MinMaxCase minmax_case(std::size_t index) {
    MinMaxCase c;
    const std::size_t half = minmax_case_count() / 2;
    c.fn = index < half ? AggFunction::Min : AggFunction::Max;
    index %= half;
    std::size_t k = 2;
    if (index >= kValues * kValues) {
        index -= kValues * kValues;
        k = 3;
    }
    c.values.resize(k);
    for (std::size_t i = k; i-- > 0;) {
        const std::size_t digit = index % kValues;
        index /= kValues;
        c.values[i] = digit == 0 ? std::nullopt : std::optional<Integer>(kMinMaxLo + static_cast<Integer>(digit) - 1);
    }
    return c;
}

Item minmax_item(std::size_t index) {
    const MinMaxCase mc = minmax_case(index);
    Theory th;
    Aggregate agg;
    agg.function = mc.fn;
    std::optional<Integer> expected;
    for (std::size_t i = 0; i < mc.values.size(); ++i) {
        const std::string e = "e" + std::to_string(i + 1);
        th.domain.add_int(e, kMinMaxLo, kMinMaxHi);
        agg.elements.push_back({LinearTerm::scaled(1, e), Formula::top()});
        if (const auto& v = mc.values[i]) {
            th.add(rel(LinearExpr::variable(e), Relation::Eq, LinearExpr::constant(*v)));
            if (!expected || (mc.fn == AggFunction::Min ? *v < *expected : *v > *expected)) {
                expected = *v;
            }
        }
    }
    NameSupply names(th.domain);
    const MinMaxEncoding enc = desugar_minmax(agg, names, th.domain);
    th.domain.add(enc.fresh);
    for (const auto& f : enc.side) {
        th.add(f);
    }
    const std::string x = enc.fresh.name;
    Item it;
    it.theory = th;
    it.shrinkable = false;
    it.check = [x, expected](const Theory& th, std::uint64_t& checks) -> std::optional<std::string> {
        ++checks;
        const auto sm = stable_models(th, serial());
        if (sm.models.size() != 1) {
            return "expected exactly one stable model, found " + std::to_string(sm.models.size());
        }
        const Value got = sm.models.front()[*sm.domain.index_of(x)];
        const Value want = expected ? *expected : kUndef;
        if (got != want) {
            return x + " = " + format_value(got) + ", expected " + format_value(want);
        }
        return std::nullopt;
    };
    return it;
}

// tautologies ---------------------------------------------------------------

Item tautology_item(std::uint64_t seed, std::size_t index) {
    Generator g(seed);
    int budget = 2;
    const Formula f = g.formula(2, budget);
    const Formula s = g.formula(2, budget);
    const Formula c = g.formula(2, budget);
    using F = Formula;
    auto iff = [](const F& a, const F& b) { return F::conj(F::implies(a, b), F::implies(b, a)); };
    F inst;
    switch (index % 6) {
        case 0:  // orimp
            inst = iff(F::disj(c, F::implies(f, s)),
                       F::conj(F::implies(f, F::disj(s, c)), F::implies(F::negate(s), F::disj(F::negate(f), c))));
            break;
        case 1:  // nest-impl
            inst = iff(F::implies(f, F::implies(s, c)), F::implies(F::conj(f, s), c));
            break;
        case 2:  // andimp
            inst = iff(F::implies(f, F::conj(s, c)), F::conj(F::implies(f, s), F::implies(f, c)));
            break;
        case 3:  // negneg
            inst = iff(F::disj(c, F::negate(F::negate(f))), F::implies(F::negate(f), c));
            break;
        case 4:  // df
            inst = iff(F::disj(c, F::conj(F::negate(F::negate(f)), F::implies(f, s))),
                       F::conj(F::conj(F::implies(f, F::disj(s, c)), F::implies(F::negate(s), c)),
                               F::implies(F::negate(f), c)));
            break;
        default:  // a -> not not a
            inst = F::implies(f, F::negate(F::negate(f)));
            break;
    }
    Theory th;
    th.domain = g.domain();
    th.add(inst);
    return {th, [](const Theory& th, std::uint64_t& checks) -> std::optional<std::string> {
                const CoreTheory core = prepare(th);
                const auto models = ht_models(core, serial()).models;
                checks += interpretation_count(core.domain);
                if (models.size() != interpretation_count(core.domain)) {
                    for (const auto& t : enumerate_valuations(core.domain)) {
                        for (const auto& h : subvaluations(t)) {
                            if (!is_model({h, t}, core)) {
                                return "not a tautology: " + interp_text(core.domain, h, t) + " is not a model";
                            }
                        }
                    }
                    return std::string("not a tautology");
                }
                return std::nullopt;
            }};
}

Item make_item(const std::string& suite, std::uint64_t seed, std::size_t index) {
    if (suite == "persistence") return persistence_item(seed);
    if (suite == "negation") return negation_item(seed);
    if (suite == "term-persistence") return term_persistence_item(seed);
    if (suite == "engine-agreement") return engine_item(seed);
    if (suite == "denotation-laws") return denotation_item(seed);
    if (suite == "supportedness") return supportedness_item(seed);
    if (suite == "unfolding") return unfolding_item(seed);
    if (suite == "delta-faithfulness") return delta_item(seed);
    if (suite == "assignments") return assignments_item(seed);
    if (suite == "minmax") return minmax_item(index);
    if (suite == "tautologies") return tautology_item(seed, index);
    throw std::invalid_argument("unknown suite '" + suite + "'");
}

std::optional<std::string> guarded(const Item& it, const Theory& th, std::uint64_t& checks) {
    try {
        return it.check(th, checks);
    } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
    }
}

}  // namespace

std::vector<std::string> property_suites() {
    return {"persistence",   "negation",  "term-persistence",   "denotation-laws", "supportedness", "unfolding",
            "delta-faithfulness", "assignments", "minmax", "tautologies", "engine-agreement"};
}

PropertyReport run_property_suite(const std::string& suite, std::uint64_t seed, std::size_t count, int jobs) {
    const auto names = property_suites();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
        throw std::invalid_argument("unknown suite '" + suite + "'");
    }
    if (suite == "minmax") {
        count = minmax_case_count();
    }
    PropertyReport report;
    report.suite = suite;
    report.seed = seed;
    report.items = count;

    std::vector<std::uint64_t> checks(count, 0);
    std::vector<std::optional<Counterexample>> failures(count);
    const auto n = static_cast<std::int64_t>(count);
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const std::uint64_t s = item_seed(seed, idx);
        Item it;
        try {
            it = make_item(suite, s, idx);
        } catch (const std::exception& e) {
            failures[idx] = Counterexample{idx, s, "", std::string("generation failed: ") + e.what()};
            continue;
        }
        auto bad = guarded(it, it.theory, checks[idx]);
        if (!bad) {
            continue;
        }
        Theory small = it.theory;
        if (it.shrinkable) {
            small = shrink(it.theory, [&](const Theory& cand) {
                std::uint64_t ignored = 0;
                return guarded(it, cand, ignored).has_value();
            });
            std::uint64_t ignored = 0;
            bad = guarded(it, small, ignored);
        }
        failures[idx] = Counterexample{idx, s, pretty_print(small), *bad};
    }

    for (std::size_t i = 0; i < count; ++i) {
        report.checks += checks[i];
        if (failures[i]) {
            ++report.violations;
            if (!report.counterexample) {
                report.counterexample = failures[i];
            }
        }
    }
    return report;
}

}  // namespace htc
