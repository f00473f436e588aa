#include "htc/semantics.hpp"

#include <omp.h>

#include <cstdlib>

#include "htc/desugar.hpp"
#include "htc/engine.hpp"
#include "htc/transforms.hpp"

namespace htc {

// ---------------------------------------------------------------------------
// Valuations

Valuation empty_valuation(const DomainSpec& domain) { return Valuation(domain.size(), kUndef); }

Valuation make_valuation(const DomainSpec& domain, const NamedValuation& pairs) {
    Valuation v = empty_valuation(domain);
    for (const auto& [name, value] : pairs) {
        auto idx = domain.index_of(name);
        if (!idx) {
            throw SemanticError("undeclared variable '" + name + "'");
        }
        const VarDecl& d = domain.vars()[*idx];
        bool ok = value == kUndef || (d.kind == VarKind::Bool ? value == kTrue
                                                              : is_integer(value) && value >= d.lo && value <= d.hi);
        if (!ok) {
            throw SemanticError("value " + format_value(value) + " outside the domain of '" + name + "'");
        }
        v[*idx] = value;
    }
    return v;
}

NamedValuation named(const DomainSpec& domain, const Valuation& v) {
    NamedValuation out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (is_defined(v[i])) {
            out.emplace(domain.vars()[i].name, v[i]);
        }
    }
    return out;
}

NamedValuation project(const DomainSpec& domain, const Valuation& v, const std::set<std::string>& keep) {
    NamedValuation out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& name = domain.vars()[i].name;
        if (is_defined(v[i]) && keep.count(name) != 0) {
            out.emplace(name, v[i]);
        }
    }
    return out;
}

std::string format_value(Value v) {
    if (v == kUndef) {
        return "u";
    }
    if (v == kTrue) {
        return "t";
    }
    return std::to_string(v);
}

std::string format_valuation(const DomainSpec& domain, const Valuation& v) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!is_defined(v[i])) {
            continue;
        }
        out += first ? "(" : ",(";
        out += domain.vars()[i].name + "," + format_value(v[i]) + ")";
        first = false;
    }
    return out + "}";
}

bool subset(const Valuation& a, const Valuation& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (is_defined(a[i]) && a[i] != b[i]) {
            return false;
        }
    }
    return true;
}

std::size_t defined_count(const Valuation& v) {
    std::size_t n = 0;
    for (Value x : v) {
        n += is_defined(x) ? 1 : 0;
    }
    return n;
}

// ---------------------------------------------------------------------------
// Reference evaluation

namespace {

bool sat(const Valuation& h, const Valuation& t, const Formula& f, const DomainSpec& domain);

Value lookup(const Valuation& v, const std::string& name, const DomainSpec& domain) {
    auto idx = domain.index_of(name);
    if (!idx) {
        throw SemanticError("undeclared variable '" + name + "'");
    }
    return v[*idx];
}

std::optional<LinearTerm> eval_term_at(const Valuation& h, const Valuation& t, const Term& tau,
                                       const DomainSpec& domain) {
    if (const auto* lt = std::get_if<LinearTerm>(&tau)) {
        return *lt;
    }
    if (const auto* ct = std::get_if<ConditionalTerm>(&tau)) {
        if (sat(h, t, ct->condition, domain)) {
            return ct->then_term;
        }
        if (!sat(t, t, ct->condition, domain)) {
            return ct->else_term;
        }
        return std::nullopt;
    }
    if (std::holds_alternative<UndefTerm>(tau)) {
        return std::nullopt;
    }
    throw std::invalid_argument("aggregates must be desugared before evaluation");
}

Comparison eval_atom_at(const Valuation& h, const Valuation& t, const Comparison& c, const DomainSpec& domain) {
    auto side = [&](const LinearExpr& e) {
        LinearExpr out;
        out.terms.reserve(e.terms.size());
        for (const auto& term : e.terms) {
            if (auto r = eval_term_at(h, t, term, domain)) {
                out.terms.emplace_back(*r);
            } else {
                out.terms.emplace_back(UndefTerm{});
            }
        }
        return out;
    };
    return Comparison{side(c.lhs), c.rel, side(c.rhs)};
}

bool sat(const Valuation& h, const Valuation& t, const Formula& f, const DomainSpec& domain) {
    switch (f.kind()) {
        case Formula::Kind::Bot: return false;
        case Formula::Kind::Bool: return lookup(h, f.bool_name(), domain) == kTrue;
        case Formula::Kind::Compare: {
            const auto& c = f.comparison();
            if (c.rel != Relation::Le) {
                return sat(h, t, desugar_comparisons(f), domain);
            }
            return denotes(h, eval_atom_at(h, t, c, domain), domain);
        }
        case Formula::Kind::And: return sat(h, t, f.lhs(), domain) && sat(h, t, f.rhs(), domain);
        case Formula::Kind::Or: return sat(h, t, f.lhs(), domain) || sat(h, t, f.rhs(), domain);
        case Formula::Kind::Implies:
            return (!sat(h, t, f.lhs(), domain) || sat(h, t, f.rhs(), domain)) &&
                   (!sat(t, t, f.lhs(), domain) || sat(t, t, f.rhs(), domain));
    }
    return false;
}

}  // namespace

std::optional<LinearTerm> eval_term(const Interpretation& i, const Term& tau, const DomainSpec& domain) {
    return eval_term_at(i.h, i.t, tau, domain);
}

Comparison eval_atom(const Interpretation& i, const Comparison& c, const DomainSpec& domain) {
    return eval_atom_at(i.h, i.t, c, domain);
}

std::optional<Integer> eval_linear_term(const Valuation& v, const LinearTerm& t, const DomainSpec& domain) {
    if (t.is_constant()) {
        return t.coef;
    }
    Value x = lookup(v, t.var, domain);
    if (!is_integer(x)) {
        return std::nullopt;
    }
    return t.coef * x;
}

std::optional<Integer> eval_linear_expr(const Valuation& v, const LinearExpr& e, const DomainSpec& domain) {
    Integer sum = 0;
    for (const auto& term : e.terms) {
        const auto* lt = std::get_if<LinearTerm>(&term);
        if (lt == nullptr) {
            if (std::holds_alternative<UndefTerm>(term)) {
                return std::nullopt;
            }
            throw std::invalid_argument("eval_linear_expr expects a condition-free expression");
        }
        auto x = eval_linear_term(v, *lt, domain);
        if (!x) {
            return std::nullopt;
        }
        sum += *x;
    }
    return sum;
}

bool denotes(const Valuation& v, const Comparison& c, const DomainSpec& domain) {
    auto a = eval_linear_expr(v, c.lhs, domain);
    if (!a) {
        return false;
    }
    if (c.rel == Relation::Def) {
        return true;
    }
    auto b = eval_linear_expr(v, c.rhs, domain);
    if (!b) {
        return false;
    }
    switch (c.rel) {
        case Relation::Le: return *a <= *b;
        case Relation::Lt: return *a < *b;
        case Relation::Eq: return *a == *b;
        case Relation::Ne: return *a != *b;
        case Relation::Ge: return *a >= *b;
        case Relation::Gt: return *a > *b;
        case Relation::Def: return true;
    }
    return false;
}

bool denotes(const Valuation& v, const Formula& atom, const DomainSpec& domain) {
    if (atom.kind() == Formula::Kind::Bool) {
        return lookup(v, atom.bool_name(), domain) == kTrue;
    }
    return denotes(v, atom.comparison(), domain);
}

bool satisfies(const Interpretation& i, const Formula& f, const DomainSpec& domain) {
    return sat(i.h, i.t, f, domain);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) {
        return UINT64_MAX;
    }
    return a * b;
}

void decode_into(const DomainSpec& domain, std::uint64_t index, Value* out) {
    const auto& vars = domain.vars();
    for (std::size_t i = vars.size(); i-- > 0;) {
        const std::uint64_t radix = vars[i].size() + 1;
        const std::uint64_t digit = index % radix;
        index /= radix;
        if (digit == 0) {
            out[i] = kUndef;
        } else if (vars[i].kind == VarKind::Bool) {
            out[i] = kTrue;
        } else {
            out[i] = vars[i].lo + static_cast<Integer>(digit - 1);
        }
    }
}

int thread_count(const SolveOptions& opts) { return opts.jobs > 0 ? opts.jobs : omp_get_max_threads(); }

constexpr std::uint64_t kBlock = 512;

}  // namespace

std::uint64_t valuation_count(const DomainSpec& domain) {
    std::uint64_t n = 1;
    for (const auto& d : domain.vars()) {
        n = saturating_mul(n, d.size() + 1);
    }
    return n;
}

std::uint64_t interpretation_count(const DomainSpec& domain) {
    std::uint64_t n = 1;
    for (const auto& d : domain.vars()) {
        n = saturating_mul(n, 2 * d.size() + 1);
    }
    return n;
}

Valuation decode_valuation(const DomainSpec& domain, std::uint64_t index) {
    Valuation v(domain.size());
    decode_into(domain, index, v.data());
    return v;
}

std::vector<Valuation> enumerate_valuations(const DomainSpec& domain) {
    const std::uint64_t n = valuation_count(domain);
    std::vector<Valuation> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        out.push_back(decode_valuation(domain, i));
    }
    return out;
}

std::vector<Valuation> subvaluations(const Valuation& t) {
    std::vector<std::size_t> defined;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (is_defined(t[i])) {
            defined.push_back(i);
        }
    }
    const std::size_t k = defined.size();
    std::vector<Valuation> out;
    out.reserve(std::size_t{1} << k);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        Valuation h(t.size(), kUndef);
        for (std::size_t j = 0; j < k; ++j) {
            if ((mask >> (k - 1 - j)) & 1U) {
                h[defined[j]] = t[defined[j]];
            }
        }
        out.push_back(std::move(h));
    }
    return out;
}

SolveOptions SolveOptions::from_env() {
    SolveOptions opts;
    if (const char* env = std::getenv("HTC_MAX_INTERPS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != nullptr && *end == '\0') {
            opts.max_interps = v;
        }
    }
    return opts;
}

void check_budget(const DomainSpec& domain, std::uint64_t max_interps) {
    const std::uint64_t n = interpretation_count(domain);
    if (n > max_interps) {
        throw BudgetExceeded("enumeration needs " + (n == UINT64_MAX ? std::string("more than 2^64") : std::to_string(n)) +
                             " interpretations, budget is " + std::to_string(max_interps));
    }
}

CoreTheory prepare(const Theory& th) {
    NameSupply names(th.domain);
    Theory d = desugar_aggregates(th, names);
    CoreTheory core{d.domain, {}};
    core.formulas.reserve(d.statements.size());
    for (const auto& s : d.statements) {
        core.formulas.push_back(desugar_comparisons(statement_formula(s)));
    }
    return core;
}

namespace {

template <typename T>
std::vector<T> join(std::vector<std::vector<T>>& parts, std::size_t max_models) {
    std::vector<T> out;
    for (auto& p : parts) {
        for (auto& x : p) {
            if (max_models != 0 && out.size() >= max_models) {
                return out;
            }
            out.push_back(std::move(x));
        }
    }
    return out;
}

}  // namespace

HTModels ht_models(const CoreTheory& core, const SolveOptions& opts) {
    check_budget(core.domain, opts.max_interps);
    const CompiledTheory ct(core.domain, core.formulas);
    const std::uint64_t n = valuation_count(core.domain);
    const auto blocks = static_cast<std::int64_t>((n + kBlock - 1) / kBlock);
    std::vector<std::vector<Interpretation>> parts(static_cast<std::size_t>(blocks));
    const std::size_t width = core.domain.size();

#pragma omp parallel num_threads(thread_count(opts))
    {
        auto scratch = ct.scratch();
        Valuation t(width);
        Valuation h(width);
        std::vector<std::size_t> defined;
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t b = 0; b < blocks; ++b) {
            const std::uint64_t end = std::min<std::uint64_t>(n, (static_cast<std::uint64_t>(b) + 1) * kBlock);
            for (std::uint64_t idx = static_cast<std::uint64_t>(b) * kBlock; idx < end; ++idx) {
                decode_into(core.domain, idx, t.data());
                // No <h,t> is a model when <t,t> is not.
                if (!ct.total_model(t.data(), scratch)) {
                    continue;
                }
                defined.clear();
                for (std::size_t j = 0; j < width; ++j) {
                    if (is_defined(t[j])) {
                        defined.push_back(j);
                    }
                }
                const std::size_t k = defined.size();
                for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
                    std::fill(h.begin(), h.end(), kUndef);
                    for (std::size_t j = 0; j < k; ++j) {
                        if ((mask >> (k - 1 - j)) & 1U) {
                            h[defined[j]] = t[defined[j]];
                        }
                    }
                    if (ct.ht_model(h.data(), t.data(), scratch)) {
                        parts[static_cast<std::size_t>(b)].push_back(Interpretation{h, t});
                    }
                }
            }
        }
    }
    return HTModels{core.domain, join(parts, opts.max_models)};
}

StableModels stable_models(const CoreTheory& core, const SolveOptions& opts) {
    check_budget(core.domain, opts.max_interps);
    const CompiledTheory ct(core.domain, core.formulas);
    const std::uint64_t n = valuation_count(core.domain);
    const auto blocks = static_cast<std::int64_t>((n + kBlock - 1) / kBlock);
    std::vector<std::vector<Valuation>> parts(static_cast<std::size_t>(blocks));
    const std::size_t width = core.domain.size();

#pragma omp parallel num_threads(thread_count(opts))
    {
        auto scratch = ct.scratch();
        Valuation t(width);
        Valuation h(width);
#pragma omp for schedule(dynamic, 1)
        for (std::int64_t b = 0; b < blocks; ++b) {
            const std::uint64_t end = std::min<std::uint64_t>(n, (static_cast<std::uint64_t>(b) + 1) * kBlock);
            for (std::uint64_t idx = static_cast<std::uint64_t>(b) * kBlock; idx < end; ++idx) {
                decode_into(core.domain, idx, t.data());
                if (ct.stable(t.data(), scratch, h)) {
                    parts[static_cast<std::size_t>(b)].push_back(t);
                }
            }
        }
    }
    return StableModels{core.domain, join(parts, opts.max_models)};
}

HTModels ht_models(const Theory& th, const SolveOptions& opts) { return ht_models(prepare(th), opts); }

StableModels stable_models(const Theory& th, const SolveOptions& opts) { return stable_models(prepare(th), opts); }

bool is_model(const Interpretation& i, const CoreTheory& core) {
    for (const auto& f : core.formulas) {
        if (!sat(i.h, i.t, f, core.domain)) {
            return false;
        }
    }
    return true;
}

bool is_stable(const Valuation& t, const CoreTheory& core) {
    if (!is_model(Interpretation{t, t}, core)) {
        return false;
    }
    auto hs = subvaluations(t);
    hs.pop_back();
    for (auto& h : hs) {
        if (is_model(Interpretation{std::move(h), t}, core)) {
            return false;
        }
    }
    return true;
}

HTModels ht_models_reference(const CoreTheory& core, const SolveOptions& opts) {
    check_budget(core.domain, opts.max_interps);
    HTModels out{core.domain, {}};
    for (auto& t : enumerate_valuations(core.domain)) {
        for (auto& h : subvaluations(t)) {
            Interpretation i{std::move(h), t};
            if (is_model(i, core)) {
                out.models.push_back(std::move(i));
            }
        }
    }
    if (opts.max_models != 0 && out.models.size() > opts.max_models) {
        out.models.resize(opts.max_models);
    }
    return out;
}

StableModels stable_models_reference(const CoreTheory& core, const SolveOptions& opts) {
    check_budget(core.domain, opts.max_interps);
    StableModels out{core.domain, {}};
    for (auto& t : enumerate_valuations(core.domain)) {
        if (is_stable(t, core)) {
            out.models.push_back(std::move(t));
        }
    }
    if (opts.max_models != 0 && out.models.size() > opts.max_models) {
        out.models.resize(opts.max_models);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Supportedness

namespace {

std::optional<Integer> value_at(const Valuation& v, const LinearExpr& e, const DomainSpec& domain) {
    Integer sum = 0;
    for (const auto& term : e.terms) {
        auto lt = eval_term_at(v, v, term, domain);
        if (!lt) {
            return std::nullopt;
        }
        auto x = eval_linear_term(v, *lt, domain);
        if (!x) {
            return std::nullopt;
        }
        sum += *x;
    }
    return sum;
}

}  // namespace

bool is_supported(const Valuation& t, const Theory& program) {
    NameSupply names(program.domain);
    const Theory d = desugar(program, names);
    const DomainSpec& domain = d.domain;
    if (t.size() != domain.size()) {
        throw std::invalid_argument("valuation does not match the program's domain");
    }
    for (const auto& decl : program.domain.vars()) {
        const std::size_t xi = *domain.index_of(decl.name);
        if (!is_defined(t[xi])) {
            continue;
        }
        bool supported = false;
        for (const auto& s : d.statements) {
            const auto* r = std::get_if<LCRule>(&s);
            if (r == nullptr || supported) {
                continue;
            }
            bool body = std::all_of(r->body.begin(), r->body.end(),
                                    [&](const Formula& b) { return sat(t, t, b, domain); });
            if (!body) {
                continue;
            }
            for (const auto& a : r->head) {
                if (a.target != decl.name) {
                    continue;
                }
                auto lo = value_at(t, a.lower, domain);
                auto hi = value_at(t, a.upper, domain);
                if (!lo || !hi || !(*lo <= t[xi] && t[xi] <= *hi)) {
                    continue;
                }
                bool others = std::none_of(r->head.begin(), r->head.end(), [&](const Assignment& other) {
                    return other.target != decl.name &&
                           sat(t, t, desugar_comparisons(assignment_formula(other)), domain);
                });
                if (others) {
                    supported = true;
                    break;
                }
            }
        }
        if (!supported) {
            return false;
        }
    }
    return true;
}

}  // namespace htc
