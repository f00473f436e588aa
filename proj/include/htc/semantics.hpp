#pragma once

// Valuations, interpretations and the satisfaction relation of HT with
// constraints, plus model enumeration over finite domains.
//
// Two evaluation paths exist. The functions taking AST nodes (eval_term,
// satisfies, ...) interpret formulas directly and are the reference. The
// enumeration entry points compile the theory once (see engine.hpp) and
// split the candidate space over OpenMP threads.

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "htc/syntax.hpp"

namespace htc {

/// A domain value: an integer, the Boolean truth value, or undefined.
using Value = std::int64_t;
inline constexpr Value kUndef = std::numeric_limits<Value>::min();
inline constexpr Value kTrue = std::numeric_limits<Value>::min() + 1;

inline bool is_defined(Value v) { return v != kUndef; }
inline bool is_integer(Value v) { return v != kUndef && v != kTrue; }

/// Values laid out in DomainSpec order.
using Valuation = std::vector<Value>;
/// Defined pairs only.
using NamedValuation = std::map<std::string, Value>;

struct Interpretation {
    Valuation h;
    Valuation t;
    bool operator==(const Interpretation&) const = default;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Valuation empty_valuation(const DomainSpec& domain);
/// Throws SemanticError for undeclared names or values outside the domain.
Valuation make_valuation(const DomainSpec& domain, const NamedValuation& pairs);
NamedValuation named(const DomainSpec& domain, const Valuation& v);
NamedValuation project(const DomainSpec& domain, const Valuation& v, const std::set<std::string>& keep);
/// {(p,t),(y,5)}
std::string format_valuation(const DomainSpec& domain, const Valuation& v);
std::string format_value(Value v);

/// Set inclusion of defined pairs.
bool subset(const Valuation& a, const Valuation& b);
std::size_t defined_count(const Valuation& v);

// ---------------------------------------------------------------------------
// Reference evaluation

/// eval<h,t> of one term: linear terms pass through, a conditional term
/// selects its branch. nullopt stands for the undefined marker.
std::optional<LinearTerm> eval_term(const Interpretation& i, const Term& tau, const DomainSpec& domain);
/// The atom with every conditional term replaced by eval<h,t>.
Comparison eval_atom(const Interpretation& i, const Comparison& c, const DomainSpec& domain);
/// Value of a condition-free expression; nullopt when some term is undefined.
std::optional<Integer> eval_linear_expr(const Valuation& v, const LinearExpr& e, const DomainSpec& domain);
std::optional<Integer> eval_linear_term(const Valuation& v, const LinearTerm& t, const DomainSpec& domain);
/// v in [[c]] for a condition-free comparison (any relation).
bool denotes(const Valuation& v, const Comparison& c, const DomainSpec& domain);
/// Same for a Boolean atom or comparison formula.
bool denotes(const Valuation& v, const Formula& atom, const DomainSpec& domain);

/// <h,t> |= f. Comparison sugar is expanded on the fly; aggregates are
/// rejected with std::invalid_argument.
bool satisfies(const Interpretation& i, const Formula& f, const DomainSpec& domain);

// ---------------------------------------------------------------------------
// Enumeration

/// Saturating counts: prod(1 + |D_i|) and prod(1 + 2|D_i|).
std::uint64_t valuation_count(const DomainSpec& domain);
std::uint64_t interpretation_count(const DomainSpec& domain);

/// Valuation number `index` in enumeration order: the first variable is the
/// most significant digit, u comes before lo..hi (and before t).
Valuation decode_valuation(const DomainSpec& domain, std::uint64_t index);
std::vector<Valuation> enumerate_valuations(const DomainSpec& domain);
/// All h with h subset of t; the first defined variable is the most
/// significant bit, so the empty valuation comes first and t last.
std::vector<Valuation> subvaluations(const Valuation& t);

struct SolveOptions {
    std::uint64_t max_interps = 10'000'000;
    int jobs = 0;              // 0: OpenMP default, 1: serial
    std::size_t max_models = 0;  // 0: all

    /// Defaults, with HTC_MAX_INTERPS applied when set.
    static SolveOptions from_env();
};

/// Throws BudgetExceeded when interpretation_count(domain) > max.
void check_budget(const DomainSpec& domain, std::uint64_t max_interps);

/// Desugared theory with every statement read as a formula.
struct CoreTheory {
    DomainSpec domain;
    std::vector<Formula> formulas;
};
CoreTheory prepare(const Theory& th);

struct HTModels {
    DomainSpec domain;
    std::vector<Interpretation> models;
};

struct StableModels {
    DomainSpec domain;
    std::vector<Valuation> models;
};

HTModels ht_models(const Theory& th, const SolveOptions& opts = {});
StableModels stable_models(const Theory& th, const SolveOptions& opts = {});
HTModels ht_models(const CoreTheory& core, const SolveOptions& opts = {});
StableModels stable_models(const CoreTheory& core, const SolveOptions& opts = {});

/// Serial AST-interpreter versions of the above.
HTModels ht_models_reference(const CoreTheory& core, const SolveOptions& opts = {});
StableModels stable_models_reference(const CoreTheory& core, const SolveOptions& opts = {});

bool is_model(const Interpretation& i, const CoreTheory& core);
bool is_stable(const Valuation& t, const CoreTheory& core);

/// Every defined variable of the program's own declarations has a
/// supporting rule: x := a..b in H(r) with v(a) <= v(x) <= v(b), v falsifies
/// the other assignments of H(r) for other variables, and v |= B(r).
/// `t` ranges over prepare(program).domain.
bool is_supported(const Valuation& t, const Theory& program);

}  // namespace htc
