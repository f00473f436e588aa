#pragma once

// Abstract syntax of HT-with-constraints theories: linear terms, conditional
// terms, aggregates, linear expressions, formulas, assignments and LC-rules.
//
// Every node is immutable once built. Formula wraps a shared pointer to a
// const node, so copies are cheap and values can be shared across threads.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace htc {

using Integer = std::int64_t;

/// Raised for ill-formed input that is not a pure syntax error
/// (undeclared variables, nested conditionals, bad declarations, ...).
class SemanticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Domain declarations

enum class VarKind : std::uint8_t { Int, Bool };

struct VarDecl {
    std::string name;
    VarKind kind = VarKind::Int;
    Integer lo = 0;
    Integer hi = 0;

    /// Number of domain values (an integer interval, or the single truth value).
    std::uint64_t size() const {
        return kind == VarKind::Bool ? 1 : static_cast<std::uint64_t>(hi - lo + 1);
    }
    bool operator==(const VarDecl&) const = default;
};

/// Finite universe of variables. Variables are kept sorted by name; that order
/// is the variable order used everywhere (valuation layout, enumeration order).
class DomainSpec {
public:
    static constexpr Integer kDefaultLo = 0;
    static constexpr Integer kDefaultHi = 9;

    /// Declares an integer variable. Redeclaring with the same interval is a
    /// no-op; any other redeclaration throws SemanticError.
    void add_int(const std::string& name, Integer lo, Integer hi);
    void add_bool(const std::string& name);
    void add(const VarDecl& decl);

    bool contains(const std::string& name) const;
    const VarDecl* find(const std::string& name) const;
    const VarDecl& at(const std::string& name) const;
    std::optional<std::size_t> index_of(const std::string& name) const;

    const std::vector<VarDecl>& vars() const { return vars_; }
    std::size_t size() const { return vars_.size(); }
    bool empty() const { return vars_.empty(); }

    /// Declarations of `other` are added; conflicting declarations throw.
    void merge(const DomainSpec& other);
    DomainSpec restricted_to(const std::set<std::string>& names) const;

    bool operator==(const DomainSpec&) const = default;

private:
    std::vector<VarDecl> vars_;
};

// ---------------------------------------------------------------------------
// Terms and expressions

/// `d` (var empty) or `d*x`. A product 0*x is kept as is: it is undefined
/// whenever x is.
struct LinearTerm {
    Integer coef = 0;
    std::string var;

    static LinearTerm constant(Integer d) { return {d, {}}; }
    static LinearTerm scaled(Integer d, std::string x) { return {d, std::move(x)}; }

    bool is_constant() const { return var.empty(); }
    LinearTerm negated() const { return {-coef, var}; }
    bool operator==(const LinearTerm&) const = default;
};

class Formula;
struct FormulaNode;
struct Comparison;

/// Stand-in for a term that evaluated to "undefined".
struct UndefTerm {
    bool operator==(const UndefTerm&) const = default;
};

enum class AggFunction : std::uint8_t { Sum, Count, Min, Max };

class Formula {
public:
    enum class Kind : std::uint8_t { Bot, Compare, Bool, And, Or, Implies };

    Formula();  // ⊥

    static Formula bot();
    static Formula top();
    static Formula boolean(std::string name);
    static Formula compare(Comparison c);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula implies(Formula a, Formula b);
    static Formula negate(Formula a);
    static Formula iff(Formula a, Formula b);

    /// Left-nested conjunction/disjunction; empty lists give ⊤ resp. ⊥.
    static Formula conj_all(const std::vector<Formula>& fs);
    static Formula disj_all(const std::vector<Formula>& fs);

    Kind kind() const;
    const FormulaNode& node() const { return *node_; }

    // Accessors; calling them on the wrong kind throws std::logic_error.
    const Comparison& comparison() const;
    const std::string& bool_name() const;
    const Formula& lhs() const;
    const Formula& rhs() const;

    bool is_bot() const { return kind() == Kind::Bot; }
    bool is_top() const;
    /// φ → ⊥ (and not ⊤).
    bool is_negation() const;
    const Formula& negated_operand() const { return lhs(); }

    bool operator==(const Formula& other) const;

private:
    explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const FormulaNode> node_;
};

/// (then | else : condition). Branches are linear terms; the condition must be
/// condition-free.
struct ConditionalTerm {
    LinearTerm then_term;
    LinearTerm else_term;
    Formula condition;

    ConditionalTerm scaled(Integer k) const {
        return {{then_term.coef * k, then_term.var}, {else_term.coef * k, else_term.var}, condition};
    }
    bool operator==(const ConditionalTerm&) const = default;
};

struct AggElement {
    LinearTerm term;  // Const(1) for count
    Formula condition;
    bool operator==(const AggElement&) const = default;
};

/// Surface aggregate used as a term: coef * fn{ e1 : f1 ; ... }.
struct Aggregate {
    AggFunction function = AggFunction::Sum;
    std::vector<AggElement> elements;
    Integer coef = 1;
    bool operator==(const Aggregate&) const = default;
};

using Term = std::variant<LinearTerm, ConditionalTerm, Aggregate, UndefTerm>;

/// A finite sum of terms. Order is preserved and duplicates are kept.
struct LinearExpr {
    std::vector<Term> terms;

    LinearExpr() = default;
    LinearExpr(std::vector<Term> ts) : terms(std::move(ts)) {}
    LinearExpr(LinearTerm t) : terms{Term{std::move(t)}} {}
    LinearExpr(ConditionalTerm t) : terms{Term{std::move(t)}} {}
    static LinearExpr constant(Integer d) { return LinearExpr(LinearTerm::constant(d)); }
    static LinearExpr variable(std::string x, Integer coef = 1) {
        return LinearExpr(LinearTerm::scaled(coef, std::move(x)));
    }

    bool operator==(const LinearExpr&) const = default;
};

enum class Relation : std::uint8_t { Le, Lt, Eq, Ne, Ge, Gt, Def };

/// `lhs rel rhs`, or `def(lhs)` (rhs unused) for Relation::Def.
struct Comparison {
    LinearExpr lhs;
    Relation rel = Relation::Le;
    LinearExpr rhs;
    bool operator==(const Comparison&) const = default;
};

struct BinaryNode {
    Formula::Kind op;
    Formula lhs;
    Formula rhs;
    bool operator==(const BinaryNode&) const = default;
};

struct BotNode {
    bool operator==(const BotNode&) const = default;
};

struct BoolNode {
    std::string name;
    bool operator==(const BoolNode&) const = default;
};

struct FormulaNode {
    std::variant<BotNode, Comparison, BoolNode, BinaryNode> data;
};

// ---------------------------------------------------------------------------
// Programs

/// x := lower .. upper (x := e is the case lower == upper).
struct Assignment {
    std::string target;
    LinearExpr lower;
    LinearExpr upper;

    bool is_single() const { return lower == upper; }
    bool operator==(const Assignment&) const = default;
};

/// A1; ...; An :- L1, ..., Lk. Body entries are literals: constraint atoms or
/// their negations (after desugaring, a literal may be a small conjunction).
struct LCRule {
    std::vector<Assignment> head;
    std::vector<Formula> body;
    bool operator==(const LCRule&) const = default;
};

using Statement = std::variant<Formula, LCRule>;

/// A theory: declarations plus statements. A theory whose statements are all
/// LC-rules is an LC-program.
struct Theory {
    DomainSpec domain;
    std::vector<Statement> statements;

    bool is_lc_program() const;
    std::vector<LCRule> rules() const;
    void add(Formula f) { statements.emplace_back(std::move(f)); }
    void add(LCRule r) { statements.emplace_back(std::move(r)); }

    bool operator==(const Theory&) const = default;
};

// ---------------------------------------------------------------------------
// Queries

/// Syntactic variable collection, including variables in conditions.
std::set<std::string> free_vars(const LinearTerm& t);
std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const LinearExpr& e);
std::set<std::string> free_vars(const Formula& f);
std::set<std::string> free_vars(const Assignment& a);
std::set<std::string> free_vars(const LCRule& r);
std::set<std::string> free_vars(const Theory& th);

bool has_conditionals(const Formula& f);
bool has_conditionals(const LinearExpr& e);
bool has_aggregates(const Formula& f);
bool has_aggregates(const LinearExpr& e);

/// True iff every comparison uses ≤, no aggregates remain and no UndefTerm
/// markers appear.
bool is_core(const Formula& f);

/// Checks that every variable is declared with the right kind, that
/// conditions are condition-free and aggregate elements are condition-free.
/// Throws SemanticError.
void validate(const Theory& th);
void validate(const Formula& f, const DomainSpec& domain);

/// All conditional-term occurrences, left to right.
std::vector<ConditionalTerm> conditional_terms(const Formula& f);

// Small builders used across modules.
Formula le(LinearExpr a, LinearExpr b);
Formula rel(LinearExpr a, Relation r, LinearExpr b);
Formula def(LinearExpr a);

}  // namespace htc
