#include "htc/syntax.hpp"

#include <algorithm>

namespace htc {

// ---------------------------------------------------------------------------
// DomainSpec

void DomainSpec::add(const VarDecl& decl) {
    if (decl.name.empty()) {
        throw SemanticError("empty variable name");
    }
    if (decl.kind == VarKind::Int && decl.lo > decl.hi) {
        throw SemanticError("empty interval for variable '" + decl.name + "': " +
                            std::to_string(decl.lo) + ".." + std::to_string(decl.hi));
    }
    auto it = std::lower_bound(vars_.begin(), vars_.end(), decl.name,
                               [](const VarDecl& d, const std::string& n) { return d.name < n; });
    if (it != vars_.end() && it->name == decl.name) {
        if (!(*it == decl)) {
            throw SemanticError("conflicting declarations for variable '" + decl.name + "'");
        }
        return;
    }
    vars_.insert(it, decl);
}

void DomainSpec::add_int(const std::string& name, Integer lo, Integer hi) {
    add(VarDecl{name, VarKind::Int, lo, hi});
}

void DomainSpec::add_bool(const std::string& name) { add(VarDecl{name, VarKind::Bool, 0, 0}); }

const VarDecl* DomainSpec::find(const std::string& name) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), name,
                               [](const VarDecl& d, const std::string& n) { return d.name < n; });
    if (it != vars_.end() && it->name == name) {
        return &*it;
    }
    return nullptr;
}

bool DomainSpec::contains(const std::string& name) const { return find(name) != nullptr; }

const VarDecl& DomainSpec::at(const std::string& name) const {
    if (const auto* d = find(name)) {
        return *d;
    }
    throw SemanticError("undeclared variable '" + name + "'");
}

std::optional<std::size_t> DomainSpec::index_of(const std::string& name) const {
    if (const auto* d = find(name)) {
        return static_cast<std::size_t>(d - vars_.data());
    }
    return std::nullopt;
}

void DomainSpec::merge(const DomainSpec& other) {
    for (const auto& d : other.vars_) {
        add(d);
    }
}

DomainSpec DomainSpec::restricted_to(const std::set<std::string>& names) const {
    DomainSpec out;
    for (const auto& d : vars_) {
        if (names.count(d.name) != 0) {
            out.vars_.push_back(d);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Formula

namespace {

const std::shared_ptr<const FormulaNode>& bot_node() {
    static const auto node = std::make_shared<const FormulaNode>(FormulaNode{BotNode{}});
    return node;
}

}  // namespace

Formula::Formula() : node_(bot_node()) {}

Formula Formula::bot() { return Formula(); }

Formula Formula::top() { return implies(bot(), bot()); }

Formula Formula::boolean(std::string name) {
    return Formula(std::make_shared<const FormulaNode>(FormulaNode{BoolNode{std::move(name)}}));
}

Formula Formula::compare(Comparison c) {
    return Formula(std::make_shared<const FormulaNode>(FormulaNode{std::move(c)}));
}

Formula Formula::conj(Formula a, Formula b) {
    return Formula(std::make_shared<const FormulaNode>(
        FormulaNode{BinaryNode{Kind::And, std::move(a), std::move(b)}}));
}

Formula Formula::disj(Formula a, Formula b) {
    return Formula(std::make_shared<const FormulaNode>(
        FormulaNode{BinaryNode{Kind::Or, std::move(a), std::move(b)}}));
}

Formula Formula::implies(Formula a, Formula b) {
    return Formula(std::make_shared<const FormulaNode>(
        FormulaNode{BinaryNode{Kind::Implies, std::move(a), std::move(b)}}));
}

Formula Formula::negate(Formula a) { return implies(std::move(a), bot()); }

Formula Formula::iff(Formula a, Formula b) {
    return conj(implies(a, b), implies(b, a));
}

Formula Formula::conj_all(const std::vector<Formula>& fs) {
    if (fs.empty()) {
        return top();
    }
    Formula out = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) {
        out = conj(out, fs[i]);
    }
    return out;
}

Formula Formula::disj_all(const std::vector<Formula>& fs) {
    if (fs.empty()) {
        return bot();
    }
    Formula out = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) {
        out = disj(out, fs[i]);
    }
    return out;
}

Formula::Kind Formula::kind() const {
    switch (node_->data.index()) {
        case 0: return Kind::Bot;
        case 1: return Kind::Compare;
        case 2: return Kind::Bool;
        default: return std::get<BinaryNode>(node_->data).op;
    }
}

const Comparison& Formula::comparison() const {
    if (const auto* c = std::get_if<Comparison>(&node_->data)) {
        return *c;
    }
    throw std::logic_error("formula is not a comparison");
}

const std::string& Formula::bool_name() const {
    if (const auto* b = std::get_if<BoolNode>(&node_->data)) {
        return b->name;
    }
    throw std::logic_error("formula is not a Boolean atom");
}

const Formula& Formula::lhs() const {
    if (const auto* b = std::get_if<BinaryNode>(&node_->data)) {
        return b->lhs;
    }
    throw std::logic_error("formula has no operands");
}

const Formula& Formula::rhs() const {
    if (const auto* b = std::get_if<BinaryNode>(&node_->data)) {
        return b->rhs;
    }
    throw std::logic_error("formula has no operands");
}

bool Formula::is_top() const {
    return kind() == Kind::Implies && lhs().is_bot() && rhs().is_bot();
}

bool Formula::is_negation() const {
    return kind() == Kind::Implies && rhs().is_bot() && !lhs().is_bot();
}

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) {
        return true;
    }
    return node_->data == other.node_->data;
}

// ---------------------------------------------------------------------------
// Theory

bool Theory::is_lc_program() const {
    return std::all_of(statements.begin(), statements.end(),
                       [](const Statement& s) { return std::holds_alternative<LCRule>(s); });
}

std::vector<LCRule> Theory::rules() const {
    std::vector<LCRule> out;
    for (const auto& s : statements) {
        if (const auto* r = std::get_if<LCRule>(&s)) {
            out.push_back(*r);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Queries

namespace {

void collect(const LinearTerm& t, std::set<std::string>& out) {
    if (!t.is_constant()) {
        out.insert(t.var);
    }
}

void collect(const Formula& f, std::set<std::string>& out);

void collect(const Term& t, std::set<std::string>& out) {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LinearTerm>) {
                collect(v, out);
            } else if constexpr (std::is_same_v<T, ConditionalTerm>) {
                collect(v.then_term, out);
                collect(v.else_term, out);
                collect(v.condition, out);
            } else if constexpr (std::is_same_v<T, Aggregate>) {
                for (const auto& e : v.elements) {
                    collect(e.term, out);
                    collect(e.condition, out);
                }
            }
        },
        t);
}

void collect(const LinearExpr& e, std::set<std::string>& out) {
    for (const auto& t : e.terms) {
        collect(t, out);
    }
}

void collect(const Formula& f, std::set<std::string>& out) {
    switch (f.kind()) {
        case Formula::Kind::Bot: break;
        case Formula::Kind::Bool: out.insert(f.bool_name()); break;
        case Formula::Kind::Compare:
            collect(f.comparison().lhs, out);
            collect(f.comparison().rhs, out);
            break;
        default:
            collect(f.lhs(), out);
            collect(f.rhs(), out);
    }
}

template <class Pred>
bool any_term(const Formula& f, const Pred& pred) {
    switch (f.kind()) {
        case Formula::Kind::Bot:
        case Formula::Kind::Bool: return false;
        case Formula::Kind::Compare: {
            const auto& c = f.comparison();
            for (const auto* e : {&c.lhs, &c.rhs}) {
                for (const auto& t : e->terms) {
                    if (pred(t)) return true;
                }
            }
            return false;
        }
        default: return any_term(f.lhs(), pred) || any_term(f.rhs(), pred);
    }
}

void collect_conditionals(const LinearExpr& e, std::vector<ConditionalTerm>& out) {
    for (const auto& t : e.terms) {
        if (const auto* c = std::get_if<ConditionalTerm>(&t)) {
            out.push_back(*c);
        }
    }
}

void collect_conditionals(const Formula& f, std::vector<ConditionalTerm>& out) {
    switch (f.kind()) {
        case Formula::Kind::Bot:
        case Formula::Kind::Bool: break;
        case Formula::Kind::Compare:
            collect_conditionals(f.comparison().lhs, out);
            collect_conditionals(f.comparison().rhs, out);
            break;
        default:
            collect_conditionals(f.lhs(), out);
            collect_conditionals(f.rhs(), out);
    }
}

}  // namespace

std::set<std::string> free_vars(const LinearTerm& t) {
    std::set<std::string> out;
    collect(t, out);
    return out;
}

std::set<std::string> free_vars(const Term& t) {
    std::set<std::string> out;
    collect(t, out);
    return out;
}

std::set<std::string> free_vars(const LinearExpr& e) {
    std::set<std::string> out;
    collect(e, out);
    return out;
}

std::set<std::string> free_vars(const Formula& f) {
    std::set<std::string> out;
    collect(f, out);
    return out;
}

std::set<std::string> free_vars(const Assignment& a) {
    std::set<std::string> out{a.target};
    collect(a.lower, out);
    collect(a.upper, out);
    return out;
}

std::set<std::string> free_vars(const LCRule& r) {
    std::set<std::string> out;
    for (const auto& a : r.head) {
        auto vs = free_vars(a);
        out.insert(vs.begin(), vs.end());
    }
    for (const auto& b : r.body) {
        collect(b, out);
    }
    return out;
}

std::set<std::string> free_vars(const Theory& th) {
    std::set<std::string> out;
    for (const auto& s : th.statements) {
        auto vs = std::visit([](const auto& x) { return free_vars(x); }, s);
        out.insert(vs.begin(), vs.end());
    }
    return out;
}

bool has_conditionals(const Formula& f) {
    return any_term(f, [](const Term& t) {
        return std::holds_alternative<ConditionalTerm>(t) || std::holds_alternative<Aggregate>(t);
    });
}

bool has_conditionals(const LinearExpr& e) {
    return std::any_of(e.terms.begin(), e.terms.end(), [](const Term& t) {
        return std::holds_alternative<ConditionalTerm>(t) || std::holds_alternative<Aggregate>(t);
    });
}

bool has_aggregates(const Formula& f) {
    return any_term(f, [](const Term& t) { return std::holds_alternative<Aggregate>(t); });
}

bool has_aggregates(const LinearExpr& e) {
    return std::any_of(e.terms.begin(), e.terms.end(),
                       [](const Term& t) { return std::holds_alternative<Aggregate>(t); });
}

bool is_core(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Bot:
        case Formula::Kind::Bool: return true;
        case Formula::Kind::Compare: {
            const auto& c = f.comparison();
            if (c.rel != Relation::Le) return false;
            for (const auto* e : {&c.lhs, &c.rhs}) {
                for (const auto& t : e->terms) {
                    if (std::holds_alternative<Aggregate>(t) || std::holds_alternative<UndefTerm>(t)) {
                        return false;
                    }
                    if (const auto* ct = std::get_if<ConditionalTerm>(&t); ct && !is_core(ct->condition)) {
                        return false;
                    }
                }
            }
            return true;
        }
        default: return is_core(f.lhs()) && is_core(f.rhs());
    }
}

std::vector<ConditionalTerm> conditional_terms(const Formula& f) {
    std::vector<ConditionalTerm> out;
    collect_conditionals(f, out);
    return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void check_int_var(const std::string& name, const DomainSpec& domain) {
    const auto* d = domain.find(name);
    if (d == nullptr) {
        throw SemanticError("undeclared variable '" + name + "'");
    }
}

void validate_term(const LinearTerm& t, const DomainSpec& domain) {
    if (!t.is_constant()) {
        check_int_var(t.var, domain);
    }
}

void validate_expr(const LinearExpr& e, const DomainSpec& domain, bool inside_condition);

void validate_formula(const Formula& f, const DomainSpec& domain, bool inside_condition) {
    switch (f.kind()) {
        case Formula::Kind::Bot: return;
        case Formula::Kind::Bool: {
            const auto* d = domain.find(f.bool_name());
            if (d == nullptr) {
                throw SemanticError("undeclared variable '" + f.bool_name() + "'");
            }
            if (d->kind != VarKind::Bool) {
                throw SemanticError("integer variable '" + f.bool_name() + "' used as a Boolean atom");
            }
            return;
        }
        case Formula::Kind::Compare: {
            const auto& c = f.comparison();
            if (c.lhs.terms.empty() || (c.rel != Relation::Def && c.rhs.terms.empty())) {
                throw SemanticError("empty linear expression");
            }
            validate_expr(c.lhs, domain, inside_condition);
            if (c.rel != Relation::Def) {
                validate_expr(c.rhs, domain, inside_condition);
            }
            return;
        }
        default:
            validate_formula(f.lhs(), domain, inside_condition);
            validate_formula(f.rhs(), domain, inside_condition);
    }
}

void validate_expr(const LinearExpr& e, const DomainSpec& domain, bool inside_condition) {
    for (const auto& t : e.terms) {
        if (const auto* lt = std::get_if<LinearTerm>(&t)) {
            validate_term(*lt, domain);
        } else if (const auto* ct = std::get_if<ConditionalTerm>(&t)) {
            if (inside_condition) {
                throw SemanticError("nested conditional expressions are not allowed");
            }
            validate_term(ct->then_term, domain);
            validate_term(ct->else_term, domain);
            validate_formula(ct->condition, domain, true);
        } else if (const auto* agg = std::get_if<Aggregate>(&t)) {
            if (inside_condition) {
                throw SemanticError("aggregates are not allowed inside conditions");
            }
            for (const auto& el : agg->elements) {
                validate_term(el.term, domain);
                validate_formula(el.condition, domain, true);
            }
        }
    }
}

}  // namespace

void validate(const Formula& f, const DomainSpec& domain) { validate_formula(f, domain, false); }

void validate(const Theory& th) {
    for (const auto& s : th.statements) {
        if (const auto* f = std::get_if<Formula>(&s)) {
            validate(*f, th.domain);
            continue;
        }
        const auto& r = std::get<LCRule>(s);
        for (const auto& a : r.head) {
            const auto& d = th.domain.at(a.target);
            if (d.kind != VarKind::Int) {
                throw SemanticError("assignment target '" + a.target + "' is not an integer variable");
            }
            validate_expr(a.lower, th.domain, false);
            validate_expr(a.upper, th.domain, false);
            if (a.lower.terms.empty() || a.upper.terms.empty()) {
                throw SemanticError("empty assignment bound");
            }
        }
        for (const auto& b : r.body) {
            validate(b, th.domain);
        }
    }
}

// ---------------------------------------------------------------------------
// Builders

Formula le(LinearExpr a, LinearExpr b) {
    return Formula::compare(Comparison{std::move(a), Relation::Le, std::move(b)});
}

Formula rel(LinearExpr a, Relation r, LinearExpr b) {
    return Formula::compare(Comparison{std::move(a), r, std::move(b)});
}

Formula def(LinearExpr a) {
    return Formula::compare(Comparison{std::move(a), Relation::Def, {}});
}

}  // namespace htc
