#include "htc/engine.hpp"

#include <stdexcept>
#include <unordered_map>

#include "htc/desugar.hpp"

namespace htc {

struct CompiledTheory::Builder {
    const DomainSpec& domain;
    std::unordered_map<const FormulaNode*, std::uint32_t> memo;
    std::vector<Formula> keep_alive;

    std::uint32_t var(const std::string& name) const {
        auto idx = domain.index_of(name);
        if (!idx) {
            throw SemanticError("undeclared variable '" + name + "'");
        }
        return static_cast<std::uint32_t>(*idx);
    }
};

CompiledTheory::CompiledTheory(const DomainSpec& domain, const std::vector<Formula>& formulas) {
    Builder b{domain, {}, {}};
    roots_.reserve(formulas.size());
    for (const auto& f : formulas) {
        roots_.push_back(compile(f, b));
    }
}

std::uint32_t CompiledTheory::compile(const Formula& f, Builder& b) {
    if (auto it = b.memo.find(&f.node()); it != b.memo.end()) {
        return it->second;
    }
    Node node{Op::Bot, 0, 0};
    switch (f.kind()) {
        case Formula::Kind::Bot: break;
        case Formula::Kind::Bool:
            node = {Op::Bool, b.var(f.bool_name()), 0};
            break;
        case Formula::Kind::Compare: {
            const auto& c = f.comparison();
            if (c.rel != Relation::Le) {
                Formula core = desugar_comparisons(f);
                b.keep_alive.push_back(core);
                std::uint32_t id = compile(core, b);
                b.memo.emplace(&f.node(), id);
                return id;
            }
            // Conditions first so they precede the atom in the sweep.
            std::vector<std::uint32_t> conds;
            for (const auto* side : {&c.lhs, &c.rhs}) {
                for (const auto& t : side->terms) {
                    if (const auto* ct = std::get_if<ConditionalTerm>(&t)) {
                        conds.push_back(compile(ct->condition, b));
                    }
                }
            }
            std::size_t next_cond = 0;
            auto emit = [&](const LinearExpr& e) {
                for (const auto& t : e.terms) {
                    Code code{0, kNoVar, 0, kNoVar, kNoVar, false};
                    if (const auto* lt = std::get_if<LinearTerm>(&t)) {
                        code.coef = lt->coef;
                        code.var = lt->is_constant() ? kNoVar : b.var(lt->var);
                    } else if (const auto* ct = std::get_if<ConditionalTerm>(&t)) {
                        code.coef = ct->then_term.coef;
                        code.var = ct->then_term.is_constant() ? kNoVar : b.var(ct->then_term.var);
                        code.else_coef = ct->else_term.coef;
                        code.else_var = ct->else_term.is_constant() ? kNoVar : b.var(ct->else_term.var);
                        code.cond = conds[next_cond++];
                    } else if (std::holds_alternative<UndefTerm>(t)) {
                        code.undef = true;
                    } else {
                        throw std::invalid_argument("aggregates must be desugared before solving");
                    }
                    codes_.push_back(code);
                }
            };
            Atom atom{};
            atom.lhs_begin = static_cast<std::uint32_t>(codes_.size());
            emit(c.lhs);
            atom.lhs_end = atom.rhs_begin = static_cast<std::uint32_t>(codes_.size());
            emit(c.rhs);
            atom.rhs_end = static_cast<std::uint32_t>(codes_.size());
            atoms_.push_back(atom);
            node = {Op::Le, static_cast<std::uint32_t>(atoms_.size() - 1), 0};
            break;
        }
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies: {
            std::uint32_t l = compile(f.lhs(), b);
            std::uint32_t r = compile(f.rhs(), b);
            Op op = f.kind() == Formula::Kind::And ? Op::And : f.kind() == Formula::Kind::Or ? Op::Or : Op::Implies;
            node = {op, l, r};
            break;
        }
    }
    nodes_.push_back(node);
    auto id = static_cast<std::uint32_t>(nodes_.size() - 1);
    b.memo.emplace(&f.node(), id);
    return id;
}

CompiledTheory::Scratch CompiledTheory::scratch() const {
    return Scratch{std::vector<std::uint8_t>(nodes_.size()), std::vector<std::uint8_t>(nodes_.size())};
}

template <bool Total>
bool CompiledTheory::expr_value(const Value* w, const std::uint8_t* sw, const std::uint8_t* tt, std::uint32_t begin,
                                std::uint32_t end, Integer& sum) const {
    sum = 0;
    for (std::uint32_t i = begin; i < end; ++i) {
        const Code& c = codes_[i];
        if (c.undef) {
            return false;
        }
        Integer coef = c.coef;
        std::uint32_t var = c.var;
        if (c.cond != kNoVar) {
            if (sw[c.cond] == 0) {
                if (Total || tt[c.cond] == 0) {
                    coef = c.else_coef;
                    var = c.else_var;
                } else {
                    return false;
                }
            }
        }
        if (var == kNoVar) {
            sum += coef;
            continue;
        }
        Value v = w[var];
        if (!is_integer(v)) {
            return false;
        }
        sum += coef * v;
    }
    return true;
}

template <bool Total>
void CompiledTheory::sweep(const Value* w, const std::vector<std::uint8_t>& tt, std::vector<std::uint8_t>& out) const {
    std::uint8_t* s = out.data();
    const std::uint8_t* t = Total ? s : tt.data();
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        switch (n.op) {
            case Op::Bot: s[i] = 0; break;
            case Op::Bool: s[i] = w[n.a] == kTrue ? 1 : 0; break;
            case Op::Le: {
                const Atom& a = atoms_[n.a];
                Integer l = 0;
                Integer r = 0;
                s[i] = expr_value<Total>(w, s, t, a.lhs_begin, a.lhs_end, l) &&
                               expr_value<Total>(w, s, t, a.rhs_begin, a.rhs_end, r) && l <= r
                           ? 1
                           : 0;
                break;
            }
            case Op::And: s[i] = s[n.a] & s[n.b]; break;
            case Op::Or: s[i] = s[n.a] | s[n.b]; break;
            case Op::Implies:
                s[i] = ((s[n.a] == 0 || s[n.b] != 0) && (Total || t[n.a] == 0 || t[n.b] != 0)) ? 1 : 0;
                break;
        }
    }
}

bool CompiledTheory::total_model(const Value* t, Scratch& s) const {
    sweep<true>(t, s.tt, s.tt);
    for (auto r : roots_) {
        if (s.tt[r] == 0) {
            return false;
        }
    }
    return true;
}

bool CompiledTheory::ht_model(const Value* h, const Value* /*t*/, Scratch& s) const {
    sweep<false>(h, s.tt, s.ht);
    for (auto r : roots_) {
        if (s.ht[r] == 0) {
            return false;
        }
    }
    return true;
}

bool CompiledTheory::stable(const Value* t, Scratch& s, Valuation& h_buf) const {
    if (!total_model(t, s)) {
        return false;
    }
    std::vector<std::size_t> defined;
    for (std::size_t i = 0; i < h_buf.size(); ++i) {
        if (is_defined(t[i])) {
            defined.push_back(i);
        }
    }
    const std::size_t k = defined.size();
    const std::uint64_t full = (std::uint64_t{1} << k) - 1;
    for (std::uint64_t mask = 0; mask < full; ++mask) {
        for (std::size_t j = 0; j < h_buf.size(); ++j) {
            h_buf[j] = kUndef;
        }
        for (std::size_t j = 0; j < k; ++j) {
            if ((mask >> (k - 1 - j)) & 1U) {
                h_buf[defined[j]] = t[defined[j]];
            }
        }
        if (ht_model(h_buf.data(), t, s)) {
            return false;
        }
    }
    return true;
}

}  // namespace htc
