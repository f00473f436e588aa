#pragma once

// Compiled form of a core theory. Formulas are flattened into a node array in
// post-order (shared subformulas compiled once), so truth values of every
// node at <t,t> and then at <h,t> are filled in by two linear sweeps.

#include <cstdint>
#include <vector>

#include "htc/semantics.hpp"

namespace htc {

class CompiledTheory {
public:
    CompiledTheory(const DomainSpec& domain, const std::vector<Formula>& formulas);

    struct Scratch {
        std::vector<std::uint8_t> tt;
        std::vector<std::uint8_t> ht;
    };
    Scratch scratch() const;

    /// Fills s.tt for t; true iff <t,t> satisfies every formula.
    bool total_model(const Value* t, Scratch& s) const;
    /// Needs s.tt filled for the same t.
    bool ht_model(const Value* h, const Value* t, Scratch& s) const;
    /// <t,t> is a model and no proper subvaluation h gives a model.
    bool stable(const Value* t, Scratch& s, Valuation& h_buf) const;

    std::size_t node_count() const { return nodes_.size(); }

private:
    enum class Op : std::uint8_t { Bot, Bool, Le, And, Or, Implies };
    struct Node {
        Op op;
        std::uint32_t a;
        std::uint32_t b;
    };
    static constexpr std::uint32_t kNoVar = UINT32_MAX;
    struct Code {
        Integer coef;
        std::uint32_t var;
        Integer else_coef;     // conditional terms only
        std::uint32_t else_var;
        std::uint32_t cond;    // kNoVar for plain linear terms
        bool undef;
    };
    struct Atom {
        std::uint32_t lhs_begin, lhs_end, rhs_begin, rhs_end;
    };

    struct Builder;
    std::uint32_t compile(const Formula& f, Builder& b);

    template <bool Total>
    void sweep(const Value* w, const std::vector<std::uint8_t>& tt, std::vector<std::uint8_t>& out) const;
    template <bool Total>
    bool expr_value(const Value* w, const std::uint8_t* sw, const std::uint8_t* tt, std::uint32_t begin,
                    std::uint32_t end, Integer& sum) const;

    std::vector<Node> nodes_;
    std::vector<Code> codes_;
    std::vector<Atom> atoms_;
    std::vector<std::uint32_t> roots_;
};

}  // namespace htc
