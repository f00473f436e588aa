#pragma once

// Equivalence oracles and property suites.
//
// equivalent compares HT-model sets, stable_equivalent compares (projected)
// stable-model sets, and strong_equiv_sampled repeats the latter under a
// finite family of contexts. A sampled check can only find counterexamples;
// "equal" means none was found in the family.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "htc/semantics.hpp"
#include "htc/transforms.hpp"

namespace htc {

struct EquivReport {
    enum class Kind : std::uint8_t { Ht, Stable, Strong };

    Kind kind = Kind::Ht;
    bool equal = true;
    /// Domain the witness is expressed in.
    DomainSpec domain;
    /// HT-model of exactly one side (Kind::Ht).
    std::optional<Interpretation> ht_witness;
    /// Projected stable model of exactly one side (Kind::Stable, Kind::Strong).
    std::optional<NamedValuation> stable_witness;
    /// True when the witness is a model of the left theory.
    bool witness_in_left = false;
    std::optional<std::set<std::string>> projection;
    /// Context under which the sides differ (Kind::Strong).
    std::optional<Theory> context;
    std::size_t contexts_checked = 0;

    std::string describe() const;
};

/// Statements of both, declarations merged.
Theory theory_union(const Theory& a, const Theory& b);

/// HT-model sets over the merged domain. The witness is the first differing
/// interpretation in enumeration order.
EquivReport equivalent(const Theory& a, const Theory& b, const SolveOptions& opts = {});
EquivReport equivalent(const CoreTheory& a, const CoreTheory& b, const SolveOptions& opts = {});

/// SM(a)|X = SM(b)|X. Without X the union of both declared variable sets is
/// used, so fresh variables of one side are compared as undefined.
EquivReport stable_equivalent(const Theory& a, const Theory& b,
                              const std::optional<std::set<std::string>>& projection = std::nullopt,
                              const SolveOptions& opts = {});

/// Contexts over the variables of `x_domain`, in order: the empty theory,
/// every fact (x = d for integers, p for Booleans), every rule a :- b over two
/// distinct Boolean atoms, then pairwise unions of the non-empty ones. The
/// list is cut at `cap` entries.
std::vector<Theory> context_family(const DomainSpec& x_domain, std::size_t cap = 256);

/// stable_equivalent(a + D, b + D, X) for every context D.
EquivReport strong_equiv_sampled(const Theory& a, const Theory& b, const std::set<std::string>& projection,
                                 const std::vector<Theory>& contexts, const SolveOptions& opts = {});

/// Supportedness for an HTC-program: every defined variable x has a rule r
/// and a non-negated head atom c with x in vars(c), v falsifies every head
/// literal not mentioning x, and v |= B(r). All checks are at <v,v>.
bool is_supported_htc(const Valuation& v, const std::vector<HTCRule>& program, const DomainSpec& domain);

/// Greedy shrinking: drops statements while `fails` still holds, then drops
/// declarations no statement mentions.
Theory shrink(const Theory& th, const std::function<bool(const Theory&)>& fails);

// ---------------------------------------------------------------------------
// Property suites

struct Counterexample {
    std::size_t index = 0;
    std::uint64_t item_seed = 0;
    std::string theory;  // pretty-printed, shrunk where possible
    std::string detail;
};

struct PropertyReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t items = 0;
    std::uint64_t checks = 0;
    std::size_t violations = 0;
    std::optional<Counterexample> counterexample;

    bool ok() const { return violations == 0; }
};

std::vector<std::string> property_suites();

/// Runs `count` seeded items of a suite (items are independent and run in
/// parallel; the reported counterexample is the one with the lowest index).
/// The minmax suite is exhaustive and ignores `count`.
/// Throws std::invalid_argument for an unknown suite.
PropertyReport run_property_suite(const std::string& suite, std::uint64_t seed, std::size_t count, int jobs = 0);

}  // namespace htc
