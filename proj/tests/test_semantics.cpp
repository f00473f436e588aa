#include <doctest.h>

#include <cstdlib>

#include "htc/generator.hpp"
#include "htc/parser.hpp"
#include "htc/semantics.hpp"
#include "oracle.hpp"

using namespace htc;

namespace {

Valuation val(const DomainSpec& d, const NamedValuation& m) { return make_valuation(d, m); }

std::set<Valuation> as_set(const std::vector<Valuation>& v) { return {v.begin(), v.end()}; }

std::set<std::pair<Valuation, Valuation>> as_set(const std::vector<Interpretation>& v) {
    std::set<std::pair<Valuation, Valuation>> out;
    for (const auto& i : v) {
        out.emplace(i.h, i.t);
    }
    return out;
}

}  // namespace

TEST_SUITE("semantics") {

TEST_CASE("valuation helpers") {
    DomainSpec d;
    d.add_int("y", 0, 9);
    d.add_bool("p");
    const Valuation v = val(d, {{"y", 5}, {"p", kTrue}});
    CHECK(format_valuation(d, v) == "{(p,t),(y,5)}");
    CHECK(named(d, v).size() == 2);
    CHECK(defined_count(v) == 2);
    CHECK(subset(val(d, {{"y", 5}}), v));
    CHECK_FALSE(subset(val(d, {{"y", 4}}), v));
    CHECK_THROWS_AS(val(d, {{"y", 10}}), SemanticError);
    CHECK_THROWS_AS(val(d, {{"z", 1}}), SemanticError);
}

TEST_CASE("atom x - (y|3:p) <= 4 at two valuations") {
    const Theory th = parse_theory("#int x, y 0..9. #bool p. x - (y|3:p) <= 4.");
    const Formula f = std::get<Formula>(th.statements[0]);
    const Valuation t = val(th.domain, {{"x", 7}, {"y", 0}});
    const Valuation t2 = val(th.domain, {{"x", 7}, {"y", 0}, {"p", kTrue}});
    // p false at t: the term is 3 and 7 - 3 <= 4; with p the term is y = 0.
    CHECK(satisfies({t, t}, f, th.domain));
    CHECK_FALSE(satisfies({t2, t2}, f, th.domain));
}

TEST_CASE("eval of a conditional term") {
    DomainSpec d;
    d.add_int("y", 0, 9);
    d.add_bool("p");
    const Term tau = parse_expr("(y|3:p)").terms[0];
    const Valuation none = empty_valuation(d);
    const Valuation p = val(d, {{"p", kTrue}});
    const Valuation py = val(d, {{"p", kTrue}, {"y", 2}});
    CHECK(*eval_term({py, py}, tau, d) == LinearTerm::scaled(1, "y"));
    CHECK(*eval_term({none, none}, tau, d) == LinearTerm::constant(3));
    // p holds at t but not at h: neither branch is selected.
    CHECK_FALSE(eval_term({none, p}, tau, d).has_value());
}

TEST_CASE("undefined arithmetic") {
    DomainSpec d;
    d.add_int("x", 0, 3);
    d.add_bool("p");
    const Valuation v = val(d, {{"p", kTrue}});
    CHECK_FALSE(eval_linear_expr(v, parse_expr("0*x"), d).has_value());
    CHECK_FALSE(eval_linear_expr(v, parse_expr("p + 1"), d).has_value());
    CHECK(*eval_linear_expr(v, parse_expr("2 + 3"), d) == 5);
    CHECK_FALSE(eval_linear_expr(v, parse_expr("#undef"), d).has_value());
    CHECK_FALSE(denotes(v, Comparison{parse_expr("0*x"), Relation::Le, parse_expr("1")}, d));
    CHECK(denotes(v, Comparison{parse_expr("1"), Relation::Def, {}}, d));
}

TEST_CASE("enumeration order") {
    DomainSpec d;
    d.add_int("a", 1, 2);
    d.add_bool("b");
    CHECK(valuation_count(d) == 6);
    CHECK(interpretation_count(d) == 15);
    const auto all = enumerate_valuations(d);
    REQUIRE(all.size() == 6);
    CHECK(all[0] == Valuation{kUndef, kUndef});
    CHECK(all[1] == Valuation{kUndef, kTrue});
    CHECK(all[2] == Valuation{1, kUndef});
    CHECK(all[5] == Valuation{2, kTrue});
    const auto subs = subvaluations(Valuation{2, kTrue});
    REQUIRE(subs.size() == 4);
    CHECK(subs[0] == Valuation{kUndef, kUndef});
    CHECK(subs[1] == Valuation{kUndef, kTrue});
    CHECK(subs[2] == Valuation{2, kUndef});
    CHECK(subs[3] == Valuation{2, kTrue});
}

TEST_CASE("budget") {
    const Theory th = parse_theory("#int a, b, c, d, e, f, g, h 0..99.");
    SolveOptions o;
    CHECK_THROWS_AS(stable_models(th, o), BudgetExceeded);
    o.max_interps = 10;
    CHECK_THROWS_AS(stable_models(parse_theory("#int x 0..9."), o), BudgetExceeded);
    setenv("HTC_MAX_INTERPS", "123", 1);
    CHECK(SolveOptions::from_env().max_interps == 123);
    unsetenv("HTC_MAX_INTERPS");
    CHECK(SolveOptions::from_env().max_interps == 10'000'000);
}

TEST_CASE("golden stable models") {
    auto sm = [](const char* text) {
        const Theory th = parse_theory(text);
        std::vector<std::string> out;
        const auto r = stable_models(th);
        for (const auto& t : r.models) {
            out.push_back(format_valuation(r.domain, t));
        }
        return out;
    };
    CHECK(sm("#int x, y 0..9. #bool p. y = 5. p :- sum{x : #true; y : #true} > 1.") ==
          std::vector<std::string>{"{(p,t),(y,5)}"});
    CHECK(sm("#int y 0..9. (y|0:#true) = 5.") == std::vector<std::string>{"{(y,5)}"});
    CHECK(sm("#int y 0..9. #bool p. (y|y:p) = 5. #false :- not p.") == std::vector<std::string>{"{(p,t),(y,5)}"});
    CHECK(sm("#int x 0..9. x := 1 :- sum{x : #true} >= 0.").empty());
    CHECK(sm("#bool p. p | not p.") == std::vector<std::string>{"{}", "{(p,t)}"});
    CHECK(sm("#bool p. not not p.").empty());
}

TEST_CASE("compiled engine, reference and oracle agree on random theories") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Generator g(seed);
        Theory th = g.theory(2, 2);
        th.add(g.lc_rule(2, 2, true));
        INFO(pretty_print(th));
        const CoreTheory core = prepare(th);
        const auto fast = ht_models(core);
        const auto ref = ht_models_reference(core);
        CHECK(fast.models == ref.models);
        CHECK(as_set(fast.models) == oracle::ht_models(th));
        const auto sfast = stable_models(core);
        CHECK(sfast.models == stable_models_reference(core).models);
        CHECK(as_set(sfast.models) == oracle::stable_models(th));
    }
}

TEST_CASE("thread count does not change the result") {
    Generator g(7);
    const Theory th = g.theory(3, 2);
    SolveOptions one;
    one.jobs = 1;
    SolveOptions four;
    four.jobs = 4;
    CHECK(ht_models(th, one).models == ht_models(th, four).models);
    CHECK(stable_models(th, one).models == stable_models(th, four).models);
    four.max_models = 3;
    const auto some = ht_models(th, four).models;
    const auto all = ht_models(th, one).models;
    CHECK(some.size() == std::min<std::size_t>(3, all.size()));
    CHECK(std::equal(some.begin(), some.end(), all.begin()));
}

TEST_CASE("is_model and is_stable") {
    const Theory th = parse_theory("#bool p, q. p :- not q.");
    const CoreTheory core = prepare(th);
    const Valuation p = val(th.domain, {{"p", kTrue}});
    const Valuation pq = val(th.domain, {{"p", kTrue}, {"q", kTrue}});
    CHECK(is_stable(p, core));
    CHECK_FALSE(is_stable(pq, core));
    CHECK(is_model({empty_valuation(th.domain), pq}, core));
}

TEST_CASE("supportedness of LC-programs") {
    const Theory th = parse_theory("#int x, y 0..3. x := 1. y := x..2 :- x >= 1.");
    const auto sm = stable_models(th);
    REQUIRE(sm.models.size() == 2);
    for (const auto& t : sm.models) {
        CHECK(is_supported(t, th));
    }
    CHECK_FALSE(is_supported(val(th.domain, {{"x", 1}, {"y", 3}}), th));
    CHECK_FALSE(is_supported(val(th.domain, {{"x", 2}}), th));
    CHECK(is_supported(val(th.domain, {{"x", 1}}), th));
}

}
