#include <doctest.h>

#include <algorithm>

#include "htc/checker.hpp"
#include "htc/desugar.hpp"
#include "htc/generator.hpp"
#include "htc/parser.hpp"
#include "htc/transforms.hpp"
#include "oracle.hpp"

using namespace htc;

namespace {

std::vector<std::string> printed(const std::vector<Formula>& fs) {
    std::vector<std::string> out;
    for (const auto& f : fs) {
        out.push_back(pretty_print(Statement{f}));
    }
    return out;
}

Assignment assignment_of(const char* text) {
    const Theory th = parse_theory(std::string("#int x, y, z 0..3. ") + text);
    return th.rules().at(0).head.at(0);
}

}  // namespace

TEST_SUITE("desugar") {

TEST_CASE("comparison sugar") {
    CHECK(pretty_print(desugar_comparisons(parse_formula("x = y"))) == "x <= y & y <= x");
    CHECK(pretty_print(desugar_comparisons(parse_formula("def(x + 1)"))) == "x + 1 <= x + 1");
    CHECK(is_core(desugar_comparisons(parse_formula("x != 1 | x > 2 -> y >= 3 & y < 1"))));
}

TEST_CASE("sum and count") {
    const LinearExpr se = parse_expr("sum{ x : p ; 2*y }");
    const auto& agg = std::get<Aggregate>(se.terms[0]);
    const LinearExpr e = desugar_sum(agg);
    REQUIRE(e.terms.size() == 2);
    CHECK(pretty_print(e) == "(x|0: p & def(x)) + (2*y|0: def(2*y))");
    CHECK(desugar_sum(Aggregate{}) == LinearExpr::constant(0));
    const LinearExpr ce = parse_expr("count{ p ; q }");
    const auto& cnt = std::get<Aggregate>(ce.terms[0]);
    CHECK(pretty_print(desugar_sum(desugar_count(cnt))) == "(1|0: p & def(1)) + (1|0: q & def(1))");
}

TEST_CASE("fresh names skip declared ones") {
    DomainSpec d;
    d.add_int("__min0", 0, 1);
    NameSupply names(d);
    CHECK(names.fresh(NameSupply::kMinPrefix) == "__min1");
    CHECK(names.fresh(NameSupply::kMinPrefix) == "__min2");
    CHECK(names.fresh(NameSupply::kCondPrefix) == "__c0");
}

TEST_CASE("min and max agree with brute force over small multisets") {
    // Exhaustive over two elements with values u, -3..3; the encoding is
    // solved and the fresh variable compared with the multiset extremum.
    for (auto fn : {AggFunction::Min, AggFunction::Max}) {
        for (int a = -4; a <= 3; ++a) {
            for (int b = -4; b <= 3; ++b) {
                Theory th;
                th.domain.add_int("a", -3, 3);
                th.domain.add_int("b", -3, 3);
                std::vector<Integer> defined;
                if (a >= -3) {
                    th.add(parse_formula(("a = " + std::to_string(a)).c_str()));
                    defined.push_back(a);
                }
                if (b >= -3) {
                    th.add(parse_formula(("b = " + std::to_string(b)).c_str()));
                    defined.push_back(b);
                }
                Aggregate agg{fn, {{LinearTerm::scaled(1, "a"), Formula::top()}, {LinearTerm::scaled(1, "b"), Formula::top()}}, 1};
                NameSupply names(th.domain);
                const auto enc = desugar_minmax(agg, names, th.domain);
                CHECK(enc.fresh.lo == -3);
                CHECK(enc.fresh.hi == 3);
                th.domain.add(enc.fresh);
                for (const auto& f : enc.side) {
                    th.add(f);
                }
                const auto sm = stable_models(th);
                REQUIRE(sm.models.size() == 1);
                const Value got = sm.models[0][*sm.domain.index_of(enc.fresh.name)];
                if (defined.empty()) {
                    CHECK(got == kUndef);
                } else if (fn == AggFunction::Min) {
                    CHECK(got == *std::min_element(defined.begin(), defined.end()));
                } else {
                    CHECK(got == *std::max_element(defined.begin(), defined.end()));
                }
            }
        }
    }
}

TEST_CASE("min inside a theory") {
    const Theory th = parse_theory("#int x, y, z -1..2. x = 2. y = -1. z = min{ x ; y }.");
    const auto sm = stable_models(th);
    REQUIRE(sm.models.size() == 1);
    CHECK(format_valuation(sm.domain, sm.models[0]) == "{(__min0,-1),(x,2),(y,-1),(z,-1)}");
}

TEST_CASE("desugared theory is core") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Generator g(seed);
        const Theory d = desugar(g.lc_program(3, true));
        for (const auto& s : d.statements) {
            const auto& r = std::get<LCRule>(s);
            for (const auto& b : r.body) {
                CHECK(is_core(b));
            }
        }
    }
}

}

TEST_SUITE("transforms") {

TEST_CASE("assignment formulas") {
    const Assignment single = assignment_of("x := y + 1.");
    CHECK(pretty_print(phi(single)) == "y + 1 <= x & x <= y + 1");
    CHECK(pretty_print(def_of(single)) == "def(y + 1)");
    const Assignment range = assignment_of("x := y..z.");
    CHECK(pretty_print(def_of(range)) == "def(y) & def(z)");
    CHECK(pretty_print(assignment_formula(range)) ==
          "not not (def(y) & def(z)) & (def(y) & def(z) -> y <= x & x <= z)");
}

TEST_CASE("assignment laws against the oracle") {
    // A & def(A) and Phi(A) have the same HT-models, as have not A and not Phi(A).
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Generator g(seed);
        const Assignment a = g.assignment();
        INFO(pretty_print(a));
        const Theory base{g.domain(), {}};
        auto models = [&](const Formula& f) {
            Theory th = base;
            th.add(f);
            return oracle::ht_models(th);
        };
        const Formula af = oracle::assignment(a);
        CHECK(models(Formula::conj(af, def_of(a))) == models(phi(a)));
        CHECK(models(Formula::negate(af)) == models(Formula::negate(phi(a))));
        CHECK(models(af) == models(assignment_formula(a)));
    }
}

TEST_CASE("unfolding a single assignment") {
    const Theory th = parse_theory("#int total(r) 0..9. #int a 0..9. #bool region(r). total(r) := a :- region(r).");
    const auto psi = unfold_rule(th.rules()[0]);
    CHECK(printed(psi) == std::vector<std::string>{
                              "a <= total(r) & total(r) <= a :- region(r), def(a).",
                              "#false :- region(r), not (a <= total(r) & total(r) <= a).",
                          });
}

TEST_CASE("unfolding order and size") {
    const Theory th = parse_theory("#int x, y, z 0..2. x := 1; y := 2; z := 0.");
    const auto psi = unfold_rule(th.rules()[0]);
    REQUIRE(psi.size() == 8);
    CHECK(pretty_print(Statement{psi.front()}).find("not") == std::string::npos);
    CHECK(pretty_print(Statement{psi.back()}).rfind("#false :-", 0) == 0);
    LCRule big;
    for (int i = 0; i < 11; ++i) {
        big.head.push_back(th.rules()[0].head[0]);
    }
    CHECK_THROWS_AS(unfold_rule(big), std::length_error);
}

TEST_CASE("distribution yields literal rules") {
    const Formula f = parse_formula("(p | not q) & not (x <= 1 & r) -> (x <= 2 & y <= 1) | not not s");
    const auto rules = distribute(f);
    CHECK_FALSE(rules.empty());
    auto literal = [](const Formula& l) {
        auto atom = [](const Formula& a) {
            return a.kind() == Formula::Kind::Compare || a.kind() == Formula::Kind::Bool;
        };
        if (l.is_negation()) {
            const Formula& o = l.negated_operand();
            return atom(o) || (o.is_negation() && atom(o.negated_operand()));
        }
        return atom(l);
    };
    for (const auto& r : rules) {
        for (const auto& l : r.head) {
            CHECK(literal(l));
        }
        for (const auto& l : r.body) {
            CHECK(literal(l));
        }
    }
    Theory a;
    a.domain.add_int("x", 0, 2);
    a.domain.add_int("y", 0, 2);
    for (const char* b : {"p", "q", "r", "s"}) {
        a.domain.add_bool(b);
    }
    Theory b = a;
    a.add(f);
    for (const auto& r : rules) {
        b.add(r.to_formula());
    }
    CHECK(oracle::ht_models(a) == oracle::ht_models(b));
}

TEST_CASE("normal form of linear constraints") {
    const Formula cf = parse_formula("2*x + 3 <= y - 1");
    const auto& c = cf.comparison();
    CHECK(pretty_print(Formula::compare(normalize_constraint(c))) == "2*x - y <= -4");
    const Formula kf = parse_formula("3 <= 5");
    const auto& k = kf.comparison();
    CHECK(pretty_print(Formula::compare(normalize_constraint(k))) == "0 <= 2");
    const auto [lo, hi] = normalize_equality(parse_formula("x = y + 2").comparison());
    CHECK(pretty_print(Formula::compare(lo)) == "x - y <= 2");
    CHECK(pretty_print(Formula::compare(hi)) == "y - x <= -2");
}

TEST_CASE("delta of (y|3:p)") {
    const LinearExpr te = parse_expr("(y|3:p)");
    const auto& ct = std::get<ConditionalTerm>(te.terms[0]);
    CHECK(printed(delta(ct, "x")) == std::vector<std::string>{
                                         "x = y :- p, def(y).",
                                         "x = 3 :- not p, def(3).",
                                         "x = y :- p, def(x).",
                                         "x = 3 :- not p, def(x).",
                                         "p; not p :- def(x).",
                                     });
}

TEST_CASE("conditional elimination names and domains") {
    const Theory th = parse_theory("#int x, y 0..9. #bool p. x - (y|3:p) <= 4. (2*y|x:p) >= (1|y:#true).");
    const DeltaResult r = eliminate_conditionals(th);
    REQUIRE(r.mapping.size() == 3);
    CHECK(r.mapping[0].second == "__c0");
    CHECK(r.mapping[1].second == "__c1");
    CHECK(r.mapping[2].second == "__c2");
    CHECK(r.side.size() == 15);
    CHECK(r.rewritten.domain.at("__c0").lo == 0);
    CHECK(r.rewritten.domain.at("__c0").hi == 9);
    CHECK(r.rewritten.domain.at("__c1").hi == 18);
    CHECK(pretty_print(r.rewritten.statements[0]) == "x - __c0 <= 4.");
    CHECK(r.mapping[0].first.then_term == LinearTerm::scaled(1, "y"));
    for (const auto& s : r.combined().statements) {
        CHECK_FALSE(has_conditionals(statement_formula(s)));
    }
    CHECK_THROWS_AS(eliminate_conditionals(parse_theory("#int x. x <= sum{x}.")), std::invalid_argument);
}

TEST_CASE("delta solves the conditional examples") {
    auto projected = [](const Theory& th, const std::set<std::string>& keep) {
        std::set<NamedValuation> out;
        const auto sm = stable_models(th);
        for (const auto& t : sm.models) {
            out.insert(project(sm.domain, t, keep));
        }
        return out;
    };
    const Theory yc = parse_theory("#int y 0..9. (y|0:#true) = 5.");
    const Theory yd = eliminate_conditionals(yc).combined();
    const auto sm = stable_models(yd);
    REQUIRE(sm.models.size() == 1);
    CHECK(format_valuation(sm.domain, sm.models[0]) == "{(__c0,5),(y,5)}");
    CHECK(projected(yd, {"y"}) == projected(yc, {"y"}));

    // Keeping only the first two implications loses y.
    const DeltaResult dr = eliminate_conditionals(yc);
    Theory weak = dr.rewritten;
    weak.add(dr.side[0]);
    weak.add(dr.side[1]);
    const auto wsm = stable_models(weak);
    REQUIRE(wsm.models.size() == 1);
    CHECK(format_valuation(wsm.domain, wsm.models[0]) == "{(__c0,5)}");
}

TEST_CASE("observation: x takes the value of tau in every model of delta") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Generator g(seed);
        const ConditionalTerm tau = g.conditional_term();
        Theory th{g.domain(), {}};
        th.domain.add_int("xt", -4, 4);
        for (const auto& f : delta(tau, "xt")) {
            th.add(f);
        }
        const oracle::Evaluator ev{th.domain};
        const std::size_t xi = *th.domain.index_of("xt");
        for (const auto& [h, t] : oracle::ht_models(th)) {
            auto vh = ev.term(h, t, Term{tau});
            auto vt = ev.term(t, t, Term{tau});
            CHECK(h[xi] == (vh ? *vh : kUndef));
            CHECK(t[xi] == (vt ? *vt : kUndef));
        }
    }
}

}
