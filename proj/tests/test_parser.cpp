#include <doctest.h>

#include "htc/generator.hpp"
#include "htc/parser.hpp"

using namespace htc;

TEST_SUITE("parser") {

TEST_CASE("declarations") {
    const Theory th = parse_theory("#int x, y. #int z -3..3. #bool p, q.");
    CHECK(th.domain.at("x").lo == 0);
    CHECK(th.domain.at("x").hi == 9);
    CHECK(th.domain.at("z").lo == -3);
    CHECK(th.domain.at("p").kind == VarKind::Bool);
    CHECK(th.statements.empty());
}

TEST_CASE("compound names and comments") {
    const Theory th = parse_theory(
        "% header\n"
        "#int total(r) 0..20.  #bool lives(p1, r).\n"
        "total(r) := 3 :- lives(p1,r).  % trailing\n");
    CHECK(th.domain.contains("total(r)"));
    CHECK(th.domain.contains("lives(p1,r)"));
    REQUIRE(th.rules().size() == 1);
    CHECK(th.rules()[0].head[0].target == "total(r)");
}

TEST_CASE("statement forms") {
    const Theory th = parse_theory(
        "#int x, y 0..3. #bool p.\n"
        "x := 1; y := 0..2 :- p, not x = 2.\n"
        ":- x = 3.\n"
        "p :- x > 1.\n"
        "x <= 2 | p.\n"
        "#false :- not p.\n");
    REQUIRE(th.statements.size() == 5);
    const auto& r = std::get<LCRule>(th.statements[0]);
    CHECK(r.head.size() == 2);
    CHECK(r.head[0].is_single());
    CHECK_FALSE(r.head[1].is_single());
    CHECK(r.body.size() == 2);
    CHECK(std::get<LCRule>(th.statements[1]).head.empty());
    CHECK(std::get<Formula>(th.statements[2]).kind() == Formula::Kind::Implies);
    CHECK(std::get<Formula>(th.statements[3]).kind() == Formula::Kind::Or);
}

TEST_CASE("terms") {
    const LinearExpr e = parse_expr("-2x + 3*y - (y|3:p) + 4");
    REQUIRE(e.terms.size() == 4);
    CHECK(std::get<LinearTerm>(e.terms[0]) == LinearTerm::scaled(-2, "x"));
    CHECK(std::get<LinearTerm>(e.terms[1]) == LinearTerm::scaled(3, "y"));
    const auto& ct = std::get<ConditionalTerm>(e.terms[2]);
    CHECK(ct.then_term == LinearTerm::scaled(-1, "y"));
    CHECK(ct.else_term == LinearTerm::constant(-3));
    CHECK(std::get<LinearTerm>(e.terms[3]) == LinearTerm::constant(4));
    CHECK(std::holds_alternative<UndefTerm>(parse_expr("#undef").terms[0]));
    const LinearExpr ce = parse_expr("2*count{ p ; x > 1 }");
    const auto& agg = std::get<Aggregate>(ce.terms[0]);
    CHECK(agg.function == AggFunction::Count);
    CHECK(agg.coef == 2);
    CHECK(agg.elements.size() == 2);
}

TEST_CASE("operator precedence") {
    const Formula f = parse_formula("p & q | not r -> s");
    REQUIRE(f.kind() == Formula::Kind::Implies);
    CHECK(f.lhs().kind() == Formula::Kind::Or);
    CHECK(f.lhs().lhs().kind() == Formula::Kind::And);
    CHECK(f.lhs().rhs().is_negation());
    const Formula g = parse_formula("p -> q -> r");
    CHECK(g.rhs().kind() == Formula::Kind::Implies);
}

TEST_CASE("errors carry positions") {
    try {
        parse_theory("#int x.\nx <= .");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 6);
        CHECK(std::string(e.what()).rfind("2:6:", 0) == 0);
    }
    CHECK_THROWS_AS(parse_theory("#int x 3..1."), ParseError);
    CHECK_THROWS_AS(parse_theory("#real x."), ParseError);
    CHECK_THROWS_AS(parse_theory("#int x. x <= 1"), ParseError);
    CHECK_THROWS_AS(parse_theory("#int x. x $ 1."), ParseError);
}

TEST_CASE("printer") {
    CHECK(pretty_print(parse_formula("x - (y|3:p) <= 4")) == "x - (y|3: p) <= 4");
    CHECK(pretty_print(parse_theory("#int x. x := 1 :- x >= 0.")) == "#int x 0..9.\nx := 1 :- x >= 0.\n");
    CHECK(pretty_print(parse_formula("q & r -> p")) == "q & r -> p");
    CHECK(pretty_print(Statement{parse_formula("q & r -> p")}) == "p :- q, r.");
}

TEST_CASE("print then parse is the identity on generated theories") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        Generator g(seed);
        Theory th = g.theory(3, 2);
        for (const auto& s : g.lc_program(2, true).statements) {
            th.statements.push_back(s);
        }
        const std::string text = pretty_print(th);
        INFO(text);
        const Theory back = parse_theory(text);
        CHECK(back == th);
        CHECK(pretty_print(back) == text);
    }
}

}
