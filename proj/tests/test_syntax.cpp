#include <doctest.h>

#include "htc/parser.hpp"
#include "htc/syntax.hpp"

using namespace htc;

TEST_SUITE("syntax") {

TEST_CASE("domain keeps variables sorted by name") {
    DomainSpec d;
    d.add_int("y", 0, 9);
    d.add_bool("p");
    d.add_int("x", -2, 2);
    REQUIRE(d.size() == 3);
    CHECK(d.vars()[0].name == "p");
    CHECK(d.vars()[1].name == "x");
    CHECK(d.vars()[2].name == "y");
    CHECK(*d.index_of("y") == 2);
    CHECK(d.at("x").size() == 5);
    CHECK(d.at("p").size() == 1);
    CHECK_FALSE(d.index_of("z").has_value());
}

TEST_CASE("redeclaration") {
    DomainSpec d;
    d.add_int("x", 0, 3);
    CHECK_NOTHROW(d.add_int("x", 0, 3));
    CHECK_THROWS_AS(d.add_int("x", 0, 4), SemanticError);
    CHECK_THROWS_AS(d.add_bool("x"), SemanticError);
    CHECK_THROWS_AS(d.add_int("z", 3, 2), SemanticError);
}

TEST_CASE("merge and restriction") {
    DomainSpec a;
    a.add_int("x", 0, 2);
    DomainSpec b;
    b.add_bool("p");
    b.add_int("x", 0, 2);
    a.merge(b);
    CHECK(a.size() == 2);
    CHECK(a.restricted_to({"p"}).size() == 1);
    DomainSpec c;
    c.add_int("x", 0, 5);
    CHECK_THROWS_AS(a.merge(c), SemanticError);
}

TEST_CASE("formula constructors") {
    const Formula p = Formula::boolean("p");
    CHECK(Formula::top().is_top());
    CHECK_FALSE(Formula::top().is_negation());
    CHECK(Formula::negate(p).is_negation());
    CHECK(Formula::negate(p).negated_operand() == p);
    CHECK(Formula::conj_all({}).is_top());
    CHECK(Formula::disj_all({}).is_bot());
    CHECK(Formula::conj_all({p}) == p);
    CHECK(Formula::conj(p, p).kind() == Formula::Kind::And);
    CHECK(Formula::iff(p, p).kind() == Formula::Kind::And);
}

TEST_CASE("free variables include conditions") {
    const Formula f = parse_formula("x - (y|3:p) <= 4");
    CHECK(free_vars(f) == std::set<std::string>{"p", "x", "y"});
    CHECK(has_conditionals(f));
    CHECK_FALSE(has_aggregates(f));
    CHECK(is_core(f));
    CHECK_FALSE(is_core(parse_formula("x - (y|3:p) < 4")));
    CHECK(conditional_terms(f).size() == 1);
    CHECK(is_core(parse_formula("x + 2*y <= 3 | p")));
    CHECK_FALSE(is_core(parse_formula("x < 3")));
    CHECK(has_aggregates(parse_formula("sum{x; y} > 1")));
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(parse_theory("#int x. y <= 1."), SemanticError);
    CHECK_THROWS_AS(parse_theory("#int x. x."), SemanticError);
    CHECK_THROWS_AS(parse_theory("#int x, y. #bool p. (x|(y|1:p) <= 1:p) <= 1."), std::exception);
    CHECK_THROWS_AS(parse_theory("#bool p. p := 1."), SemanticError);
    CHECK_NOTHROW(parse_theory("#int x. #bool p. x + p <= 1."));
}

TEST_CASE("theory classification") {
    CHECK(parse_theory("#int x. x := 1. x := 2 :- x >= 1.").is_lc_program());
    CHECK_FALSE(parse_theory("#int x. x := 1. x >= 1.").is_lc_program());
    CHECK(parse_theory("#int x. x := 1. x := 2 :- x >= 1.").rules().size() == 2);
}

}
