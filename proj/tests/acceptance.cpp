// One line per acceptance criterion; exit status 1 if any fails.

#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "htc/checker.hpp"
#include "htc/parser.hpp"
#include "htc/semantics.hpp"
#include "htc/transforms.hpp"

using namespace htc;

namespace {

constexpr std::uint64_t kSeed = 1;

std::vector<std::string> stable(const Theory& th) {
    std::vector<std::string> out;
    const auto sm = stable_models(th);
    for (const auto& t : sm.models) {
        out.push_back(format_valuation(sm.domain, t));
    }
    return out;
}

std::set<NamedValuation> projected(const Theory& th, const std::set<std::string>& keep) {
    std::set<NamedValuation> out;
    const auto sm = stable_models(th);
    for (const auto& t : sm.models) {
        out.insert(project(sm.domain, t, keep));
    }
    return out;
}

bool suite_clean(const char* name, std::size_t count, std::string& note) {
    const PropertyReport r = run_property_suite(name, kSeed, count);
    note += std::string(name) + ": " + std::to_string(r.items) + " items, " + std::to_string(r.violations) +
            " violations; ";
    if (r.counterexample) {
        note += r.counterexample->detail + " in\n" + r.counterexample->theory;
    }
    return r.ok();
}

bool golden_sum(std::string& note) {
    const auto sm = stable(parse_theory("#int x, y 0..9. #bool p. y = 5. p :- sum{ x : #true ; y : #true } > 1."));
    note = sm.empty() ? "no stable model" : sm.front();
    return sm == std::vector<std::string>{"{(p,t),(y,5)}"};
}

bool golden_cond(std::string& note) {
    const Theory th = parse_theory("#int y 0..9. (y|0:#true) = 5.");
    const Theory d = eliminate_conditionals(th).combined();
    const auto a = stable(th);
    const auto b = stable(d);
    note = "original " + (a.empty() ? "-" : a.front()) + ", translated " + (b.empty() ? "-" : b.front());
    return a == std::vector<std::string>{"{(y,5)}"} && b == std::vector<std::string>{"{(__c0,5),(y,5)}"} &&
           projected(d, {"y"}) == projected(th, {"y"});
}

bool golden_otherwise(std::string& note) {
    const Theory th = parse_theory("#int y 0..9. #bool p. (y|y:p) = 5. #false :- not p.");
    const DeltaResult dr = eliminate_conditionals(th);
    const std::string x = dr.mapping.at(0).second;

    Theory four = dr.rewritten;
    for (std::size_t i = 0; i < 4; ++i) {
        four.add(dr.side[i]);
    }
    const Theory full = dr.combined();
    const DomainSpec& d = full.domain;
    const Interpretation spurious{make_valuation(d, {{"y", 5}, {x, 5}}),
                                  make_valuation(d, {{"p", kTrue}, {"y", 5}, {x, 5}})};
    const bool four_admits = is_model(spurious, prepare(four));
    const bool full_rejects = !is_model(spurious, prepare(full));
    const std::set<std::string> keep{"p", "y"};
    const bool restored = projected(full, keep) == projected(th, keep);
    const bool four_differs = projected(four, keep) != projected(th, keep);
    const auto sm = stable(th);
    note = std::string("stable model ") + (sm.empty() ? "-" : sm.front()) + "; four-formula variant admits <h',t'>: " +
           (four_admits ? "yes" : "no") + ", loses the stable model: " + (four_differs ? "yes" : "no") +
           "; full delta restores projected stable models: " + (restored ? "yes" : "no");
    return sm == std::vector<std::string>{"{(p,t),(y,5)}"} && four_admits && full_rejects && restored;
}

bool golden_vicious(std::string& note) {
    const auto sm = stable(parse_theory("#int x 0..9. x := 1 :- sum{ x : #true } >= 0."));
    note = std::to_string(sm.size()) + " stable models";
    return sm.empty();
}

bool golden_atom(std::string& note) {
    const Theory th = parse_theory("#int x, y 0..9. #bool p. x - (y|3:p) <= 4.");
    const Formula f = std::get<Formula>(th.statements[0]);
    const Valuation t = make_valuation(th.domain, {{"x", 7}, {"y", 0}});
    const Valuation t2 = make_valuation(th.domain, {{"x", 7}, {"y", 0}, {"p", kTrue}});
    const bool a = satisfies({t, t}, f, th.domain);
    const bool b = satisfies({t2, t2}, f, th.domain);
    note = std::string("t: ") + (a ? "true" : "false") + ", t': " + (b ? "true" : "false");
    return a && !b;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool(std::string&)> run;
    };
    const std::vector<Criterion> criteria = {
        {"sum golden: unique stable model {(p,t),(y,5)}", golden_sum},
        {"(y|0:#true) = 5 and its translation", golden_cond},
        {"(y|y:p) = 5 needs the fifth implication", golden_otherwise},
        {"x := 1 :- sum{x} >= 0 has no stable model", golden_vicious},
        {"x - (y|3:p) <= 4 at t and t'", golden_atom},
        {"rule vs unfolding, 200 random LC-rules", [](std::string& n) { return suite_clean("unfolding", 200, n); }},
        {"translation faithfulness, 100 random theories",
         [](std::string& n) { return suite_clean("delta-faithfulness", 100, n); }},
        {"persistence and negation, 200 random formulas",
         [](std::string& n) {
             const bool a = suite_clean("persistence", 200, n);
             return suite_clean("negation", 200, n) && a;
         }},
        {"stable models are supported, 100 random LC-programs",
         [](std::string& n) { return suite_clean("supportedness", 100, n); }},
        {"denotation conditions 1-5, 200 random atoms",
         [](std::string& n) { return suite_clean("denotation-laws", 200, n); }},
        {"min/max encodings vs brute force", [](std::string& n) { return suite_clean("minmax", 0, n); }},
        {"assignment laws, 50 random assignments",
         [](std::string& n) { return suite_clean("assignments", 50, n); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string note;
        bool ok = false;
        try {
            ok = criteria[i].run(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        failed += ok ? 0 : 1;
        std::printf("%s %2zu  %s  (%s)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].name, note.c_str());
    }
    return failed == 0 ? 0 : 1;
}
