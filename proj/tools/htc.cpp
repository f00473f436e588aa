// htc: solve, translate, compare and property-check .lc theories.
//
// Exit codes: 0 success, 1 usage or parse error, 2 enumeration budget
// exceeded, 3 a checked property does not hold (non-equivalence, suite
// violation).

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "htc/checker.hpp"
#include "htc/desugar.hpp"
#include "htc/parser.hpp"
#include "htc/semantics.hpp"
#include "htc/transforms.hpp"

namespace {

using nlohmann::json;
using namespace htc;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kBudget = 2;
constexpr int kViolation = 3;

std::set<std::string> declared(const DomainSpec& d) {
    std::set<std::string> out;
    for (const auto& v : d.vars()) {
        out.insert(v.name);
    }
    return out;
}

json to_json(const NamedValuation& v) {
    json out = json::object();
    for (const auto& [name, value] : v) {
        if (value == kTrue) {
            out[name] = true;
        } else {
            out[name] = value;
        }
    }
    return out;
}

std::string to_text(const NamedValuation& v) {
    std::string out = "{";
    for (const auto& [name, value] : v) {
        if (out.size() > 1) {
            out += ",";
        }
        out += "(" + name + "," + format_value(value) + ")";
    }
    return out + "}";
}

std::set<std::string> parse_csv(const std::string& csv) {
    std::set<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) {
            out.insert(item.substr(b, e - b + 1));
        }
    }
    return out;
}

struct SolveArgs {
    std::string file;
    bool ht = false;
    bool as_json = false;
    std::size_t models = 0;
    int jobs = 0;
    std::optional<std::uint64_t> max_interps;
};

SolveOptions options(int jobs, const std::optional<std::uint64_t>& max_interps) {
    SolveOptions o = SolveOptions::from_env();
    o.jobs = jobs;
    if (max_interps) {
        o.max_interps = *max_interps;
    }
    return o;
}

// Models are reported over the variables declared in the input; variables
// introduced by desugaring are projected out.
int cmd_solve(const SolveArgs& a) {
    const Theory th = parse_file(a.file);
    const auto keep = declared(th.domain);
    SolveOptions opts = options(a.jobs, a.max_interps);
    const CoreTheory core = prepare(th);

    if (a.ht) {
        std::vector<std::pair<NamedValuation, NamedValuation>> out;
        std::set<std::pair<NamedValuation, NamedValuation>> seen;
        for (const auto& m : ht_models(core, opts).models) {
            auto p = std::make_pair(project(core.domain, m.h, keep), project(core.domain, m.t, keep));
            if (seen.insert(p).second) {
                out.push_back(std::move(p));
            }
            if (a.models != 0 && out.size() >= a.models) {
                break;
            }
        }
        if (a.as_json) {
            json arr = json::array();
            for (const auto& [h, t] : out) {
                arr.push_back({{"h", to_json(h)}, {"t", to_json(t)}});
            }
            std::cout << json{{"ht_models", arr}}.dump() << "\n";
        } else {
            for (const auto& [h, t] : out) {
                std::cout << "<" << to_text(h) << ", " << to_text(t) << ">\n";
            }
            std::cout << "HT-models: " << out.size() << "\n";
        }
        return kOk;
    }

    std::vector<NamedValuation> out;
    std::set<NamedValuation> seen;
    for (const auto& t : stable_models(core, opts).models) {
        auto p = project(core.domain, t, keep);
        if (seen.insert(p).second) {
            out.push_back(std::move(p));
        }
        if (a.models != 0 && out.size() >= a.models) {
            break;
        }
    }
    if (a.as_json) {
        json arr = json::array();
        for (const auto& m : out) {
            arr.push_back(to_json(m));
        }
        std::cout << json{{"stable_models", arr}}.dump() << "\n";
    } else {
        for (const auto& m : out) {
            std::cout << to_text(m) << "\n";
        }
        std::cout << "stable models: " << out.size() << "\n";
    }
    return kOk;
}

struct TranslateArgs {
    std::string file;
    std::string pass;
    bool distribute = false;
};

Theory unfold_theory(const Theory& th, bool distribute) {
    Theory out;
    out.domain = th.domain;
    for (const auto& s : th.statements) {
        const auto* r = std::get_if<LCRule>(&s);
        if (r == nullptr) {
            out.statements.push_back(s);
        } else if (distribute) {
            for (const auto& h : to_htc_rules(*r)) {
                out.add(h.to_formula());
            }
        } else {
            for (auto& f : unfold_rule(*r)) {
                out.add(std::move(f));
            }
        }
    }
    return out;
}

int cmd_translate(const TranslateArgs& a) {
    Theory th = parse_file(a.file);
    NameSupply names(th.domain);
    if (a.pass == "desugar") {
        th = desugar(th, names);
    } else if (a.pass == "unfold") {
        th = unfold_theory(th, a.distribute);
    } else if (a.pass == "delta") {
        th = eliminate_conditionals(desugar_aggregates(th, names), names).combined();
    } else {
        th = desugar(th, names);
        th = unfold_theory(th, a.distribute);
        th = eliminate_conditionals(th, names).combined();
    }
    std::cout << pretty_print(th);
    return kOk;
}

struct CheckArgs {
    std::string left;
    std::string right;
    bool stable = false;
    bool strong = false;
    std::string project;
    int jobs = 0;
    std::optional<std::uint64_t> max_interps;
};

json report_json(const EquivReport& r) {
    static const char* kinds[] = {"ht", "stable", "strong"};
    json j;
    j["equal"] = r.equal;
    j["kind"] = kinds[static_cast<int>(r.kind)];
    if (r.projection) {
        j["projection"] = *r.projection;
    }
    if (r.kind == EquivReport::Kind::Strong) {
        j["contexts_checked"] = r.contexts_checked;
    }
    if (!r.equal) {
        json w;
        w["model_of"] = r.witness_in_left ? "left" : "right";
        if (r.ht_witness) {
            w["h"] = to_json(named(r.domain, r.ht_witness->h));
            w["t"] = to_json(named(r.domain, r.ht_witness->t));
        }
        if (r.stable_witness) {
            w["valuation"] = to_json(*r.stable_witness);
        }
        if (r.context) {
            w["context"] = pretty_print(*r.context);
        }
        j["witness"] = w;
    }
    j["summary"] = r.describe();
    return j;
}

int cmd_check(const CheckArgs& a) {
    const Theory left = parse_file(a.left);
    const Theory right = parse_file(a.right);
    const SolveOptions opts = options(a.jobs, a.max_interps);
    std::optional<std::set<std::string>> projection;
    if (!a.project.empty()) {
        projection = parse_csv(a.project);
    }
    EquivReport r;
    if (a.strong) {
        const auto x = projection ? *projection : declared(left.domain);
        r = strong_equiv_sampled(left, right, x, context_family(left.domain.restricted_to(x)), opts);
    } else if (a.stable || projection) {
        r = stable_equivalent(left, right, projection, opts);
    } else {
        r = equivalent(left, right, opts);
    }
    std::cout << json{{"report", report_json(r)}}.dump() << "\n";
    return r.equal ? kOk : kViolation;
}

struct PropsArgs {
    std::string suite;
    std::uint64_t seed = 1;
    std::size_t count = 100;
    int jobs = 0;
};

int cmd_props(const PropsArgs& a) {
    const PropertyReport r = run_property_suite(a.suite, a.seed, a.count, a.jobs);
    json j;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    j["items"] = r.items;
    j["checks"] = r.checks;
    j["violations"] = r.violations;
    if (r.counterexample) {
        const auto& c = *r.counterexample;
        j["counterexample"] = {
            {"index", c.index}, {"item_seed", c.item_seed}, {"theory", c.theory}, {"detail", c.detail}};
    }
    std::cout << json{{"report", j}}.dump() << "\n";
    return r.ok() ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Here-and-There with constraints: stable models, translations and checks"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "Enumerate stable models (or HT-models)");
    s->add_option("file", solve.file, "Input .lc file")->required();
    s->add_flag("--ht", solve.ht, "Enumerate HT-models instead of stable models");
    s->add_flag("--json", solve.as_json, "JSON output");
    s->add_option("--models", solve.models, "Stop after N models (0: all)");
    s->add_option("--jobs", solve.jobs, "Worker threads (0: OpenMP default)");
    s->add_option("--max-interps", solve.max_interps, "Enumeration budget (default 10^7, or HTC_MAX_INTERPS)");

    TranslateArgs tr;
    auto* t = app.add_subcommand("translate", "Print a transformed theory");
    t->add_option("file", tr.file, "Input .lc file")->required();
    t->add_option("--pass", tr.pass, "desugar, unfold, delta or all")
        ->required()
        ->check(CLI::IsMember({"desugar", "unfold", "delta", "all"}));
    t->add_flag("--distribute", tr.distribute, "Unfold into HTC-rules instead of implications");

    CheckArgs ck;
    auto* c = app.add_subcommand("check", "Compare two theories");
    c->add_option("left", ck.left, "First .lc file")->required();
    c->add_option("right", ck.right, "Second .lc file")->required();
    c->add_flag("--stable", ck.stable, "Compare stable models instead of HT-models");
    c->add_option("--project", ck.project, "Comma-separated projection variables");
    c->add_flag("--strong", ck.strong, "Projected strong equivalence over sampled contexts");
    c->add_option("--jobs", ck.jobs, "Worker threads");
    c->add_option("--max-interps", ck.max_interps, "Enumeration budget");

    PropsArgs pr;
    auto* p = app.add_subcommand("props", "Run a property suite");
    p->add_option("--suite", pr.suite, "Suite name")->required()->check(CLI::IsMember(property_suites()));
    p->add_option("--seed", pr.seed, "Random seed");
    p->add_option("--count", pr.count, "Number of generated items");
    p->add_option("--jobs", pr.jobs, "Worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (s->parsed()) return cmd_solve(solve);
        if (t->parsed()) return cmd_translate(tr);
        if (c->parsed()) return cmd_check(ck);
        return cmd_props(pr);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBudget;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
