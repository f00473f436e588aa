// Times HT-model and stable-model enumeration with the reference interpreter,
// the compiled engine on one thread, and the compiled engine under OpenMP.
//
//   htc_bench [FILE] [--repeat N]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>

#include <omp.h>

#include "htc/parser.hpp"
#include "htc/semantics.hpp"

using namespace htc;

namespace {

const char* kDefault =
    "#int w, x, y, z 0..6.\n"
    "#bool p, q.\n"
    "y = 3.\n"
    "x := y + 1 :- p.\n"
    "p :- not q, x - (y|1:q) <= 4.\n"
    "q :- not p.\n"
    "z := x .. x + 2 :- def(x), z != 5.\n"
    "w := (z|0:p) :- def(z).\n";

double time_ms(const std::function<std::size_t()>& run, int repeat, std::size_t& n) {
    double best = 1e300;
    for (int i = 0; i < repeat; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        n = run();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    std::string file;
    int repeat = 3;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--repeat") == 0 && i + 1 < argc) {
            repeat = std::atoi(argv[++i]);
        } else {
            file = argv[i];
        }
    }
    const Theory th = file.empty() ? parse_theory(kDefault) : parse_file(file);
    const CoreTheory core = prepare(th);
    std::printf("interpretations: %llu, threads: %d\n",
                static_cast<unsigned long long>(interpretation_count(core.domain)), omp_get_max_threads());

    SolveOptions serial;
    serial.jobs = 1;
    SolveOptions parallel;
    parallel.jobs = 0;

    struct Row {
        const char* name;
        std::function<std::size_t()> run;
    };
    const Row rows[] = {
        {"ht reference", [&] { return ht_models_reference(core, serial).models.size(); }},
        {"ht compiled serial", [&] { return ht_models(core, serial).models.size(); }},
        {"ht compiled openmp", [&] { return ht_models(core, parallel).models.size(); }},
        {"sm reference", [&] { return stable_models_reference(core, serial).models.size(); }},
        {"sm compiled serial", [&] { return stable_models(core, serial).models.size(); }},
        {"sm compiled openmp", [&] { return stable_models(core, parallel).models.size(); }},
    };
    for (const auto& r : rows) {
        std::size_t n = 0;
        const double ms = time_ms(r.run, repeat, n);
        std::printf("%-20s %10.2f ms  %zu models\n", r.name, ms, n);
    }
    return 0;
}
