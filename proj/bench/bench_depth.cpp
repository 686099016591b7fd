// Serial reference vs OpenMP certificate kernels.
//
//   bench_depth [--quick] [--reps K]
//
// Prints one line per workload with both timings and the speedup; exits 1 if
// the two kernels ever disagree.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rfl/depth.hpp"
#include "rfl/forbidden.hpp"
#include "rfl/source.hpp"

using namespace rfl;

namespace {

Source everything() {
    return parse_source(
        "alphabet: 0 1\nnodes: q\ninitial: q\nterminal: all\nedge: q 0 q\nedge: q 1 q\n");
}

Source avoiding(const std::string& alpha) {
    auto sigma = binary_alphabet();
    return build_avoidance_source({sigma.parse_word(alpha), sigma});
}

double seconds(const std::function<std::size_t()>& f, std::size_t& result, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        result = f();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

struct Workload {
    std::string name;
    Source src;
    std::size_t n;
    bool membership;
};

}  // namespace

int main(int argc, char** argv) {
    bool quick = false;
    int reps = 3;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--quick")) quick = true;
        else if (!std::strcmp(argv[i], "--reps") && i + 1 < argc) reps = std::atoi(argv[++i]);
    }
    if (quick) reps = 1;

    std::vector<Workload> work;
    if (quick) {
        work = {{"ra  E*     n=8", everything(), 8, false},
                {"ma  L(00)  n=8", avoiding("00"), 8, true}};
    } else {
        work = {{"ra  E*     n=12", everything(), 12, false},
                {"ra  L(00)  n=16", avoiding("00"), 16, false},
                {"ra  L(010) n=14", avoiding("010"), 14, false},
                {"ma  L(00)  n=12", avoiding("00"), 12, true},
                {"ma  L(011) n=12", avoiding("011"), 12, true}};
    }

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("threads: %d, best of %d\n", threads, reps);
    std::printf("%-18s %10s %12s %12s %8s\n", "workload", "value", "serial[s]", "openmp[s]", "speedup");

    bool agree = true;
    for (const auto& w : work) {
        auto lang = depth::slice(w.src, w.n);
        std::size_t vs = 0, vp = 0;
        double ts = seconds([&] { return w.membership ? depth::serial::h_ma(lang) : depth::serial::h_ra(lang); },
                            vs, reps);
        double tp = seconds(
            [&] { return w.membership ? depth::parallel::h_ma(lang) : depth::parallel::h_ra(lang); }, vp, reps);
        std::printf("%-18s %10zu %12.4f %12.4f %8.2f%s\n", w.name.c_str(), vs, ts, tp, ts / tp,
                    vs == vp ? "" : "  MISMATCH");
        agree = agree && vs == vp;
    }
    return agree ? 0 : 1;
}
