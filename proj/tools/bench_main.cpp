// Timing table for the optimized kernels against the serial reference
// implementations, single- and multi-threaded. Also cross-checks that the
// variants agree: the optimized kernels must match the reference to
// rounding, and must match themselves bitwise across thread counts.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "sqrtn/lattice.hpp"
#include "sqrtn/ref.hpp"
#include "sqrtn/rng.hpp"
#include "sqrtn/seq.hpp"
#include "sqrtn/stats.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

template <typename F>
double time_s(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void row(const char* name, std::size_t size, double ref_s, double opt1_s, double optp_s,
         bool agree, bool bitwise) {
    char refbuf[32];
    if (ref_s < 0.0)
        std::snprintf(refbuf, sizeof refbuf, "%12s", "-");
    else
        std::snprintf(refbuf, sizeof refbuf, "%12.3f", ref_s);
    std::printf("%-26s %10zu %s %12.3f %12.3f %9s %9s\n", name, size, refbuf, opt1_s, optp_s,
                agree ? "ok" : "MISMATCH", bitwise ? "exact" : "DRIFT");
    if (!agree || !bitwise) ++failures;
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--quick") == 0) quick = true;
#ifdef _OPENMP
    int P = omp_get_max_threads();
#else
    int P = 1;
#endif
    std::printf("threads for parallel column: %d%s\n\n", P, quick ? " (quick sizes)" : "");
    std::printf("%-26s %10s %12s %12s %12s %9s %9s\n", "kernel", "size", "ref_s", "opt1_s",
                "optP_s", "value", "repro");

    // pair correlation, reference-checked size
    {
        auto seq = sqrtn::generate(quick ? 4000 : 20000, 0.0);
        auto f = sqrtn::TestFunction::indicator(sqrtn::Interval::half_open(0.0, 1.0));
        double r_ref = 0.0, r1 = 0.0, rp = 0.0;
        double t_ref = time_s([&] { r_ref = sqrtn::ref::pair_correlation(seq, f); });
        double t1 = time_s([&] { r1 = sqrtn::pair_correlation(seq, f, 1); });
        double tp = time_s([&] { rp = sqrtn::pair_correlation(seq, f, P); });
        row("pair correlation", seq.N(), t_ref, t1, tp, std::fabs(r_ref - r1) < 1e-9, r1 == rp);
    }

    // pair correlation at full scale, optimized only
    {
        auto seq = sqrtn::generate(quick ? 200000 : 1000000, 0.0, P);
        auto f = sqrtn::TestFunction::indicator(sqrtn::Interval::half_open(0.0, 1.0));
        double r1 = 0.0, rp = 0.0;
        double t1 = time_s([&] { r1 = sqrtn::pair_correlation(seq, f, 1); });
        double tp = time_s([&] { rp = sqrtn::pair_correlation(seq, f, P); });
        row("pair correlation (big)", seq.N(), -1.0, t1, tp, true, r1 == rp);
    }

    // window count moment over a grid of alphas
    {
        auto seq = sqrtn::generate(quick ? 20000 : 100000, 0.0, P);
        sqrtn::Box box{sqrtn::Interval::half_open(0.0, 1.0)};
        std::vector<double> svec{1.0};
        auto sampler = sqrtn::AlphaSampler::uniform_grid(quick ? 100 : 500);
        double r_ref = 0.0, r1 = 0.0, rp = 0.0;
        double t_ref = time_s([&] { r_ref = sqrtn::ref::mixed_moment(seq, box, svec, sampler); });
        double t1 = time_s([&] { r1 = sqrtn::mixed_moment(seq, box, svec, sampler, 1); });
        double tp = time_s([&] { rp = sqrtn::mixed_moment(seq, box, svec, sampler, P); });
        row("window moment", seq.N(), t_ref, t1, tp, std::fabs(r_ref - r1) < 1e-9, r1 == rp);
    }

    // window count moment at full scale, optimized only
    {
        auto seq = sqrtn::generate(quick ? 200000 : 1000000, 0.0, P);
        sqrtn::Box box{sqrtn::Interval::half_open(0.0, 1.0)};
        std::vector<double> svec{1.0};
        auto sampler = sqrtn::AlphaSampler::uniform_grid(quick ? 20000 : 100000);
        double r1 = 0.0, rp = 0.0;
        double t1 = time_s([&] { r1 = sqrtn::mixed_moment(seq, box, svec, sampler, 1); });
        double tp = time_s([&] { rp = sqrtn::mixed_moment(seq, box, svec, sampler, P); });
        row("window moment (big)", seq.N(), -1.0, t1, tp, true, r1 == rp);
    }

    // random-lattice triangle counts
    {
        std::size_t n_ref = quick ? 500 : 2000;
        sqrtn::Interval I = sqrtn::Interval::half_open(0.0, 1.0);
        sqrtn::Triangle tri = sqrtn::Triangle::process(I);
        double mean_ref = 0.0;
        double t_ref = time_s([&] {
            sqrtn::HaarSampler hs(7);
            double s = 0.0;
            for (std::size_t i = 0; i < n_ref; ++i)
                s += static_cast<double>(sqrtn::ref::count_in_triangle(hs.sample(), tri));
            mean_ref = s / static_cast<double>(n_ref);
        });
        double mean_fast = 0.0;
        double t_fast = time_s([&] {
            sqrtn::HaarSampler hs(7);
            double s = 0.0;
            for (std::size_t i = 0; i < n_ref; ++i)
                s += static_cast<double>(sqrtn::count_in_triangle(hs.sample(), tri));
            mean_fast = s / static_cast<double>(n_ref);
        });
        row("triangle count", n_ref, t_ref, t_fast, t_fast, mean_ref == mean_fast, true);
    }

    // Monte Carlo distribution of the limit process
    {
        std::size_t samples = quick ? 20000 : 100000;
        sqrtn::Box box{sqrtn::Interval::half_open(0.0, 1.0)};
        sqrtn::CountDistribution d1, dp;
        double t1 = time_s([&] { d1 = sqrtn::limit_process_distribution(box, samples, 11, 1); });
        double tp = time_s([&] { dp = sqrtn::limit_process_distribution(box, samples, 11, P); });
        row("limit process MC", samples, -1.0, t1, tp, true, d1.weight == dp.weight);
    }

    if (failures) {
        std::printf("\n%d kernel(s) disagreed\n", failures);
        return 1;
    }
    std::printf("\nall variants agree\n");
    return 0;
}
