#include "sqrtn/seq.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sqrtn {

std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    // float estimate, then fix up exactly in integers; cap the probe so
    // (r+1)^2 cannot wrap for n near 2^64
    constexpr std::uint64_t rmax = 4294967295ULL;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    if (r > rmax) r = rmax;
    while (r > 0 && r * r > n) --r;
    while (r < rmax && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_perfect_square(std::uint64_t n) {
    std::uint64_t r = isqrt_u64(n);
    return r * r == n;
}

namespace {

// fractional parts for n in (lo, hi], squares skipped, appended unsorted
void fill_range(std::uint64_t lo, std::uint64_t hi, std::vector<double>& vals,
                std::vector<std::uint64_t>& idx) {
    for (std::uint64_t n = lo + 1; n <= hi; ++n) {
        std::uint64_t r = isqrt_u64(n);
        if (r * r == n) continue;
        double s = std::sqrt(static_cast<double>(n));
        vals.push_back(s - static_cast<double>(r));
        idx.push_back(n);
    }
}

void sort_by_value(std::vector<double>& vals, std::vector<std::uint64_t>& idx) {
    std::vector<std::size_t> order(vals.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (vals[a] != vals[b]) return vals[a] < vals[b];
        return idx[a] < idx[b];
    });
    std::vector<double> v2(vals.size());
    std::vector<std::uint64_t> i2(idx.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        v2[k] = vals[order[k]];
        i2[k] = idx[order[k]];
    }
    vals.swap(v2);
    idx.swap(i2);
}

}  // namespace

FracSequence generate(std::uint64_t T, double c, int threads) {
    if (T == 0) throw std::invalid_argument("generate: T must be positive");
    if (!(c >= 0.0 && c < 1.0)) throw std::invalid_argument("generate: c must lie in [0,1)");

    // n ranges over (c^2 T, T]
    auto n_lo = static_cast<std::uint64_t>(std::floor(c * c * static_cast<double>(T)));

    FracSequence out;
    out.T = T;
    out.c = c;
    out.alpha_exp = 0.5;

    if (threads > 1 && T - n_lo > 100000) {
#ifdef _OPENMP
        int nw = threads;
        std::vector<std::vector<double>> vparts(nw);
        std::vector<std::vector<std::uint64_t>> iparts(nw);
        std::uint64_t span = (T - n_lo + nw - 1) / nw;
#pragma omp parallel for num_threads(nw) schedule(static)
        for (int w = 0; w < nw; ++w) {
            std::uint64_t lo = n_lo + span * static_cast<std::uint64_t>(w);
            std::uint64_t hi = std::min(T, lo + span);
            if (lo < hi) fill_range(lo, hi, vparts[w], iparts[w]);
        }
        for (int w = 0; w < nw; ++w) {
            out.values.insert(out.values.end(), vparts[w].begin(), vparts[w].end());
            out.source_indices.insert(out.source_indices.end(), iparts[w].begin(),
                                      iparts[w].end());
        }
#else
        fill_range(n_lo, T, out.values, out.source_indices);
#endif
    } else {
        fill_range(n_lo, T, out.values, out.source_indices);
    }

    sort_by_value(out.values, out.source_indices);
    return out;
}

FracSequence generate_alpha_power(std::uint64_t T, double alpha_exp, int threads) {
    if (T == 0) throw std::invalid_argument("generate_alpha_power: T must be positive");
    if (!(alpha_exp > 0.0 && alpha_exp < 1.0))
        throw std::invalid_argument("generate_alpha_power: exponent must lie in (0,1)");
    if (alpha_exp == 0.5) return generate(T, 0.0, threads);

    FracSequence out;
    out.T = T;
    out.c = 0.0;
    out.alpha_exp = alpha_exp;
    out.values.reserve(T);
    out.source_indices.reserve(T);
    for (std::uint64_t n = 1; n <= T; ++n) {
        double p = std::pow(static_cast<double>(n), alpha_exp);
        double frac = p - std::floor(p);
        // pow is not exact at integer powers (n = k^3 under exponent 1/3
        // lands an ulp off k); snap those to the true value 0
        if (frac < 1e-12 || frac > 1.0 - 1e-12) frac = 0.0;
        out.values.push_back(frac);
        out.source_indices.push_back(n);
    }
    sort_by_value(out.values, out.source_indices);
    return out;
}

}  // namespace sqrtn
