#include "sqrtn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sqrtn/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sqrtn {

namespace {

// Fixed work-chunk size for parallel loops. Chunk partials are combined
// in chunk order, so results are independent of the thread count.
constexpr std::size_t kChunk = 4096;

template <typename F>
double chunked_sum(std::size_t n, int threads, F&& chunk_value) {
    std::size_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(nchunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for num_threads(std::max(1, threads)) schedule(dynamic)
#endif
    for (std::ptrdiff_t ci = 0; ci < static_cast<std::ptrdiff_t>(nchunks); ++ci) {
        auto c = static_cast<std::size_t>(ci);
        std::size_t lo = c * kChunk;
        std::size_t hi = std::min(n, lo + kChunk);
        partial[c] = chunk_value(lo, hi);
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

}  // namespace

// ---------------------------------------------------------------- gaps

std::vector<double> scaled_gaps(const FracSequence& seq) {
    std::size_t N = seq.N();
    if (N < 2) throw std::invalid_argument("scaled_gaps: need at least 2 values");
    std::vector<double> g(N);
    auto dN = static_cast<double>(N);
    for (std::size_t i = 0; i + 1 < N; ++i) g[i] = (seq.values[i + 1] - seq.values[i]) * dN;
    g[N - 1] = (seq.values[0] + 1.0 - seq.values[N - 1]) * dN;
    return g;
}

// ---------------------------------------------------- pair correlation

namespace {

// Sum over m and over ordered pairs i != j of w(i) w(j) h(N(a_i - a_j + m)),
// restricted to i in [ilo, ihi). For each (i, m) the admissible j's form a
// contiguous range of the sorted values.
template <typename Weight>
double pair_sweep_range(const FracSequence& seq, const TestFunction& h, std::size_t ilo,
                        std::size_t ihi, Weight&& wfun) {
    const auto& vals = seq.values;
    auto N = static_cast<double>(seq.N());
    double slo = h.support_lo(), shi = h.support_hi();
    // f(N(a_i - a_j + m)) != 0 needs a_j in [a_i + m - shi/N, a_i + m - slo/N];
    // differences lie in (-1,1), so m ranges one unit past the support ends
    auto m_lo = static_cast<long>(std::floor(slo / N)) - 1;
    auto m_hi = static_cast<long>(std::ceil(shi / N)) + 1;
    double sum = 0.0;
    for (std::size_t i = ilo; i < ihi; ++i) {
        double wi = wfun(i);
        if (wi == 0.0) continue;
        for (long m = m_lo; m <= m_hi; ++m) {
            // pad the bracket a little: h is evaluated exactly per match, so a
            // too-wide bracket only adds zero terms, while rounding in shi/N
            // must not drop a pair sitting exactly on the support boundary
            double jlo = vals[i] + static_cast<double>(m) - shi / N - 1e-9;
            double jhi = vals[i] + static_cast<double>(m) - slo / N + 1e-9;
            auto it0 = std::lower_bound(vals.begin(), vals.end(), jlo);
            auto it1 = std::upper_bound(vals.begin(), vals.end(), jhi);
            for (auto it = it0; it != it1; ++it) {
                auto j = static_cast<std::size_t>(it - vals.begin());
                if (j == i) continue;
                double arg = N * (vals[i] - vals[j] + static_cast<double>(m));
                double hv = h(arg);
                if (hv != 0.0) sum += wi * wfun(j) * hv;
            }
        }
    }
    return sum;
}

}  // namespace

double pair_correlation(const FracSequence& seq, const TestFunction& f, int threads) {
    if (seq.N() < 2) throw std::invalid_argument("pair_correlation: need at least 2 values");
    double total = chunked_sum(seq.N(), threads, [&](std::size_t lo, std::size_t hi) {
        return pair_sweep_range(seq, f, lo, hi, [](std::size_t) { return 1.0; });
    });
    return total / static_cast<double>(seq.N());
}

double pair_correlation_weighted(const FracSequence& seq, const std::function<double(double)>& g,
                                 const TestFunction& h, int threads) {
    if (seq.N() < 2) throw std::invalid_argument("pair_correlation: need at least 2 values");
    // weights precomputed so parallel chunks see identical values
    std::vector<double> w(seq.N());
    for (std::size_t i = 0; i < seq.N(); ++i) w[i] = g(seq.values[i]);
    double total = chunked_sum(seq.N(), threads, [&](std::size_t lo, std::size_t hi) {
        return pair_sweep_range(seq, h, lo, hi, [&](std::size_t i) { return w[i]; });
    });
    return total / static_cast<double>(seq.N());
}

// ------------------------------------------------------- window counts

namespace {

// iterator range [first, last) of sorted values inside [a, b] with flags
std::pair<std::vector<double>::const_iterator, std::vector<double>::const_iterator> value_range(
    const std::vector<double>& vals, double a, bool closed_a, double b, bool closed_b) {
    auto first = closed_a ? std::lower_bound(vals.begin(), vals.end(), a)
                          : std::upper_bound(vals.begin(), vals.end(), a);
    auto last = closed_b ? std::upper_bound(vals.begin(), vals.end(), b)
                         : std::lower_bound(vals.begin(), vals.end(), b);
    if (last < first) last = first;
    return {first, last};
}

}  // namespace

std::size_t count_in_window(const FracSequence& seq, const Interval& I, double alpha) {
    const auto& vals = seq.values;
    auto N = static_cast<double>(seq.N());
    if (seq.N() == 0) return 0;
    double a_raw = alpha + I.lo / N;
    double b_raw = alpha + I.hi / N;
    if (b_raw - a_raw >= 1.0) return seq.N();
    double k0 = std::floor(a_raw);
    double a = a_raw - k0;
    double b = b_raw - k0;
    if (b <= 1.0) {
        auto [f, l] = value_range(vals, a, I.closed_lo, b, I.closed_hi);
        return static_cast<std::size_t>(l - f);
    }
    // window wraps through 1: [a, 1) plus [0, b-1]
    auto [f1, l1] = value_range(vals, a, I.closed_lo, 1.0, true);
    auto [f2, l2] = value_range(vals, 0.0, true, b - 1.0, I.closed_hi);
    return static_cast<std::size_t>((l1 - f1) + (l2 - f2));
}

// ------------------------------------------------------- alpha sampler

AlphaSampler AlphaSampler::uniform_grid(std::size_t S) {
    if (S == 0) throw std::invalid_argument("sampler: need at least one sample");
    AlphaSampler s;
    s.alphas_.resize(S);
    s.weights_.assign(S, 1.0 / static_cast<double>(S));
    for (std::size_t k = 0; k < S; ++k)
        s.alphas_[k] = (static_cast<double>(k) + 0.5) / static_cast<double>(S);
    return s;
}

AlphaSampler AlphaSampler::seeded_uniform_random(std::size_t S, std::uint64_t seed) {
    if (S == 0) throw std::invalid_argument("sampler: need at least one sample");
    AlphaSampler s;
    s.alphas_.resize(S);
    s.weights_.assign(S, 1.0 / static_cast<double>(S));
    Xoshiro256pp rng(seed);
    for (std::size_t k = 0; k < S; ++k) s.alphas_[k] = rng.uniform01();
    return s;
}

AlphaSampler AlphaSampler::density(std::size_t S, std::function<double(double)> dens) {
    if (S == 0) throw std::invalid_argument("sampler: need at least one sample");
    AlphaSampler s;
    s.alphas_.resize(S);
    s.weights_.resize(S);
    double total = 0.0;
    for (std::size_t k = 0; k < S; ++k) {
        double a = (static_cast<double>(k) + 0.5) / static_cast<double>(S);
        double w = dens(a);
        if (w < 0.0) throw std::invalid_argument("sampler: density must be nonnegative");
        s.alphas_[k] = a;
        s.weights_[k] = w;
        total += w;
    }
    if (total <= 0.0) throw std::invalid_argument("sampler: density integrates to zero");
    // midpoint-rule normalization; quadrature error budget 1e-6 for
    // piecewise-continuous densities at the default grid sizes
    for (auto& w : s.weights_) w /= total;
    return s;
}

// -------------------------------------------------- count distribution

double CountDistribution::prob(const std::vector<int>& k) const {
    auto it = weight.find(k);
    return it == weight.end() ? 0.0 : it->second / samples;
}

double CountDistribution::moment(std::size_t j, int p) const {
    double s = 0.0;
    for (const auto& [k, w] : weight) s += std::pow(static_cast<double>(k[j]), p) * w;
    return s / samples;
}

double CountDistribution::cross_moment(std::size_t j1, std::size_t j2) const {
    double s = 0.0;
    for (const auto& [k, w] : weight)
        s += static_cast<double>(k[j1]) * static_cast<double>(k[j2]) * w;
    return s / samples;
}

int CountDistribution::max_count() const {
    int mx = 0;
    for (const auto& [k, w] : weight)
        for (int kj : k) mx = std::max(mx, kj);
    return mx;
}

double tv_distance_m1(const CountDistribution& a, const CountDistribution& b, int kmax) {
    if (a.m != 1 || b.m != 1)
        throw std::invalid_argument("tv_distance_m1: one-dimensional distributions only");
    double s = 0.0;
    for (int k = 0; k <= kmax; ++k) {
        std::vector<int> key{k};
        s += std::fabs(a.prob(key) - b.prob(key));
    }
    return 0.5 * s;
}

CountDistribution empirical_count_distribution(const FracSequence& seq, const Box& box,
                                               const AlphaSampler& sampler, int threads) {
    if (sampler.size() == 0) throw std::invalid_argument("count distribution: no samples");
    std::size_t S = sampler.size();
    std::size_t nchunks = (S + kChunk - 1) / kChunk;
    std::vector<std::map<std::vector<int>, double>> tallies(nchunks);
#ifdef _OPENMP
#pragma omp parallel for num_threads(std::max(1, threads)) schedule(dynamic)
#endif
    for (std::ptrdiff_t ci = 0; ci < static_cast<std::ptrdiff_t>(nchunks); ++ci) {
        auto c = static_cast<std::size_t>(ci);
        std::size_t lo = c * kChunk, hi = std::min(S, lo + kChunk);
        std::vector<int> key(box.size());
        for (std::size_t s = lo; s < hi; ++s) {
            for (std::size_t j = 0; j < box.size(); ++j)
                key[j] = static_cast<int>(count_in_window(seq, box[j], sampler.alpha(s)));
            tallies[c][key] += sampler.weight(s) * static_cast<double>(S);
        }
    }
    CountDistribution d;
    d.m = box.size();
    d.samples = static_cast<double>(S);
    for (auto& t : tallies)
        for (auto& [k, w] : t) d.weight[k] += w;
    return d;
}

// --------------------------------------------------------- moments

namespace {

double moment_integrand(const FracSequence& seq, const Box& box, const std::vector<double>& svec,
                        double alpha, int K) {
    double prod = 1.0;
    for (std::size_t j = 0; j < box.size(); ++j) {
        auto n = static_cast<double>(count_in_window(seq, box[j], alpha));
        if (K >= 0 && n > static_cast<double>(K)) return 0.0;
        prod *= std::pow(n + 1.0, svec[j]);
    }
    return prod;
}

double moment_impl(const FracSequence& seq, const Box& box, const std::vector<double>& svec,
                   int K, const AlphaSampler& sampler, int threads) {
    if (svec.size() != box.size())
        throw std::invalid_argument("moment: exponent list must match box dimension");
    return chunked_sum(sampler.size(), threads, [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += sampler.weight(i) * moment_integrand(seq, box, svec, sampler.alpha(i), K);
        return s;
    });
}

}  // namespace

double mixed_moment(const FracSequence& seq, const Box& box, const std::vector<double>& svec,
                    const AlphaSampler& sampler, int threads) {
    return moment_impl(seq, box, svec, -1, sampler, threads);
}

double restricted_moment(const FracSequence& seq, const Box& box,
                         const std::vector<double>& svec, int K, const AlphaSampler& sampler,
                         int threads) {
    if (K < 0) throw std::invalid_argument("restricted_moment: K must be nonnegative");
    return moment_impl(seq, box, svec, K, sampler, threads);
}

// --------------------------------------------------------- histograms

std::vector<HistBin> histogram(const std::vector<double>& data, int bins, double lo, double hi) {
    if (data.empty()) throw std::invalid_argument("histogram: empty data");
    if (bins < 1 || !(lo < hi)) throw std::invalid_argument("histogram: bad binning");
    std::vector<HistBin> out(bins);
    double width = (hi - lo) / bins;
    std::vector<std::size_t> counts(bins, 0);
    for (double x : data) {
        if (x < lo || x > hi) continue;
        auto b = static_cast<int>((x - lo) / width);
        if (b >= bins) b = bins - 1;  // hi itself falls in the last (closed) bin
        ++counts[b];
    }
    auto n = static_cast<double>(data.size());
    for (int b = 0; b < bins; ++b) {
        out[b].left = lo + width * b;
        out[b].right = lo + width * (b + 1);
        out[b].density = static_cast<double>(counts[b]) / (n * width);
    }
    return out;
}

double ks_distance_exp1(std::vector<double> data) {
    if (data.empty()) throw std::invalid_argument("ks distance: empty data");
    std::sort(data.begin(), data.end());
    auto n = static_cast<double>(data.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        double F = 1.0 - std::exp(-data[i]);
        double lo = static_cast<double>(i) / n;
        double hi = static_cast<double>(i + 1) / n;
        ks = std::max(ks, std::max(std::fabs(F - lo), std::fabs(F - hi)));
    }
    return ks;
}

std::vector<HistBin> pair_correlation_histogram(const FracSequence& seq, int bins, double lo,
                                                double hi, int threads) {
    if (bins < 1 || !(lo < hi)) throw std::invalid_argument("histogram: bad binning");
    std::vector<HistBin> out(bins);
    double width = (hi - lo) / bins;
    for (int b = 0; b < bins; ++b) {
        Interval cell(lo + width * b, lo + width * (b + 1), true, b == bins - 1);
        double mass = pair_correlation(seq, TestFunction::indicator(cell), threads);
        out[b] = {cell.lo, cell.hi, mass / width};
    }
    return out;
}

}  // namespace sqrtn
