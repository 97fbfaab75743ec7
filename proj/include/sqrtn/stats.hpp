#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "sqrtn/interval.hpp"
#include "sqrtn/seq.hpp"
#include "sqrtn/test_function.hpp"

namespace sqrtn {

// Local statistics of a point sequence on the circle: scaled gaps, the
// two-point correlation sum, window counts at scale 1/N, the empirical
// count distribution, and its mixed moments.

// Circular gaps between consecutive sorted values (last wraps to first
// through 1), each multiplied by N. The N gaps sum to N.
std::vector<double> scaled_gaps(const FracSequence& seq);

// (1/N) sum over m in Z and ordered index pairs i != j of
// f(N (a_i - a_j + m)). Compact support makes the m-sum finite and the
// inner loop a sorted-range sweep. Bitwise reproducible for any thread
// count: work is split into fixed-size index chunks whose partial sums
// are combined in chunk order.
double pair_correlation(const FracSequence& seq, const TestFunction& f, int threads = 1);

// Same sum with each pair weighted by g(a_i) g(a_j).
double pair_correlation_weighted(const FracSequence& seq,
                                 const std::function<double(double)>& g,
                                 const TestFunction& h, int threads = 1);

// #{j : a_j in alpha + I/N mod 1}. Interval endpoint flags carry over to
// the window. A window of circular length >= 1 contains everything.
std::size_t count_in_window(const FracSequence& seq, const Interval& I, double alpha);

// Where the window centers alpha come from: a deterministic uniform grid
// (k+1/2)/S, a seeded uniform random draw, or a grid weighted by a
// probability density on the circle (importance weights, normalized so
// the weights sum to 1 within quadrature error).
class AlphaSampler {
  public:
    static AlphaSampler uniform_grid(std::size_t S);
    static AlphaSampler seeded_uniform_random(std::size_t S, std::uint64_t seed);
    static AlphaSampler density(std::size_t S, std::function<double(double)> dens);

    std::size_t size() const { return alphas_.size(); }
    double alpha(std::size_t i) const { return alphas_[i]; }
    // weights sum to 1
    double weight(std::size_t i) const { return weights_[i]; }

  private:
    AlphaSampler() = default;
    std::vector<double> alphas_;
    std::vector<double> weights_;
};

// Joint distribution of count vectors over the sampled alphas (empirical)
// or over random lattices (Monte Carlo). Keys are count vectors, values
// their accumulated weight; weights sum to `samples`.
struct CountDistribution {
    std::size_t m = 0;
    double samples = 0.0;
    std::map<std::vector<int>, double> weight;

    double prob(const std::vector<int>& k) const;
    // marginal moment sum_k (k_j)^p  for component j
    double moment(std::size_t j, int p) const;
    double mean(std::size_t j) const { return moment(j, 1); }
    double cross_moment(std::size_t j1, std::size_t j2) const;
    int max_count() const;
};

// Total variation distance between the m=1 marginals restricted to
// counts 0..kmax: (1/2) sum |p - q|.
double tv_distance_m1(const CountDistribution& a, const CountDistribution& b, int kmax);

CountDistribution empirical_count_distribution(const FracSequence& seq, const Box& box,
                                               const AlphaSampler& sampler, int threads = 1);

// integral of prod_j (count_j(alpha) + 1)^{s_j} over the alpha measure
double mixed_moment(const FracSequence& seq, const Box& box, const std::vector<double>& svec,
                    const AlphaSampler& sampler, int threads = 1);

// As mixed_moment with the integrand zeroed where any count exceeds K.
double restricted_moment(const FracSequence& seq, const Box& box,
                         const std::vector<double>& svec, int K, const AlphaSampler& sampler,
                         int threads = 1);

struct HistBin {
    double left;
    double right;
    double density;
};

// Density-normalized histogram: integrates to 1 over [lo,hi] when all
// data lies inside. The last bin is closed on the right.
std::vector<HistBin> histogram(const std::vector<double>& data, int bins, double lo, double hi);

// sup-distance between the empirical CDF of data and 1 - exp(-x)
double ks_distance_exp1(std::vector<double> data);

// Binned two-point correlation: the pair_correlation mass restricted to
// scaled differences in each bin, divided by the bin width. Flat at
// height 1 for Poisson statistics.
std::vector<HistBin> pair_correlation_histogram(const FracSequence& seq, int bins, double lo,
                                                double hi, int threads = 1);

}  // namespace sqrtn
