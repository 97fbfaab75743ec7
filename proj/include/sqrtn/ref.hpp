#pragma once

#include <functional>
#include <vector>

#include "sqrtn/interval.hpp"
#include "sqrtn/lattice.hpp"
#include "sqrtn/seq.hpp"
#include "sqrtn/stats.hpp"
#include "sqrtn/test_function.hpp"

// Serial reference implementations. Straight-line transcriptions of the
// definitions with no search structures or parallelism: the oracles the
// optimized kernels are tested against, and the baseline the benchmark
// compares against.
namespace sqrtn::ref {

double pair_correlation(const FracSequence& seq, const TestFunction& f);
double pair_correlation_weighted(const FracSequence& seq,
                                 const std::function<double(double)>& g, const TestFunction& h);
std::size_t count_in_window(const FracSequence& seq, const Interval& I, double alpha);
std::size_t count_in_triangle(const AffineLattice& x, const Triangle& tri);
double mixed_moment(const FracSequence& seq, const Box& box, const std::vector<double>& svec,
                    const AlphaSampler& sampler);

}  // namespace sqrtn::ref
