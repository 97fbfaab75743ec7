#pragma once

#include <cstdint>
#include <vector>

namespace sqrtn {

// Sorted fractional parts of sqrt(n) over c^2 T < n <= T with perfect
// squares removed. For c = 0 the cardinality is exactly T - floor(sqrt(T)).
struct FracSequence {
    std::vector<double> values;          // sorted ascending, all in (0,1)
    std::vector<std::uint64_t> source_indices;  // the n producing each value
    std::uint64_t T = 0;
    double c = 0.0;
    double alpha_exp = 0.5;
    std::size_t N() const { return values.size(); }
};

std::uint64_t isqrt_u64(std::uint64_t n);
bool is_perfect_square(std::uint64_t n);

FracSequence generate(std::uint64_t T, double c, int threads = 1);

// Fractional parts of n^alpha_exp for 1 <= n <= T. Exact integer powers
// contribute the value 0 and are kept, except alpha_exp = 1/2 where the
// square-free convention above applies.
FracSequence generate_alpha_power(std::uint64_t T, double alpha_exp, int threads = 1);

}  // namespace sqrtn
