#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "sqrtn/test_function.hpp"

namespace sqrtn {

// Exact number-theoretic primitives: all integer arithmetic, no floating
// point until the final complex exponential.

std::uint64_t totient(std::uint64_t c);

// (number of distinct prime factors, number of divisors)
std::pair<int, std::uint64_t> omega_tau(std::uint64_t n);

// Jacobi symbol (a/n) for odd positive n.
int jacobi(std::int64_t a, std::uint64_t n);

// Quadratic Gauss sum  sum_{d mod 4c} e(n d^2 / 4c), gcd(n, 4c) = 1.
// The phase n d^2 mod 4c is reduced exactly in integers before the single
// complex exponential per term, so the result is accurate for c up to 1e6.
std::complex<double> gauss_sum_direct(std::int64_t n, std::uint64_t c);

// Closed form (1+i) eps_n^{-1} (4c/n) sqrt(4c), eps_n = 1 for n = 1 mod 4
// and i for n = 3 mod 4. Defined for positive n only; negative n is
// rejected (see gauss_sum_closed_ext for the conjugation extension).
std::complex<double> gauss_sum_closed(std::int64_t n, std::uint64_t c);

// Extension to negative n via G(-n, c) = conj(G(n, c)).
std::complex<double> gauss_sum_closed_ext(std::int64_t n, std::uint64_t c);

// S = sum over integer c in [D, 2D], d in [1, D], gcd(c,d) = 1, and m of
// f(T (d^2/(4c) + m)). Exact brute force; compact support truncates m.
double lemma_sum_S(double D, double T, const TestFunction& f);

struct LemmaBoundRow {
    double D;
    double T;
    double S;
    double bound_poly;   // D^{2+eps1} / T
    double bound_split;  // D^2 / T + D^{3/2} T^{eps2}
    double ratio_poly;
    double ratio_split;
    double ratio_eps;    // S T^{1-eps} / D^2
};

std::vector<LemmaBoundRow> lemma_bound_report(const std::vector<double>& D_grid,
                                              const std::vector<double>& T_grid,
                                              const TestFunction& f, double eps = 0.1,
                                              double eps1 = 0.1, double eps2 = 0.1);

}  // namespace sqrtn
