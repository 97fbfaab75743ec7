#include "sqrtn/ref.hpp"

#include <cmath>
#include <stdexcept>

namespace sqrtn::ref {

namespace {

// m-window wide enough for any pair difference: |a_i - a_j| < 1, so the
// support [slo, shi] of f(N(diff + m)) is covered by these m
std::pair<long, long> m_window(const TestFunction& f, double N) {
    auto m_lo = static_cast<long>(std::floor(f.support_lo() / N)) - 2;
    auto m_hi = static_cast<long>(std::ceil(f.support_hi() / N)) + 2;
    return {m_lo, m_hi};
}

}  // namespace

double pair_correlation(const FracSequence& seq, const TestFunction& f) {
    std::size_t n = seq.N();
    if (n < 2) throw std::invalid_argument("pair_correlation: need at least 2 values");
    auto N = static_cast<double>(n);
    auto [m_lo, m_hi] = m_window(f, N);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            for (long m = m_lo; m <= m_hi; ++m)
                sum += f(N * (seq.values[i] - seq.values[j] + static_cast<double>(m)));
        }
    return sum / N;
}

double pair_correlation_weighted(const FracSequence& seq,
                                 const std::function<double(double)>& g,
                                 const TestFunction& h) {
    std::size_t n = seq.N();
    if (n < 2) throw std::invalid_argument("pair_correlation: need at least 2 values");
    auto N = static_cast<double>(n);
    auto [m_lo, m_hi] = m_window(h, N);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            for (long m = m_lo; m <= m_hi; ++m)
                sum += g(seq.values[i]) * g(seq.values[j]) *
                       h(N * (seq.values[i] - seq.values[j] + static_cast<double>(m)));
        }
    return sum / N;
}

std::size_t count_in_window(const FracSequence& seq, const Interval& I, double alpha) {
    auto N = static_cast<double>(seq.N());
    std::size_t count = 0;
    for (double a : seq.values) {
        // scaled circular displacement from alpha, folded nearest the window
        bool inside = false;
        for (int m = -2; m <= 2 && !inside; ++m)
            inside = I.contains(N * (a - alpha + static_cast<double>(m)));
        if (inside) ++count;
    }
    return count;
}

std::size_t count_in_triangle(const AffineLattice& x, const Triangle& tri) {
    Mat2 M = iwasawa_compose(x.tau, x.phi);
    // crude index bound: every region point has |p| <= rho, and a basis row
    // has length >= 1/|other row| by det 1, giving |k| <= rho * |other row| + 1
    double t = std::max(std::fabs(tri.I.lo), std::fabs(tri.I.hi));
    double rho = std::hypot(tri.x_hi, 2.0 * tri.x_hi * t);
    double len1 = std::hypot(M.a, M.b), len2 = std::hypot(M.c, M.d);
    auto b1 = static_cast<long long>(std::ceil(rho * len2 + std::fabs(x.xi.x))) + 2;
    auto b2 = static_cast<long long>(std::ceil(rho * len1 + std::fabs(x.xi.y))) + 2;
    if (4.0 * static_cast<double>(b1) * static_cast<double>(b2) > 5e8)
        throw std::runtime_error("triangle count: enumeration too large");
    std::size_t count = 0;
    for (long long k1 = -b1; k1 <= b1; ++k1)
        for (long long k2 = -b2; k2 <= b2; ++k2) {
            double w1 = static_cast<double>(k1) + x.xi.x;
            double w2 = static_cast<double>(k2) + x.xi.y;
            if (tri.contains(w1 * M.a + w2 * M.c, w1 * M.b + w2 * M.d)) ++count;
        }
    return count;
}

double mixed_moment(const FracSequence& seq, const Box& box, const std::vector<double>& svec,
                    const AlphaSampler& sampler) {
    if (svec.size() != box.size())
        throw std::invalid_argument("moment: exponent list must match box dimension");
    double total = 0.0;
    for (std::size_t i = 0; i < sampler.size(); ++i) {
        double prod = 1.0;
        for (std::size_t j = 0; j < box.size(); ++j) {
            auto n = static_cast<double>(ref::count_in_window(seq, box[j], sampler.alpha(i)));
            prod *= std::pow(n + 1.0, svec[j]);
        }
        total += sampler.weight(i) * prod;
    }
    return total;
}

}  // namespace sqrtn::ref
