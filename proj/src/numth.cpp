#include "sqrtn/numth.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace sqrtn {

std::uint64_t totient(std::uint64_t c) {
    if (c == 0) throw std::invalid_argument("totient: need c >= 1");
    std::uint64_t phi = c, n = c;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        phi -= phi / p;
        while (n % p == 0) n /= p;
    }
    if (n > 1) phi -= phi / n;
    return phi;
}

std::pair<int, std::uint64_t> omega_tau(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("omega_tau: need n >= 1");
    int omega = 0;
    std::uint64_t tau = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        ++omega;
        std::uint64_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        tau *= e + 1;
    }
    if (n > 1) {
        ++omega;
        tau *= 2;
    }
    return {omega, tau};
}

int jacobi(std::int64_t a, std::uint64_t n) {
    if (n == 0 || n % 2 == 0) throw std::invalid_argument("jacobi: need odd positive n");
    std::uint64_t aa;
    int sign = 1;
    if (a < 0) {
        // (-1/n) = (-1)^((n-1)/2)
        if (n % 4 == 3) sign = -sign;
        aa = static_cast<std::uint64_t>(-a);
    } else {
        aa = static_cast<std::uint64_t>(a);
    }
    aa %= n;
    while (aa != 0) {
        while (aa % 2 == 0) {
            aa /= 2;
            std::uint64_t r = n % 8;
            if (r == 3 || r == 5) sign = -sign;
        }
        std::swap(aa, n);
        if (aa % 4 == 3 && n % 4 == 3) sign = -sign;
        aa %= n;
    }
    return n == 1 ? sign : 0;
}

std::complex<double> gauss_sum_direct(std::int64_t n, std::uint64_t c) {
    if (c == 0 || c > 2000000) throw std::invalid_argument("gauss sum: need 1 <= c <= 2e6");
    std::uint64_t m = 4 * c;
    std::uint64_t nr = static_cast<std::uint64_t>(((n % static_cast<std::int64_t>(m)) +
                                                   static_cast<std::int64_t>(m)) %
                                                  static_cast<std::int64_t>(m));
    if (std::gcd(nr, m) != 1) throw std::invalid_argument("gauss sum: need gcd(n, 4c) = 1");
    double re = 0.0, im = 0.0;
    for (std::uint64_t d = 0; d < m; ++d) {
        // all reductions exact: d^2 mod m and the product fit in 128 bits
        std::uint64_t dsq = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(d) * d) % m);
        std::uint64_t r = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(nr) * dsq) % m);
        double theta = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(m);
        re += std::cos(theta);
        im += std::sin(theta);
    }
    return {re, im};
}

std::complex<double> gauss_sum_closed(std::int64_t n, std::uint64_t c) {
    if (n <= 0)
        throw std::invalid_argument("gauss sum closed form: need n >= 1 (see the _ext variant)");
    if (c == 0) throw std::invalid_argument("gauss sum: need c >= 1");
    if (n % 2 == 0) throw std::invalid_argument("gauss sum closed form: need odd n");
    auto nn = static_cast<std::uint64_t>(n);
    if (std::gcd(nn, 4 * c) != 1)
        throw std::invalid_argument("gauss sum: need gcd(n, 4c) = 1");
    int chi = jacobi(static_cast<std::int64_t>(4 * c), nn);
    std::complex<double> eps_inv =
        n % 4 == 1 ? std::complex<double>(1.0, 0.0) : std::complex<double>(0.0, -1.0);
    double mag = std::sqrt(4.0 * static_cast<double>(c));
    return std::complex<double>(1.0, 1.0) * eps_inv * static_cast<double>(chi) * mag;
}

std::complex<double> gauss_sum_closed_ext(std::int64_t n, std::uint64_t c) {
    if (n == 0) throw std::invalid_argument("gauss sum: need n != 0");
    if (n > 0) return gauss_sum_closed(n, c);
    return std::conj(gauss_sum_closed(-n, c));
}

double lemma_sum_S(double D, double T, const TestFunction& f) {
    if (!(D >= 1.0) || !(T > 0.0)) throw std::invalid_argument("lemma sum: need D >= 1, T > 0");
    auto c_lo = static_cast<std::uint64_t>(std::ceil(D));
    auto c_hi = static_cast<std::uint64_t>(std::floor(2.0 * D));
    auto d_hi = static_cast<std::uint64_t>(std::floor(D));
    double slo = f.support_lo() / T, shi = f.support_hi() / T;
    double total = 0.0;
    for (std::uint64_t c = c_lo; c <= c_hi; ++c) {
        for (std::uint64_t d = 1; d <= d_hi; ++d) {
            if (std::gcd(c, d) != 1) continue;
            double base = static_cast<double>(d) * static_cast<double>(d) /
                          (4.0 * static_cast<double>(c));
            auto m_lo = static_cast<long long>(std::floor(slo - base)) - 1;
            auto m_hi = static_cast<long long>(std::ceil(shi - base)) + 1;
            for (long long m = m_lo; m <= m_hi; ++m)
                total += f(T * (base + static_cast<double>(m)));
        }
    }
    return total;
}

std::vector<LemmaBoundRow> lemma_bound_report(const std::vector<double>& D_grid,
                                              const std::vector<double>& T_grid,
                                              const TestFunction& f, double eps, double eps1,
                                              double eps2) {
    std::vector<LemmaBoundRow> rows;
    rows.reserve(D_grid.size() * T_grid.size());
    for (double D : D_grid) {
        for (double T : T_grid) {
            LemmaBoundRow r;
            r.D = D;
            r.T = T;
            r.S = lemma_sum_S(D, T, f);
            r.bound_poly = std::pow(D, 2.0 + eps1) / T;
            r.bound_split = D * D / T + std::pow(D, 1.5) * std::pow(T, eps2);
            r.ratio_poly = r.S / r.bound_poly;
            r.ratio_split = r.S / r.bound_split;
            r.ratio_eps = r.S * std::pow(T, 1.0 - eps) / (D * D);
            rows.push_back(r);
        }
    }
    return rows;
}

}  // namespace sqrtn
