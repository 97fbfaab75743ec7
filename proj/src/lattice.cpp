#include "sqrtn/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "sqrtn/quadrature.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sqrtn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mod_2pi(double phi) {
    double r = std::fmod(phi, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

}  // namespace

AffineLattice make_affine_lattice(std::complex<double> tau, double phi, Vec2 xi) {
    if (!(tau.imag() > 0.0)) throw std::invalid_argument("lattice: need v > 0");
    AffineLattice x;
    x.tau = tau;
    x.phi = phi;
    x.xi = xi;
    return reduce(x);
}

Mat2 iwasawa_compose(std::complex<double> tau, double phi) {
    double u = tau.real(), v = tau.imag();
    if (!(v > 0.0)) throw std::invalid_argument("iwasawa: need v > 0");
    double sv = std::sqrt(v), c = std::cos(phi), s = std::sin(phi);
    return {sv * c + u * s / sv, -sv * s + u * c / sv, s / sv, c / sv};
}

std::pair<std::complex<double>, double> iwasawa_decompose(const Mat2& M) {
    if (std::fabs(M.det() - 1.0) > 1e-9)
        throw std::invalid_argument("iwasawa: matrix is not unimodular");
    double v = 1.0 / (M.c * M.c + M.d * M.d);
    double u = (M.a * M.c + M.b * M.d) * v;
    double phi = std::atan2(M.c, M.d);
    return {std::complex<double>(u, v), phi};
}

GroupElement GroupElement::compose(const GroupElement& o) const {
    Vec2 t = apply_row(o.w, A.inverse_unimodular());
    return {A.mul(o.A), {w.x + t.x, w.y + t.y}};
}

GroupElement GroupElement::inverse() const {
    Vec2 t = apply_row(w, A);
    return {A.inverse_unimodular(), {-t.x, -t.y}};
}

AffineLattice group_action(const GroupElement& g, const AffineLattice& x) {
    std::complex<double> cz(g.A.c, 0.0), dz(g.A.d, 0.0), az(g.A.a, 0.0), bz(g.A.b, 0.0);
    std::complex<double> denom = cz * x.tau + dz;
    AffineLattice y;
    y.tau = (az * x.tau + bz) / denom;
    y.phi = x.phi + std::arg(denom);
    y.xi = {g.A.d * x.xi.x - g.A.c * x.xi.y - g.w.x, -g.A.b * x.xi.x + g.A.a * x.xi.y - g.w.y};
    return y;
}

AffineLattice reduce(const AffineLattice& x) {
    AffineLattice y = x;
    y.phi = mod_2pi(x.phi);
    y.xi = {mod1(x.xi.x), mod1(x.xi.y)};
    return y;
}

GroupElement n_tilde(double u0) {
    return {{1.0, u0, 0.0, 1.0}, {-0.5 * u0, 0.25 * u0 * u0}};
}

AffineLattice horocycle_point(double u, double v) {
    if (!(v > 0.0)) throw std::invalid_argument("horocycle: need v > 0");
    AffineLattice x;
    x.tau = {u, v};
    x.phi = 0.0;
    x.xi = {0.5 * u, -0.25 * u * u};
    return x;
}

// ---------------------------------------------------- triangle counts

std::size_t count_in_triangle(const AffineLattice& x, const Triangle& tri) {
    if (!(tri.x_lo >= 0.0 && tri.x_hi > tri.x_lo))
        throw std::invalid_argument("triangle: need 0 <= x_lo < x_hi");
    Mat2 M = iwasawa_compose(x.tau, x.phi);
    Mat2 Minv = M.inverse_unimodular();

    // global bounding box of the region
    double ylo = std::min(0.0, 2.0 * tri.x_hi * tri.I.lo);
    double yhi = std::max(0.0, 2.0 * tri.x_hi * tri.I.hi);

    // first-index range from the box corners pulled back through M^{-1}
    double w1min = std::numeric_limits<double>::infinity();
    double w1max = -w1min;
    for (double cx : {tri.x_lo, tri.x_hi}) {
        for (double cy : {ylo, yhi}) {
            Vec2 w = apply_row({cx, cy}, Minv);
            w1min = std::min(w1min, w.x);
            w1max = std::max(w1max, w.x);
        }
    }
    auto k1_lo = static_cast<long long>(std::floor(w1min - x.xi.x)) - 1;
    auto k1_hi = static_cast<long long>(std::ceil(w1max - x.xi.x)) + 1;

    constexpr double kCellGuard = 5e8;
    if (static_cast<double>(k1_hi - k1_lo) > kCellGuard)
        throw std::runtime_error("triangle count: enumeration too large (ill-conditioned basis)");

    // per first index, the point is (x, y) = w1 (M.a, M.b) + w2 (M.c, M.d);
    // the region gives three linear constraints in w2
    struct Lin {
        double coef;  // coefficient of w2
        double base;  // coefficient of w1
        double lo, hi;
    };
    const double inf = std::numeric_limits<double>::infinity();
    Lin cons[3] = {
        {M.c, M.a, tri.x_lo, tri.x_hi},                                      // x in (x_lo, x_hi)
        {M.d - 2.0 * tri.I.lo * M.c, M.b - 2.0 * tri.I.lo * M.a, 0.0, inf},  // y - 2 lo x >= 0
        {M.d - 2.0 * tri.I.hi * M.c, M.b - 2.0 * tri.I.hi * M.a, -inf, 0.0},  // y - 2 hi x <= 0
    };

    double cells = 0.0;
    std::size_t count = 0;
    for (long long k1 = k1_lo; k1 <= k1_hi; ++k1) {
        double w1 = static_cast<double>(k1) + x.xi.x;
        double lo2 = -inf, hi2 = inf;
        bool empty = false;
        for (const Lin& L : cons) {
            double val0 = L.base * w1;  // constraint value at w2 = 0
            if (std::fabs(L.coef) < 1e-12) {
                // w2-independent: reject only clear violations, the exact
                // membership test below settles the boundary
                if (val0 < L.lo - 1e-9 || val0 > L.hi + 1e-9) {
                    empty = true;
                    break;
                }
                continue;
            }
            double t_lo = (L.lo - val0) / L.coef;
            double t_hi = (L.hi - val0) / L.coef;
            if (L.coef < 0.0) std::swap(t_lo, t_hi);
            if (t_lo > lo2) lo2 = t_lo;
            if (t_hi < hi2) hi2 = t_hi;
        }
        if (empty || !(lo2 <= hi2)) continue;
        if (!std::isfinite(lo2) || !std::isfinite(hi2))
            throw std::runtime_error(
                "triangle count: enumeration too large (ill-conditioned basis)");
        auto k2_lo = static_cast<long long>(std::floor(lo2 - x.xi.y)) - 1;
        auto k2_hi = static_cast<long long>(std::ceil(hi2 - x.xi.y)) + 1;
        cells += static_cast<double>(k2_hi - k2_lo + 1);
        if (cells > kCellGuard)
            throw std::runtime_error(
                "triangle count: enumeration too large (ill-conditioned basis)");
        for (long long k2 = k2_lo; k2 <= k2_hi; ++k2) {
            double w2 = static_cast<double>(k2) + x.xi.y;
            double px = w1 * M.a + w2 * M.c;
            double py = w1 * M.b + w2 * M.d;
            if (tri.contains(px, py)) ++count;
        }
    }
    return count;
}

// ------------------------------------------------------- Haar sampling

AffineLattice HaarSampler::sample() {
    double u = 0.0, v = 0.0;
    const double v_floor = std::sqrt(3.0) / 2.0;
    for (;;) {
        ++proposed_;
        u = rng_.uniform01() - 0.5;
        v = v_floor / (1.0 - rng_.uniform01());
        if (u * u + v * v >= 1.0) {
            ++accepted_;
            break;
        }
    }
    AffineLattice x;
    x.tau = {u, v};
    x.phi = kTwoPi * rng_.uniform01();
    double x1 = rng_.uniform01();
    double x2 = rng_.uniform01();
    x.xi = {x1, x2};
    return x;
}

// ------------------------------------------------ Monte Carlo moments

namespace {

constexpr std::size_t kMcChunk = 1024;

// Runs `body(sampler, i)` for every sample index, chunked so each chunk
// owns an independent RNG stream. Partial results are merged in chunk
// order by the caller via the per-chunk accumulator vector.
template <typename Acc, typename Body>
std::vector<Acc> mc_chunks(std::size_t samples, std::uint64_t seed, int threads, Body&& body) {
    std::size_t nchunks = (samples + kMcChunk - 1) / kMcChunk;
    std::vector<Acc> acc(nchunks);
#ifdef _OPENMP
#pragma omp parallel for num_threads(std::max(1, threads)) schedule(dynamic)
#endif
    for (std::ptrdiff_t ci = 0; ci < static_cast<std::ptrdiff_t>(nchunks); ++ci) {
        auto c = static_cast<std::size_t>(ci);
        std::size_t lo = c * kMcChunk, hi = std::min(samples, lo + kMcChunk);
        HaarSampler sampler(stream_seed(seed, c));
        for (std::size_t i = lo; i < hi; ++i) body(sampler, acc[c]);
    }
    return acc;
}

}  // namespace

CountDistribution limit_process_distribution(const Box& box, std::size_t samples,
                                             std::uint64_t seed, int threads) {
    if (box.empty()) throw std::invalid_argument("limit process: empty box");
    if (samples == 0) throw std::invalid_argument("limit process: need samples");
    std::vector<Triangle> tris;
    tris.reserve(box.size());
    for (const auto& I : box) tris.push_back(Triangle::process(I));

    using Tally = std::map<std::vector<int>, double>;
    auto acc = mc_chunks<Tally>(samples, seed, threads, [&](HaarSampler& hs, Tally& t) {
        AffineLattice x = hs.sample();
        std::vector<int> key(tris.size());
        for (std::size_t j = 0; j < tris.size(); ++j)
            key[j] = static_cast<int>(count_in_triangle(x, tris[j]));
        t[key] += 1.0;
    });

    CountDistribution d;
    d.m = box.size();
    d.samples = static_cast<double>(samples);
    for (const auto& t : acc)
        for (const auto& [k, w] : t) d.weight[k] += w;
    return d;
}

SiegelEstimate siegel_moment_check(const Interval& I1, const Interval& I2, std::size_t samples,
                                   std::uint64_t seed, int threads) {
    if (samples < 2) throw std::invalid_argument("moment check: need at least 2 samples");
    Triangle t1 = Triangle::process(I1);
    Triangle t2 = Triangle::process(I2);

    // integer tallies, so the sums are exact and merge order is immaterial
    struct Acc {
        double sa = 0.0, saa = 0.0, sb = 0.0, sbb = 0.0;
    };
    auto acc = mc_chunks<Acc>(samples, seed, threads, [&](HaarSampler& hs, Acc& a) {
        AffineLattice x = hs.sample();
        auto k1 = static_cast<double>(count_in_triangle(x, t1));
        auto k2 = static_cast<double>(count_in_triangle(x, t2));
        double sq = k1 * k1, cr = k1 * k2;
        a.sa += sq;
        a.saa += sq * sq;
        a.sb += cr;
        a.sbb += cr * cr;
    });
    Acc tot;
    for (const auto& a : acc) {
        tot.sa += a.sa;
        tot.saa += a.saa;
        tot.sb += a.sb;
        tot.sbb += a.sbb;
    }
    auto n = static_cast<double>(samples);
    SiegelEstimate est;
    est.samples = samples;
    est.second_moment = tot.sa / n;
    est.cross_moment = tot.sb / n;
    // delete-one jackknife of a sample mean collapses to sd/sqrt(n)
    est.se_second =
        std::sqrt(std::max(0.0, tot.saa - n * est.second_moment * est.second_moment) /
                  (n * (n - 1.0)));
    est.se_cross = std::sqrt(
        std::max(0.0, tot.sbb - n * est.cross_moment * est.cross_moment) / (n * (n - 1.0)));
    return est;
}

// ------------------------------------------------------- cusp majorant

CuspFunction::CuspFunction(double R_, double beta_, TestFunction f_)
    : R(R_), beta(beta_), f(std::move(f_)) {
    if (!(R >= 1.0)) throw std::invalid_argument("cusp function: need R >= 1");
    if (!(beta >= 0.0 && beta < 1.5))
        throw std::invalid_argument("cusp function: need 0 <= beta < 3/2");
    double hi = f.support_hi();
    if (std::fabs(f.support_lo() + hi) > 1e-12 * std::max(1.0, hi))
        throw std::invalid_argument("cusp function: test function must be even");
    // sampled check of evenness, nonnegativity, and radial monotonicity
    const int n = 512;
    double prev = f(0.0);
    for (int i = 0; i <= n; ++i) {
        double r = hi * static_cast<double>(i) / n;
        double fr = f(r);
        if (fr < 0.0) throw std::invalid_argument("cusp function: test function must be >= 0");
        if (std::fabs(fr - f(-r)) > 1e-12 * std::max(1.0, std::fabs(fr)))
            throw std::invalid_argument("cusp function: test function must be even");
        if (fr > prev + 1e-12 * std::max(1.0, prev))
            throw std::invalid_argument(
                "cusp function: test function must be radially non-increasing");
        prev = fr;
    }
}

namespace {

// largest c with a nonempty cutoff window: c^2 v^2 <= v/R
std::uint64_t cusp_required_c(double v, double R) {
    double lim = 1.0 / std::sqrt(v * R);
    if (lim < 1.0) return 0;
    auto c = static_cast<std::uint64_t>(std::floor(lim));
    // floor of an inexact quotient: nudge across the boundary both ways
    while (static_cast<double>(c + 1) <= lim) ++c;
    while (c > 0 && static_cast<double>(c) > lim) --c;
    return c;
}

// sum of f((t + m) sqrt(vg)) over integer m, finite by compact support
double shifted_f_sum(const TestFunction& f, double t, double vg) {
    double sq = std::sqrt(vg);
    auto m_lo = static_cast<long long>(std::floor(f.support_lo() / sq - t)) - 1;
    auto m_hi = static_cast<long long>(std::ceil(f.support_hi() / sq - t)) + 1;
    double s = 0.0;
    for (long long m = m_lo; m <= m_hi; ++m) s += f((t + static_cast<double>(m)) * sq);
    return s;
}

}  // namespace

FrbResult f_r_beta(const AffineLattice& x, const CuspFunction& cf, std::uint64_t coset_bound) {
    double u = x.u(), v = x.v();
    double xi1 = x.xi.x, xi2 = x.xi.y;
    FrbResult r;
    r.required_c = cusp_required_c(v, cf.R);
    std::uint64_t cap = coset_bound == 0 ? r.required_c : coset_bound;
    r.exact = cap >= r.required_c;
    r.max_vgamma = v;
    if (v >= cf.R) r.value += std::pow(v, cf.beta) * shifted_f_sum(cf.f, xi1, v);
    for (std::uint64_t c = 1; c <= cap; ++c) {
        auto cd = static_cast<double>(c);
        double wc2 = v / cf.R - cd * cd * v * v;
        if (wc2 < 0.0) continue;
        double wc = std::sqrt(wc2);
        auto d_lo = static_cast<long long>(std::ceil(-cd * u - wc)) - 1;
        auto d_hi = static_cast<long long>(std::floor(-cd * u + wc)) + 1;
        for (long long d = d_lo; d <= d_hi; ++d) {
            if (std::gcd(c, static_cast<std::uint64_t>(d < 0 ? -d : d)) != 1) continue;
            double q = cd * u + static_cast<double>(d);
            double vg = v / (q * q + cd * cd * v * v);
            if (vg < cf.R) continue;
            r.max_vgamma = std::max(r.max_vgamma, vg);
            double t = static_cast<double>(d) * xi1 - cd * xi2;
            r.value += 2.0 * std::pow(vg, cf.beta) * shifted_f_sum(cf.f, t, vg);
        }
    }
    return r;
}

FrbResult f_r_beta_bar(std::complex<double> tau, double R, double beta) {
    if (!(R >= 1.0)) throw std::invalid_argument("cusp sum: need R >= 1");
    if (!(beta >= 0.0 && beta < 1.5))
        throw std::invalid_argument("cusp sum: need 0 <= beta < 3/2");
    double u = tau.real(), v = tau.imag();
    if (!(v > 0.0)) throw std::invalid_argument("cusp sum: need v > 0");
    FrbResult r;
    r.required_c = cusp_required_c(v, R);
    std::uint64_t cap = r.required_c;
    r.max_vgamma = v;
    if (v >= R) r.value += std::pow(v, beta);
    for (std::uint64_t c = 1; c <= cap; ++c) {
        auto cd = static_cast<double>(c);
        double wc2 = v / R - cd * cd * v * v;
        if (wc2 < 0.0) continue;
        double wc = std::sqrt(wc2);
        auto d_lo = static_cast<long long>(std::ceil(-cd * u - wc)) - 1;
        auto d_hi = static_cast<long long>(std::floor(-cd * u + wc)) + 1;
        for (long long d = d_lo; d <= d_hi; ++d) {
            if (std::gcd(c, static_cast<std::uint64_t>(d < 0 ? -d : d)) != 1) continue;
            double q = cd * u + static_cast<double>(d);
            double vg = v / (q * q + cd * cd * v * v);
            if (vg < R) continue;
            r.max_vgamma = std::max(r.max_vgamma, vg);
            r.value += 2.0 * std::pow(vg, beta);
        }
    }
    return r;
}

// -------------------------------------------------- escape of mass

namespace {

// u-positions where some coset's cutoff indicator switches. Between two
// consecutive breakpoints the integrand is piecewise smooth.
std::vector<double> cusp_breakpoints(double v, double R, double u_min, double u_max) {
    std::vector<double> pts;
    std::uint64_t cap = cusp_required_c(v, R);
    for (std::uint64_t c = 1; c <= cap; ++c) {
        auto cd = static_cast<double>(c);
        double wc2 = v / R - cd * cd * v * v;
        if (wc2 < 0.0) continue;
        double wc = std::sqrt(wc2);
        auto d_lo = static_cast<long long>(std::ceil(-cd * u_max - wc)) - 1;
        auto d_hi = static_cast<long long>(std::floor(-cd * u_min + wc)) + 1;
        for (long long d = d_lo; d <= d_hi; ++d) {
            if (std::gcd(c, static_cast<std::uint64_t>(d < 0 ? -d : d)) != 1) continue;
            for (double s : {-1.0, 1.0}) {
                double ustar = (-static_cast<double>(d) + s * wc) / cd;
                if (ustar > u_min && ustar < u_max) pts.push_back(ustar);
            }
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double a, double b) { return std::fabs(a - b) < 1e-13; }),
              pts.end());
    return pts;
}

double integrate_with_breakpoints(const std::function<double(double)>& g, double a, double b,
                                  double v, double R, double abs_tol) {
    if (!(b > a)) return 0.0;
    std::vector<double> pts = cusp_breakpoints(v, R, a, b);
    std::vector<double> knots;
    knots.reserve(pts.size() + 2);
    knots.push_back(a);
    for (double p : pts) knots.push_back(p);
    knots.push_back(b);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        double len = knots[i + 1] - knots[i];
        if (len <= 0.0) continue;
        double tol = abs_tol * std::max(len / (b - a), 1e-6);
        total += adaptive_simpson(g, knots[i], knots[i + 1], tol);
    }
    return total;
}

// domain of the u-integral: the whole window for beta < 1, the window
// minus a power-law neighborhood of the cusp spike at u = 0 for beta >= 1
std::vector<std::pair<double, double>> escape_domain(double v, double beta, double eta,
                                                     double theta) {
    if (!(eta > 0.0) || !(theta > 0.0))
        throw std::invalid_argument("escape mass: need eta > 0 and theta > 0");
    if (beta > 1.0 && !(eta < beta / (2.0 * (beta - 1.0))))
        throw std::domain_error("escape mass: eta too large for this beta");
    if (beta < 1.0) return {{-1.0, 1.0}};
    double gap = theta * std::pow(v, eta);
    if (gap >= 1.0) return {};
    return {{-1.0, -gap}, {gap, 1.0}};
}

}  // namespace

double escape_mass_integral(double v, const CuspFunction& cf, double eta, double theta,
                            double abs_tol) {
    if (!(v > 0.0)) throw std::invalid_argument("escape mass: need v > 0");
    auto g = [&](double u) { return f_r_beta(horocycle_point(u, v), cf).value; };
    double total = 0.0;
    for (auto [a, b] : escape_domain(v, cf.beta, eta, theta))
        total += integrate_with_breakpoints(g, a, b, v, cf.R, abs_tol);
    return total;
}

double escape_mass_integral_bar(double v, double R, double beta, double eta, double theta,
                                double abs_tol) {
    if (!(v > 0.0)) throw std::invalid_argument("escape mass: need v > 0");
    auto g = [&](double u) { return f_r_beta_bar({u, v}, R, beta).value; };
    double total = 0.0;
    for (auto [a, b] : escape_domain(v, beta, eta, theta))
        total += integrate_with_breakpoints(g, a, b, v, R, abs_tol);
    return total;
}

double zeroth_fourier_coefficient(double v, double R, double beta, std::uint64_t c_max) {
    if (!(v > 0.0)) throw std::invalid_argument("fourier coefficient: need v > 0");
    if (!(R >= 1.0)) throw std::invalid_argument("fourier coefficient: need R >= 1");
    if (beta >= 1.0)
        throw std::domain_error("fourier coefficient: closed form needs beta < 1");
    if (!(beta >= 0.0)) throw std::invalid_argument("fourier coefficient: need beta >= 0");
    std::uint64_t cap = c_max == 0 ? cusp_required_c(v, R) : c_max;
    double value = v >= R ? std::pow(v, beta) : 0.0;
    double csum = 0.0;
    for (std::uint64_t c = 1; c <= cap; ++c) {
        auto cd = static_cast<double>(c);
        double t0sq = 1.0 / (R * v * cd * cd) - 1.0;
        if (t0sq <= 0.0) continue;
        double t0 = std::sqrt(t0sq);
        double integ = 2.0 * adaptive_simpson(
                                 [&](double t) { return std::pow(t * t + 1.0, -beta); }, 0.0,
                                 t0, 1e-12 * std::max(1.0, t0));
        // phi(c) by trial division; c stays small (c <= 1/sqrt(vR))
        std::uint64_t phi = c, n = c;
        for (std::uint64_t p = 2; p * p <= n; ++p) {
            if (n % p) continue;
            phi -= phi / p;
            while (n % p == 0) n /= p;
        }
        if (n > 1) phi -= phi / n;
        csum += static_cast<double>(phi) * std::pow(cd, -2.0 * beta) * integ;
    }
    value += 2.0 * std::pow(v, 1.0 - beta) * csum;
    return value;
}

double majorant_rho(const Interval& I) {
    double t = std::max(I.lo * I.lo, I.hi * I.hi);
    return std::sqrt(4.0 + 16.0 * t);
}

CuspFunction majorant_cusp_function(const Interval& I, double sigma, double R) {
    if (!(sigma > 0.0)) throw std::invalid_argument("majorant: need sigma > 0");
    double rho = majorant_rho(I);
    double amp = 2.0 * std::pow(6.0 * rho, sigma);
    return {R, sigma / 2.0, TestFunction::triangle(2.0 * rho, amp)};
}

}  // namespace sqrtn
