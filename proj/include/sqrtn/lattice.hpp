#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "sqrtn/interval.hpp"
#include "sqrtn/rng.hpp"
#include "sqrtn/stats.hpp"
#include "sqrtn/test_function.hpp"

namespace sqrtn {

// Affine unimodular lattices in the plane, parameterized by Iwasawa
// coordinates (tau = u + iv, phi; xi). The lattice's point set is
//   { (k + xi) M : k integer pair },  M = n(u) a(v) k(phi),
// with row vectors acting on the right. All statistics of the limiting
// point process live here: triangle counts, Haar sampling, the Monte
// Carlo count distribution, and the cusp majorant F_{R,beta}.

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// row-major [[a,b],[c,d]]
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    double det() const { return a * d - b * c; }
    Mat2 mul(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    // valid for det 1
    Mat2 inverse_unimodular() const { return {d, -b, -c, a}; }
};

inline Vec2 apply_row(const Vec2& w, const Mat2& M) {
    return {w.x * M.a + w.y * M.c, w.x * M.b + w.y * M.d};
}

struct AffineLattice {
    std::complex<double> tau{0.0, 1.0};
    double phi = 0.0;
    Vec2 xi{0.0, 0.0};

    double u() const { return tau.real(); }
    double v() const { return tau.imag(); }
};

// Validates v > 0, reduces phi mod 2*pi and xi mod 1.
AffineLattice make_affine_lattice(std::complex<double> tau, double phi, Vec2 xi);

// Canonical Iwasawa matrix n(u) a(v) k(phi).
Mat2 iwasawa_compose(std::complex<double> tau, double phi);

// Unique (tau, phi) with M = n(u) a(v) k(phi); throws on |det-1| > 1e-9.
std::pair<std::complex<double>, double> iwasawa_decompose(const Mat2& M);

// Group element (A, w): A unimodular, w the translation parameter of the
// action below. Integral w and integral A give a deck transformation
// (the point set of the image lattice equals the original).
struct GroupElement {
    Mat2 A;
    Vec2 w{0.0, 0.0};

    GroupElement compose(const GroupElement& o) const;
    GroupElement inverse() const;
};

// Action on Iwasawa coordinates:
//   tau' = (a tau + b)/(c tau + d),   phi' = phi + arg(c tau + d),
//   xi'  = (d xi1 - c xi2, -b xi1 + a xi2) - w.
// Output is returned unreduced (phi' and xi' not folded into their
// fundamental ranges) so that composing actions is associative as real
// arithmetic; reduce() folds back to canonical coordinates.
AffineLattice group_action(const GroupElement& g, const AffineLattice& x);
AffineLattice reduce(const AffineLattice& x);

// Translation element: carries the point at parameter u0 of the horocycle
// section below to the one at u + u0 (exactly, before reduction).
GroupElement n_tilde(double u0);

// The horocycle section u -> (u + iv, 0; (u/2, -u^2/4)). Period 2 as a
// point of the quotient.
AffineLattice horocycle_point(double u, double v);

// Region { (x,y) : x_lo < x < x_hi, y/(2x) in I }; open in x, I's own
// endpoint flags decide the boundary in y.
struct Triangle {
    Interval I;
    double x_lo = 0.0;
    double x_hi = 2.0;

    // wide region used by the counting upper bound
    static Triangle dominating(const Interval& I) { return {I, 0.0, 2.0}; }
    // unit-depth region realizing the limit process (area = |I|)
    static Triangle process(const Interval& I) { return {I, 0.0, 1.0}; }

    double area() const { return I.length() * (x_hi * x_hi - x_lo * x_lo); }
    bool contains(double x, double y) const {
        if (!(x > x_lo && x < x_hi)) return false;
        return I.contains(y / (2.0 * x));
    }
};

// Exact point count of the lattice inside the triangle. Enumeration maps
// the region's corners through M^{-1} to bound the first index, then
// solves the three linear constraints for the second. Throws when the
// implied enumeration is degenerate (ill-conditioned basis).
std::size_t count_in_triangle(const AffineLattice& x, const Triangle& tri);

// Haar-random point of the quotient: u uniform on [-1/2,1/2], v by
// inverse-CDF of the v^{-2} density on [sqrt(3)/2, inf), rejection on
// |tau| < 1, phi uniform on [0,2pi), xi uniform on [0,1)^2.
class HaarSampler {
  public:
    explicit HaarSampler(std::uint64_t seed) : rng_(seed) {}

    AffineLattice sample();

    std::uint64_t proposed() const { return proposed_; }
    std::uint64_t accepted() const { return accepted_; }
    double acceptance_rate() const {
        return proposed_ ? static_cast<double>(accepted_) / static_cast<double>(proposed_) : 0.0;
    }

  private:
    Xoshiro256pp rng_;
    std::uint64_t proposed_ = 0;
    std::uint64_t accepted_ = 0;
};

// Monte Carlo joint distribution of the process triangle counts over
// Haar-random affine lattices. Deterministic for fixed seed regardless
// of thread count (independent per-chunk streams, merged in order).
CountDistribution limit_process_distribution(const Box& box, std::size_t samples,
                                             std::uint64_t seed, int threads = 1);

struct SiegelEstimate {
    double second_moment = 0.0;
    double cross_moment = 0.0;
    double se_second = 0.0;
    double se_cross = 0.0;
    std::size_t samples = 0;
};

// Monte Carlo second and cross moments of process-triangle counts, with
// delete-one jackknife standard errors (for a sample mean these coincide
// with sd/sqrt(n)). Targets: |I1|+|I1|^2 and |I1 cap I2| + |I1||I2|.
SiegelEstimate siegel_moment_check(const Interval& I1, const Interval& I2, std::size_t samples,
                                   std::uint64_t seed, int threads = 1);

// Parameters of the cusp majorant: cutoff R >= 1, exponent 0 <= beta < 3/2,
// and an even, nonnegative, radially non-increasing test function.
struct CuspFunction {
    double R;
    double beta;
    TestFunction f;

    CuspFunction(double R_, double beta_, TestFunction f_);
};

struct FrbResult {
    double value = 0.0;
    double max_vgamma = 0.0;  // largest cusp height seen over the enumerated cosets
    bool exact = true;        // enumeration covered every coset the cutoff admits
    std::uint64_t required_c = 0;
};

// F_{R,beta}(x) = sum over cusp cosets of v_g^beta X_R(v_g) sum_m
// f(((xi g^{-1})_1 + m) sqrt(v_g)), X_R the indicator of [R, inf).
// The identity coset enters with weight 1, each (c,d) coprime pair with
// c >= 1 with weight 2 (f even). The cutoff makes the c-sum finite:
// only c <= 1/sqrt(vR) can contribute, so passing coset_bound = 0 lets
// the enumeration pick the exact bound itself; a smaller explicit bound
// yields exact=false.
FrbResult f_r_beta(const AffineLattice& x, const CuspFunction& cf, std::uint64_t coset_bound = 0);

// The f-free variant: sum of v_g^beta X_R(v_g) alone. Depends on tau only.
FrbResult f_r_beta_bar(std::complex<double> tau, double R, double beta);

// Integral over u of F_{R,beta} along the horocycle section at height v,
// u ranging over [-1,1] for beta < 1 and [-1,-theta v^eta] u [theta v^eta, 1]
// for beta >= 1 (eta must satisfy eta < beta/(2(beta-1))). Adaptive
// Simpson seeded with the exact spike breakpoints of the coset sum.
double escape_mass_integral(double v, const CuspFunction& cf, double eta, double theta,
                            double abs_tol = 1e-8);
double escape_mass_integral_bar(double v, double R, double beta, double eta, double theta,
                                double abs_tol = 1e-8);

// Zeroth Fourier coefficient in u of the f-free variant at height v:
//   v^beta X_R(v) + 2 v^{1-beta} sum_c phi(c) c^{-2 beta}
//     int_{|t| <= t0(c)} (t^2+1)^{-beta} dt,
// t0(c) = sqrt(1/(R v c^2) - 1). Requires beta < 1 (the c-sum diverges
// at small v otherwise). Exact once c_max >= 1/sqrt(vR); c_max = 0 auto.
double zeroth_fourier_coefficient(double v, double R, double beta, std::uint64_t c_max = 0);

// Concrete majorant certified by the count bound: for sigma-th powers of
// dominating-triangle counts along the horocycle, the choice below
// (triangle profile of halfwidth 2*rho and amplitude 2*(6 rho)^sigma,
// rho the circumradius of the dominating region) satisfies
// count^sigma <= F_{R,beta} with beta = sigma/2 whenever the count is
// large enough that a cusp coset is active.
double majorant_rho(const Interval& I);
CuspFunction majorant_cusp_function(const Interval& I, double sigma, double R);

}  // namespace sqrtn
