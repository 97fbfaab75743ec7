#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "sqrtn/lattice.hpp"
#include "sqrtn/ref.hpp"
#include "sqrtn/rng.hpp"

using namespace sqrtn;

namespace {

constexpr double kPi = std::numbers::pi;

// random element of the deck group: integer shears and an integer shift
GroupElement random_deck_element(Xoshiro256pp& rng) {
    auto small_int = [&]() { return static_cast<double>(static_cast<int>(rng.next() % 5)) - 2.0; };
    GroupElement g{{1.0, small_int(), 0.0, 1.0}, {0.0, 0.0}};
    GroupElement h{{1.0, 0.0, small_int(), 1.0}, {0.0, 0.0}};
    GroupElement k{{1.0, small_int(), 0.0, 1.0}, {small_int(), small_int()}};
    return g.compose(h).compose(k);
}

// random group element with real entries (unimodular up to rounding)
GroupElement random_group_element(Xoshiro256pp& rng) {
    auto r = [&]() { return 4.0 * rng.uniform01() - 2.0; };
    GroupElement g{{1.0, r(), 0.0, 1.0}, {0.0, 0.0}};
    GroupElement h{{1.0, 0.0, r(), 1.0}, {0.0, 0.0}};
    GroupElement k{{1.0, r(), 0.0, 1.0}, {r(), r()}};
    return g.compose(h).compose(k);
}

}  // namespace

TEST_CASE("iwasawa matrices of the coordinate axes are exact") {
    Mat2 id = iwasawa_compose({0.0, 1.0}, 0.0);
    CHECK(id.a == 1.0);
    CHECK(id.b == 0.0);
    CHECK(id.c == 0.0);
    CHECK(id.d == 1.0);

    Mat2 shear = iwasawa_compose({0.75, 1.0}, 0.0);
    CHECK(shear.a == 1.0);
    CHECK(shear.b == 0.75);
    CHECK(shear.c == 0.0);
    CHECK(shear.d == 1.0);

    Mat2 diag = iwasawa_compose({0.0, 4.0}, 0.0);
    CHECK(diag.a == 2.0);
    CHECK(diag.b == 0.0);
    CHECK(diag.c == 0.0);
    CHECK(diag.d == 0.5);
}

TEST_CASE("iwasawa decomposition inverts composition") {
    Xoshiro256pp rng(11);
    for (int i = 0; i < 200; ++i) {
        double u = 4.0 * rng.uniform01() - 2.0;
        double v = 0.05 + 3.0 * rng.uniform01();
        double phi = -kPi + 2.0 * kPi * rng.uniform01() * 0.999;
        auto [tau, phi2] = iwasawa_decompose(iwasawa_compose({u, v}, phi));
        CHECK(tau.real() == doctest::Approx(u).epsilon(1e-12));
        CHECK(tau.imag() == doctest::Approx(v).epsilon(1e-12));
        CHECK(phi2 == doctest::Approx(phi).epsilon(1e-12));
    }
    CHECK_THROWS_AS(iwasawa_decompose(Mat2{2.0, 0.0, 0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(iwasawa_compose({0.0, -1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("translation elements form a one-parameter group") {
    GroupElement n2 = n_tilde(2.0);
    CHECK(n2.A.a == 1.0);
    CHECK(n2.A.b == 2.0);
    CHECK(n2.A.c == 0.0);
    CHECK(n2.A.d == 1.0);
    CHECK(n2.w.x == -1.0);
    CHECK(n2.w.y == 1.0);

    GroupElement ab = n_tilde(0.5).compose(n_tilde(0.25));
    GroupElement direct = n_tilde(0.75);
    CHECK(ab.A.b == direct.A.b);
    CHECK(ab.w.x == direct.w.x);
    CHECK(ab.w.y == direct.w.y);
}

TEST_CASE("composing with the inverse gives the identity") {
    GroupElement g{{1.0, 2.0, 0.0, 1.0}, {0.5, 0.25}};
    GroupElement e = g.compose(g.inverse());
    CHECK(e.A.a == 1.0);
    CHECK(e.A.b == 0.0);
    CHECK(e.A.c == 0.0);
    CHECK(e.A.d == 1.0);
    CHECK(e.w.x == 0.0);
    CHECK(e.w.y == 0.0);

    Xoshiro256pp rng(5);
    for (int i = 0; i < 100; ++i) {
        GroupElement h = random_group_element(rng);
        GroupElement r = h.compose(h.inverse());
        CHECK(r.A.a == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.A.b == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(std::fabs(r.w.x) < 1e-12);
        CHECK(std::fabs(r.w.y) < 1e-12);
    }
}

TEST_CASE("the inversion element rotates the identity lattice by a quarter turn") {
    GroupElement s{{0.0, -1.0, 1.0, 0.0}, {0.0, 0.0}};
    AffineLattice x;  // tau = i, phi = 0, xi = 0
    AffineLattice y = group_action(s, x);
    CHECK(y.tau.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(y.tau.imag() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(y.phi == doctest::Approx(kPi / 2.0).epsilon(1e-15));
    CHECK(y.xi.x == 0.0);
    CHECK(y.xi.y == 0.0);
}

TEST_CASE("the group action is associative") {
    Xoshiro256pp rng(17);
    for (int i = 0; i < 1000; ++i) {
        GroupElement g1 = random_group_element(rng);
        GroupElement g2 = random_group_element(rng);
        AffineLattice x;
        x.tau = {4.0 * rng.uniform01() - 2.0, 0.1 + 2.0 * rng.uniform01()};
        x.phi = 2.0 * kPi * rng.uniform01();
        x.xi = {rng.uniform01(), rng.uniform01()};

        AffineLattice a = group_action(g1.compose(g2), x);
        AffineLattice b = group_action(g1, group_action(g2, x));
        CHECK(std::fabs(a.tau.real() - b.tau.real()) < 1e-9);
        CHECK(std::fabs(a.tau.imag() - b.tau.imag()) < 1e-9);
        CHECK(std::fabs(a.xi.x - b.xi.x) < 1e-9);
        CHECK(std::fabs(a.xi.y - b.xi.y) < 1e-9);
        // the angle cocycle matches only modulo full turns
        CHECK(std::fabs(std::remainder(a.phi - b.phi, 2.0 * kPi)) < 1e-9);
    }
}

TEST_CASE("translation transports the horocycle section exactly") {
    AffineLattice moved = group_action(n_tilde(2.0), horocycle_point(0.25, 0.3));
    AffineLattice target = horocycle_point(2.25, 0.3);
    CHECK(moved.tau.real() == target.tau.real());
    CHECK(moved.tau.imag() == target.tau.imag());
    CHECK(moved.phi == target.phi);
    CHECK(moved.xi.x == target.xi.x);
    CHECK(moved.xi.y == target.xi.y);
}

TEST_CASE("lattice construction validates and reduces") {
    CHECK_THROWS_AS(make_affine_lattice({0.0, 0.0}, 0.0, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(horocycle_point(0.0, -1.0), std::invalid_argument);
    AffineLattice x = make_affine_lattice({0.3, 1.0}, 5.0 * kPi, {1.75, -0.25});
    CHECK(x.phi == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(x.xi.x == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(x.xi.y == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("triangle counts of the integer lattice are exact") {
    AffineLattice id;  // identity: points are the integer pairs
    CHECK(count_in_triangle(id, Triangle::dominating(Interval::closed(-1.0, 1.0))) == 5);
    CHECK(count_in_triangle(id, Triangle::process(Interval::half_open(0.0, 1.0))) == 0);
    CHECK(Triangle::process(Interval::half_open(0.0, 1.0)).area() ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(Triangle::dominating(Interval::closed(-1.0, 1.0)).area() ==
          doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("triangle counts match the box-enumeration reference") {
    HaarSampler hs(23);
    Triangle tp = Triangle::process(Interval::half_open(0.0, 1.0));
    Triangle td = Triangle::dominating(Interval::closed(-0.7, 1.3));
    for (int i = 0; i < 300; ++i) {
        AffineLattice x = hs.sample();
        CHECK(count_in_triangle(x, tp) == ref::count_in_triangle(x, tp));
        CHECK(count_in_triangle(x, td) == ref::count_in_triangle(x, td));
    }
}

TEST_CASE("triangle counts are invariant under deck transformations") {
    HaarSampler hs(31);
    Xoshiro256pp rng(32);
    Triangle tp = Triangle::process(Interval::half_open(0.0, 1.0));
    Triangle td = Triangle::dominating(Interval::closed(-1.0, 1.0));
    for (int i = 0; i < 200; ++i) {
        AffineLattice x = hs.sample();
        GroupElement g = random_deck_element(rng);
        AffineLattice y = reduce(group_action(g, x));
        CHECK(count_in_triangle(x, tp) == count_in_triangle(y, tp));
        CHECK(count_in_triangle(x, td) == count_in_triangle(y, td));
    }
}

TEST_CASE("haar samples are reproducible and in range") {
    HaarSampler a(7), b(7), c(8);
    bool differs = false;
    for (int i = 0; i < 200; ++i) {
        AffineLattice xa = a.sample();
        AffineLattice xb = b.sample();
        AffineLattice xc = c.sample();
        CHECK(xa.tau == xb.tau);
        CHECK(xa.phi == xb.phi);
        CHECK(xa.xi.x == xb.xi.x);
        differs = differs || xa.tau != xc.tau;

        CHECK(xa.u() >= -0.5);
        CHECK(xa.u() <= 0.5);
        CHECK(xa.v() >= std::sqrt(3.0) / 2.0);
        CHECK(xa.u() * xa.u() + xa.v() * xa.v() >= 1.0);
        CHECK(xa.phi >= 0.0);
        CHECK(xa.phi < 2.0 * kPi);
        CHECK(xa.xi.x >= 0.0);
        CHECK(xa.xi.x < 1.0);
        CHECK(xa.xi.y >= 0.0);
        CHECK(xa.xi.y < 1.0);
    }
    CHECK(differs);
}

TEST_CASE("haar acceptance rate and cusp excursion statistics") {
    HaarSampler hs(271828);
    const int n = 100000;
    double inv_v = 0.0;
    for (int i = 0; i < n; ++i) inv_v += 1.0 / hs.sample().v();
    inv_v /= n;
    CHECK(hs.acceptance_rate() > 0.89);
    CHECK(hs.acceptance_rate() < 0.92);
    // exact mean of 1/v under the normalized measure: 3 ln 3 / (2 pi)
    CHECK(std::fabs(inv_v - 3.0 * std::log(3.0) / (2.0 * kPi)) < 0.005);
}

TEST_CASE("limit process distribution is thread-count independent") {
    Box box{Interval::half_open(0.0, 1.0)};
    auto d1 = limit_process_distribution(box, 20000, 42, 1);
    auto d4 = limit_process_distribution(box, 20000, 42, 4);
    CHECK(d1.weight == d4.weight);
    CHECK(d1.samples == 20000.0);
    CHECK(d1.mean(0) == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("monte carlo moments agree with the exact targets") {
    auto est = siegel_moment_check(Interval::half_open(0.0, 1.0),
                                   Interval::half_open(0.5, 1.5), 20000, 1234);
    CHECK(est.samples == 20000);
    CHECK(est.se_second > 0.0);
    CHECK(est.se_cross > 0.0);
    // E[k1^2] = |I1| + |I1|^2, E[k1 k2] = |I1 cap I2| + |I1| |I2|
    CHECK(std::fabs(est.second_moment - 2.0) < 4.0 * est.se_second);
    CHECK(std::fabs(est.cross_moment - 1.5) < 4.0 * est.se_cross);
}

TEST_CASE("cusp function parameters are validated") {
    auto tri = TestFunction::triangle(1.0, 1.0);
    CHECK_NOTHROW(CuspFunction(2.0, 0.5, tri));
    CHECK_THROWS_AS(CuspFunction(0.5, 0.5, tri), std::invalid_argument);
    CHECK_THROWS_AS(CuspFunction(2.0, 1.5, tri), std::invalid_argument);
    CHECK_THROWS_AS(CuspFunction(2.0, 0.5, TestFunction::indicator(Interval::closed(0.0, 1.0))),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        CuspFunction(2.0, 0.5,
                     TestFunction::piecewise_linear({-2.0, -1.0, 0.0, 1.0, 2.0},
                                                    {0.0, 2.0, 1.0, 2.0, 0.0})),
        std::invalid_argument);
}

TEST_CASE("the cusp sum at a single dominant coset is exact") {
    double R = 4.0;
    CuspFunction cf(R, 1.0, TestFunction::indicator(Interval::closed(-0.5, 0.5)));
    AffineLattice x = make_affine_lattice({0.0, 2.0 * R}, 0.0, {0.0, 0.0});
    FrbResult r = f_r_beta(x, cf);
    CHECK(r.value == 2.0 * R);
    CHECK(r.exact);
    CHECK(r.required_c == 0);
    CHECK(r.max_vgamma == 2.0 * R);

    FrbResult rb = f_r_beta_bar({0.3, 2.0 * R}, R, 0.7);
    CHECK(rb.value == std::pow(2.0 * R, 0.7));
}

TEST_CASE("the cusp sum is invariant under deck transformations") {
    Xoshiro256pp rng(93);
    CuspFunction cf(4.0, 0.75, TestFunction::triangle(1.0, 1.0));
    for (int i = 0; i < 30; ++i) {
        AffineLattice x = make_affine_lattice({2.0 * rng.uniform01() - 1.0, 1e-3},
                                              2.0 * kPi * rng.uniform01(),
                                              {rng.uniform01(), rng.uniform01()});
        GroupElement g = random_deck_element(rng);
        AffineLattice y = reduce(group_action(g, x));
        double fa = f_r_beta(x, cf).value;
        double fb = f_r_beta(y, cf).value;
        CHECK(std::fabs(fa - fb) <= 1e-9 * std::max(1.0, std::fabs(fa)));
    }
}

TEST_CASE("escape mass of the zero function vanishes") {
    CuspFunction cf(2.0, 0.5, TestFunction::piecewise_linear({-1.0, 0.0, 1.0}, {0.0, 0.0, 0.0}));
    CHECK(escape_mass_integral(1e-3, cf, 0.5, 0.5) == 0.0);
}

TEST_CASE("the u-average of the bare cusp sum matches its closed form") {
    double v = 1e-3, R = 2.0, beta = 0.4;
    double integral = escape_mass_integral_bar(v, R, beta, 0.5, 0.5);
    double coeff = zeroth_fourier_coefficient(v, R, beta);
    CHECK(integral == doctest::Approx(2.0 * coeff).epsilon(1e-3));
}

TEST_CASE("parameter domains of the escape-mass formulas") {
    CHECK_THROWS_AS(zeroth_fourier_coefficient(1e-3, 2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(zeroth_fourier_coefficient(1e-3, 0.5, 0.4), std::invalid_argument);
    // beta > 1 requires the excluded neighborhood to shrink slowly enough
    CHECK_THROWS_AS(escape_mass_integral_bar(1e-3, 2.0, 1.25, 5.0, 0.5), std::domain_error);
    CHECK_NOTHROW(escape_mass_integral_bar(1e-3, 2.0, 1.25, 0.5, 0.5));
}

TEST_CASE("the concrete majorant dominates squared counts in the cusp") {
    Interval I = Interval::closed(0.0, 1.0);
    CHECK(majorant_rho(I) == doctest::Approx(std::sqrt(20.0)).epsilon(1e-15));
    CuspFunction cf = majorant_cusp_function(I, 2.0, 4.0);
    CHECK(cf.beta == 1.0);
    CHECK(cf.f(0.0) == doctest::Approx(1440.0).epsilon(1e-12));

    Triangle dom = Triangle::dominating(I);
    Xoshiro256pp rng(555);
    const int k0 = 12;
    for (int i = 0; i < 2000; ++i) {
        double u = 2.0 * rng.uniform01() - 1.0;
        double v = (i % 2 == 0) ? 1e-4 : 1e-5;
        AffineLattice x = horocycle_point(u, v);
        auto n = static_cast<double>(count_in_triangle(x, dom));
        if (n < k0) continue;
        double fval = f_r_beta(x, cf).value;
        CHECK(n * n <= fval + 1e-9);
    }
}
