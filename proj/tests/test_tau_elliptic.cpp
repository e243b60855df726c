#include "doctest.h"

#include <array>
#include <random>

#include "hodgetau/tau_elliptic.hpp"

using namespace hodgetau;

namespace {

using Mat2 = std::array<std::array<long, 2>, 2>;

Mat2 mul(const Mat2& x, const Mat2& y) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
    return r;
}

// random SL(2,Z) element with all entries bounded by 5, built as a short
// word in the standard generators
Mat2 random_gamma(std::mt19937& rng) {
    Mat2 S{{{0, -1}, {1, 0}}};
    std::uniform_int_distribution<int> shear(-2, 2), len(1, 4);
    for (;;) {
        Mat2 g{{{1, 0}, {0, 1}}};
        int n = len(rng);
        for (int i = 0; i < n; ++i) {
            Mat2 t{{{1, shear(rng)}, {0, 1}}};
            g = mul(g, t);
            g = mul(g, S);
        }
        long mx = 0;
        for (auto& row : g)
            for (long e : row) mx = std::max(mx, std::abs(e));
        if (mx <= 5) return g;
    }
}

}  // namespace

TEST_CASE("periods: validation and scale invariance") {
    CHECK_THROWS(EllipticPeriods(0.0, kI));
    CHECK_THROWS(EllipticPeriods(1.0, cplx(0.5, -1.0)));
    EllipticPeriods p(1.0, cplx(0.3, 1.1));
    EllipticPeriods q(cplx(2.0, -0.5), cplx(2.0, -0.5) * cplx(0.3, 1.1));
    // only the modulus B/A enters
    CHECK(std::abs(tau_genus1(p) - tau_genus1(q)) < 1e-14);
}

TEST_CASE("modular factor over 100 random elements") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> re(-0.45, 0.45), im(0.9, 1.4);
    for (int rep = 0; rep < 100; ++rep) {
        cplx sigma(re(rng), im(rng));
        Mat2 g = random_gamma(rng);
        CHECK(modular_factor_check(sigma, g) < 1e-9);
    }
    CHECK_THROWS(modular_factor_check(kI, Mat2{{{1, 1}, {1, 1}}}));  // det 0
}

TEST_CASE("boundary exponent at the cusp is 2") {
    auto out = cusp_asymptotics_check(1.0, 3.0, 9.0);
    CHECK(std::abs(out.fitted_exponent - 2.0) < 1e-6);
    CHECK(std::abs(out.limit_constant - 1.0) < 1e-3);
    CHECK(out.monotone_tail);
    CHECK_THROWS(cusp_asymptotics_check(1.0, 5.0, 4.0));
}

TEST_CASE("b-period derivative of log tau matches the closed form") {
    // at A = 1, B = i the closed form is 4 pi i E_2(i) = 12 i
    EllipticPeriods p(1.0, kI);
    BergmanCheck out = bergman_connection_check(p);
    CHECK(std::abs(out.expected - 12.0 * kI) < 1e-12);
    CHECK(out.residual < 1e-8);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> re(-0.4, 0.4), im(0.9, 1.5), sc(0.5, 2.0);
    for (int rep = 0; rep < 5; ++rep) {
        cplx A(sc(rng), re(rng));
        cplx B = A * cplx(re(rng), im(rng));
        BergmanCheck chk = bergman_connection_check(EllipticPeriods(A, B));
        CHECK(chk.residual < 1e-8);
        CHECK(chk.euler_residual < 1e-10);
    }
}
