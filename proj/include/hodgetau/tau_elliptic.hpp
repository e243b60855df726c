#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "hodgetau/modular.hpp"

namespace hodgetau {

/// a- and b-period of the torus differential; only the modulus sigma = B/A
/// enters the tau function.
struct EllipticPeriods {
    cplx A, B;

    EllipticPeriods(cplx a, cplx b) : A(a), B(b) {
        if (std::abs(A) == 0.0) throw std::invalid_argument("EllipticPeriods: A must be nonzero");
        if (sigma().imag() <= 0.0)
            throw std::invalid_argument("EllipticPeriods: Im(B/A) must be positive");
    }

    cplx sigma() const { return B / A; }
};

/// Genus-1 tau function: eta(B/A)^48.
inline cplx tau_genus1(const EllipticPeriods& p, double tol = 1e-14) {
    return std::pow(dedekind_eta(p.sigma(), tol), 48);
}

/// |tau(gamma sigma)/tau(sigma) - (c sigma + d)^24| / |(c sigma + d)^24|
/// for gamma = [[a, b], [c, d]] in SL(2, Z).
inline double modular_factor_check(cplx sigma, const std::array<std::array<long, 2>, 2>& gamma) {
    long a = gamma[0][0], b = gamma[0][1], c = gamma[1][0], d = gamma[1][1];
    if (a * d - b * c != 1)
        throw std::invalid_argument("modular_factor_check: gamma must have determinant 1");
    cplx cd = double(c) * sigma + double(d);
    cplx sigma2 = (double(a) * sigma + double(b)) / cd;
    cplx ratio = tau_genus1(EllipticPeriods(1.0, sigma2)) / tau_genus1(EllipticPeriods(1.0, sigma));
    cplx factor = std::pow(cd, 24);
    return std::abs(ratio - factor) / std::abs(factor);
}

struct CuspAsymptotics {
    double fitted_exponent = 0.0;   // slope of log|tau| against log|t|
    double limit_constant = 0.0;    // |tau * t^-2| at the deepest grid point
    bool monotone_tail = false;     // |tau t^-2 - 1| decreasing along the grid
};

namespace detail {

inline cplx log_one_minus(cplx z) {
    if (std::abs(z) < 1e-8) return -z - 0.5 * z * z;
    return std::log(1.0 - z);
}

/// 48 sum_n log(1 - q^n) = log(tau / t^2), computed without the rounding
/// loss of forming tau and t^2 separately (the deviation from 1 is far
/// below double resolution deep in the cusp).
inline cplx log_tau_over_t2(cplx sigma) {
    cplx q = std::exp(2.0 * kI * kPi * sigma);
    cplx sum = 0.0, qn = 1.0;
    for (int n = 1; n <= 4000; ++n) {
        qn *= q;
        sum += log_one_minus(qn);
        if (std::abs(qn) < 1e-320) break;
    }
    return 48.0 * sum;
}

}  // namespace detail

/// Fits the boundary exponent of tau along t = e^{2 pi i sigma} with
/// Im(sigma) running over a grid in [im_lo, im_hi].
inline CuspAsymptotics cusp_asymptotics_check(cplx A, double im_lo, double im_hi,
                                              int npoints = 12, double re_sigma = 0.1) {
    if (npoints < 3 || im_hi <= im_lo)
        throw std::invalid_argument("cusp_asymptotics_check: grid too small");
    (void)A;  // the scale drops out of tau entirely
    std::vector<double> xs, ys, devs;
    for (int k = 0; k < npoints; ++k) {
        double im = im_lo + (im_hi - im_lo) * k / (npoints - 1);
        cplx sigma(re_sigma, im);
        double log_abs_t = -2.0 * kPi * im;
        cplx excess = detail::log_tau_over_t2(sigma);
        xs.push_back(log_abs_t);
        ys.push_back(2.0 * log_abs_t + excess.real());
        devs.push_back(std::abs(excess) < 1e-8 ? std::abs(excess)
                                               : std::abs(std::exp(excess) - 1.0));
    }
    // least-squares slope
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = int(xs.size());
    for (int i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    CuspAsymptotics out;
    out.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.limit_constant = std::abs(std::exp(detail::log_tau_over_t2(cplx(re_sigma, im_hi))));
    out.monotone_tail = true;
    for (size_t i = 1; i < devs.size(); ++i)
        if (devs[i] > devs[i - 1]) out.monotone_tail = false;
    return out;
}

struct BergmanCheck {
    cplx observed;        // finite-difference d log tau / dB
    cplx expected;        // 4 pi i E_2(B/A) / A
    double residual = 0;  // relative
    cplx euler_term_a;    // z_1 * contour integral over s_1 = -b
    cplx euler_term_b;    // z_2 * contour integral over s_2 = a
    double euler_residual = 0;  // |sum - (-pi i (2g-2))| = |sum|
    std::string convention = "s_1 = -b, s_2 = a; S_B(zeta) = 12 eta_1 / A^2, eta_1 = pi^2 E_2 / 6";
};

/// Compares the finite-difference derivative of log tau in the b-period
/// against the closed-form torus value of the flat-connection coefficient,
/// and evaluates the genus-1 Euler identity in closed form.
inline BergmanCheck bergman_connection_check(const EllipticPeriods& p, double tol = 1e-9) {
    BergmanCheck out;
    cplx sigma = p.sigma();
    out.expected = 4.0 * kI * kPi * eisenstein_e2(sigma) / p.A;

    // central differences in B with step halving until two estimates agree
    auto dlog = [&](double h) {
        cplx tp = tau_genus1(EllipticPeriods(p.A, p.B + h));
        cplx tm = tau_genus1(EllipticPeriods(p.A, p.B - h));
        return std::log(tp / tm) / (2.0 * h);
    };
    double h = 1e-3 * std::abs(p.B);
    cplx prev = dlog(h);
    for (int iter = 0; iter < 20; ++iter) {
        h *= 0.5;
        cplx cur = dlog(h);
        // Richardson on the O(h^2) scheme
        cplx extrap = (4.0 * cur - prev) / 3.0;
        if (std::abs(cur - prev) < tol * std::abs(extrap)) {
            out.observed = extrap;
            break;
        }
        prev = cur;
        out.observed = extrap;
        if (iter == 19)
            throw std::runtime_error("bergman_connection_check: step halving did not converge");
    }
    out.residual = std::abs(out.observed - out.expected) / std::abs(out.expected);

    // Euler identity: the quadratic differential (S_B - S_omega)/omega is
    // the constant one-form (12 eta_1 / A^2) dzeta on the torus.
    cplx eta1 = kPi * kPi * eisenstein_e2(sigma) / 6.0;
    cplx density = 12.0 * eta1 / (p.A * p.A);
    out.euler_term_a = p.A * (-p.B * density);  // z_1 = A, s_1 = -b
    out.euler_term_b = p.B * (p.A * density);   // z_2 = B, s_2 = a
    out.euler_residual = std::abs(out.euler_term_a + out.euler_term_b);
    return out;
}

}  // namespace hodgetau
