#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "hodgetau/theta.hpp"

namespace hodgetau {

/// Dedekind eta(sigma) = e^{pi i sigma/12} prod_{n>=1} (1 - q^n), q = e^{2 pi i sigma}.
/// The product is truncated once the remaining factors perturb the result
/// by less than tol.
inline cplx dedekind_eta(cplx sigma, double tol = 1e-14) {
    if (sigma.imag() <= 0.0)
        throw std::invalid_argument("dedekind_eta: Im(sigma) must be positive");
    if (tol <= 0.0) throw std::invalid_argument("dedekind_eta: tol must be positive");
    cplx q = std::exp(2.0 * kI * kPi * sigma);
    double aq = std::abs(q);
    // tail of log-product bounded by |q|^{N+1} / (1-|q|)^2
    long n_max = 64;
    if (aq > 1e-15) {
        double need = std::log(tol * (1.0 - aq) * (1.0 - aq)) / std::log(aq);
        n_max = std::lround(std::ceil(need)) + 4;
        if (n_max < 8) n_max = 8;
        if (n_max > 2000000)
            throw std::runtime_error("dedekind_eta: sigma too close to the real axis");
    }
    cplx prod = 1.0;
    cplx qn = 1.0;
    for (long n = 1; n <= n_max; ++n) {
        qn *= q;
        prod *= (1.0 - qn);
        if (std::abs(qn) < tol * 1e-2 && n > 4) break;
    }
    return std::exp(kI * kPi * sigma / 12.0) * prod;
}

/// Quasimodular Eisenstein series E_2(sigma) = 1 - 24 sum_{n>=1} n q^n / (1 - q^n).
/// Satisfies E_2 = (12 / (pi i)) d log eta / d sigma.
inline cplx eisenstein_e2(cplx sigma, double tol = 1e-14) {
    if (sigma.imag() <= 0.0)
        throw std::invalid_argument("eisenstein_e2: Im(sigma) must be positive");
    if (tol <= 0.0) throw std::invalid_argument("eisenstein_e2: tol must be positive");
    cplx q = std::exp(2.0 * kI * kPi * sigma);
    double aq = std::abs(q);
    cplx sum = 0.0;
    cplx qn = 1.0;
    for (long n = 1;; ++n) {
        qn *= q;
        sum += double(n) * qn / (1.0 - qn);
        if (double(n) * std::pow(aq, double(n)) < tol * (1.0 - aq) && n > 4) break;
        if (n > 4000000)
            throw std::runtime_error("eisenstein_e2: sigma too close to the real axis");
    }
    return 1.0 - 24.0 * sum;
}

}  // namespace hodgetau
