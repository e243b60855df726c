#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace hodgetau {

using cplx = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;
inline const cplx kI{0.0, 1.0};

/// Point of the Siegel upper half space: a symmetric g x g period matrix
/// with positive definite imaginary part.
struct SiegelPoint {
    int g = 1;
    std::vector<cplx> omega;  // row-major g x g

    SiegelPoint() = default;
    SiegelPoint(int g_, std::vector<cplx> om) : g(g_), omega(std::move(om)) {
        if (int(omega.size()) != g * g)
            throw std::invalid_argument("SiegelPoint: bad matrix size");
        validate();
    }

    cplx at(int i, int j) const { return omega[i * g + j]; }

    /// Symmetry to a loose tolerance and positive definiteness of the
    /// imaginary part via leading principal minors.
    void validate(double sym_tol = 1e-6) const {
        double scale = 0.0;
        for (const cplx& z : omega) scale = std::max(scale, std::abs(z));
        for (int i = 0; i < g; ++i)
            for (int j = i + 1; j < g; ++j)
                if (std::abs(at(i, j) - at(j, i)) > sym_tol * std::max(1.0, scale))
                    throw std::invalid_argument("SiegelPoint: omega not symmetric");
        // leading principal minors of Im(omega)
        std::vector<double> im(g * g);
        for (int k = 0; k < g * g; ++k) im[k] = omega[k].imag();
        for (int k = 1; k <= g; ++k) {
            if (leading_minor(im, k) <= 0.0)
                throw std::invalid_argument("SiegelPoint: Im(omega) not positive definite");
        }
    }

    double im_min_eigenvalue() const {
        if (g == 1) return omega[0].imag();
        // g = 2 closed form; larger genus is out of scope for evaluation
        double a = omega[0].imag(), b = omega[1].imag(), d = omega[3].imag();
        double tr = a + d, det = a * d - b * b;
        return 0.5 * (tr - std::sqrt(std::max(0.0, tr * tr - 4 * det)));
    }

private:
    static double leading_minor(const std::vector<double>& m, int k) {
        // Gaussian elimination on the k x k leading block
        int g = int(std::sqrt(double(m.size())) + 0.5);
        std::vector<double> a(k * k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) a[i * k + j] = m[i * g + j];
        double det = 1.0;
        for (int c = 0; c < k; ++c) {
            int piv = c;
            for (int r = c + 1; r < k; ++r)
                if (std::abs(a[r * k + c]) > std::abs(a[piv * k + c])) piv = r;
            if (a[piv * k + c] == 0.0) return 0.0;
            if (piv != c) {
                for (int j = 0; j < k; ++j) std::swap(a[c * k + j], a[piv * k + j]);
                det = -det;
            }
            det *= a[c * k + c];
            for (int r = c + 1; r < k; ++r) {
                double f = a[r * k + c] / a[c * k + c];
                for (int j = c; j < k; ++j) a[r * k + j] -= f * a[c * k + j];
            }
        }
        return det;
    }
};

/// Half-integer theta characteristic; entries of eps and eps_prime are 0 or 1/2.
struct ThetaCharacteristic {
    std::vector<double> eps, eps_prime;

    ThetaCharacteristic() = default;
    ThetaCharacteristic(std::vector<double> e, std::vector<double> ep)
        : eps(std::move(e)), eps_prime(std::move(ep)) {
        if (eps.size() != eps_prime.size())
            throw std::invalid_argument("ThetaCharacteristic: length mismatch");
        for (double x : eps) check_entry(x);
        for (double x : eps_prime) check_entry(x);
    }

    static ThetaCharacteristic zero(int g) {
        return ThetaCharacteristic(std::vector<double>(g, 0.0), std::vector<double>(g, 0.0));
    }

    int g() const { return int(eps.size()); }

    bool is_odd() const {
        double dot = 0.0;
        for (size_t i = 0; i < eps.size(); ++i) dot += eps[i] * eps_prime[i];
        return (std::lround(4.0 * dot) % 2 + 2) % 2 == 1;
    }

    /// All 4^g half-integer characteristics of genus g.
    static std::vector<ThetaCharacteristic> all(int g) {
        std::vector<ThetaCharacteristic> out;
        for (int code = 0; code < (1 << (2 * g)); ++code) {
            std::vector<double> e(g), ep(g);
            for (int i = 0; i < g; ++i) {
                e[i] = (code >> i) & 1 ? 0.5 : 0.0;
                ep[i] = (code >> (g + i)) & 1 ? 0.5 : 0.0;
            }
            out.emplace_back(std::move(e), std::move(ep));
        }
        return out;
    }

    static std::vector<ThetaCharacteristic> all_odd(int g) {
        std::vector<ThetaCharacteristic> out;
        for (auto& ch : all(g))
            if (ch.is_odd()) out.push_back(ch);
        return out;
    }

private:
    static void check_entry(double x) {
        if (x != 0.0 && x != 0.5)
            throw std::invalid_argument("ThetaCharacteristic: entries must be 0 or 1/2");
    }
};

inline bool parity_is_odd(const ThetaCharacteristic& ch) { return ch.is_odd(); }

namespace detail {

inline int theta_radius(const SiegelPoint& sp, const std::vector<cplx>& v, double tol,
                        int deriv_order) {
    double lam = sp.im_min_eigenvalue();
    if (lam <= 0.0) throw std::invalid_argument("riemann_theta: Im(omega) not positive definite");
    // Gaussian tail: |term| <= exp(-pi lam |n+c|^2) after completing the
    // square; the shifted-center offset and the polynomial derivative
    // factors are absorbed into the margin.
    double y2 = 0.0;
    for (const cplx& z : v) y2 += z.imag() * z.imag();
    double target = std::log(1.0 / tol) + sp.g * 3.0 + kPi * y2 / lam + 8.0 * (deriv_order + 1);
    int r = int(std::ceil(std::sqrt(target / (kPi * lam)))) + 2;
    if (r > 60)
        throw std::runtime_error("riemann_theta: summation radius cap exceeded (ill-conditioned omega)");
    return r;
}

}  // namespace detail

/// Riemann theta with characteristics and term-wise partial derivatives:
///   theta[ch](v; omega) = sum_n exp(i pi (n+eps)' omega (n+eps)
///                                   + 2 i pi (n+eps)' (v+eps'))
/// deriv lists the v-indices to differentiate in (empty = plain value).
/// The lattice sum is truncated at a radius with Gaussian tail below tol.
inline cplx riemann_theta(const std::vector<cplx>& v, const SiegelPoint& sp,
                          const ThetaCharacteristic& ch, const std::vector<int>& deriv = {},
                          double tol = 1e-12) {
    int g = sp.g;
    if (int(v.size()) != g || ch.g() != g)
        throw std::invalid_argument("riemann_theta: dimension mismatch");
    if (tol <= 0.0) throw std::invalid_argument("riemann_theta: tol must be positive");
    int R = detail::theta_radius(sp, v, tol, int(deriv.size()));

    // center the summation box on the maximum of the Gaussian envelope
    std::vector<double> center(g, 0.0);
    {
        // solve Im(omega) * c = -Im(v) - Im(omega) eps  =>  c + eps + Y^-1 Im v = 0
        if (g == 1) {
            center[0] = -v[0].imag() / sp.at(0, 0).imag() - ch.eps[0];
        } else if (g == 2) {
            double a = sp.at(0, 0).imag(), b = sp.at(0, 1).imag(), d = sp.at(1, 1).imag();
            double det = a * d - b * b;
            double y0 = v[0].imag(), y1 = v[1].imag();
            center[0] = -(d * y0 - b * y1) / det - ch.eps[0];
            center[1] = -(-b * y0 + a * y1) / det - ch.eps[1];
        }
    }

    cplx sum = 0.0;
    std::vector<int> n(g);
    std::vector<double> ne(g);
    auto term = [&]() {
        for (int i = 0; i < g; ++i) ne[i] = n[i] + ch.eps[i];
        cplx expo = 0.0;
        for (int i = 0; i < g; ++i) {
            for (int j = 0; j < g; ++j) expo += kI * kPi * ne[i] * sp.at(i, j) * ne[j];
            expo += 2.0 * kI * kPi * ne[i] * (v[i] + ch.eps_prime[i]);
        }
        cplx t = std::exp(expo);
        for (int idx : deriv) t *= 2.0 * kI * kPi * ne[idx];
        sum += t;
    };

    if (g == 1) {
        int c0 = int(std::lround(center[0]));
        for (n[0] = c0 - R; n[0] <= c0 + R; ++n[0]) term();
    } else if (g == 2) {
        int c0 = int(std::lround(center[0])), c1 = int(std::lround(center[1]));
        for (n[0] = c0 - R; n[0] <= c0 + R; ++n[0])
            for (n[1] = c1 - R; n[1] <= c1 + R; ++n[1]) term();
    } else {
        throw std::invalid_argument("riemann_theta: only g = 1, 2 are supported");
    }
    return sum;
}

}  // namespace hodgetau
