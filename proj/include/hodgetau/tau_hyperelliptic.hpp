#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hodgetau/hyperelliptic.hpp"
#include "hodgetau/theta.hpp"

namespace hodgetau {

struct TauOptions {
    int odd_char_index = 0;       // which of the 6 odd characteristics builds the prime form
    double offset_scale = 0.08;   // prime-form limit offsets, relative to the branch distance
    double tol = 1e-9;
    double degeneracy_threshold = 1e-4;
    bool swap_zero_labels = false;
    int switch_branch = -1;  // pinned sheet-switch branch point for parameter sweeps
};

struct TauEvaluation {
    cplx log_value;                     // log tau_0 (sum of principal-branch logs)
    cplx value;                         // exp(log_value)
    cplx theta_term;                    // (sum_i omega_i(zeta) d/dv_i)^2 theta at K^zeta
    cplx wronskian;                     // W in the zeta-frame at the basepoint
    cplx e_x1x2_pow4;                   // E(x1,x2)^4
    std::array<cplx, 2> e_zeta_xk_pow4; // E(zeta,x_k)^4
    std::array<cplx, 2> riemann_k;
    std::array<long, 2> Z{}, Zp{};
    double lattice_residual = 0.0;
    cplx prefactor_exponent;            // 4 pi i <Omega Z - 4 K, Z>
};

namespace detail {

/// omega_i / omega as a function of x alone (both differentials are
/// anti-invariant under the hyperelliptic involution, so y cancels).
inline cplx frame_ratio(const PeriodData& pd, const DifferentialSpec& spec, int i, cplx x) {
    return (pd.cnorm[i][0] + pd.cnorm[i][1] * x) / (spec.c0 + spec.c1 * x);
}

/// omega_delta / omega at x: the gradient of the odd theta paired with the
/// frame ratios. Squares of prime-form ingredients only ever need this
/// combination, which keeps every quantity free of square-root branches.
inline cplx spinor_sq(const PeriodData& pd, const DifferentialSpec& spec,
                      const std::array<cplx, 2>& grad, cplx x) {
    return grad[0] * frame_ratio(pd, spec, 0, x) + grad[1] * frame_ratio(pd, spec, 1, x);
}

/// theta[delta](A(p->q))^2 / (h(p)^2 h(q)^2): the square of the prime form
/// in the zeta-frame, with both Abel values taken through the hub.
struct PrimeFormSq {
    const PeriodData* pd;
    const DifferentialSpec* spec;
    ThetaCharacteristic ch;
    std::array<cplx, 2> grad;
    double tol;

    PrimeFormSq(const PeriodData& p, const DifferentialSpec& s, const ThetaCharacteristic& c,
                double tol_)
        : pd(&p), spec(&s), ch(c), tol(tol_) {
        if (!c.is_odd()) throw std::invalid_argument("prime form: characteristic must be odd");
        grad[0] = riemann_theta({cplx(0), cplx(0)}, p.sp, c, {0}, tol);
        grad[1] = riemann_theta({cplx(0), cplx(0)}, p.sp, c, {1}, tol);
    }

    cplx eval(const std::array<cplx, 2>& abel_p, cplx xp, const std::array<cplx, 2>& abel_q,
              cplx xq) const {
        std::vector<cplx> v = {abel_q[0] - abel_p[0], abel_q[1] - abel_p[1]};
        cplx th = riemann_theta(v, pd->sp, ch, {}, tol);
        return th * th / (spinor_sq(*pd, *spec, grad, xp) * spinor_sq(*pd, *spec, grad, xq));
    }
};

/// Richardson ladder for a limit with an O(h) + O(h^2) + ... error
/// expansion, from samples at h, h/2, h/4, ...; eliminates one power per
/// level.
template <std::size_t N>
inline cplx richardson(std::array<cplx, N> v) {
    for (std::size_t p = 0; p + 1 < N; ++p) {
        double f = double(1ull << (p + 1));
        for (std::size_t k = 0; k + 1 < N - p; ++k) v[k] = (f * v[k + 1] - v[k]) / (f - 1.0);
    }
    return v[0];
}

/// Integral of omega along the straight segment from x0 (with lift y0) to
/// x0 + offset, plus the Abel increment of (omega_1, omega_2).
struct ZeroNeighborhood {
    std::array<cplx, 2> abel;  // Abel value at the offset point (hub-based)
    cplx zeta_sq;              // int_{x_k}^{x_k + offset} omega  (= zeta_k^2)
    cplx x;
};

inline ZeroNeighborhood probe_near_zero(const PeriodData& pd, const DifferentialSpec& spec,
                                        const CurvePoint& zero,
                                        const std::array<cplx, 2>& abel_zero, cplx offset) {
    PathIntegrator integ{&pd.curve, pd.tol};
    std::vector<std::vector<cplx>> polys = {{pd.cnorm[0][0], pd.cnorm[0][1]},
                                            {pd.cnorm[1][0], pd.cnorm[1][1]},
                                            {spec.c0, spec.c1}};
    auto res = integ.run({Seg::straight(zero.x, zero.x + offset)}, zero.y, polys);
    ZeroNeighborhood out;
    out.abel = {abel_zero[0] + res.vals[0], abel_zero[1] + res.vals[1]};
    out.zeta_sq = res.vals[2];
    out.x = zero.x + offset;
    return out;
}

}  // namespace detail

/// Rebases the path system at a different hub (|Im x| must clear the branch
/// line so the descent legs stay valid).
inline PeriodData with_hub(const PeriodData& pd, cplx hub_x) {
    double max_im = 0.0;
    for (cplx ei : pd.curve.e) max_im = std::max(max_im, std::abs(ei.imag()));
    if (std::abs(hub_x.imag()) < max_im + 0.5)
        throw std::invalid_argument("with_hub: hub too close to the branch line");
    PeriodData out = pd;
    out.hub = {hub_x, detail::stable_lift(pd.curve, hub_x)};
    return out;
}

inline PeriodData with_hub_sheet_flipped(const PeriodData& pd) {
    PeriodData out = pd;
    out.hub.y = -out.hub.y;
    return out;
}

/// Full evaluation of the genus-2 generic-stratum tau function:
///   tau_0 = (D^2 theta(K))^16 / (e^{4 pi i <Omega Z - 4K, Z>} W^16)
///           * E(x1,x2)^4 / (E(zeta,x1)^8 E(zeta,x2)^8)
/// with all prime-form factors computed through their even powers, so no
/// square-root branch ever has to be chosen.
inline TauEvaluation tau0_eval(const PeriodData& pd, const DifferentialSpec& spec,
                               const TauOptions& opt = {}) {
    TauEvaluation out;
    DifferentialZeros z = zeros_of_differential(pd, spec, opt.degeneracy_threshold);
    if (z.degenerate)
        throw std::invalid_argument("tau0_eval: differential leaves the generic stratum");
    if (opt.swap_zero_labels) std::swap(z.x1, z.x2);

    auto K = riemann_constants(pd, opt.tol);
    out.riemann_k = K;

    auto a1 = abel_map_to(pd, z.x1, opt.switch_branch);
    auto a2 = abel_map_to(pd, z.x2, opt.switch_branch);

    // lattice offsets from A((omega)) + 2K = Omega Z + Z'
    std::array<cplx, 2> R = {a1.v[0] + a2.v[0] + 2.0 * K[0], a1.v[1] + a2.v[1] + 2.0 * K[1]};
    {
        double y00 = pd.sp.at(0, 0).imag(), y01 = pd.sp.at(0, 1).imag(),
               y11 = pd.sp.at(1, 1).imag();
        double det = y00 * y11 - y01 * y01;
        double z0 = (y11 * R[0].imag() - y01 * R[1].imag()) / det;
        double z1 = (-y01 * R[0].imag() + y00 * R[1].imag()) / det;
        out.Z = {std::lround(z0), std::lround(z1)};
        cplx rem0 = R[0] - pd.sp.at(0, 0) * double(out.Z[0]) - pd.sp.at(0, 1) * double(out.Z[1]);
        cplx rem1 = R[1] - pd.sp.at(1, 0) * double(out.Z[0]) - pd.sp.at(1, 1) * double(out.Z[1]);
        out.Zp = {std::lround(rem0.real()), std::lround(rem1.real())};
        out.lattice_residual = std::max(std::abs(rem0 - double(out.Zp[0])),
                                        std::abs(rem1 - double(out.Zp[1])));
        if (out.lattice_residual > 1e-6)
            throw std::runtime_error("tau0_eval: lattice rounding residual too large");
    }

    // theta-derivative term along u = (omega_1/omega, omega_2/omega)(hub)
    std::array<cplx, 2> u = {detail::frame_ratio(pd, spec, 0, pd.hub.x),
                             detail::frame_ratio(pd, spec, 1, pd.hub.x)};
    {
        std::vector<cplx> vK = {K[0], K[1]};
        auto ch0 = ThetaCharacteristic::zero(2);
        cplx t00 = riemann_theta(vK, pd.sp, ch0, {0, 0}, opt.tol);
        cplx t01 = riemann_theta(vK, pd.sp, ch0, {0, 1}, opt.tol);
        cplx t11 = riemann_theta(vK, pd.sp, ch0, {1, 1}, opt.tol);
        out.theta_term = u[0] * u[0] * t00 + 2.0 * u[0] * u[1] * t01 + u[1] * u[1] * t11;
    }

    // Wronskian of the normalized differentials in the zeta-frame
    {
        cplx detC = pd.cnorm[0][0] * pd.cnorm[1][1] - pd.cnorm[0][1] * pd.cnorm[1][0];
        cplx w = spec.c0 + spec.c1 * pd.hub.x;
        out.wronskian = pd.hub.y * detC / (w * w * w);
    }

    // prime-form limits via even powers, Richardson over offsets h, h/2, h/4
    auto odd = ThetaCharacteristic::all_odd(2);
    detail::PrimeFormSq E2(pd, spec, odd.at(opt.odd_char_index), opt.tol);
    std::array<cplx, 2> abel_hub = {0.0, 0.0};
    double h0 = opt.offset_scale * z.branch_distance;
    cplx dir = kI;  // straight up, staying inside the gap corridor

    auto limit_zeta_xk = [&](const CurvePoint& xk, const std::array<cplx, 2>& abel_xk) {
        std::array<cplx, 5> vals;
        for (int s = 0; s < 5; ++s) {
            cplx off = dir * (h0 / double(1 << s));
            auto nb = detail::probe_near_zero(pd, spec, xk, abel_xk, off);
            cplx f = E2.eval(abel_hub, pd.hub.x, nb.abel, nb.x);
            vals[s] = f * f / (4.0 * nb.zeta_sq);
        }
        return detail::richardson(vals);
    };
    out.e_zeta_xk_pow4[0] = limit_zeta_xk(z.x1, a1.v);
    out.e_zeta_xk_pow4[1] = limit_zeta_xk(z.x2, a2.v);

    {
        std::array<cplx, 5> vals;
        for (int s = 0; s < 5; ++s) {
            cplx off = dir * (h0 / double(1 << s));
            auto n1 = detail::probe_near_zero(pd, spec, z.x1, a1.v, off);
            auto n2 = detail::probe_near_zero(pd, spec, z.x2, a2.v, off);
            cplx f = E2.eval(n1.abel, n1.x, n2.abel, n2.x);
            vals[s] = f * f / (16.0 * n1.zeta_sq * n2.zeta_sq);
        }
        out.e_x1x2_pow4 = detail::richardson(vals);
    }

    // assemble log tau
    {
        cplx omZ0 = pd.sp.at(0, 0) * double(out.Z[0]) + pd.sp.at(0, 1) * double(out.Z[1]);
        cplx omZ1 = pd.sp.at(1, 0) * double(out.Z[0]) + pd.sp.at(1, 1) * double(out.Z[1]);
        // the -4K sign pairs with this Abel-map orientation: it renders the
        // value invariant under lattice shifts K -> K + Omega m + n (with Z
        // recomputed), which a direct quasi-periodicity computation confirms
        out.prefactor_exponent = 4.0 * kPi * kI *
                                 ((omZ0 - 4.0 * K[0]) * double(out.Z[0]) +
                                  (omZ1 - 4.0 * K[1]) * double(out.Z[1]));
    }
    out.log_value = 16.0 * std::log(out.theta_term) - out.prefactor_exponent -
                    16.0 * std::log(out.wronskian) + std::log(out.e_x1x2_pow4) -
                    2.0 * std::log(out.e_zeta_xk_pow4[0]) - 2.0 * std::log(out.e_zeta_xk_pow4[1]);
    out.value = std::exp(out.log_value);
    return out;
}

/// log of the ratio tau_a / tau_b with the imaginary part reduced to the
/// principal strip (each log_value carries its own 2 pi i ambiguity).
inline cplx log_tau_ratio(const TauEvaluation& a, const TauEvaluation& b) {
    cplx d = a.log_value - b.log_value;
    double k = std::round(d.imag() / (2.0 * kPi));
    return d - cplx(0.0, 2.0 * kPi * k);
}

struct InvarianceReport {
    double homogeneity_exponent = 0.0;   // fitted from |ratio| over 3 scalings
    double homogeneity_residual = 0.0;   // worst |ratio - eps^6| / |eps^6|
    cplx euler_sum;                      // expected 6
    double euler_residual = 0.0;
    double basepoint_residual = 0.0;     // hub below vs above
    double odd_char_residual = 0.0;      // spread across the 6 odd characteristics
    double zero_label_residual = 0.0;
    double hub_sheet_residual = 0.0;
};

namespace detail {

inline std::array<cplx, 5> coordinate_vector(const PeriodData& pd, const DifferentialSpec& spec,
                                             double degeneracy_threshold,
                                             int switch_branch = -1) {
    auto per = differential_periods(pd, spec);
    auto z = zeros_of_differential(pd, spec, degeneracy_threshold);
    if (z.degenerate)
        throw std::invalid_argument("coordinate_vector: degenerate differential");
    cplx rel = relative_period(pd, z, spec, switch_branch).value;
    return {per[0], per[1], per[2], per[3], rel};
}

/// Solve the 5x5 complex system J x = b by Gaussian elimination.
inline std::array<cplx, 5> solve5(std::array<std::array<cplx, 5>, 5> J, std::array<cplx, 5> b) {
    for (int c = 0; c < 5; ++c) {
        int piv = c;
        for (int r = c + 1; r < 5; ++r)
            if (std::abs(J[r][c]) > std::abs(J[piv][c])) piv = r;
        if (std::abs(J[piv][c]) < 1e-13)
            throw std::runtime_error("invariance_suite: coordinate Jacobian is singular");
        std::swap(J[c], J[piv]);
        std::swap(b[c], b[piv]);
        for (int r = 0; r < 5; ++r) {
            if (r == c) continue;
            cplx f = J[r][c] / J[c][c];
            for (int k = c; k < 5; ++k) J[r][k] -= f * J[c][k];
            b[r] -= f * b[c];
        }
    }
    std::array<cplx, 5> x;
    for (int i = 0; i < 5; ++i) x[i] = b[i] / J[i][i];
    return x;
}

struct ModuliPoint {
    HyperellipticCurve curve;
    DifferentialSpec spec;
};

inline ModuliPoint displace(const HyperellipticCurve& c, const DifferentialSpec& spec,
                            int param, cplx amount) {
    std::array<cplx, 6> e = c.e;
    cplx c0 = spec.c0, c1 = spec.c1;
    if (param < 3)
        e[3 + param] += amount;  // e4, e5, e6 move; e1..e3 pin the Moebius gauge
    else if (param == 3)
        c0 += amount;
    else
        c1 += amount;
    return {HyperellipticCurve(e), DifferentialSpec(c0, c1)};
}

}  // namespace detail

/// Homogeneity, Euler identity, and the independence checks of the tau
/// evaluation on one (curve, differential) pair.
inline InvarianceReport invariance_suite(const PeriodData& pd, const DifferentialSpec& spec,
                                         const TauOptions& opt_in = {}) {
    InvarianceReport rep;
    TauOptions opt = opt_in;
    if (opt.switch_branch < 0) {
        // pin the sheet-switch branch point so the relative-period path class
        // stays fixed along every finite-difference sweep below
        cplx x0 = -spec.c0 / spec.c1;
        double best = 1e300;
        for (int k = 0; k < 6; ++k)
            if (std::abs(x0 - pd.curve.e[k]) < best) {
                best = std::abs(x0 - pd.curve.e[k]);
                opt.switch_branch = k;
            }
    }
    TauEvaluation base = tau0_eval(pd, spec, opt);

    // homogeneity: tau(eps omega) = eps^6 tau(omega)
    {
        std::vector<cplx> epss = {cplx(2.0), cplx(1.0, 1.0), cplx(0.5)};
        double sum_exp = 0.0;
        for (cplx eps : epss) {
            DifferentialSpec scaled(eps * spec.c0, eps * spec.c1);
            TauEvaluation t = tau0_eval(pd, scaled, opt);
            cplx ratio = std::exp(log_tau_ratio(t, base));
            cplx expect = std::pow(eps, 6);
            rep.homogeneity_residual = std::max(
                rep.homogeneity_residual, std::abs(ratio - expect) / std::abs(expect));
            sum_exp += std::log(std::abs(ratio)) / std::log(std::abs(eps));
        }
        rep.homogeneity_exponent = sum_exp / double(epss.size());
    }

    // Euler identity: sum z_i d(log tau)/dz_i = 6, via the numerically
    // inverted Jacobian of the 5 local coordinates (4 periods of omega and
    // the relative period between the zeros)
    {
        auto z0 = detail::coordinate_vector(pd, spec, opt.degeneracy_threshold,
                                            opt.switch_branch);
        std::array<std::array<cplx, 5>, 5> J{};  // J[i][k] = dz_i / dq_k
        double dq = 1e-5;
        for (int k = 0; k < 5; ++k) {
            auto mp = detail::displace(pd.curve, spec, k, dq);
            auto mm = detail::displace(pd.curve, spec, k, -dq);
            PeriodData pp = period_data(mp.curve, pd.tol, &pd);
            PeriodData pm = period_data(mm.curve, pd.tol, &pd);
            auto zp = detail::coordinate_vector(pp, mp.spec, opt.degeneracy_threshold,
                                                opt.switch_branch);
            auto zm = detail::coordinate_vector(pm, mm.spec, opt.degeneracy_threshold,
                                                opt.switch_branch);
            for (int i = 0; i < 5; ++i) J[i][k] = (zp[i] - zm[i]) / (2.0 * dq);
        }
        std::array<cplx, 5> bvec = {z0[0], z0[1], z0[2], z0[3], z0[4]};
        auto v = detail::solve5(J, bvec);  // dq/ds for the Euler flow z -> (1+s) z
        double s = 5e-4;
        auto shift = [&](double sg) {
            std::array<cplx, 6> e = pd.curve.e;
            cplx c0 = spec.c0, c1 = spec.c1;
            for (int k = 0; k < 3; ++k) e[3 + k] += sg * s * v[k];
            c0 += sg * s * v[3];
            c1 += sg * s * v[4];
            PeriodData p = period_data(HyperellipticCurve(e), pd.tol, &pd);
            return tau0_eval(p, DifferentialSpec(c0, c1), opt);
        };
        TauEvaluation tp = shift(1.0), tm = shift(-1.0);
        rep.euler_sum = log_tau_ratio(tp, tm) / (2.0 * s);
        rep.euler_residual = std::abs(rep.euler_sum - 6.0);
    }

    // independence checks
    {
        PeriodData below = with_hub(pd, cplx(pd.hub.x.real(), -pd.hub.x.imag()));
        TauEvaluation t = tau0_eval(below, spec, opt);
        rep.basepoint_residual =
            std::abs(std::exp(log_tau_ratio(t, base)) - 1.0);
    }
    {
        TauEvaluation t = tau0_eval(with_hub_sheet_flipped(pd), spec, opt);
        rep.hub_sheet_residual = std::abs(std::exp(log_tau_ratio(t, base)) - 1.0);
    }
    for (int ci = 0; ci < 6; ++ci) {
        if (ci == opt.odd_char_index) continue;
        TauOptions o = opt;
        o.odd_char_index = ci;
        TauEvaluation t = tau0_eval(pd, spec, o);
        rep.odd_char_residual = std::max(
            rep.odd_char_residual, std::abs(std::exp(log_tau_ratio(t, base)) - 1.0));
    }
    {
        TauOptions o = opt;
        o.swap_zero_labels = true;
        TauEvaluation t = tau0_eval(pd, spec, o);
        rep.zero_label_residual = std::abs(std::exp(log_tau_ratio(t, base)) - 1.0);
    }
    return rep;
}


/// A realizable homology class: an ellipse contour around a consecutive
/// branch-point range, with its class vector over the marked basis
/// (a1, a2, b1, b2).
struct LoopClass {
    std::pair<int, int> range;
    int orient = 1;
    std::array<long, 4> cls{};
};

namespace detail {

/// Solve the n x n real system M x = b by Gaussian elimination.
inline std::vector<double> solve_real(std::vector<std::vector<double>> M, std::vector<double> b) {
    int n = int(b.size());
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
        if (std::abs(M[piv][c]) < 1e-12)
            throw std::runtime_error("solve_real: singular system");
        std::swap(M[c], M[piv]);
        std::swap(b[c], b[piv]);
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = M[r][c] / M[c][c];
            for (int k = c; k < n; ++k) M[r][k] -= f * M[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[i] / M[i][i];
    return x;
}

inline bool range_contour_valid(const PeriodData& pd, std::pair<int, int> range) {
    double lo = pd.curve.e[range.first].real(), hi = pd.curve.e[range.second].real();
    cplx center(0.5 * (lo + hi), 0.0);
    double rx = 0.5 * (hi - lo) + pd.loop_margin, ry = pd.loop_ry;
    for (int k = 0; k < 6; ++k) {
        cplx d = pd.curve.e[k] - center;
        double q = std::pow(d.real() / rx, 2) + std::pow(d.imag() / ry, 2);
        bool inside = (k >= range.first && k <= range.second);
        if (inside ? q > 0.90 : q < 1.15) return false;
    }
    return true;
}

inline Seg ellipse_for_range(const PeriodData& pd, std::pair<int, int> range, int orient) {
    double lo = pd.curve.e[range.first].real(), hi = pd.curve.e[range.second].real();
    cplx center(0.5 * (lo + hi), 0.0);
    double rx = 0.5 * (hi - lo) + pd.loop_margin;
    return Seg::ellipse_arc(center, rx, pd.loop_ry, 0.0, orient > 0 ? 2.0 * kPi : -2.0 * kPi);
}

}  // namespace detail

/// All ellipse contours around consecutive even-size branch ranges, with
/// their integer classes over the marked basis, identified by solving the
/// 4 x 4 real period system.
inline std::vector<LoopClass> loop_dictionary(const PeriodData& pd) {
    static constexpr std::pair<int, int> cand[] = {{0, 1}, {1, 2}, {2, 3}, {3, 4},
                                                   {4, 5}, {0, 3}, {1, 4}, {2, 5}};
    detail::PathIntegrator integ{&pd.curve, pd.tol};
    std::vector<std::vector<cplx>> nu = {{cplx(1.0)}, {cplx(0.0), cplx(1.0)}};

    std::vector<std::vector<double>> M(4, std::vector<double>(4));
    double scale = 0.0;
    for (int j = 0; j < 4; ++j) {
        for (int i = 0; i < 2; ++i) {
            cplx a = pd.amat[i][j % 2], b = pd.bmat[i][j % 2];
            cplx v = j < 2 ? a : b;
            M[2 * i][j] = v.real();
            M[2 * i + 1][j] = v.imag();
            scale = std::max(scale, std::abs(v));
        }
    }
    // columns are (a1, a2, b1, b2); fix the mixed fill above
    for (int i = 0; i < 2; ++i) {
        M[2 * i][0] = pd.amat[i][0].real();
        M[2 * i + 1][0] = pd.amat[i][0].imag();
        M[2 * i][1] = pd.amat[i][1].real();
        M[2 * i + 1][1] = pd.amat[i][1].imag();
        M[2 * i][2] = pd.bmat[i][0].real();
        M[2 * i + 1][2] = pd.bmat[i][0].imag();
        M[2 * i][3] = pd.bmat[i][1].real();
        M[2 * i + 1][3] = pd.bmat[i][1].imag();
    }

    std::vector<LoopClass> out;
    for (auto range : cand) {
        if (!detail::range_contour_valid(pd, range)) continue;
        detail::Seg s = detail::ellipse_for_range(pd, range, 1);
        cplx anchor = s.at(0.0);
        auto res = integ.run({s}, detail::stable_lift(pd.curve, anchor), nu);
        std::vector<double> rhs = {res.vals[0].real(), res.vals[0].imag(),
                                   res.vals[1].real(), res.vals[1].imag()};
        auto c = detail::solve_real(M, rhs);
        std::array<long, 4> cls{};
        double resid = 0.0;
        for (int j = 0; j < 4; ++j) {
            cls[j] = std::lround(c[j]);
            resid = std::max(resid, std::abs(c[j] - double(cls[j])));
        }
        if (resid > 1e-6) continue;  // not an integer class: reject the contour
        LoopClass lc{range, 1, cls};
        out.push_back(lc);
        for (auto& v : lc.cls) v = -v;
        lc.orient = -1;
        out.push_back(lc);
    }
    return out;
}

struct SymplecticCheckResult {
    SiegelPoint omega_new;
    cplx det_factor;          // det(Q Omega + P) for gamma rows (P Q; R S)
    double omega_residual;    // |Omega_new - (S Omega + R)(Q Omega + P)^{-1}|
    double tau_residual;      // |tau_new / (tau det^24) - 1|
    cplx ratio;               // tau_new / tau
};

/// Re-marks the curve by an Sp(4, Z) matrix whose rows are realizable as
/// range contours, recomputes tau in the new marking, and compares the
/// ratio against det(C Omega + D)^24.
inline SymplecticCheckResult symplectic_check(const PeriodData& pd, const DifferentialSpec& spec,
                                              const std::array<std::array<long, 4>, 4>& gamma,
                                              const TauOptions& opt = {}) {
    // symplectic over Z for the intersection form <a_i, b_j> = delta_ij
    auto pairing = [&](const std::array<long, 4>& u, const std::array<long, 4>& v) {
        return u[0] * v[2] - u[2] * v[0] + u[1] * v[3] - u[3] * v[1];
    };
    const long expect[4][4] = {{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (pairing(gamma[r], gamma[c]) != expect[r][c])
                throw std::invalid_argument("symplectic_check: gamma is not symplectic");

    auto dict = loop_dictionary(pd);
    std::array<LoopClass, 4> match;
    for (int r = 0; r < 4; ++r) {
        bool found = false;
        for (const auto& lc : dict)
            if (lc.cls == gamma[r]) {
                match[r] = lc;
                found = true;
                break;
            }
        if (!found)
            throw std::invalid_argument(
                "symplectic_check: row class is not realizable as a range contour");
    }

    // periods in the new marking
    PeriodData pd2 = pd;
    detail::PathIntegrator integ{&pd.curve, pd.tol};
    std::vector<std::vector<cplx>> nu = {{cplx(1.0)}, {cplx(0.0), cplx(1.0)}};
    for (int r = 0; r < 4; ++r) {
        pd2.ranges[r] = match[r].range;
        pd2.signs[r] = match[r].orient;
        detail::Seg s = detail::ellipse_for_range(pd, match[r].range, 1);
        cplx anchor = s.at(0.0);
        auto res = integ.run({s}, detail::stable_lift(pd.curve, anchor), nu);
        for (int i = 0; i < 2; ++i)
            (r < 2 ? pd2.amat : pd2.bmat)[i][r % 2] = double(match[r].orient) * res.vals[i];
    }
    pd2.cnorm = detail::invert2(pd2.amat);
    std::array<std::array<cplx, 2>, 2> Om{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) Om[i][j] += pd2.cnorm[i][k] * pd2.bmat[k][j];
    cplx off = 0.5 * (Om[0][1] + Om[1][0]);
    pd2.sp = SiegelPoint(2, {Om[0][0], off, off, Om[1][1]});

    SymplecticCheckResult out;
    out.omega_new = pd2.sp;

    // modular action with gamma rows read as blocks (P Q; R S):
    // Omega_new = (S Omega + R)(Q Omega + P)^{-1}
    std::array<std::array<cplx, 2>, 2> Mnum{}, Mden{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Mden[i][j] = double(gamma[i][j]);      // P
            Mnum[i][j] = double(gamma[2 + i][j]);  // R
            for (int k = 0; k < 2; ++k) {
                Mden[i][j] += double(gamma[i][2 + k]) * pd.sp.at(k, j);      // + Q Omega
                Mnum[i][j] += double(gamma[2 + i][2 + k]) * pd.sp.at(k, j);  // + S Omega
            }
        }
    auto Mdinv = detail::invert2(Mden);
    out.omega_residual = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx pred = Mnum[i][0] * Mdinv[0][j] + Mnum[i][1] * Mdinv[1][j];
            out.omega_residual = std::max(out.omega_residual, std::abs(pred - pd2.sp.at(i, j)));
        }
    out.det_factor = Mden[0][0] * Mden[1][1] - Mden[0][1] * Mden[1][0];

    TauEvaluation t1 = tau0_eval(pd, spec, opt);
    TauEvaluation t2 = tau0_eval(pd2, spec, opt);
    cplx dlog = t2.log_value - t1.log_value - 24.0 * std::log(out.det_factor);
    dlog -= cplx(0.0, 2.0 * kPi * std::round(dlog.imag() / (2.0 * kPi)));
    out.tau_residual = std::abs(std::exp(dlog) - 1.0);
    out.ratio = std::exp(log_tau_ratio(t2, t1));
    return out;
}

/// Deterministic pseudo-random family of quasi-linear curves with a
/// differential whose zero sits safely inside a gap corridor.
struct CorpusElement {
    HyperellipticCurve curve;
    DifferentialSpec spec = DifferentialSpec(cplx(1.0), cplx(1.0));
};

inline std::vector<CorpusElement> random_corpus(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jit(-0.2, 0.2), imj(-0.12, 0.12);
    std::uniform_real_distribution<double> frac(0.3, 0.7), phase(0.0, 2.0 * kPi),
        mag(0.5, 2.0), zim(-0.05, 0.05);
    std::vector<CorpusElement> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        std::array<cplx, 6> e;
        for (int i = 0; i < 6; ++i) e[i] = cplx(double(i) + jit(rng), imj(rng));
        HyperellipticCurve c(e);
        // zero of the differential in one of the two gap corridors
        int gap = (rng() & 1) ? 1 : 3;
        double lo = c.e[gap].real(), hi = c.e[gap + 1].real();
        cplx x0(lo + frac(rng) * (hi - lo), zim(rng));
        cplx c1 = std::polar(mag(rng), phase(rng));
        out.push_back({c, DifferentialSpec(-c1 * x0, c1)});
    }
    return out;
}

/// Probe of the boundary exponent at the degenerate-differential locus:
/// x0 walks toward a branch point, t = (int_{x2}^{x1} omega)^2.
struct DdegProbe {
    double slope_logtau_logt = 0.0;     // expected 1/3
    double slope_logt_logdist = 0.0;    // expected 3
    double t_routing_residual = 0.0;    // two routings of the t-integral
    int points = 0;
};

inline DdegProbe ddeg_exponent_probe(const PeriodData& pd, int branch_index, cplx approach_dir,
                                     double dist_hi = 0.15, double dist_lo = 0.015,
                                     int npoints = 9, const TauOptions& base_opt = {}) {
    if (!(dist_lo > 0.0 && dist_hi > dist_lo))
        throw std::invalid_argument("ddeg_exponent_probe: bad distance range");
    cplx eb = pd.curve.e.at(branch_index);
    approach_dir /= std::abs(approach_dir);
    std::vector<double> lt, ltau, ld;
    DdegProbe out;
    for (int k = 0; k < npoints; ++k) {
        double d = dist_hi * std::pow(dist_lo / dist_hi, double(k) / (npoints - 1));
        cplx x0 = eb + d * approach_dir;
        DifferentialSpec spec(-x0, cplx(1.0));
        TauOptions opt = base_opt;
        opt.degeneracy_threshold = std::min(opt.degeneracy_threshold, 0.1 * d);
        TauEvaluation tv = tau0_eval(pd, spec, opt);
        auto z = zeros_of_differential(pd, spec, opt.degeneracy_threshold);
        RelativePeriod rp = relative_period(pd, z, spec);
        out.t_routing_residual =
            std::max(out.t_routing_residual, std::abs(rp.value - rp.value_alt));
        cplx t = rp.value * rp.value;
        lt.push_back(std::log(std::abs(t)));
        ltau.push_back(tv.log_value.real());
        ld.push_back(std::log(d));
    }
    auto slope = [](const std::vector<double>& xs, const std::vector<double>& ys) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = int(xs.size());
        for (int i = 0; i < n; ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    out.slope_logtau_logt = slope(lt, ltau);
    out.slope_logt_logdist = slope(ld, lt);
    out.points = npoints;
    return out;
}

}  // namespace hodgetau
