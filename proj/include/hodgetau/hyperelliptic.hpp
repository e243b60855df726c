#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "hodgetau/theta.hpp"

namespace hodgetau {

/// omega = (c0 + c1 x) dx / y on a genus-2 hyperelliptic curve.
struct DifferentialSpec {
    cplx c0, c1;

    DifferentialSpec(cplx a, cplx b) : c0(a), c1(b) {
        if (std::abs(c0) == 0.0 && std::abs(c1) == 0.0)
            throw std::invalid_argument("DifferentialSpec: c0 = c1 = 0");
    }
};

/// y^2 = prod (x - e_i) with six branch points, stored sorted by real part.
/// The cycle scheme below assumes a quasi-linear configuration: branch
/// points roughly along a horizontal line, imaginary parts small against
/// the gaps (validated when the contours are built).
struct HyperellipticCurve {
    std::array<cplx, 6> e{};

    HyperellipticCurve() = default;
    explicit HyperellipticCurve(std::array<cplx, 6> pts, double min_sep = 1e-3) : e(pts) {
        std::sort(e.begin(), e.end(), [](cplx a, cplx b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                if (std::abs(e[i] - e[j]) < min_sep)
                    throw std::invalid_argument("HyperellipticCurve: branch points too close");
    }

    cplx P(cplx x) const {
        cplx p = 1.0;
        for (cplx ei : e) p *= (x - ei);
        return p;
    }

    double dist_to_branch(cplx x) const {
        double d = 1e300;
        for (cplx ei : e) d = std::min(d, std::abs(x - ei));
        return d;
    }
};

/// Point of the curve: x together with the chosen value of y = sqrt(P(x)).
struct CurvePoint {
    cplx x, y;
};

namespace detail {

/// Parametric path segment: straight line or elliptic arc (circles are the
/// rx = ry case).
struct Seg {
    enum Kind { line, arc } kind = line;
    cplx p0, p1;              // line endpoints
    cplx center;              // arc
    double rx = 0, ry = 0, th0 = 0, th1 = 0;

    static Seg straight(cplx a, cplx b) {
        Seg s;
        s.kind = line;
        s.p0 = a;
        s.p1 = b;
        return s;
    }
    static Seg ellipse_arc(cplx c, double rx_, double ry_, double a0, double a1) {
        Seg s;
        s.kind = arc;
        s.center = c;
        s.rx = rx_;
        s.ry = ry_;
        s.th0 = a0;
        s.th1 = a1;
        return s;
    }

    cplx at(double t) const {
        if (kind == line) return p0 + t * (p1 - p0);
        double th = th0 + t * (th1 - th0);
        return center + cplx(rx * std::cos(th), ry * std::sin(th));
    }
    cplx deriv(double t) const {
        if (kind == line) return p1 - p0;
        double th = th0 + t * (th1 - th0);
        return (th1 - th0) * cplx(-rx * std::sin(th), ry * std::cos(th));
    }
    double length_est() const {
        if (kind == line) return std::abs(p1 - p0);
        return std::abs(th1 - th0) * 0.5 * (rx + ry) * 1.2;
    }
};

inline constexpr std::array<double, 8> kGlx = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
inline constexpr std::array<double, 8> kGlw = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

/// sqrt(P(x)) continued from the previous value: of the two roots, take the
/// one closest to it. Correct whenever consecutive samples are close
/// relative to the distance from the branch locus.
inline cplx track_sqrt(const HyperellipticCurve& c, cplx x, cplx y_prev) {
    cplx r = std::sqrt(c.P(x));
    return std::abs(r - y_prev) <= std::abs(r + y_prev) ? r : -r;
}

/// Reference lift of sqrt(P(x)) that varies continuously under small
/// perturbations of x and of the branch points: the product of per-factor
/// square roots, each cut along its negative imaginary axis. (The principal
/// sqrt of the full product P(x) can sit exactly on its branch cut for
/// symmetric configurations, flipping sign under perturbation; this form
/// is only discontinuous when x lies straight below a branch point, which
/// the hub, loop anchors and gap probes never do.)
inline cplx stable_lift(const HyperellipticCurve& c, cplx x) {
    cplx y = 1.0;
    for (cplx ei : c.e) {
        cplx d = x - ei;
        double a = std::arg(d);
        if (a < -0.5 * kPi) a += 2.0 * kPi;  // branch cut at arg = -pi/2
        y *= std::sqrt(std::abs(d)) * std::exp(cplx(0.0, 0.5 * a));
    }
    return y;
}

/// Integrals of q_k(x)/y dx over a chain of segments, with y continued from
/// y_start. Panel count per segment is floored by the distance to the
/// branch locus (so sheet tracking cannot skip a flip) and then doubled
/// until the values and the final y stabilize.
struct PathIntegrator {
    const HyperellipticCurve* c;
    double tol = 1e-10;

    struct Result {
        std::vector<cplx> vals;
        cplx y_end;
    };

    Result run(const std::vector<Seg>& segs, cplx y_start,
               const std::vector<std::vector<cplx>>& polys) const {
        Result out;
        out.vals.assign(polys.size(), 0.0);
        cplx y = y_start;
        for (const Seg& s : segs) {
            int n0 = base_panels(s);
            std::vector<cplx> prev;
            cplx y_prev_end = 0.0;
            for (int iter = 0;; ++iter) {
                auto [vals, yend] = integrate_seg(s, n0 << iter, y, polys);
                if (iter > 0) {
                    double scale = 1.0;
                    for (cplx v : vals) scale = std::max(scale, std::abs(v));
                    double diff = 0.0;
                    for (size_t k = 0; k < vals.size(); ++k)
                        diff = std::max(diff, std::abs(vals[k] - prev[k]));
                    bool sheet_ok = std::abs(yend - y_prev_end) < std::abs(yend + y_prev_end);
                    if (sheet_ok && diff < tol * scale) {
                        for (size_t k = 0; k < vals.size(); ++k) out.vals[k] += vals[k];
                        y = yend;
                        break;
                    }
                }
                if ((n0 << iter) > (1 << 20))
                    throw std::runtime_error("PathIntegrator: quadrature did not converge");
                prev = vals;
                y_prev_end = yend;
            }
        }
        out.y_end = y;
        return out;
    }

    int base_panels(const Seg& s) const {
        double dmin = 1e300;
        for (int k = 0; k <= 32; ++k) dmin = std::min(dmin, c->dist_to_branch(s.at(k / 32.0)));
        if (dmin <= 0.0) throw std::invalid_argument("PathIntegrator: path hits a branch point");
        double len = s.length_est();
        int n = int(std::ceil(len / (0.5 * dmin)));
        return std::clamp(n, 8, 1 << 14);
    }

    std::pair<std::vector<cplx>, cplx> integrate_seg(
        const Seg& s, int n, cplx y_in, const std::vector<std::vector<cplx>>& polys) const {
        std::vector<cplx> acc(polys.size(), 0.0);
        cplx y = y_in;
        for (int p = 0; p < n; ++p) {
            double t0 = double(p) / n, t1 = double(p + 1) / n;
            double tm = 0.5 * (t0 + t1), th = 0.5 * (t1 - t0);
            // nodes in ascending order for the tracking
            std::array<double, 16> ts;
            for (int k = 0; k < 8; ++k) {
                ts[k] = tm - th * kGlx[7 - k];
                ts[15 - k] = tm + th * kGlx[7 - k];
            }
            for (int k = 0; k < 16; ++k) {
                double w = kGlw[k < 8 ? 7 - k : k - 8] * th;
                cplx x = s.at(ts[k]);
                y = track_sqrt(*c, x, y);
                cplx base = s.deriv(ts[k]) / y * w;
                for (size_t q = 0; q < polys.size(); ++q) {
                    cplx pv = 0.0, xp = 1.0;
                    for (cplx coef : polys[q]) {
                        pv += coef * xp;
                        xp *= x;
                    }
                    acc[q] += pv * base;
                }
            }
            y = track_sqrt(*c, s.at(t1), y);
        }
        return {acc, y};
    }
};

}  // namespace detail

/// Periods, normalization and path machinery of a marked curve. Cycles are
/// realized as ellipses around branch-point ranges: a1 around {e1,e2}, a2
/// around {e3,e4}, b1 around {e2..e5}, b2 around {e4,e5}; orientations are
/// resolved by searching the sign pattern that renders Omega symmetric with
/// positive definite imaginary part.
struct PeriodData {
    HyperellipticCurve curve;
    double tol = 1e-10;

    std::array<std::array<cplx, 2>, 2> amat{}, bmat{};  // [diff][cycle], raw nu = dx/y, x dx/y
    std::array<std::array<cplx, 2>, 2> cnorm{};         // omega_i = sum_j cnorm[i][j] nu_j
    SiegelPoint sp;
    std::array<int, 4> signs{1, 1, 1, 1};               // a1, a2, b1, b2 orientations

    CurvePoint hub;                                      // Abel-map basepoint above the curve
    std::array<std::pair<int, int>, 4> ranges{{{0, 1}, {2, 3}, {1, 4}, {3, 4}}};
    double loop_ry = 0.35, loop_margin = 0.3;
};

namespace detail {

inline Seg range_ellipse(const PeriodData& pd, int cyc, int orient) {
    auto [i, j] = pd.ranges[cyc];
    double lo = pd.curve.e[i].real(), hi = pd.curve.e[j].real();
    cplx center(0.5 * (lo + hi), 0.0);
    double rx = 0.5 * (hi - lo) + pd.loop_margin;
    double a1 = orient > 0 ? 2.0 * kPi : -2.0 * kPi;
    return Seg::ellipse_arc(center, rx, pd.loop_ry, 0.0, a1);
}

inline void validate_scheme(const PeriodData& pd) {
    for (int cyc = 0; cyc < 4; ++cyc) {
        auto [i, j] = pd.ranges[cyc];
        Seg s = range_ellipse(pd, cyc, 1);
        for (int k = 0; k < 6; ++k) {
            cplx d = pd.curve.e[k] - s.center;
            double q = std::pow(d.real() / s.rx, 2) + std::pow(d.imag() / s.ry, 2);
            bool inside = (k >= i && k <= j);
            if (inside ? q > 0.90 : q < 1.15)
                throw std::invalid_argument(
                    "period_data: branch configuration not compatible with the contour scheme");
        }
    }
}

inline std::array<std::array<cplx, 2>, 2> invert2(const std::array<std::array<cplx, 2>, 2>& m) {
    cplx det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (std::abs(det) == 0.0) throw std::runtime_error("invert2: singular matrix");
    return {{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
}

}  // namespace detail

/// Periods of nu = (dx/y, x dx/y) over the cycle scheme, the normalizing
/// matrix and Omega. `reference` (optional) aligns the orientation pattern
/// with a previous computation, for use in finite-difference sweeps.
inline PeriodData period_data(const HyperellipticCurve& c, double tol = 1e-10,
                              const PeriodData* reference = nullptr) {
    PeriodData pd;
    pd.curve = c;
    pd.tol = tol;
    detail::validate_scheme(pd);

    double max_im = 0.0;
    cplx mean = 0.0;
    for (cplx ei : c.e) {
        max_im = std::max(max_im, std::abs(ei.imag()));
        mean += ei / 6.0;
    }
    pd.hub.x = cplx(mean.real(), max_im + 1.5);
    pd.hub.y = detail::stable_lift(c, pd.hub.x);

    detail::PathIntegrator integ{&c, tol};
    std::vector<std::vector<cplx>> nu = {{cplx(1.0)}, {cplx(0.0), cplx(1.0)}};

    // raw periods with positive orientation and the principal-root lift at
    // the anchor of each ellipse
    for (int cyc = 0; cyc < 4; ++cyc) {
        detail::Seg s = detail::range_ellipse(pd, cyc, 1);
        cplx anchor = s.at(0.0);
        auto res = integ.run({s}, detail::stable_lift(c, anchor), nu);
        for (int i = 0; i < 2; ++i) (cyc < 2 ? pd.amat : pd.bmat)[i][cyc % 2] = res.vals[i];
    }

    // orientation sign pattern: Omega symmetric, Im positive definite
    auto try_signs = [&](const std::array<int, 4>& sg, PeriodData& out) -> bool {
        std::array<std::array<cplx, 2>, 2> A, B;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                A[i][j] = double(sg[j]) * pd.amat[i][j];
                B[i][j] = double(sg[2 + j]) * pd.bmat[i][j];
            }
        auto C = detail::invert2(A);
        std::array<std::array<cplx, 2>, 2> Om{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) Om[i][j] += C[i][k] * B[k][j];
        double scale = 0.0;
        for (auto& row : Om)
            for (cplx z : row) scale = std::max(scale, std::abs(z));
        if (std::abs(Om[0][1] - Om[1][0]) > 1e-7 * std::max(1.0, scale)) return false;
        double a = Om[0][0].imag(), b = 0.5 * (Om[0][1] + Om[1][0]).imag(), d = Om[1][1].imag();
        if (a <= 0.0 || a * d - b * b <= 0.0) return false;
        out.amat = A;
        out.bmat = B;
        out.cnorm = C;
        cplx off = 0.5 * (Om[0][1] + Om[1][0]);
        out.sp = SiegelPoint(2, {Om[0][0], off, off, Om[1][1]});
        out.signs = sg;
        return true;
    };

    std::vector<std::array<int, 4>> patterns;
    for (int code = 0; code < 16; ++code)
        patterns.push_back({code & 1 ? -1 : 1, code & 2 ? -1 : 1, code & 4 ? -1 : 1,
                            code & 8 ? -1 : 1});
    if (reference) {
        // try the reference pattern first so perturbed runs stay aligned
        std::stable_sort(patterns.begin(), patterns.end(),
                         [&](const auto& x, const auto& y) {
                             return (x == reference->signs) > (y == reference->signs);
                         });
    }
    for (const auto& sg : patterns) {
        PeriodData trial = pd;
        if (try_signs(sg, trial)) {
            pd = trial;
            return pd;
        }
    }
    throw std::runtime_error("period_data: no cycle orientation gives a valid period matrix");
}

namespace detail {

/// Hub-to-target descent: across at hub height, then straight down. The
/// vertical leg must not cross a cut [e_{2k-1}, e_{2k}]; callers keep
/// targets inside the gaps (or above the branch line).
inline std::vector<Seg> descend(const PeriodData& pd, cplx target) {
    const auto& e = pd.curve.e;
    double max_im = 0.0;
    for (cplx ei : e) max_im = std::max(max_im, std::abs(ei.imag()));
    if (target.imag() <= max_im + 0.2) {
        for (int k = 0; k < 3; ++k) {
            double lo = e[2 * k].real(), hi = e[2 * k + 1].real();
            if (target.real() > lo && target.real() < hi)
                throw std::invalid_argument(
                    "abel_map: vertical descent would cross a branch cut");
        }
    }
    cplx corner(target.real(), pd.hub.x.imag());
    std::vector<Seg> segs;
    if (std::abs(corner - pd.hub.x) > 1e-14) segs.push_back(Seg::straight(pd.hub.x, corner));
    if (std::abs(target - corner) > 1e-14) segs.push_back(Seg::straight(corner, target));
    return segs;
}

/// Closed detour from x around one branch point and back; the traversal
/// returns to x on the opposite sheet. By default the nearest branch point
/// is used; a caller running a parameter sweep pins `branch` explicitly so
/// the path class cannot jump at equidistant configurations.
inline std::vector<Seg> sheet_switch(const PeriodData& pd, cplx x, int branch = -1) {
    int bi = branch;
    if (bi < 0) {
        double best = 1e300;
        for (int k = 0; k < 6; ++k) {
            double d = std::abs(x - pd.curve.e[k]);
            if (d < best) {
                best = d;
                bi = k;
            }
        }
    }
    cplx eb = pd.curve.e[bi];
    double r = 0.5 * std::abs(x - eb);
    for (int k = 0; k < 6; ++k)
        if (k != bi && std::abs(pd.curve.e[k] - eb) < 1.05 * r)
            throw std::invalid_argument("sheet_switch: detour circle would enclose another branch point");
    cplx dir = (x - eb) / std::abs(x - eb);
    cplx touch = eb + r * dir;
    double th = std::arg(dir);
    std::vector<Seg> segs;
    segs.push_back(Seg::straight(x, touch));
    segs.push_back(Seg::ellipse_arc(eb, r, r, th, th + 2.0 * kPi));
    segs.push_back(Seg::straight(touch, x));
    return segs;
}

}  // namespace detail

struct AbelResult {
    std::array<cplx, 2> v{};  // integral of (omega_1, omega_2)
    CurvePoint endpoint;      // with the sheet the path actually lands on
};

/// Normalized differentials as polynomial numerators over y.
inline std::vector<std::vector<cplx>> normalized_polys(const PeriodData& pd) {
    return {{pd.cnorm[0][0], pd.cnorm[0][1]}, {pd.cnorm[1][0], pd.cnorm[1][1]}};
}

/// Abel map from the hub along the documented path system. If `lower_sheet`
/// the path is extended by a loop around the nearest branch point (or the
/// pinned `switch_branch`), landing on the opposite lift of the target.
inline AbelResult abel_map(const PeriodData& pd, cplx x_target, bool lower_sheet = false,
                           int switch_branch = -1) {
    detail::PathIntegrator integ{&pd.curve, pd.tol};
    auto segs = detail::descend(pd, x_target);
    if (lower_sheet) {
        auto sw = detail::sheet_switch(pd, x_target, switch_branch);
        segs.insert(segs.end(), sw.begin(), sw.end());
    }
    auto res = integ.run(segs, pd.hub.y, normalized_polys(pd));
    AbelResult out;
    out.v = {res.vals[0], res.vals[1]};
    out.endpoint = {x_target, res.y_end};
    return out;
}

/// Abel map to a specific lift (x, y). Throws if y is not a root of P(x).
inline AbelResult abel_map_to(const PeriodData& pd, const CurvePoint& p, int switch_branch = -1) {
    cplx r = std::sqrt(pd.curve.P(p.x));
    double scale = std::max(1.0, std::abs(r));
    if (std::min(std::abs(p.y - r), std::abs(p.y + r)) > 1e-6 * scale)
        throw std::invalid_argument("abel_map_to: point is not on the curve");
    AbelResult up = abel_map(pd, p.x, false);
    if (std::abs(up.endpoint.y - p.y) <= std::abs(up.endpoint.y + p.y)) return up;
    return abel_map(pd, p.x, true, switch_branch);
}

namespace detail {

/// Abel value at the leftmost branch point: integrate from a staging point
/// to e_1 - t and extrapolate t -> 0. The integrand has a t^{-1/2}
/// endpoint singularity, so the value expands in half-integer powers of t;
/// a Richardson ladder over t, t/4, t/16, ... removes them in turn.
inline std::array<cplx, 2> abel_at_first_branch_point(const PeriodData& pd) {
    PathIntegrator integ{&pd.curve, pd.tol};
    auto omegas = normalized_polys(pd);
    cplx e0 = pd.curve.e[0];
    cplx staging = e0 - 0.4;
    auto stage = integ.run(descend(pd, staging), pd.hub.y, omegas);

    constexpr int levels = 5;
    std::array<std::array<cplx, 2>, levels> samp;
    double t0 = 0.128;
    for (int k = 0; k < levels; ++k) {
        double t = t0 / std::pow(4.0, k);
        auto res = integ.run({Seg::straight(staging, e0 - t)}, stage.y_end, omegas);
        samp[k] = {stage.vals[0] + res.vals[0], stage.vals[1] + res.vals[1]};
    }
    // eliminate t^{1/2}, t^{3/2}, t^{5/2}, t^{7/2}; ratio 4 per level
    for (int p = 0; p < levels - 1; ++p) {
        double f = std::pow(2.0, 2 * p + 1);  // 4^{p + 1/2}
        for (int k = 0; k < levels - 1 - p; ++k)
            for (int i = 0; i < 2; ++i)
                samp[k][i] = (f * samp[k + 1][i] - samp[k][i]) / (f - 1.0);
    }
    return samp[0];
}

}  // namespace detail

/// Vector of Riemann constants with the hub as basepoint. Based at a branch
/// point the vector is a half-period, so K = Omega eps + eps' - A(hub -> e_1)
/// for one of the 16 half-integer characteristics; the right one is the
/// unique candidate that puts theta(A(x) + K) on its vanishing locus at
/// every probe point.
inline std::array<cplx, 2> riemann_constants(const PeriodData& pd, double tol = 1e-9) {
    auto a_e0 = detail::abel_at_first_branch_point(pd);

    // probe points in the two gap corridors, on both lifts
    double g1 = 0.5 * (pd.curve.e[1].real() + pd.curve.e[2].real());
    double g2 = 0.5 * (pd.curve.e[3].real() + pd.curve.e[4].real());
    std::vector<AbelResult> probes = {abel_map(pd, cplx(g1), false),
                                      abel_map(pd, cplx(g2), false),
                                      abel_map(pd, cplx(g1), true)};

    auto cands = ThetaCharacteristic::all(2);
    double best = 1e300, second = 1e300;
    int best_idx = -1;
    std::vector<std::array<cplx, 2>> kc(cands.size());
    for (size_t c = 0; c < cands.size(); ++c) {
        for (int i = 0; i < 2; ++i)
            kc[c][i] = pd.sp.at(i, 0) * cands[c].eps[0] + pd.sp.at(i, 1) * cands[c].eps[1] +
                       cands[c].eps_prime[i] - a_e0[i];
        double worst = 0.0;
        for (const auto& pr : probes) {
            std::vector<cplx> v = {pr.v[0] + kc[c][0], pr.v[1] + kc[c][1]};
            worst = std::max(worst, std::abs(riemann_theta(v, pd.sp,
                                                           ThetaCharacteristic::zero(2), {}, tol)));
        }
        if (worst < best) {
            second = best;
            best = worst;
            best_idx = int(c);
        } else {
            second = std::min(second, worst);
        }
    }
    if (best_idx < 0 || !(best < 1e-5 * second))
        throw std::runtime_error(
            "riemann_constants: no unique characteristic matches the vanishing locus");
    return kc[best_idx];
}

/// Zeros of omega = (c0 + c1 x) dx/y for the generic (two-simple-zero)
/// stratum: the lifts (x0, +-y0) of x0 = -c0/c1. x1 is the lift the hub
/// path system reaches without a sheet switch.
struct DifferentialZeros {
    cplx x0;
    CurvePoint x1, x2;
    bool degenerate = false;     // zero collides with the branch locus
    double branch_distance = 0;
};

inline DifferentialZeros zeros_of_differential(const PeriodData& pd, const DifferentialSpec& spec,
                                               double degeneracy_threshold = 1e-4) {
    if (std::abs(spec.c1) == 0.0)
        throw std::invalid_argument(
            "zeros_of_differential: c1 = 0 differential has no affine zeros (not in the "
            "generic stratum)");
    DifferentialZeros z;
    z.x0 = -spec.c0 / spec.c1;
    z.branch_distance = pd.curve.dist_to_branch(z.x0);
    if (z.branch_distance < degeneracy_threshold) {
        z.degenerate = true;
        return z;
    }
    AbelResult up = abel_map(pd, z.x0, false);
    z.x1 = up.endpoint;
    z.x2 = {z.x0, -up.endpoint.y};
    return z;
}

/// Periods of omega itself over the four basis cycles (the first four local
/// coordinates of the moduli space of pairs (curve, differential)).
inline std::array<cplx, 4> differential_periods(const PeriodData& pd,
                                                const DifferentialSpec& spec) {
    detail::PathIntegrator integ{&pd.curve, pd.tol};
    std::vector<std::vector<cplx>> w = {{spec.c0, spec.c1}};
    std::array<cplx, 4> out;
    for (int cyc = 0; cyc < 4; ++cyc) {
        detail::Seg s = detail::range_ellipse(pd, cyc, pd.signs[cyc]);
        cplx anchor = s.at(0.0);
        out[cyc] = integ.run({s}, detail::stable_lift(pd.curve, anchor), w).vals[0];
    }
    return out;
}

/// Relative period int_{x2}^{x1} omega along the sheet-switch loop at x0,
/// plus the same integral on a second routing (opposite traversal) for the
/// internal consistency check.
struct RelativePeriod {
    cplx value;
    cplx value_alt;
};

inline RelativePeriod relative_period(const PeriodData& pd, const DifferentialZeros& z,
                                      const DifferentialSpec& spec, int switch_branch = -1) {
    if (z.degenerate) throw std::invalid_argument("relative_period: degenerate zeros");
    detail::PathIntegrator integ{&pd.curve, pd.tol};
    std::vector<std::vector<cplx>> w = {{spec.c0, spec.c1}};
    auto sw = detail::sheet_switch(pd, z.x0, switch_branch);
    // x2 -> x1: start on the lower lift and traverse the loop
    auto res = integ.run(sw, z.x2.y, w);
    RelativePeriod out;
    out.value = res.vals[0];
    // opposite orientation of the detour circle
    std::vector<detail::Seg> rev = sw;
    std::swap(rev[1].th0, rev[1].th1);
    auto res2 = integ.run(rev, z.x2.y, w);
    out.value_alt = res2.vals[0];
    return out;
}

}  // namespace hodgetau
