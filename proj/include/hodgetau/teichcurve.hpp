#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hodgetau/origami.hpp"
#include "hodgetau/rational.hpp"

namespace hodgetau {

/// Default calibration constant relating the raw boundary sum to the
/// delta_0 intersection number. Fixed once by requiring L = 1 on torus
/// covers; logged in every report, never silently changed.
inline constexpr std::int64_t kDefaultCalibrationK = 12;

struct LyapunovReport {
    Stratum stratum;
    int degree = 0;
    int orbit_id = 0;
    int orbit_size = 0;
    Rational psi_number;           // 1/|Aut|-weighted cover count
    Rational psi_unweighted;       // plain orbit size
    Rational delta0_number;        // weighted boundary sum
    Rational delta0_unweighted;
    Rational kappa;
    Rational siegel_veech;
    Rational lyap_sum;             // kappa + siegel_veech
    Rational boundary_lyap_sum;    // (g-1)/4 + (K/12) * delta0/psi, mu = 0 only
    bool boundary_formula_valid = false;
    bool boundary_vanishing_ok = false;
    Rational calibration_k = Rational(kDefaultCalibrationK);
};

/// kappa_mu = (g-1)/6 + r/12 - (1/12) sum 1/(m_i+1), exact.
inline Rational kappa(const Stratum& s) {
    Rational k = Rational(s.genus - 1, 6) + Rational(s.r(), 12);
    for (int m : s.zero_orders) k -= Rational(1, 12) * Rational(1, m + 1);
    return k;
}

/// Weighted and unweighted cover counts of the orbit.
struct PsiNumber {
    Rational weighted;
    Rational unweighted;
};

inline PsiNumber psi_number(const TeichCurve& c) {
    PsiNumber out;
    out.unweighted = Rational(std::int64_t(c.members.size()));
    for (const Origami& o : c.members)
        out.weighted += Rational(1, automorphism_order(o));
    return out;
}

inline Rational cylinder_ratio_sum(const Origami& o) {
    Rational sum;
    for (auto [w, ht] : horizontal_cylinders(o).cylinders) sum += Rational(ht, w);
    return sum;
}

struct Delta0Number {
    Rational weighted;
    Rational unweighted;
};

/// Raw boundary sum: over cusps, (weighted) W * sum(ht_i / w_i). Since T
/// preserves horizontal cylinders this equals the member-wise sum.
inline Delta0Number delta0_number(const TeichCurve& c) {
    Delta0Number out;
    for (const Cusp& cusp : cusps(c)) {
        Rational ratios = cylinder_ratio_sum(cusp.representative);
        out.unweighted += Rational(cusp.width) * ratios;
        out.weighted += Rational(cusp.width, automorphism_order(cusp.representative)) * ratios;
    }
    return out;
}

/// Siegel-Veech cylinder average of the orbit.
inline Rational siegel_veech(const TeichCurve& c) {
    Rational sum;
    for (const Origami& o : c.members) sum += cylinder_ratio_sum(o);
    return sum / Rational(std::int64_t(c.members.size()));
}

/// L = kappa + c, exact rational.
inline Rational lyapunov_sum(const TeichCurve& c) {
    return kappa(c.stratum) + siegel_veech(c);
}

struct BoundaryCheckWitness {
    bool passed = true;
    std::string message;
};

/// Verifies the two vanishing claims used by the boundary estimator on
/// mu = 0 orbits: no member leaves the generic stratum, and every cusp
/// stable graph is irreducible.
inline BoundaryCheckWitness boundary_vanishing_check(const TeichCurve& c) {
    BoundaryCheckWitness w;
    if (!c.stratum.is_generic()) {
        w.passed = false;
        w.message = "stratum is not generic (mu != 0)";
        return w;
    }
    for (const Origami& o : c.members) {
        if (stratum_of(o) != c.stratum) {
            w.passed = false;
            w.message = "orbit member leaves the generic stratum";
            return w;
        }
        StableGraph g = cusp_stable_graph(o);
        if (!g.irreducible) {
            w.passed = false;
            w.message = "reducible stable graph at member of orbit " + std::to_string(c.orbit_id);
            return w;
        }
    }
    return w;
}

/// Boundary estimator (mu = 0 only): (g-1)/4 + (1/12) K delta0 / psi with
/// matching weighting on numerator and denominator.
inline Rational lyapunov_via_boundary(const TeichCurve& c,
                                      Rational k_calib = Rational(kDefaultCalibrationK)) {
    if (!c.stratum.is_generic())
        throw std::invalid_argument("lyapunov_via_boundary: unsupported stratum (mu != 0)");
    Rational psi = psi_number(c).weighted;
    Rational d0 = delta0_number(c).weighted;
    return Rational(c.stratum.genus - 1, 4) + Rational(1, 12) * k_calib * d0 / psi;
}

inline LyapunovReport make_report(const TeichCurve& c,
                                  Rational k_calib = Rational(kDefaultCalibrationK)) {
    LyapunovReport rep;
    rep.stratum = c.stratum;
    rep.degree = c.degree;
    rep.orbit_id = c.orbit_id;
    rep.orbit_size = int(c.members.size());
    auto psi = psi_number(c);
    rep.psi_number = psi.weighted;
    rep.psi_unweighted = psi.unweighted;
    auto d0 = delta0_number(c);
    rep.delta0_number = d0.weighted;
    rep.delta0_unweighted = d0.unweighted;
    rep.kappa = kappa(c.stratum);
    rep.siegel_veech = siegel_veech(c);
    rep.lyap_sum = rep.kappa + rep.siegel_veech;
    rep.calibration_k = k_calib;
    if (c.stratum.is_generic()) {
        rep.boundary_lyap_sum = lyapunov_via_boundary(c, k_calib);
        rep.boundary_formula_valid = true;
        rep.boundary_vanishing_ok = boundary_vanishing_check(c).passed;
    }
    return rep;
}

struct ConvergenceTable {
    std::vector<LyapunovReport> rows;               // one per (degree, orbit)
    std::vector<std::pair<int, Rational>> degree_averages;  // psi-weighted over orbits
};

/// One report per orbit per degree in [d_min, d_max], plus per-degree
/// aggregates weighted by psi_number. Orbits at a fixed degree may be
/// processed in parallel; the merge order is deterministic.
inline ConvergenceTable convergence_table(const Stratum& s, int d_min, int d_max,
                                          Rational k_calib = Rational(kDefaultCalibrationK),
                                          int jobs = 1) {
    ConvergenceTable table;
    for (int d = d_min; d <= d_max; ++d) {
        auto enumr = enumerate_origamis(d, s, jobs);
        if (enumr.origamis.empty()) continue;
        auto orbits = sl2_orbits(enumr.origamis);
        std::vector<LyapunovReport> reports(orbits.size());
        int njobs = std::max(1, jobs);
        if (njobs == 1 || orbits.size() <= 1) {
            for (size_t i = 0; i < orbits.size(); ++i)
                reports[i] = make_report(orbits[i], k_calib);
        } else {
            std::vector<std::thread> threads;
            for (int j = 0; j < njobs; ++j) {
                threads.emplace_back([&, j] {
                    for (size_t i = j; i < orbits.size(); i += njobs)
                        reports[i] = make_report(orbits[i], k_calib);
                });
            }
            for (auto& t : threads) t.join();
        }
        Rational num, den;
        for (auto& rep : reports) {
            num += rep.psi_number * rep.lyap_sum;
            den += rep.psi_number;
            table.rows.push_back(rep);
        }
        table.degree_averages.emplace_back(d, num / den);
    }
    return table;
}

}  // namespace hodgetau
