#include "doctest.h"

#include "hodgetau/teichcurve.hpp"

using namespace hodgetau;

TEST_CASE("rational arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK((Rational(1, 6) + Rational(1, 3)) == Rational(1, 2));
    CHECK((Rational(3, 4) * Rational(2, 9)) == Rational(1, 6));
    CHECK((Rational(1, 2) / Rational(3)) == Rational(1, 6));
    CHECK(Rational(7, 3).str() == "7/3");
    CHECK(Rational(-4, 2).str() == "-2");
    CHECK(Rational::parse("10/9") == Rational(10, 9));
    CHECK(Rational::parse("-5") == Rational(-5));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("kappa values") {
    CHECK(kappa(Stratum::parse("")) == Rational(0));
    CHECK(kappa(Stratum({2})) == Rational(2, 9));
    CHECK(kappa(Stratum({1, 1})) == Rational(1, 4));
    CHECK(kappa(Stratum({4})) == Rational(2 * 1, 6) + Rational(1, 12) - Rational(1, 60));
    CHECK(kappa(Stratum({2, 2})) == Rational(2, 6) + Rational(2, 12) - Rational(2, 36));
}

TEST_CASE("torus covers have Lyapunov sum exactly 1") {
    Stratum torus = Stratum::parse("");
    for (int d = 1; d <= 3; ++d) {
        auto res = enumerate_origamis(d, torus);
        for (const auto& orbit : sl2_orbits(res.origamis)) {
            CHECK(lyapunov_sum(orbit) == Rational(1));
            CHECK(lyapunov_via_boundary(orbit) == Rational(1));
        }
    }
}

TEST_CASE("torus degree 2 report") {
    auto orbits = sl2_orbits(enumerate_origamis(2, Stratum::parse("")).origamis);
    REQUIRE(orbits.size() == 1);
    LyapunovReport rep = make_report(orbits[0]);
    CHECK(rep.orbit_size == 3);
    CHECK(rep.psi_number == Rational(3, 2));       // each member has |Aut| = 2
    CHECK(rep.psi_unweighted == Rational(3));
    CHECK(rep.kappa == Rational(0));
    CHECK(rep.siegel_veech == Rational(1));        // (1/2 + 2 + 1/2) / 3
    CHECK(rep.lyap_sum == Rational(1));
    CHECK(rep.boundary_formula_valid);
    CHECK(rep.boundary_vanishing_ok);
    CHECK(rep.boundary_lyap_sum == Rational(1));
    CHECK(rep.calibration_k == Rational(12));
}

TEST_CASE("H(2) degree 3 orbit invariants") {
    auto orbits = sl2_orbits(enumerate_origamis(3, Stratum({2})).origamis);
    REQUIRE(orbits.size() == 1);
    const TeichCurve& c = orbits[0];
    CHECK(c.members.size() == 3);

    std::multiset<Rational> ratio_sums;
    for (const Origami& o : c.members) ratio_sums.insert(cylinder_ratio_sum(o));
    CHECK(ratio_sums == std::multiset<Rational>{Rational(1, 3), Rational(3, 2), Rational(3, 2)});

    CHECK(siegel_veech(c) == Rational(10, 9));
    CHECK(lyapunov_sum(c) == Rational(2, 9) + Rational(10, 9));
    CHECK(lyapunov_sum(c) == Rational(4, 3));
    CHECK(delta0_number(c).unweighted == Rational(10, 3));

    // the boundary estimator is defined only on mu = 0 strata
    CHECK_THROWS(lyapunov_via_boundary(c));
    LyapunovReport rep = make_report(c);
    CHECK_FALSE(rep.boundary_formula_valid);
}

TEST_CASE("H(1,1): boundary estimator equals kappa + c exactly") {
    Stratum s({1, 1});
    for (int d = 4; d <= 6; ++d) {
        auto orbits = sl2_orbits(enumerate_origamis(d, s, 4).origamis);
        REQUIRE_FALSE(orbits.empty());
        for (const auto& c : orbits) {
            auto witness = boundary_vanishing_check(c);
            CHECK(witness.passed);
            Rational direct = lyapunov_sum(c);
            Rational via_boundary = lyapunov_via_boundary(c);
            CHECK(direct == via_boundary);   // identical rationals, not approximate
            CHECK(direct == Rational(3, 2));
        }
    }
}

TEST_CASE("weighting consistency of the boundary numbers") {
    // |Aut| is an SL(2,Z)-orbit invariant, so the weighted and unweighted
    // ratios delta0/psi agree orbit by orbit
    for (auto [d, s] : {std::pair{4, Stratum({1, 1})}, std::pair{5, Stratum({1, 1})},
                        std::pair{3, Stratum::parse("")}}) {
        for (const auto& c : sl2_orbits(enumerate_origamis(d, s).origamis)) {
            auto psi = psi_number(c);
            auto d0 = delta0_number(c);
            CHECK(d0.weighted / psi.weighted == d0.unweighted / psi.unweighted);
        }
    }
}

TEST_CASE("convergence table is deterministic across parallelism degrees") {
    Stratum s({1, 1});
    auto t1 = convergence_table(s, 4, 5, Rational(kDefaultCalibrationK), 1);
    auto t4 = convergence_table(s, 4, 5, Rational(kDefaultCalibrationK), 4);
    REQUIRE(t1.rows.size() == t4.rows.size());
    for (size_t i = 0; i < t1.rows.size(); ++i) {
        CHECK(t1.rows[i].degree == t4.rows[i].degree);
        CHECK(t1.rows[i].orbit_id == t4.rows[i].orbit_id);
        CHECK(t1.rows[i].orbit_size == t4.rows[i].orbit_size);
        CHECK(t1.rows[i].psi_number == t4.rows[i].psi_number);
        CHECK(t1.rows[i].delta0_number == t4.rows[i].delta0_number);
        CHECK(t1.rows[i].lyap_sum == t4.rows[i].lyap_sum);
    }
    REQUIRE(t1.degree_averages.size() == t4.degree_averages.size());
    for (size_t i = 0; i < t1.degree_averages.size(); ++i) {
        CHECK(t1.degree_averages[i].first == t4.degree_averages[i].first);
        CHECK(t1.degree_averages[i].second == t4.degree_averages[i].second);
        CHECK(t1.degree_averages[i].second == Rational(3, 2));
    }
}
