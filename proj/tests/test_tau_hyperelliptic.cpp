#include "doctest.h"

#include <array>
#include <map>

#include "hodgetau/tau_hyperelliptic.hpp"

using namespace hodgetau;

namespace {

HyperellipticCurve base_curve() {
    return HyperellipticCurve(
        {cplx(0.0), cplx(1.0), cplx(2.0), cplx(3.0), cplx(4.0), cplx(5.0)});
}

DifferentialSpec base_spec() { return DifferentialSpec(cplx(-1.5), cplx(1.0)); }

}  // namespace

TEST_CASE("tau evaluation on the reference curve matches the frozen value") {
    PeriodData pd = period_data(base_curve());
    TauEvaluation t = tau0_eval(pd, base_spec());
    CHECK(t.lattice_residual < 1e-8);
    CHECK(std::abs(t.value) > 0.0);
    CHECK(std::isfinite(t.log_value.real()));
    // frozen from an earlier run of the same configuration; guards against
    // silent regressions in any ingredient of the formula
    CHECK(t.log_value.real() == doctest::Approx(24.1915143799).epsilon(1e-8));
    CHECK(t.log_value.imag() == doctest::Approx(-47.1238897419).epsilon(1e-8));
}

TEST_CASE("tau rejects differentials outside the generic stratum") {
    PeriodData pd = period_data(base_curve());
    CHECK_THROWS(tau0_eval(pd, DifferentialSpec(cplx(-2.00001), cplx(1.0))));
}

TEST_CASE("invariance suite on the reference curve") {
    PeriodData pd = period_data(base_curve());
    InvarianceReport rep = invariance_suite(pd, base_spec());
    CHECK(std::abs(rep.homogeneity_exponent - 6.0) < 1e-9);
    CHECK(rep.homogeneity_residual < 1e-10);
    CHECK(std::abs(rep.euler_sum - 6.0) < 1e-4);
    CHECK(rep.basepoint_residual < 1e-6);
    CHECK(rep.hub_sheet_residual < 1e-6);
    CHECK(rep.odd_char_residual < 1e-10);
    CHECK(rep.zero_label_residual < 1e-10);
}

TEST_CASE("invariance suite over a random corpus") {
    auto corpus = random_corpus(6, 991);
    for (const auto& el : corpus) {
        PeriodData pd = period_data(el.curve);
        InvarianceReport rep = invariance_suite(pd, el.spec);
        CHECK(std::abs(rep.homogeneity_exponent - 6.0) < 1e-9);
        CHECK(std::abs(rep.euler_sum - 6.0) < 1e-4);
        CHECK(rep.basepoint_residual < 1e-6);
        CHECK(rep.hub_sheet_residual < 1e-6);
        CHECK(rep.odd_char_residual < 1e-10);
        CHECK(rep.zero_label_residual < 1e-10);
    }
}

TEST_CASE("loop dictionary of the reference curve") {
    PeriodData pd = period_data(base_curve());
    auto dict = loop_dictionary(pd);
    std::map<std::pair<int, int>, std::array<long, 4>> classes;
    for (const auto& lc : dict)
        if (lc.orient == 1) classes[lc.range] = lc.cls;
    REQUIRE(classes.size() == 8);
    CHECK(classes[{0, 1}] == std::array<long, 4>{1, 0, 0, 0});
    CHECK(classes[{2, 3}] == std::array<long, 4>{0, 1, 0, 0});
    CHECK(classes[{1, 4}] == std::array<long, 4>{0, 0, 1, 0});
    CHECK(classes[{3, 4}] == std::array<long, 4>{0, 0, 0, 1});
    CHECK(classes[{1, 2}] == std::array<long, 4>{0, 0, 1, -1});
    CHECK(classes[{4, 5}] == std::array<long, 4>{-1, -1, 0, 0});
    CHECK(classes[{0, 3}] == std::array<long, 4>{1, 1, 0, 0});
    CHECK(classes[{2, 5}] == std::array<long, 4>{-1, 0, 0, 0});
    // every listed contour also appears with the opposite orientation
    CHECK(dict.size() == 16);
}

TEST_CASE("modular weight 24 under realizable symplectic remarkings") {
    PeriodData pd = period_data(base_curve());
    DifferentialSpec spec = base_spec();

    // identity: same marking, ratio exactly 1
    std::array<std::array<long, 4>, 4> id = {
        {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
    auto r0 = symplectic_check(pd, spec, id);
    CHECK(std::abs(r0.det_factor - 1.0) < 1e-12);
    CHECK(r0.tau_residual < 1e-10);

    std::vector<std::array<std::array<long, 4>, 4>> gammas = {
        // S on the first handle
        {{{0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}}},
        // shear mixing the a-classes with b1 - b2
        {{{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, -1, 1}}},
        // S on the second handle
        {{{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}}},
    };
    for (const auto& g : gammas) {
        auto r = symplectic_check(pd, spec, g);
        CHECK(r.omega_residual < 1e-10);
        CHECK(r.tau_residual < 1e-5);
    }

    // non-symplectic input is rejected
    std::array<std::array<long, 4>, 4> bad = {
        {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 1}}};
    CHECK_THROWS(symplectic_check(pd, spec, bad));
}

TEST_CASE("boundary exponent at the degenerate-differential locus") {
    PeriodData pd = period_data(base_curve());
    DdegProbe pr = ddeg_exponent_probe(pd, 2, cplx(-1.0, 0.0));
    CHECK(std::abs(pr.slope_logtau_logt - 1.0 / 3.0) < 0.02);
    CHECK(std::abs(pr.slope_logt_logdist - 3.0) < 0.05);
    CHECK(pr.t_routing_residual < 1e-10);
    CHECK_THROWS(ddeg_exponent_probe(pd, 2, cplx(-1.0, 0.0), 0.01, 0.1));
}

TEST_CASE("log ratio is reduced to the principal strip") {
    TauEvaluation a, b;
    a.log_value = cplx(1.0, 10.0);
    b.log_value = cplx(0.5, -9.0);
    cplx r = log_tau_ratio(a, b);
    CHECK(std::abs(r.imag()) <= kPi + 1e-12);
    CHECK(std::abs(std::exp(r) - std::exp(a.log_value - b.log_value)) < 1e-10);
}

TEST_CASE("corpus generator is deterministic and well separated") {
    auto c1 = random_corpus(5, 42);
    auto c2 = random_corpus(5, 42);
    REQUIRE(c1.size() == 5);
    for (int k = 0; k < 5; ++k) {
        for (int i = 0; i < 6; ++i) CHECK(c1[k].curve.e[i] == c2[k].curve.e[i]);
        CHECK(c1[k].spec.c0 == c2[k].spec.c0);
        CHECK(c1[k].spec.c1 == c2[k].spec.c1);
        // zero of the differential stays clear of the branch locus
        cplx x0 = -c1[k].spec.c0 / c1[k].spec.c1;
        CHECK(c1[k].curve.dist_to_branch(x0) > 0.05);
    }
    CHECK(random_corpus(5, 43)[0].curve.e[0] != c1[0].curve.e[0]);
}
