#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hodgetau/rational.hpp"
#include "hodgetau/teichcurve.hpp"

namespace hodgetau {

/// Exact-rational divisor class on the projectivized Hodge bundle over
/// genus g, in the basis {psi, lambda, delta_deg, delta_0, ..., delta_[g/2]}.
/// delta_1 carries the 1/2 stack factor by convention of the basis itself.
class DivisorClass {
public:
    explicit DivisorClass(int g) : genus_(g), coeffs_(4 + g / 2) {
        if (g < 1) throw std::invalid_argument("DivisorClass: genus must be >= 1");
    }

    int genus() const { return genus_; }
    int basis_size() const { return int(coeffs_.size()); }

    Rational& psi() { return coeffs_[0]; }
    Rational& lambda() { return coeffs_[1]; }
    Rational& delta_deg() { return coeffs_[2]; }
    Rational& delta(int j) { return coeffs_.at(3 + j); }  // j = 0..[g/2]
    const Rational& psi() const { return coeffs_[0]; }
    const Rational& lambda() const { return coeffs_[1]; }
    const Rational& delta_deg() const { return coeffs_[2]; }
    const Rational& delta(int j) const { return coeffs_.at(3 + j); }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != Rational(0)) return false;
        return true;
    }

    friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
        return a.genus_ == b.genus_ && a.coeffs_ == b.coeffs_;
    }

    static std::vector<std::string> basis_names(int g) {
        std::vector<std::string> names = {"psi", "lambda", "delta_deg"};
        for (int j = 0; j <= g / 2; ++j) names.push_back("delta_" + std::to_string(j));
        return names;
    }

    const Rational& coeff(int i) const { return coeffs_.at(i); }
    Rational& coeff(int i) { return coeffs_.at(i); }

    /// Renders e.g. "24*lambda - 6*psi - delta_deg - 2*delta_0 - 3*delta_1".
    std::string render() const {
        auto names = basis_names(genus_);
        std::ostringstream os;
        bool first = true;
        for (int i = 0; i < basis_size(); ++i) {
            const Rational& c = coeffs_[i];
            if (c == Rational(0)) continue;
            Rational a = c;
            if (first) {
                if (a < Rational(0)) { os << "-"; a = -a; }
            } else {
                os << (a < Rational(0) ? " - " : " + ");
                if (a < Rational(0)) a = -a;
            }
            if (a != Rational(1)) os << a.str() << "*";
            os << names[i];
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    int genus_;
    std::vector<Rational> coeffs_;  // order matches basis_names
};

/// a + r*b, componentwise.
inline DivisorClass combine(const DivisorClass& a, const Rational& r, const DivisorClass& b) {
    if (a.genus() != b.genus())
        throw std::invalid_argument("combine: genus mismatch");
    DivisorClass out = a;
    for (int i = 0; i < out.basis_size(); ++i) out.coeff(i) += r * b.coeff(i);
    return out;
}

struct HodgeFormula {
    DivisorClass rhs;       // ((g-1)/4) psi + (1/24) delta_deg + (1/12) delta_0 + (1/8) sum delta_j
    DivisorClass relation;  // lambda - rhs (the zero class of the identity)
};

/// The expression of the Hodge class through the tautological and boundary
/// classes, as a basis identity.
inline HodgeFormula hodge_formula(int g) {
    if (g < 2) throw std::invalid_argument("hodge_formula: genus must be >= 2");
    DivisorClass rhs(g);
    rhs.psi() = Rational(g - 1, 4);
    rhs.delta_deg() = Rational(1, 24);
    rhs.delta(0) = Rational(1, 12);
    for (int j = 1; j <= g / 2; ++j) rhs.delta(j) = Rational(1, 8);
    DivisorClass relation(g);
    relation.lambda() = Rational(1);
    HodgeFormula out{rhs, combine(relation, Rational(-1), rhs)};
    return out;
}

/// 24 lambda - (6g-6) psi - delta_deg - 2 delta_0 - 3 sum delta_j, as a
/// class that must equal zero modulo the Hodge-class relation. The boundary
/// multiplicities 1, 2, 3 are the tau-divisor multiplicities of D_deg, D_0
/// and D_j.
inline DivisorClass tau_divisor_relation(int g) {
    if (g < 2) throw std::invalid_argument("tau_divisor_relation: genus must be >= 2");
    DivisorClass rel(g);
    rel.lambda() = Rational(24);
    rel.psi() = Rational(-(6 * g - 6));
    rel.delta_deg() = Rational(-1);
    rel.delta(0) = Rational(-2);
    for (int j = 1; j <= g / 2; ++j) rel.delta(j) = Rational(-3);
    return rel;
}

/// Per-stratum relation 24 lambda - 2(2g-2+r-sum 1/(m_k+1)) psi = 0 on the
/// open stratum, returned as the left-hand class.
inline DivisorClass stratum_psi_relation(const Stratum& s) {
    int g = s.genus;
    DivisorClass rel(std::max(g, 2));
    rel.lambda() = Rational(24);
    Rational coef = Rational(2) * (Rational(2 * g - 2) + Rational(s.r()));
    for (int m : s.zero_orders) coef -= Rational(2) * Rational(1, m + 1);
    rel.psi() = -coef;
    return rel;
}

/// Predicted pairing of a divisor class with a mu = 0 Teichmueller curve:
/// the delta_deg and delta_{j>=1} terms drop by the vanishing checks, the
/// delta_0 term is the calibrated boundary number.
inline Rational pair_with_curve(const DivisorClass& cls, const LyapunovReport& rep) {
    if (!rep.stratum.is_generic())
        throw std::invalid_argument("pair_with_curve: report must be on a mu = 0 stratum");
    if (cls.genus() != rep.stratum.genus)
        throw std::invalid_argument("pair_with_curve: genus mismatch");
    if (!rep.boundary_vanishing_ok)
        throw std::runtime_error(
            "pair_with_curve: boundary vanishing check failed for orbit " +
            std::to_string(rep.orbit_id) + "; refusing to drop boundary terms");
    return cls.psi() * rep.psi_number +
           cls.delta(0) * rep.calibration_k * rep.delta0_number;
}

}  // namespace hodgetau
