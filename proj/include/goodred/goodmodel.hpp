#pragma once

#include <optional>
#include <string>
#include <vector>

#include "goodred/dynamics.hpp"

namespace goodred {

// The degree bound B(p, d) for attaining good reduction.
long long degree_bound(long long p, long long d);

long long p_adic_val(long long p, long long n);  // v_p(n), 0 when p = 0

struct ClosedDisk {
    PuiseuxElement center;
    Rational rho;
};

// A point of the closed disk V (which contains every root of f) generating an
// extension of degree at most p^(v_p(deg f)). Built from the z^(n-q)
// coefficient of f(z + tau).
Point low_degree_point_in_disk(const Poly& f, const ClosedDisk& V,
                               Rational root_prec = Rational(0));

// A point outside the indifferent fixed component U (which meets P^1(K)).
Point point_outside_indifferent_component(const RationalMap& phi, const TypeIIPoint& xi,
                                          const Direction& U, const Point& witness,
                                          Rational root_prec = Rational(0));

// A point outside the attracting fixed component U, via orbit perturbation of
// the fixed-point polynomial.
Point point_outside_attracting_component(const RationalMap& phi, const TypeIIPoint& xi,
                                         const Direction& U, const Point& witness,
                                         Rational root_prec = Rational(0));

enum class TwoComponentMode { other_not_fixed, both_fixed_or_attracting };

// A point outside U and V: a pole of phi (mode other_not_fixed), a scaled
// root from the mapping degree (U attracting), or a sibling preimage of
// phi(0) (both indifferent).
Point point_outside_two_components(const RationalMap& phi, const TypeIIPoint& xi,
                                   const Direction& U, const Point& u_witness,
                                   const Direction& V, const Point& v_witness,
                                   TwoComponentMode mode, ComponentStatus u_status,
                                   Rational root_prec = Rational(0));

struct CaseStep {
    int label;  // 1..6
    std::string note;
};

struct ModelResult {
    Level base_level;
    Level model_level;
    long long extension_degree = 1;  // [model : base]
    MobiusMap h;
    RationalMap psi;
    std::vector<CaseStep> trace;
    long long bound = 0;  // B(p, d)
    TypeIIPoint invariant_point;

    ModelResult(MobiusMap h_, RationalMap psi_, TypeIIPoint xi_)
        : h(std::move(h_)), psi(std::move(psi_)), invariant_point(std::move(xi_)) {}
};

struct FindModelOptions {
    Rational root_prec{0};  // 0 = config default
    int retries = 4;        // precision-doubling retries
};

// Locate the totally invariant point and conjugate to good reduction over an
// extension of degree at most B(p, d). nullopt when the invariant point is
// not found (inconclusive).
std::optional<ModelResult> find_good_model(const RationalMap& phi,
                                           const FindModelOptions& opts = {});

// Lower bound for the degree of any extension whose projective line sees the
// point zeta(a, |t|^rho_b) at the Gauss position.
long long ramification_lower_bound(const Point& a, const Rational& rho_b, const Level& level);

}  // namespace goodred
