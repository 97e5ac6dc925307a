#pragma once

#include <optional>
#include <string>
#include <vector>

#include "goodred/goodmodel.hpp"

namespace goodred {

// The three sharp families over k((t)) witnessing that B(p, d) cannot be
// improved: family 1 needs d >= 3 and p | d, family 2 needs d >= 3 and
// p | d-1, family 3 applies whenever B = d+1.
RationalMap make_family(int which, long long p, long long d);

struct CoefficientAudit {
    long long j;
    Rational exponent;       // E_j with |coef| = |t|^{E_j} in the generic bound
    bool binomial_vanishes;  // C(q, j) = 0 in the residue field
    bool bound_holds;        // coefficient valuation certifies integrality
};

struct SharpnessReport {
    int family = 0;
    long long p = 0, d = 0, q = 1, m = 1;
    long long B = 0;
    bool bad_reduction_over_base = false;
    bool conjugate_good_reduction = false;
    long long model_degree = 0;
    Level model_level;
    MobiusMap h;
    RationalMap psi;
    TypeIIPoint invariant_point;
    bool invariant_verified = false;
    bool finder_agrees = false;
    long long lower_bound = 0;
    bool totally_ramified = false;  // observed: residue degree of the model level is 1
    std::vector<CoefficientAudit> audit;
    std::vector<std::string> failures;  // named failing clauses
    bool sharp = false;

    SharpnessReport(MobiusMap h_, RationalMap psi_, TypeIIPoint xi_)
        : h(std::move(h_)), psi(std::move(psi_)), invariant_point(std::move(xi_)) {}
};

// Build the family member, conjugate it by the explicit scaling map, and
// check every sharpness clause: bad reduction over the base, good reduction
// at level degree B, the invariant point, the ramification lower bound, and
// the inner-coefficient audit.
SharpnessReport verify_sharpness(int which, long long p, long long d);

}  // namespace goodred
