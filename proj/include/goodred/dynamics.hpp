#pragma once

#include <optional>

#include "goodred/berkovich.hpp"

namespace goodred {

enum class FixedKind { attracting, indifferent, repelling };

struct FixedPointData {
    Point location;
    PuiseuxElement multiplier;
    FixedKind kind;
    long long multiplicity;
};

// All d+1 fixed points (with multiplicity) and their multipliers.
std::vector<FixedPointData> fixed_points(const RationalMap& phi,
                                         Rational target_prec = Rational(0));

enum class ComponentStatus { not_fixed, indifferent, attracting };

struct ComponentClass {
    Direction dir;
    ComponentStatus status = ComponentStatus::not_fixed;
    long long ell = 0;                 // mapping degree on the component when fixed
    std::optional<Point> attractor;    // attracting fixed point inside, when attracting
};

// Classify the component U of the complement of a totally invariant xi.
ComponentClass classify_component(const RationalMap& phi, const TypeIIPoint& xi,
                                  const Direction& U);

// True iff the conjugate moving xi to the Gauss point has good reduction.
bool is_totally_invariant(const RationalMap& phi, const TypeIIPoint& xi);

// Candidate-based, verification-gated search for the totally invariant
// type-II point. A returned point is always verified; nullopt is inconclusive.
std::optional<TypeIIPoint> find_invariant_point(const RationalMap& phi);

// The Moebius map (z - a)/t^rho moving zeta(a, rho) to the Gauss point.
MobiusMap move_to_gauss(const TypeIIPoint& xi);

}  // namespace goodred
