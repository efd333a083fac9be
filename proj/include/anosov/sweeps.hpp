#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "anosov/hypgeom.hpp"

namespace anosov {

// Curve at constant distance k from the imaginary axis, over axis positions [tau0, tau1].
std::vector<Point2H<double>> equidistant_curve(double k, double tau0, double tau1, int samples);

// Random isometry (product of a dilation, a rotation about i and a translation).
Isometry2H<double> random_isometry(std::mt19937_64& rng);

struct CurveInstance {
    std::vector<Point2H<double>> curve;
    GeodesicH<double> geo;
    double k;
};

// Random curve whose endpoints sit at distance k from a random geodesic and whose
// samples all stay at distance >= k.
CurveInstance random_admissible_curve(std::mt19937_64& rng);
CurveInstance random_equidistant_instance(std::mt19937_64& rng);

struct SweepSummary {
    int trials = 0;
    int passed = 0;
    double worst_relative_margin = 0;
    double max_relative_margin = 0;

    bool all_passed() const { return trials == passed; }
};

SweepSummary cosh_lemma_sweep(std::uint64_t seed, int trials);
SweepSummary equidistant_sweep(std::uint64_t seed, int trials);

struct DetourInstance {
    double x;     // horocyclic distance (integrated numerically)
    double d_h;   // hyperbolic distance
    double upper; // 2 sinh(d_h / 2)
};

// Two random points on a random horosphere.
DetourInstance random_detour(std::mt19937_64& rng);

struct DetourSummary {
    int trials = 0;
    int passed = 0;
    double max_roundtrip_error = 0;

    bool all_passed() const { return trials == passed; }
};

DetourSummary detour_sweep(std::uint64_t seed, int trials);

} // namespace anosov
