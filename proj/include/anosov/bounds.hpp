#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "anosov/error.hpp"
#include "anosov/fuchsian.hpp"

namespace anosov {

struct GrowthBoundParams {
    double A = 1;
    double B = 1;
    double D_alpha0 = 0;
    double C1 = 1;
    double C2 = 1;
    double A1 = 1, A2 = 1, A3 = 1, A4 = 1, A5 = 1, A6 = 1, A7 = 1;
    double t0 = 4;
    double a = 1;          // systole
    double C_neutered = 1; // constant of the refined quadratic bound
};

// Throws ConfigInvalid when a constant is out of range.
void validate_params(const GrowthBoundParams& p);

enum class LowerBoundKind { hyperbolic, atoroidal, seifert };
enum class Topology { hyperbolic, atoroidal_piece, two_seifert, graph_manifold, mixed };
enum class GrowthType { exponential, quadratic, linear, undetermined };

std::string to_string(LowerBoundKind k);
std::string to_string(Topology t);
std::string to_string(GrowthType g);
Topology parse_topology(const std::string& s); // throws ConfigInvalid

// hyperbolic: exponential, atoroidal_piece: quadratic, everything else: linear.
LowerBoundKind lower_bound_kind(Topology t);

double eval_lower_bound(LowerBoundKind kind, int i, const GrowthBoundParams& p, double l0 = 0);
double eval_upper_bound_string(int i, double l0, const GrowthBoundParams& p);

// Throws BelowThreshold when t < p.t0.
double uniform_class_cap(double t, Topology topology, const GrowthBoundParams& p);
double generic_class_cap(double t, const GrowthBoundParams& p);

std::pair<double, std::uint64_t> ccl_sandwich(std::uint64_t n_t, double t, Topology topology,
                                              const GrowthBoundParams& p);

double refined_hyperbolic_lower(int i, double t, const GrowthBoundParams& p);
double refined_atoroidal_lower(int i, double t, const GrowthBoundParams& p);

struct PreflightReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

// Lower bound below the upper bound for i <= i_max, and the generic cap dominating the others.
PreflightReport preflight(const GrowthBoundParams& p, LowerBoundKind kind, double l0, int i_max = 50);

struct StringLengths {
    std::vector<double> lengths;
    bool infinite_flag = false;
    Topology topology = Topology::hyperbolic;
};

struct BoundViolation {
    int index;
    std::string bound_name;
    double expected;
    double actual;
};

struct GrowthFit {
    GrowthType type = GrowthType::undetermined;
    double r2_exponential = 0;
    double r2_quadratic = 0;
    double r2_linear = 0;
    double margin = 0;
};

GrowthFit fit_growth(const std::vector<double>& lengths);

struct StringReport {
    std::vector<BoundViolation> violations;
    GrowthType fitted_growth = GrowthType::undetermined;
    GrowthFit fit;
    PreflightReport preflight;
};

StringReport check_string(const StringLengths& sl, const GrowthBoundParams& p);

struct SandwichPoint {
    double t;
    double lower;
    std::uint64_t ccl;
    std::uint64_t upper;
    bool ok;
};

struct SandwichReport {
    std::vector<SandwichPoint> points;
    int violations = 0;
    int skipped = 0; // grid points below t0
};

SandwichReport sandwich_check(const CountReport& r, Topology topology, const GrowthBoundParams& p);
// Smallest A6 for which the generic sandwich holds on every grid point at or above t0.
double fitted_A6(const CountReport& r, const GrowthBoundParams& p);

} // namespace anosov
