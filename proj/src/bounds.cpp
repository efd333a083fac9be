#include "anosov/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace anosov {

void validate_params(const GrowthBoundParams& p) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0) || !std::isfinite(v))
            throw ConfigInvalid(std::string("parameter ") + name + " must be positive");
    };
    positive(p.A, "A");
    positive(p.B, "B");
    positive(p.C1, "C1");
    positive(p.C2, "C2");
    positive(p.A1, "A1");
    positive(p.A3, "A3");
    positive(p.A4, "A4");
    positive(p.A5, "A5");
    positive(p.A6, "A6");
    positive(p.A7, "A7");
    positive(p.t0, "t0");
    positive(p.a, "a");
    positive(p.C_neutered, "C_neutered");
    if (!(p.D_alpha0 >= 0) || !std::isfinite(p.D_alpha0))
        throw ConfigInvalid("parameter D_alpha0 must be nonnegative");
    if (!(p.A2 >= 0) || !std::isfinite(p.A2))
        throw ConfigInvalid("parameter A2 must be nonnegative");
}

std::string to_string(LowerBoundKind k) {
    switch (k) {
    case LowerBoundKind::hyperbolic: return "hyperbolic";
    case LowerBoundKind::atoroidal: return "atoroidal";
    case LowerBoundKind::seifert: return "seifert";
    }
    return "";
}

std::string to_string(Topology t) {
    switch (t) {
    case Topology::hyperbolic: return "hyperbolic";
    case Topology::atoroidal_piece: return "atoroidal_piece";
    case Topology::two_seifert: return "two_seifert";
    case Topology::graph_manifold: return "graph_manifold";
    case Topology::mixed: return "mixed";
    }
    return "";
}

std::string to_string(GrowthType g) {
    switch (g) {
    case GrowthType::exponential: return "exponential";
    case GrowthType::quadratic: return "quadratic";
    case GrowthType::linear: return "linear";
    case GrowthType::undetermined: return "undetermined";
    }
    return "";
}

Topology parse_topology(const std::string& s) {
    for (Topology t : {Topology::hyperbolic, Topology::atoroidal_piece, Topology::two_seifert,
                       Topology::graph_manifold, Topology::mixed})
        if (to_string(t) == s)
            return t;
    throw ConfigInvalid("unknown topology: " + s);
}

LowerBoundKind lower_bound_kind(Topology t) {
    switch (t) {
    case Topology::hyperbolic: return LowerBoundKind::hyperbolic;
    case Topology::atoroidal_piece: return LowerBoundKind::atoroidal;
    default: return LowerBoundKind::seifert;
    }
}

double eval_lower_bound(LowerBoundKind kind, int i, const GrowthBoundParams& p, double l0) {
    if (i < 0)
        throw PreconditionViolated("string index must be nonnegative");
    double x = static_cast<double>(i);
    double v = 0;
    switch (kind) {
    case LowerBoundKind::hyperbolic: v = p.B * std::exp(-p.D_alpha0) * std::exp(p.A * x); break;
    case LowerBoundKind::atoroidal: v = p.B * x * x * std::exp(-p.D_alpha0); break;
    case LowerBoundKind::seifert: v = p.A1 * x - p.A2 - l0; break;
    }
    return std::max(0.0, v);
}

double eval_upper_bound_string(int i, double l0, const GrowthBoundParams& p) {
    if (!(l0 > 0))
        throw PreconditionViolated("upper bound needs l0 > 0");
    return p.C1 * l0 * std::exp(p.C2 * static_cast<double>(i));
}

double generic_class_cap(double t, const GrowthBoundParams& p) {
    double r = std::sqrt(t);
    return p.A6 * r * std::exp(r / 2 * std::log(t / p.A7));
}

double uniform_class_cap(double t, Topology topology, const GrowthBoundParams& p) {
    if (t < p.t0)
        throw BelowThreshold("class cap evaluated below t0");
    switch (topology) {
    case Topology::graph_manifold: return p.A1 * t + p.A2;
    case Topology::hyperbolic: return p.A3 * std::log(t) + p.A3 * std::sqrt(t) * std::log(p.A4 * t) + p.A5;
    default: return generic_class_cap(t, p);
    }
}

std::pair<double, std::uint64_t> ccl_sandwich(std::uint64_t n_t, double t, Topology topology,
                                              const GrowthBoundParams& p) {
    double cap = uniform_class_cap(t, topology, p);
    double lower = static_cast<double>(n_t) / cap;
    return {lower, n_t};
}

double refined_hyperbolic_lower(int i, double t, const GrowthBoundParams& p) {
    return p.B * std::exp(-std::sqrt(t) * std::log(2 * t / p.a)) * std::exp(p.A * static_cast<double>(i));
}

double refined_atoroidal_lower(int i, double t, const GrowthBoundParams& p) {
    double x = static_cast<double>(i);
    return p.B * std::exp(-std::sqrt(t) * std::log(t / p.C_neutered)) * x * x;
}

PreflightReport preflight(const GrowthBoundParams& p, LowerBoundKind kind, double l0, int i_max) {
    PreflightReport r;
    try {
        validate_params(p);
    } catch (const ConfigInvalid& e) {
        r.problems.emplace_back(e.what());
        return r;
    }
    if (l0 > 0) {
        for (int i = 0; i <= i_max; ++i) {
            double lo = eval_lower_bound(kind, i, p, l0), hi = eval_upper_bound_string(i, l0, p);
            if (lo > hi) {
                r.problems.push_back(to_string(kind) + " lower bound exceeds the upper bound at i = " +
                                     std::to_string(i));
                break;
            }
        }
    }
    for (double t : {1e2, 1e3, 1e4}) {
        if (t < p.t0)
            continue;
        double g = generic_class_cap(t, p);
        if (g < uniform_class_cap(t, Topology::graph_manifold, p) ||
            g < uniform_class_cap(t, Topology::hyperbolic, p)) {
            r.problems.push_back("generic class cap does not dominate at t = " + std::to_string(t));
            break;
        }
    }
    return r;
}

namespace {

// R^2 of the least-squares line y ~ x.
double r2_line(const std::vector<double>& x, const std::vector<double>& y) {
    std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (syy <= 0 || sxx <= 0)
        return 0;
    return sxy * sxy / (sxx * syy);
}

// R^2 of y ~ 2 x + c.
double r2_fixed_slope(const std::vector<double>& x, const std::vector<double>& y, double slope) {
    std::size_t n = x.size();
    double c = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        c += y[i] - slope * x[i];
        my += y[i];
    }
    c /= n;
    my /= n;
    double res = 0, tot = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = y[i] - slope * x[i] - c;
        res += e * e;
        tot += (y[i] - my) * (y[i] - my);
    }
    if (tot <= 0)
        return 0;
    return 1 - res / tot;
}

} // namespace

GrowthFit fit_growth(const std::vector<double>& lengths) {
    GrowthFit f;
    std::vector<double> idx, logi, len, logl;
    for (std::size_t i = 1; i < lengths.size(); ++i) {
        if (!(lengths[i] > 0))
            continue;
        idx.push_back(static_cast<double>(i));
        logi.push_back(std::log(static_cast<double>(i)));
        len.push_back(lengths[i]);
        logl.push_back(std::log(lengths[i]));
    }
    if (idx.size() < 3)
        return f;
    f.r2_exponential = r2_line(idx, logl);
    f.r2_quadratic = r2_fixed_slope(logi, logl, 2.0);
    f.r2_linear = r2_line(idx, len);
    std::array<std::pair<double, GrowthType>, 3> c = {std::pair{f.r2_exponential, GrowthType::exponential},
                                                       std::pair{f.r2_quadratic, GrowthType::quadratic},
                                                       std::pair{f.r2_linear, GrowthType::linear}};
    std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    f.margin = c[0].first - c[1].first;
    if (c[0].first >= 0.95 && f.margin >= 0.02)
        f.type = c[0].second;
    return f;
}

StringReport check_string(const StringLengths& sl, const GrowthBoundParams& p) {
    if (sl.lengths.empty())
        throw PreconditionViolated("string has no lengths");
    double l0 = sl.lengths.front();
    if (*std::min_element(sl.lengths.begin(), sl.lengths.end()) < l0)
        throw PreconditionViolated("the first length must be the shortest");
    if (!(l0 > 0))
        throw PreconditionViolated("lengths must be positive");
    StringReport r;
    LowerBoundKind kind = lower_bound_kind(sl.topology);
    r.preflight = preflight(p, kind, l0, static_cast<int>(sl.lengths.size()));
    const double rel = 1e-9;
    for (std::size_t i = 0; i < sl.lengths.size(); ++i) {
        int ii = static_cast<int>(i);
        double actual = sl.lengths[i];
        double up = eval_upper_bound_string(ii, l0, p);
        if (actual > up * (1 + rel))
            r.violations.push_back({ii, "exponential_upper", up, actual});
        if (sl.infinite_flag) {
            double lo = eval_lower_bound(kind, ii, p, l0);
            if (actual < lo * (1 - rel))
                r.violations.push_back({ii, to_string(kind) + "_lower", lo, actual});
        }
    }
    r.fit = fit_growth(sl.lengths);
    r.fitted_growth = r.fit.type;
    return r;
}

SandwichReport sandwich_check(const CountReport& r, Topology topology, const GrowthBoundParams& p) {
    SandwichReport s;
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        double t = r.grid[i];
        if (t < p.t0) {
            ++s.skipped;
            continue;
        }
        auto [lower, upper] = ccl_sandwich(r.N[i], t, topology, p);
        bool ok = lower <= static_cast<double>(r.CCl[i]) * (1 + 1e-12) && r.CCl[i] <= upper;
        s.points.push_back({t, lower, r.CCl[i], upper, ok});
        s.violations += ok ? 0 : 1;
    }
    return s;
}

double fitted_A6(const CountReport& r, const GrowthBoundParams& p) {
    double best = 0;
    GrowthBoundParams unit = p;
    unit.A6 = 1;
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        double t = r.grid[i];
        if (t < p.t0 || r.N[i] == 0)
            continue;
        if (r.CCl[i] == 0)
            return std::numeric_limits<double>::infinity();
        best = std::max(best, static_cast<double>(r.N[i]) / (static_cast<double>(r.CCl[i]) * generic_class_cap(t, unit)));
    }
    return best;
}

} // namespace anosov
