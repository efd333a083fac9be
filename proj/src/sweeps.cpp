#include "anosov/sweeps.hpp"

#include <cmath>
#include <numbers>

namespace anosov {

namespace {

Point2H<double> at_axis(double tau, double r) {
    double e = std::exp(tau);
    return Point2H<double>(e * std::tanh(r), e / std::cosh(r));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

CurveInstance transported(std::vector<Point2H<double>> curve, double k, std::mt19937_64& rng) {
    auto g = random_isometry(rng);
    for (auto& p : curve)
        p = g.apply(p);
    const double inf = std::numeric_limits<double>::infinity();
    GeodesicH<double> geo(g.apply_boundary(0.0), g.apply_boundary(inf));
    return {std::move(curve), geo, k};
}

} // namespace

std::vector<Point2H<double>> equidistant_curve(double k, double tau0, double tau1, int samples) {
    std::vector<Point2H<double>> c;
    c.reserve(samples);
    for (int j = 0; j < samples; ++j)
        c.push_back(at_axis(tau0 + (tau1 - tau0) * j / (samples - 1), k));
    return c;
}

Isometry2H<double> random_isometry(std::mt19937_64& rng) {
    double lam = std::exp(uniform(rng, -1.5, 1.5));
    double th = uniform(rng, 0, std::numbers::pi);
    double tx = uniform(rng, -3, 3);
    auto dil = Isometry2H<double>::from_entries(std::sqrt(lam), 0, 0, 1 / std::sqrt(lam));
    auto rot = Isometry2H<double>::from_entries(std::cos(th), std::sin(th), -std::sin(th), std::cos(th));
    auto tr = Isometry2H<double>::from_entries(1, tx, 0, 1);
    return tr * rot * dil;
}

CurveInstance random_admissible_curve(std::mt19937_64& rng) {
    double k = uniform(rng, 0, 2.5);
    double span = uniform(rng, 0.2, 4);
    int n = static_cast<int>(uniform(rng, 400, 1200));
    double side = uniform(rng, 0, 1) < 0.5 ? -1 : 1;
    int waves = 1 + static_cast<int>(uniform(rng, 0, 4));
    double bump = uniform(rng, 0, 1.5);
    double wiggle = uniform(rng, 0, 0.5) * span / waves;
    std::vector<Point2H<double>> c;
    c.reserve(n);
    for (int j = 0; j < n; ++j) {
        double s = static_cast<double>(j) / (n - 1);
        double tau = span * s + wiggle * std::sin(2 * std::numbers::pi * waves * s) / (2 * std::numbers::pi);
        double r = k + bump * std::pow(std::sin(std::numbers::pi * s), 2) *
                           (0.5 + 0.5 * std::cos(2 * std::numbers::pi * waves * s));
        c.push_back(at_axis(tau, side * r));
    }
    return transported(std::move(c), k, rng);
}

CurveInstance random_equidistant_instance(std::mt19937_64& rng) {
    double k = uniform(rng, 0, 2.5);
    double span = uniform(rng, 0.2, 4);
    return transported(equidistant_curve(k, 0, span, 2000), k, rng);
}

SweepSummary cosh_lemma_sweep(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    SweepSummary s;
    s.worst_relative_margin = std::numeric_limits<double>::infinity();
    s.max_relative_margin = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < trials; ++i) {
        auto inst = random_admissible_curve(rng);
        auto rep = verify_cosh_lemma(inst.curve, inst.geo);
        ++s.trials;
        s.passed += rep.holds;
        s.worst_relative_margin = std::min(s.worst_relative_margin, rep.relative_margin);
        s.max_relative_margin = std::max(s.max_relative_margin, rep.relative_margin);
    }
    return s;
}

SweepSummary equidistant_sweep(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    SweepSummary s;
    s.worst_relative_margin = std::numeric_limits<double>::infinity();
    s.max_relative_margin = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < trials; ++i) {
        auto inst = random_equidistant_instance(rng);
        auto rep = verify_cosh_lemma(inst.curve, inst.geo);
        ++s.trials;
        s.passed += rep.holds;
        s.worst_relative_margin = std::min(s.worst_relative_margin, rep.relative_margin);
        s.max_relative_margin = std::max(s.max_relative_margin, std::abs(rep.relative_margin));
    }
    return s;
}

DetourInstance random_detour(std::mt19937_64& rng) {
    // Horosphere y = h based at infinity, carried by a random isometry.
    double h = std::exp(uniform(rng, -2, 2));
    double x0 = uniform(rng, -5, 5);
    double dx = h * uniform(rng, 0, 20);
    auto g = random_isometry(rng);
    Point2H<double> p = g.apply(Point2H<double>(x0, h));
    Point2H<double> q = g.apply(Point2H<double>(x0 + dx, h));
    // Arclength of the transported horocyclic arc by Simpson's rule on |dz| / y.
    const int n = 4000;
    auto speed = [&](double s) {
        std::complex<double> z(x0 + s * dx, h);
        std::complex<double> den = g.c() * z + g.d();
        std::complex<double> w = g.apply(z);
        return std::abs(dx / (den * den)) / w.imag();
    };
    double sum = speed(0) + speed(1);
    for (int j = 1; j < n; ++j)
        sum += (j % 2 ? 4 : 2) * speed(static_cast<double>(j) / n);
    double x = sum / (3.0 * n);
    double d_h = hyp_distance(p, q);
    return {x, d_h, neutered_interval(d_h).second};
}

DetourSummary detour_sweep(std::uint64_t seed, int trials) {
    std::mt19937_64 rng(seed);
    DetourSummary s;
    for (int i = 0; i < trials; ++i) {
        auto d = random_detour(rng);
        ++s.trials;
        double tol = 1e-9 * (1 + d.upper);
        bool ok = d.d_h <= d.x + tol && d.x <= d.upper + tol;
        double rt = std::abs(horoball_detour(neutered_interval(d.d_h).second) - d.d_h);
        s.max_roundtrip_error = std::max(s.max_roundtrip_error, rt);
        s.passed += ok;
    }
    return s;
}

} // namespace anosov
