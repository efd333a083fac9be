#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "anosov/error.hpp"

namespace anosov {

template <typename Scalar>
inline constexpr Scalar kGeomTol = Scalar(1e-9);

template <typename Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;

template <typename Scalar>
inline bool is_ideal_infinity(Scalar x) { return std::isinf(x); }

template <typename Scalar>
struct Point2H {
    Scalar x;
    Scalar y;

    Point2H(Scalar x_, Scalar y_) : x(x_), y(y_) {
        if (!(y > Scalar(0)) || !std::isfinite(x) || !std::isfinite(y))
            throw PreconditionViolated("Point2H requires finite x and y > 0");
    }
    explicit Point2H(std::complex<Scalar> z) : Point2H(z.real(), z.imag()) {}

    std::complex<Scalar> z() const { return {x, y}; }
};

// Orientation preserving isometry of H^2, stored in SL(2,R) with trace >= 0.
template <typename Scalar>
class Isometry2H {
  public:
    Isometry2H() : m_(Mat2<Scalar>::Identity()) {}

    explicit Isometry2H(const Mat2<Scalar>& m) : m_(m) {
        Scalar det = m_.determinant();
        if (!(det > Scalar(0)))
            throw DegenerateInput("isometry matrix must have positive determinant");
        m_ /= std::sqrt(det);
        if (m_.trace() < Scalar(0))
            m_ = -m_;
    }

    static Isometry2H from_entries(Scalar a, Scalar b, Scalar c, Scalar d) {
        Mat2<Scalar> m;
        m << a, b, c, d;
        return Isometry2H(m);
    }

    // m must already have determinant 1, e.g. a product of normalized matrices.
    static Isometry2H from_sl2(const Mat2<Scalar>& m) {
        Isometry2H r;
        r.m_ = m.trace() < Scalar(0) ? Mat2<Scalar>(-m) : m;
        return r;
    }

    const Mat2<Scalar>& matrix() const { return m_; }
    Scalar a() const { return m_(0, 0); }
    Scalar b() const { return m_(0, 1); }
    Scalar c() const { return m_(1, 0); }
    Scalar d() const { return m_(1, 1); }
    Scalar trace() const { return m_.trace(); }

    Isometry2H inverse() const {
        Mat2<Scalar> inv;
        inv << d(), -b(), -c(), a();
        return from_sl2(inv);
    }

    Isometry2H operator*(const Isometry2H& other) const { return from_sl2(Mat2<Scalar>(m_ * other.m_)); }

    std::complex<Scalar> apply(std::complex<Scalar> z) const {
        return (a() * z + b()) / (c() * z + d());
    }

    Point2H<Scalar> apply(const Point2H<Scalar>& p) const { return Point2H<Scalar>(apply(p.z())); }

    // Action on the extended real line; infinity is represented by +inf.
    Scalar apply_boundary(Scalar x) const {
        const Scalar inf = std::numeric_limits<Scalar>::infinity();
        if (is_ideal_infinity(x))
            return std::abs(c()) <= kGeomTol<Scalar> * m_.norm() ? inf : a() / c();
        Scalar den = c() * x + d();
        if (std::abs(den) <= std::numeric_limits<Scalar>::epsilon() * (std::abs(c() * x) + std::abs(d())))
            return inf;
        return (a() * x + b()) / den;
    }

    Scalar defect_from_identity() const { return (m_ - Mat2<Scalar>::Identity()).cwiseAbs().maxCoeff(); }

  private:
    Mat2<Scalar> m_;
};

// Boundary endpoints of a geodesic; ends[0] is the backward end, ends[1] the forward end.
template <typename Scalar>
struct GeodesicH {
    std::pair<Scalar, Scalar> boundary_endpoints;

    GeodesicH(Scalar from, Scalar to) : boundary_endpoints(normalize(from), normalize(to)) {
        bool both_inf = is_ideal_infinity(from) && is_ideal_infinity(to);
        bool equal = !is_ideal_infinity(from) && !is_ideal_infinity(to) &&
                     std::abs(from - to) <= kGeomTol<Scalar> * (Scalar(1) + std::abs(from));
        if (both_inf || equal || std::isnan(from) || std::isnan(to))
            throw DegenerateInput("geodesic endpoints must be distinct");
    }

    Scalar from() const { return boundary_endpoints.first; }
    Scalar to() const { return boundary_endpoints.second; }

  private:
    static Scalar normalize(Scalar x) { return is_ideal_infinity(x) ? std::numeric_limits<Scalar>::infinity() : x; }
};

enum class IsometryKind { elliptic, parabolic, hyperbolic };

template <typename Scalar>
struct Classification {
    IsometryKind kind;
    Scalar translation_length;
};

template <typename Scalar>
Scalar hyp_distance(const Point2H<Scalar>& p, const Point2H<Scalar>& q) {
    Scalar e = std::hypot(p.x - q.x, p.y - q.y);
    return Scalar(2) * std::asinh(e / (Scalar(2) * std::sqrt(p.y * q.y)));
}

template <typename Scalar>
Classification<Scalar> classify_isometry(const Isometry2H<Scalar>& m) {
    Scalar tr = std::abs(m.trace());
    if (tr > Scalar(2) + kGeomTol<Scalar>)
        return {IsometryKind::hyperbolic, Scalar(2) * std::acosh(tr / Scalar(2))};
    if (tr < Scalar(2) - kGeomTol<Scalar> || m.defect_from_identity() <= kGeomTol<Scalar>)
        return {IsometryKind::elliptic, Scalar(0)};
    return {IsometryKind::parabolic, Scalar(0)};
}

template <typename Scalar>
Scalar translation_length(const Isometry2H<Scalar>& m) { return classify_isometry(m).translation_length; }

// Repelling endpoint first, attracting endpoint second.
template <typename Scalar>
GeodesicH<Scalar> axis_endpoints(const Isometry2H<Scalar>& m) {
    if (classify_isometry(m).kind != IsometryKind::hyperbolic)
        throw NotHyperbolic("axis_endpoints requires |trace| > 2");
    const Scalar inf = std::numeric_limits<Scalar>::infinity();
    Scalar a = m.a(), b = m.b(), c = m.c(), d = m.d();
    if (std::abs(c) <= kGeomTol<Scalar> * m.matrix().norm() * Scalar(1e-3)) {
        Scalar finite = b / (d - a);
        // z -> (a/d) z + b/d expands about the finite point when |a/d| > 1.
        if (std::abs(a) > std::abs(d))
            return GeodesicH<Scalar>(finite, inf);
        return GeodesicH<Scalar>(inf, finite);
    }
    Scalar disc = std::sqrt((a + d) * (a + d) - Scalar(4));
    Scalar r1 = ((a - d) + disc) / (Scalar(2) * c);
    Scalar r2 = ((a - d) - disc) / (Scalar(2) * c);
    // Multiplier at a fixed point z is 1 / (cz + d)^2.
    if (std::abs(c * r1 + d) > std::abs(c * r2 + d))
        return GeodesicH<Scalar>(r2, r1);
    return GeodesicH<Scalar>(r1, r2);
}

// Isometry taking geo.from() to 0 and geo.to() to infinity.
template <typename Scalar>
Isometry2H<Scalar> standardizing_isometry(const GeodesicH<Scalar>& geo) {
    Scalar p = geo.from(), q = geo.to();
    if (is_ideal_infinity(q))
        return Isometry2H<Scalar>::from_entries(1, -p, 0, 1);
    if (is_ideal_infinity(p))
        return Isometry2H<Scalar>::from_entries(0, -1, 1, -q);
    if (p > q)
        return Isometry2H<Scalar>::from_entries(1, -p, 1, -q);
    return Isometry2H<Scalar>::from_entries(-1, p, 1, -q);
}

template <typename Scalar>
Scalar distance_to_geodesic(const Point2H<Scalar>& p, const GeodesicH<Scalar>& geo) {
    auto z = standardizing_isometry(geo).apply(p.z());
    return std::asinh(std::abs(z.real()) / z.imag());
}

// Signed position of the orthogonal projection of p along geo (arclength from the point over i).
template <typename Scalar>
Scalar projection_parameter(const Point2H<Scalar>& p, const GeodesicH<Scalar>& geo) {
    auto z = standardizing_isometry(geo).apply(p.z());
    return std::log(std::abs(z));
}

template <typename Scalar>
Point2H<Scalar> project_to_geodesic(const Point2H<Scalar>& p, const GeodesicH<Scalar>& geo) {
    auto t = standardizing_isometry(geo);
    auto z = t.apply(p.z());
    return Point2H<Scalar>(t.inverse().apply(std::complex<Scalar>(0, std::abs(z))));
}

template <typename Scalar>
Scalar polyline_length(const std::vector<Point2H<Scalar>>& curve) {
    Scalar total = 0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        total += hyp_distance(curve[i - 1], curve[i]);
    return total;
}

template <typename Scalar>
Scalar cosh_lower_bound(Scalar d_pq, Scalar k) {
    if (d_pq < Scalar(0) || k < Scalar(0))
        throw PreconditionViolated("cosh_lower_bound arguments must be nonnegative");
    return d_pq * std::cosh(k);
}

template <typename Scalar>
std::pair<Scalar, Scalar> neutered_interval(Scalar d_h) {
    if (d_h < Scalar(0))
        throw PreconditionViolated("neutered_interval requires d_H >= 0");
    return {d_h, Scalar(2) * std::sinh(d_h / Scalar(2))};
}

template <typename Scalar>
Scalar horoball_detour(Scalar x) {
    if (x < Scalar(0))
        throw PreconditionViolated("horoball_detour requires x >= 0");
    return Scalar(2) * std::asinh(x / Scalar(2));
}

// Length of the horocyclic arc between two points of one horocycle based at infinity.
template <typename Scalar>
Scalar horocyclic_distance(const Point2H<Scalar>& p, const Point2H<Scalar>& q) {
    if (std::abs(p.y - q.y) > kGeomTol<Scalar> * p.y)
        throw PreconditionViolated("points are not on a common horizontal horocycle");
    return std::abs(p.x - q.x) / p.y;
}

template <typename Scalar>
struct CoshLemmaReport {
    bool holds;
    Scalar margin;          // length - bound
    Scalar relative_margin; // margin / bound (0 when bound is 0)
    Scalar length;
    Scalar bound;
    Scalar k;
    Scalar span;
};

// Curve endpoints at a common distance k from geo, every sample at distance >= k (up to slack).
template <typename Scalar>
CoshLemmaReport<Scalar> verify_cosh_lemma(const std::vector<Point2H<Scalar>>& curve, const GeodesicH<Scalar>& geo,
                                          Scalar slack = Scalar(0.01)) {
    if (curve.size() < 2)
        throw PreconditionViolated("curve needs at least two samples");
    Scalar k0 = distance_to_geodesic(curve.front(), geo);
    Scalar k1 = distance_to_geodesic(curve.back(), geo);
    if (std::abs(k0 - k1) > slack * std::max(k0, k1) + kGeomTol<Scalar>)
        throw PreconditionViolated("curve endpoints are not equidistant from the geodesic");
    Scalar k = std::min(k0, k1);
    for (const auto& p : curve)
        if (distance_to_geodesic(p, geo) < k * (Scalar(1) - slack) - kGeomTol<Scalar>)
            throw PreconditionViolated("curve comes closer to the geodesic than its endpoints");

    Scalar span = std::abs(projection_parameter(curve.back(), geo) - projection_parameter(curve.front(), geo));
    Scalar bound = cosh_lower_bound(span, k);
    Scalar length = polyline_length(curve);
    Scalar margin = length - bound;
    Scalar rel = bound > Scalar(0) ? margin / bound : Scalar(0);
    bool holds = margin >= -slack * bound - kGeomTol<Scalar>;
    return {holds, margin, rel, length, bound, k, span};
}

template <typename Scalar>
struct QuasiFit {
    Scalar k;
    Scalar c;
};

namespace detail {

template <typename Scalar>
void check_quasi_input(const std::vector<Point2H<Scalar>>& pts, const std::vector<Scalar>& arc) {
    if (pts.size() < 2 || pts.size() != arc.size())
        throw PreconditionViolated("quasigeodesic fit needs >= 2 samples with matching arclength tags");
    for (std::size_t i = 1; i < arc.size(); ++i)
        if (!(arc[i] > arc[i - 1]))
            throw PreconditionViolated("arclength tags must be strictly increasing");
    bool all_same = true;
    for (const auto& p : pts)
        all_same = all_same && hyp_distance(p, pts.front()) <= kGeomTol<Scalar>;
    if (all_same)
        throw DegenerateInput("all samples coincide");
}

} // namespace detail

// Smallest c making (k, c) valid on every sampled pair.
template <typename Scalar>
Scalar quasigeodesic_c_for_k(const std::vector<Point2H<Scalar>>& pts, const std::vector<Scalar>& arc, Scalar k) {
    detail::check_quasi_input(pts, arc);
    if (k < Scalar(1))
        throw PreconditionViolated("quasi-isometry constant k must be >= 1");
    Scalar c = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Scalar s = arc[j] - arc[i];
            Scalar d = hyp_distance(pts[i], pts[j]);
            c = std::max({c, s / k - d, d - k * s});
        }
    return c;
}

// Smallest k for which c = 0 suffices.
template <typename Scalar>
Scalar quasigeodesic_k_at_zero_c(const std::vector<Point2H<Scalar>>& pts, const std::vector<Scalar>& arc) {
    detail::check_quasi_input(pts, arc);
    Scalar k = 1;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Scalar s = arc[j] - arc[i];
            Scalar d = hyp_distance(pts[i], pts[j]);
            if (d <= Scalar(0))
                return std::numeric_limits<Scalar>::infinity();
            k = std::max({k, s / d, d / s});
        }
    return k;
}

// Lexicographic (min k, then min c) fit. Any k is feasible for large c, so k is always 1.
template <typename Scalar>
QuasiFit<Scalar> quasigeodesic_fit(const std::vector<Point2H<Scalar>>& pts, const std::vector<Scalar>& arc) {
    return {Scalar(1), quasigeodesic_c_for_k(pts, arc, Scalar(1))};
}

// Uses the polyline's own cumulative length as the arclength parameter.
template <typename Scalar>
QuasiFit<Scalar> quasigeodesic_fit(const std::vector<Point2H<Scalar>>& pts) {
    std::vector<Scalar> arc(pts.size(), Scalar(0));
    for (std::size_t i = 1; i < pts.size(); ++i)
        arc[i] = arc[i - 1] + hyp_distance(pts[i - 1], pts[i]);
    return quasigeodesic_fit(pts, arc);
}

} // namespace anosov
