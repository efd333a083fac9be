#include "anosov/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace anosov {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

DiskMat disk_identity() { return DiskMat::Identity(); }

DiskMat sl2_inverse(const DiskMat& m) {
    DiskMat r;
    r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return r;
}

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Disk isometry sending p to 0 and q onto the positive real axis.
DiskMat to_origin(cplx p, cplx q) {
    DiskMat t;
    t << 1.0, -p, -std::conj(p), 1.0;
    t /= std::sqrt(1.0 - std::norm(p));
    double phi = std::arg(disk_apply(t, q));
    DiskMat r;
    r << std::exp(-kI * (phi / 2)), 0.0, 0.0, std::exp(kI * (phi / 2));
    return r * t;
}

Isometry2H<double> from_disk(const DiskMat& d) {
    DiskMat c;
    c << 1.0, -kI, 1.0, kI;
    DiskMat ci;
    ci << kI, kI, -1.0, 1.0;
    ci /= (2.0 * kI);
    DiskMat u = ci * d * c;
    Mat2<double> m;
    m << u(0, 0).real(), u(0, 1).real(), u(1, 0).real(), u(1, 1).real();
    return Isometry2H<double>(m);
}

GeodesicH<double> geodesic_through(cplx z1, cplx z2) {
    const double inf = std::numeric_limits<double>::infinity();
    GeodesicH<double> g = [&] {
        if (std::abs(z1.real() - z2.real()) < 1e-14 * (1 + std::abs(z1)))
            return GeodesicH<double>(z1.real(), inf);
        double c = (std::norm(z1) - std::norm(z2)) / (2 * (z1.real() - z2.real()));
        double r = std::abs(z1 - c);
        return GeodesicH<double>(c - r, c + r);
    }();
    Point2H<double> p1(z1), p2(z2);
    if (projection_parameter(p1, g) > projection_parameter(p2, g))
        g = GeodesicH<double>(g.to(), g.from());
    return g;
}

bool matrices_close(const DiskMat& a, const DiskMat& b) {
    double scale = 1.0 + b.cwiseAbs().maxCoeff();
    return (a - b).cwiseAbs().maxCoeff() <= 1e-7 * scale || (a + b).cwiseAbs().maxCoeff() <= 1e-7 * scale;
}

// Boundary fixed points (repelling, attracting) of a hyperbolic disk isometry.
std::pair<cplx, cplx> disk_fixed_points(const DiskMat& q) {
    cplx al = q(0, 0), be = q(0, 1), ga = q(1, 0), de = q(1, 1);
    cplx tr = al + de;
    cplx disc = std::sqrt(tr * tr - 4.0 * (al * de - be * ga));
    cplx num = al - de;
    cplx s = (std::real(std::conj(num) * disc) >= 0) ? disc : -disc;
    cplx w1 = (num + s) / (2.0 * ga);
    cplx w2 = -be / (ga * w1);
    w1 /= std::abs(w1);
    w2 /= std::abs(w2);
    if (std::abs(ga * w1 + de) > std::abs(ga * w2 + de))
        return {w2, w1};
    return {w1, w2};
}

constexpr double kLineTol = 1e-9;

// Side through which the line er -> ea, pushed slightly to its left, leaves the octagon; -1 if it misses.
int exit_side(const std::array<cplx, 8>& k, cplx er, cplx ea) {
    cplx d = ea - er;
    double scale = std::abs(d);
    auto left = [&](cplx v) { return cross(d, v - er) > kLineTol * scale; };
    std::array<bool, 8> l;
    for (int i = 0; i < 8; ++i)
        l[i] = left(k[i]);
    for (int i = 0; i < 8; ++i)
        if (!l[i] && l[(i + 1) % 8])
            return i;
    return -1;
}

// Element k with k(w) in the closed fundamental domain (greedy Dirichlet reduction at 0).
DiskMat fold_element(const SurfaceGroupRep& rep, cplx& w) {
    DiskMat k = disk_identity();
    for (int iter = 0; iter < 100000; ++iter) {
        int best = -1;
        double best_abs = std::abs(w) - 1e-14;
        cplx best_w = w;
        for (Letter x = 0; x < kAlphabetSize; ++x) {
            cplx v = disk_apply(rep.disk_[x], w);
            if (std::abs(v) < best_abs) {
                best_abs = std::abs(v);
                best = x;
                best_w = v;
            }
        }
        if (best < 0)
            return k;
        w = best_w;
        k = rep.disk_[best] * k;
    }
    throw Error("fold did not terminate");
}

Word trace_cutting(const SurfaceGroupRep& rep, const DiskMat& p, double length) {
    auto [r, a] = disk_fixed_points(p);
    auto crosses = [&](const DiskMat& m) {
        cplx er = disk_apply(m, r), ea = disk_apply(m, a);
        return exit_side(rep.klein_vertices_, er / std::abs(er), ea / std::abs(ea)) >= 0;
    };
    DiskMat hinv = disk_identity();
    if (!crosses(hinv)) {
        cplx d = a - r;
        cplx foot = r + d * (std::real(std::conj(d) * (-r)) / std::norm(d));
        cplx w = klein_to_disk(foot);
        DiskMat k = fold_element(rep, w);
        bool found = crosses(k);
        if (found)
            hinv = k;
        for (std::size_t i = 0; !found && i < rep.near_tiles_inv_.size(); ++i) {
            DiskMat m = rep.near_tiles_inv_[i] * k;
            if (crosses(m)) {
                hinv = m;
                found = true;
            }
        }
        if (!found)
            throw Error("no tile meets the axis");
    }
    DiskMat q0 = hinv * p * sl2_inverse(hinv);
    DiskMat q = q0;
    DiskMat w = disk_identity();
    Word seq;
    int max_steps = 200 + static_cast<int>(60 * length);
    for (int step = 0; step < max_steps; ++step) {
        auto [er, ea] = disk_fixed_points(q);
        int s = exit_side(rep.klein_vertices_, er, ea);
        if (s < 0)
            throw Error("cutting sequence lost the axis");
        Letter x = rep.side_letter(s);
        seq.letters.push_back(x);
        w = w * rep.disk_[x];
        q = rep.disk_[inverse_letter(x)] * q * rep.disk_[x];
        if (matrices_close(w, q0))
            return seq;
    }
    throw Error("cutting sequence did not close up");
}

struct ClassTrace {
    Word id;
    bool inversion_symmetric;
};

ClassTrace class_trace(const SurfaceGroupRep& rep, const Mat2<double>& m) {
    auto g = Isometry2H<double>::from_sl2(m);
    auto cls = classify_isometry(g);
    if (cls.kind != IsometryKind::hyperbolic)
        throw NotHyperbolic("surface class needs a hyperbolic element");
    DiskMat p = to_disk(g);
    Word fwd = least_rotation(trace_cutting(rep, p, cls.translation_length));
    Word bwd = least_rotation(trace_cutting(rep, sl2_inverse(p), cls.translation_length));
    return {std::min(canonical_word(fwd), canonical_word(bwd)), fwd == bwd};
}

SurfaceGroupRep build_genus2() {
    SurfaceGroupRep rep;
    rep.genus = 2;
    double rc = std::acosh(std::pow(1.0 + std::sqrt(2.0), 2));
    rep.vertex_radius = rc;
    double rd = std::tanh(rc / 2);
    for (int k = 0; k < 8; ++k) {
        rep.disk_vertices_[k] = std::polar(rd, kPi / 8 + k * kPi / 4);
        rep.klein_vertices_[k] = disk_to_klein(rep.disk_vertices_[k]);
    }
    const auto& v = rep.disk_vertices_;
    // Maps side j + 2 onto side j, reversing boundary orientation.
    auto pair = [&](int j) {
        int s = j, sp = (j + 2) % 8;
        DiskMat from = to_origin(v[(sp + 1) % 8], v[sp]);
        DiskMat to = to_origin(v[s], v[(s + 1) % 8]);
        return from_disk(sl2_inverse(to) * from);
    };
    rep.generators[a1] = pair(0);
    rep.generators[b1] = pair(1).inverse();
    rep.generators[a2] = pair(4);
    rep.generators[b2] = pair(5).inverse();
    for (Letter x : {a1, b1, a2, b2})
        rep.generators[inverse_letter(x)] = rep.generators[x].inverse();
    for (Letter x = 0; x < kAlphabetSize; ++x)
        rep.disk_[x] = to_disk(rep.generators[x]);

    for (int k = 0; k < 8; ++k) {
        double mid = (k + 1) * kPi / 4;
        Letter best = 0;
        double best_err = 1e9;
        for (Letter x = 0; x < kAlphabetSize; ++x) {
            cplx img = disk_apply(rep.disk_[x], 0.0);
            double err = std::abs(std::remainder(std::arg(img) - mid, 2 * kPi));
            if (err < best_err) {
                best_err = err;
                best = x;
            }
        }
        if (best_err > 1e-9)
            throw Error("side pairing does not match the octagon");
        rep.fundamental_domain.push_back(DomainSide{v[k], v[(k + 1) % 8],
                                                    geodesic_through(disk_to_uhp(v[k]), disk_to_uhp(v[(k + 1) % 8])),
                                                    best});
    }

    // Reduced words of length 1..4, shortest first.
    std::vector<std::pair<Word, DiskMat>> layer{{Word{}, disk_identity()}};
    for (int len = 1; len <= 4; ++len) {
        std::vector<std::pair<Word, DiskMat>> next;
        for (const auto& [w, m] : layer)
            for (Letter x = 0; x < kAlphabetSize; ++x) {
                if (!w.empty() && x == inverse_letter(w.letters.back()))
                    continue;
                Word u = w;
                u.letters.push_back(x);
                next.emplace_back(u, m * rep.disk_[x]);
            }
        for (const auto& [w, m] : next)
            rep.near_tiles_inv_.push_back(sl2_inverse(m));
        layer = std::move(next);
    }

    rep.winding5_.assign(1 << 15, false);
    for (int code = 0; code < (1 << 15); ++code) {
        std::array<Letter, 5> u;
        bool reduced = true;
        for (int i = 0; i < 5; ++i) {
            u[i] = static_cast<Letter>((code >> (3 * (4 - i))) & 7);
            if (i > 0 && u[i] == inverse_letter(u[i - 1]))
                reduced = false;
        }
        if (!reduced)
            continue;
        std::array<DiskMat, 5> prefix;
        DiskMat m = disk_identity();
        for (int i = 0; i < 5; ++i)
            prefix[i] = m = m * rep.disk_[u[i]];
        for (int j = 0; j < 8 && !rep.winding5_[code]; ++j) {
            bool shared = true;
            for (int i = 0; i < 5 && shared; ++i) {
                bool has = false;
                for (int l = 0; l < 8 && !has; ++l)
                    has = std::abs(disk_apply(prefix[i], v[l]) - v[j]) < 1e-7;
                shared = has;
            }
            if (shared)
                rep.winding5_[code] = true;
        }
    }
    return rep;
}

} // namespace

cplx uhp_to_disk(cplx z) {
    if (std::isinf(z.real()) || std::isinf(z.imag()))
        return 1.0;
    return (z - kI) / (z + kI);
}

cplx disk_to_uhp(cplx w) { return kI * (1.0 + w) / (1.0 - w); }

DiskMat to_disk(const Isometry2H<double>& m) {
    DiskMat c;
    c << 1.0, -kI, 1.0, kI;
    DiskMat ci;
    ci << kI, kI, -1.0, 1.0;
    ci /= (2.0 * kI);
    return c * m.matrix().cast<cplx>() * ci;
}

cplx disk_apply(const DiskMat& m, cplx w) { return (m(0, 0) * w + m(0, 1)) / (m(1, 0) * w + m(1, 1)); }

cplx disk_to_klein(cplx w) { return 2.0 * w / (1.0 + std::norm(w)); }

cplx klein_to_disk(cplx k) { return k / (1.0 + std::sqrt(std::max(0.0, 1.0 - std::norm(k)))); }

Isometry2H<double> SurfaceGroupRep::word_matrix(const Word& w) const {
    Mat2<double> m = Mat2<double>::Identity();
    for (Letter x : w.letters)
        m = m * generators[x].matrix();
    return Isometry2H<double>::from_sl2(m);
}

double SurfaceGroupRep::relator_defect() const {
    return word_matrix(Word{a1, b1, A1, B1, a2, b2, A2, B2}).defect_from_identity();
}

const SurfaceGroupRep& genus2_rep() {
    static const SurfaceGroupRep rep = build_genus2();
    return rep;
}

ConjClass canonical_conjugacy(const SurfaceGroupRep& rep, const Word& w) {
    Word c = canonical_word(w);
    if (c.empty())
        throw TrivialWord("word reduces to the identity");
    return {c, translation_length(rep.word_matrix(c))};
}

ConjClass canonical_conjugacy(const Word& w) { return canonical_conjugacy(genus2_rep(), w); }

Word cutting_sequence(const SurfaceGroupRep& rep, const Word& w) {
    Word c = cyclic_reduce(w);
    if (c.empty())
        throw TrivialWord("word reduces to the identity");
    auto g = rep.word_matrix(c);
    auto cls = classify_isometry(g);
    if (cls.kind != IsometryKind::hyperbolic)
        throw NotHyperbolic("cutting sequence needs a hyperbolic element");
    return least_rotation(trace_cutting(rep, to_disk(g), cls.translation_length));
}

ConjClass surface_class(const SurfaceGroupRep& rep, const Word& w) {
    Word c = cyclic_reduce(w);
    if (c.empty())
        throw TrivialWord("word reduces to the identity");
    auto tr = class_trace(rep, rep.word_matrix(c).matrix());
    return {tr.id, translation_length(rep.word_matrix(tr.id))};
}

bool is_inversion_symmetric(const SurfaceGroupRep& rep, const Word& w) {
    Word c = cyclic_reduce(w);
    if (c.empty())
        throw TrivialWord("word reduces to the identity");
    return class_trace(rep, rep.word_matrix(c).matrix()).inversion_symmetric;
}

namespace {

class SpectrumSearch {
  public:
    SpectrumSearch(const SurfaceGroupRep& rep, double t, const SpectrumOptions& opts)
        : rep_(rep), t_(t), opts_(opts) {
        for (Letter x = 0; x < kAlphabetSize; ++x)
            allowed_[x] = ((opts.alphabet_mask >> x) & 1) || ((opts.alphabet_mask >> inverse_letter(x)) & 1);
        geometric_ = std::all_of(allowed_.begin(), allowed_.end(), [](bool b) { return b; });
        if (!geometric_ && opts.max_word_length <= 0)
            throw PreconditionViolated("free-subgroup enumeration needs max_word_length");
        trace_cap_ = 2 * std::cosh(t / 2);
        // A cutting-sequence prefix stays within t + 2 * (vertex radius) of the center.
        double reach = t + 2 * rep.vertex_radius + 1e-6;
        norm_cap_ = 2 * std::cosh(reach);
        max_len_ = opts.max_word_length > 0 ? opts.max_word_length : 1 << 20;
        word_.reserve(64);
    }

    Spectrum run() {
        spec_.cutoff = t_;
        Mat2<double> id = Mat2<double>::Identity();
        dfs(id, 0);
        finish(spec_);
        return std::move(spec_);
    }

  private:
    static void finish(Spectrum& s) {
        // Lengths agreeing to 1e-9 count as equal so that multiplicities sort by word.
        auto key = [](double len) { return std::llround(len * 1e9); };
        std::sort(s.entries.begin(), s.entries.end(), [&](const SpectrumEntry& x, const SpectrumEntry& y) {
            if (key(x.length) != key(y.length))
                return key(x.length) < key(y.length);
            return x.cls.canonical < y.cls.canonical;
        });
    }

    void dfs(const Mat2<double>& m, int per) {
        std::size_t depth = word_.size();
        for (Letter c = 0; c < kAlphabetSize; ++c) {
            if (!allowed_[c])
                continue;
            int next_per;
            if (depth == 0) {
                if (inverse_letter(c) < c)
                    continue;
                next_per = 1;
            } else {
                if (c == inverse_letter(word_.back()) || inverse_letter(c) < word_[0])
                    continue;
                Letter ref = word_[depth - per];
                if (c < ref)
                    continue;
                next_per = c == ref ? per : static_cast<int>(depth) + 1;
            }
            if (geometric_ && depth >= 4) {
                int code = 0;
                for (std::size_t i = depth - 4; i < depth; ++i)
                    code = code * 8 + word_[i];
                code = code * 8 + c;
                if (rep_.winding5_[code])
                    continue;
            }
            Mat2<double> mc = m * rep_.generators[c].matrix();
            if (geometric_ && mc.squaredNorm() >= norm_cap_)
                continue;
            if (opts_.node_budget > 0 && spec_.stats.nodes >= opts_.node_budget) {
                finish(spec_);
                spec_.authoritative = false;
                throw BudgetExceeded("spectrum enumeration exceeded the node budget", spec_);
            }
            ++spec_.stats.nodes;
            word_.push_back(c);
            std::size_t n = word_.size();
            if (n % next_per == 0 && c != inverse_letter(word_[0]))
                consider(mc);
            if (static_cast<int>(n) < max_len_)
                dfs(mc, next_per);
            word_.pop_back();
        }
    }

    void consider(const Mat2<double>& m) {
        double tr = std::abs(m.trace());
        if (!(tr > 2 + kGeomTol<double>) || !(tr < trace_cap_))
            return;
        Word w(word_);
        if (least_rotation(inverse(w)) < w)
            return;
        ++spec_.stats.candidates;
        SpectrumEntry e;
        if (geometric_) {
            ++spec_.stats.traced;
            auto tr_info = class_trace(rep_, m);
            if (tr_info.id != w)
                return;
            e.inversion_symmetric = tr_info.inversion_symmetric;
        } else {
            e.inversion_symmetric = least_rotation(inverse(w)) == w;
        }
        double len = 2 * std::acosh(tr / 2);
        if (!(len < t_))
            return;
        e.cls = ConjClass{w, len};
        e.length = len;
        e.primitive = is_primitive_power(w);
        spec_.entries.push_back(std::move(e));
    }

    const SurfaceGroupRep& rep_;
    double t_;
    SpectrumOptions opts_;
    bool geometric_ = true;
    double trace_cap_ = 0;
    double norm_cap_ = 0;
    int max_len_ = 0;
    std::array<bool, kAlphabetSize> allowed_{};
    std::vector<Letter> word_;
    Spectrum spec_;
};

} // namespace

Spectrum length_spectrum(const SurfaceGroupRep& rep, double t, const SpectrumOptions& opts) {
    if (!(t > 0))
        throw PreconditionViolated("length_spectrum requires t > 0");
    return SpectrumSearch(rep, t, opts).run();
}

double systole(const Spectrum& spec) {
    return spec.entries.empty() ? std::numeric_limits<double>::infinity() : spec.entries.front().length;
}

double log_slope(const std::vector<double>& grid, const std::vector<std::uint64_t>& counts, double lo, double hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < lo - 1e-12 || grid[i] > hi + 1e-12 || counts[i] == 0)
            continue;
        double x = grid[i], y = std::log(static_cast<double>(counts[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    double den = n * sxx - sx * sx;
    if (n < 2 || den <= 0)
        return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / den;
}

CountReport count_report(const Spectrum& spec, const std::vector<double>& grid) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw PreconditionViolated("count grid must be increasing");
        if (grid[i] > spec.cutoff + 1e-12)
            throw PreconditionViolated("count grid exceeds the spectrum cutoff");
    }
    CountReport r;
    r.grid = grid;
    r.N.assign(grid.size(), 0);
    r.CCl.assign(grid.size(), 0);
    for (const auto& e : spec.entries) {
        if (e.inversion_symmetric)
            ++r.inversion_symmetric;
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (e.length < grid[i]) {
                r.CCl[i] += 1;
                r.N[i] += e.inversion_symmetric ? 1 : 2;
            }
    }
    if (!grid.empty()) {
        double lo = grid[grid.size() / 2], hi = grid.back();
        r.slope = log_slope(grid, r.N, lo, hi);
        r.slope_ccl = log_slope(grid, r.CCl, lo, hi);
    }
    for (std::size_t i = 0; i < grid.size(); ++i)
        r.sandwich_ok = r.sandwich_ok && r.CCl[i] <= r.N[i];
    return r;
}

namespace {

struct Hyperboloid {
    double t, x, y;
};

Hyperboloid lift(cplx k) {
    double s = 1.0 / std::sqrt(1.0 - std::norm(k));
    return {s, s * k.real(), s * k.imag()};
}

double cosh_dist(cplx p, cplx q) {
    return (1.0 - (p.real() * q.real() + p.imag() * q.imag())) / std::sqrt((1.0 - std::norm(p)) * (1.0 - std::norm(q)));
}

cplx klein_midpoint(cplx p, cplx q) {
    Hyperboloid a = lift(p), b = lift(q);
    return {(a.x + b.x) / (a.t + b.t), (a.y + b.y) / (a.t + b.t)};
}

double triangle_area(const std::array<cplx, 3>& v) {
    double ca = cosh_dist(v[1], v[2]), cb = cosh_dist(v[0], v[2]), cc = cosh_dist(v[0], v[1]);
    auto angle = [](double opp, double s1, double s2) {
        double sh1 = std::sqrt(std::max(0.0, s1 * s1 - 1)), sh2 = std::sqrt(std::max(0.0, s2 * s2 - 1));
        double c = (s1 * s2 - opp) / (sh1 * sh2);
        return std::acos(std::clamp(c, -1.0, 1.0));
    };
    return kPi - angle(ca, cb, cc) - angle(cb, ca, cc) - angle(cc, ca, cb);
}

void subdivide(const std::array<cplx, 3>& t, int levels, std::vector<Cell>& out) {
    if (levels == 0) {
        out.push_back({t, triangle_area(t)});
        return;
    }
    cplx ab = klein_midpoint(t[0], t[1]), bc = klein_midpoint(t[1], t[2]), ca = klein_midpoint(t[2], t[0]);
    subdivide({t[0], ab, ca}, levels - 1, out);
    subdivide({ab, t[1], bc}, levels - 1, out);
    subdivide({ca, bc, t[2]}, levels - 1, out);
    subdivide({ab, bc, ca}, levels - 1, out);
}

} // namespace

int CellPartition::locate(cplx k) const {
    int best = -1;
    double best_slack = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& v = cells[i].klein;
        double orient = cross(v[1] - v[0], v[2] - v[0]) > 0 ? 1.0 : -1.0;
        double s = std::min({orient * cross(v[1] - v[0], k - v[0]), orient * cross(v[2] - v[1], k - v[1]),
                             orient * cross(v[0] - v[2], k - v[2])});
        if (s >= 0)
            return static_cast<int>(i);
        if (s > best_slack) {
            best_slack = s;
            best = static_cast<int>(i);
        }
    }
    return best_slack > -1e-9 ? best : -1;
}

std::vector<double> CellPartition::normalized_areas() const {
    std::vector<double> p;
    p.reserve(cells.size());
    for (const auto& c : cells)
        p.push_back(c.area / total_area);
    return p;
}

CellPartition octagon_cells(const SurfaceGroupRep& rep, int levels) {
    if (levels < 0)
        throw PreconditionViolated("subdivision level must be nonnegative");
    CellPartition part;
    const auto& k = rep.klein_vertices_;
    for (int s = 0; s < 8; ++s) {
        cplx m = (k[s] + k[(s + 1) % 8]) / 2.0;
        subdivide({cplx(0.0), k[s], m}, levels, part.cells);
        subdivide({cplx(0.0), m, k[(s + 1) % 8]}, levels, part.cells);
    }
    for (const auto& c : part.cells)
        part.total_area += c.area;
    return part;
}

cplx fold_to_domain(const SurfaceGroupRep& rep, cplx w) {
    fold_element(rep, w);
    return w;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size())
        throw PreconditionViolated("distributions have different supports");
    double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        s += std::abs(p[i] - q[i]);
    return s / 2;
}

std::vector<double> geodesic_histogram(const SurfaceGroupRep& rep, const std::vector<Word>& geodesics,
                                       const CellPartition& cells, double sample_spacing, std::uint64_t* samples) {
    if (!(sample_spacing > 0))
        throw PreconditionViolated("sample spacing must be positive");
    std::vector<double> hist(cells.cells.size(), 0.0);
    std::uint64_t total = 0;
    const Point2H<double> center(0.0, 1.0);
    for (const auto& w : geodesics) {
        auto g = rep.word_matrix(w);
        auto cls = classify_isometry(g);
        if (cls.kind != IsometryKind::hyperbolic)
            throw NotHyperbolic("geodesic histogram needs hyperbolic classes");
        auto axis = axis_endpoints(g);
        auto std_map = standardizing_isometry(axis);
        auto back = std_map.inverse();
        double tau0 = projection_parameter(center, axis);
        int n = std::max(1, static_cast<int>(std::lround(cls.translation_length / sample_spacing)));
        double step = cls.translation_length / n;
        DiskMat k = disk_identity();
        for (int j = 0; j < n; ++j) {
            double tau = tau0 + (j + 0.5) * step;
            cplx z = back.apply(cplx(0.0, std::exp(tau)));
            cplx wd = disk_apply(k, uhp_to_disk(z));
            k = fold_element(rep, wd) * k;
            int idx = cells.locate(disk_to_klein(wd));
            if (idx < 0)
                throw Error("folded sample fell outside the cell partition");
            hist[idx] += 1;
            ++total;
        }
    }
    if (total > 0)
        for (auto& h : hist)
            h /= static_cast<double>(total);
    if (samples)
        *samples = total;
    return hist;
}

EquidistributionResult equidistribution_test(const SurfaceGroupRep& rep, const Spectrum& spec,
                                             const CellPartition& cells, double t, double sample_spacing) {
    if (t > spec.cutoff + 1e-12)
        throw PreconditionViolated("equidistribution cutoff exceeds the spectrum cutoff");
    std::vector<Word> words;
    for (const auto& e : spec.entries)
        if (e.length < t)
            words.push_back(e.cls.canonical);
    if (words.empty())
        throw EmptySpectrum("no closed geodesic below the cutoff");
    EquidistributionResult r;
    r.histogram = geodesic_histogram(rep, words, cells, sample_spacing, &r.samples);
    r.geodesics = words.size();
    r.tv_distance = total_variation(r.histogram, cells.normalized_areas());
    return r;
}

} // namespace anosov
