#include "anosov/orbitspace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace anosov {

LiftedRep::LiftedRep(const SurfaceGroupRep& rep) : rep_(&rep) {
    for (Letter x : {a1, b1, a2, b2}) {
        DiskMat m = rep.disk_generator(x);
        alpha_[x] = m(0, 0);
        beta_[x] = m(0, 1);
        theta_[x] = std::arg(alpha_[x]);
        // Exact SU(1,1) inverse so that the two lifts compose to the identity.
        alpha_[inverse_letter(x)] = std::conj(m(0, 0));
        beta_[inverse_letter(x)] = -m(0, 1);
        theta_[inverse_letter(x)] = -theta_[x];
    }
}

double LiftedRep::letter_lift(Letter x, double angle) const {
    cplx q = 1.0 + (beta_[x] / alpha_[x]) * std::polar(1.0, -angle);
    return angle + 2 * theta_[x] + 2 * std::arg(q);
}

double LiftedRep::act(const CentralExtElement& g, double x, LeafSide) const {
    double y = x;
    for (auto it = g.base.letters.rbegin(); it != g.base.letters.rend(); ++it)
        y = letter_lift(*it, y);
    return y + kTwoPi * static_cast<double>(g.fiber);
}

namespace {

// Boundary angles in [0, 2pi) of the repelling and attracting fixed points.
std::pair<double, double> fixed_angles(const SurfaceGroupRep& rep, const Word& base) {
    auto g = rep.word_matrix(base);
    auto axis = axis_endpoints(g);
    auto angle = [](double x) {
        double a = std::arg(uhp_to_disk(cplx(x, 0.0)));
        return a < 0 ? a + kTwoPi : a;
    };
    return {angle(axis.from()), angle(axis.to())};
}

double refine_fixed(const LiftedRep& lr, const CentralExtElement& g, double x) {
    auto f = [&](double y) { return lr.act(g, y) - y; };
    for (double delta = 1e-7; delta <= 1e-3; delta *= 10) {
        double lo = x - delta, hi = x + delta;
        double flo = f(lo), fhi = f(hi);
        if ((flo < 0) == (fhi < 0))
            continue;
        for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
            double mid = 0.5 * (lo + hi);
            double fm = f(mid);
            if ((fm < 0) == (flo < 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }
    return x;
}

} // namespace

std::int64_t LiftedRep::matching_fiber(const Word& base) const {
    Word b = free_reduce(base);
    if (b.empty())
        throw NonIsolatedFixedSet("central elements have no isolated fixed leaves");
    double phi = fixed_angles(*rep_, b).second;
    double d = act(CentralExtElement(b, 0), phi) - phi;
    return -std::llround(d / kTwoPi);
}

const LiftedRep& genus2_lifted() {
    static const LiftedRep lr(genus2_rep());
    return lr;
}

double lifted_action(const LiftedRep& lr, const CentralExtElement& g, double x, LeafSide side) {
    return lr.act(g, x, side);
}

double lifted_action(const CentralExtElement& g, double x, LeafSide side) {
    return lifted_action(genus2_lifted(), g, x, side);
}

OrbitPoint act(const LiftedRep& lr, const CentralExtElement& g, const OrbitPoint& p) {
    return OrbitPoint(lr.act(g, p.s, LeafSide::stable), lr.act(g, p.u, LeafSide::unstable));
}

OrbitPoint eta_map(const OrbitPoint& p) { return OrbitPoint(p.u + kTwoPi, p.s); }

OrbitPoint eta_squared(const OrbitPoint& p) { return eta_map(eta_map(p)); }

std::vector<double> fixed_leaves(const LiftedRep& lr, const CentralExtElement& g, Window window) {
    if (g.base.empty())
        throw NonIsolatedFixedSet("central or trivial element fixes every leaf or none");
    if (!(window.hi > window.lo))
        throw PreconditionViolated("empty window");
    auto [pr, pa] = fixed_angles(lr.rep(), g.base);
    std::vector<double> out;
    for (double phi : {pr, pa}) {
        long k0 = static_cast<long>(std::floor((window.lo - phi) / kTwoPi)) - 1;
        long k1 = static_cast<long>(std::ceil((window.hi - phi) / kTwoPi)) + 1;
        for (long k = k0; k <= k1; ++k) {
            double x = phi + kTwoPi * static_cast<double>(k);
            if (std::abs(lr.act(g, x) - x) > 1.0)
                continue; // the lift is offset by a nonzero multiple of 2pi here
            double r = refine_fixed(lr, g, x);
            if (r >= window.lo && r < window.hi)
                out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<OrbitPoint> fixed_corners(const LiftedRep& lr, const CentralExtElement& g, Window window) {
    auto leaves = fixed_leaves(lr, g, {window.lo - kTwoPi, window.hi});
    std::vector<OrbitPoint> out;
    for (std::size_t i = 1; i < leaves.size(); ++i) {
        double s = leaves[i];
        if (s < window.lo)
            continue;
        double u = leaves[i - 1];
        if (s - kTwoPi < u && u < s)
            out.emplace_back(s, u);
    }
    return out;
}

std::vector<OrbitPoint> fixed_corners(const CentralExtElement& g, Window window) {
    return fixed_corners(genus2_lifted(), g, window);
}

LozengeChecks lozenge_checks(const OrbitPoint& p, const OrbitPoint& q) {
    const OrbitPoint& lo = p.s <= q.s ? p : q;
    const OrbitPoint& hi = p.s <= q.s ? q : p;
    auto near = [](double a, double b) { return std::abs(a - b) <= kOrbitTol * (1 + std::abs(a)); };
    LozengeChecks c{};
    if (near(lo.s, hi.s))
        return c;
    // The stable leaf of lo meets the unstable leaves in (lo.s - 2pi, lo.s).
    c.low_stable_ends_at_high_unstable = near(hi.u, lo.s);
    // The unstable leaf of lo meets the stable leaves in (lo.u, lo.u + 2pi).
    c.low_unstable_ends_at_high_stable = near(hi.s, lo.u + kTwoPi);
    // The stable leaf of hi meets the unstable leaves in (hi.s - 2pi, hi.s).
    c.high_stable_ends_at_low_unstable = near(lo.u, hi.s - kTwoPi);
    // The unstable leaf of hi meets the stable leaves in (hi.u, hi.u + 2pi).
    c.high_unstable_ends_at_low_stable = near(lo.s, hi.u);
    return c;
}

bool is_lozenge(const OrbitPoint& p, const OrbitPoint& q) { return lozenge_checks(p, q).all(); }

StringOfLozenges build_string(const LiftedRep& lr, const CentralExtElement& g, int count) {
    if (count < 1)
        throw PreconditionViolated("string needs at least one corner");
    auto leaves = fixed_leaves(lr, g, {0.0, kTwoPi * (count / 2 + 2)});
    if (static_cast<int>(leaves.size()) < count + 1)
        throw PreconditionViolated("element has no fixed leaves for this fiber");
    StringOfLozenges s;
    for (int i = 0; i < count; ++i)
        s.corners.emplace_back(leaves[i + 1], leaves[i]);
    for (int i = 0; i + 1 < count; ++i)
        s.lozenges.push_back({s.corners[i], s.corners[i + 1]});
    s.periodicity = Periodicity{CentralExtElement(Word{}, 1), 2};
    s.infinite = true;
    s.stabilizer = g;
    return s;
}

StringOfLozenges build_string(const CentralExtElement& g, int count) { return build_string(genus2_lifted(), g, count); }

StringCheck check_string_of_lozenges(const LiftedRep& lr, const StringOfLozenges& s) {
    StringCheck c;
    const auto& cs = s.corners;
    for (std::size_t i = 0; i + 1 < cs.size(); ++i)
        c.consecutive_lozenges = c.consecutive_lozenges && is_lozenge(cs[i], cs[i + 1]);
    // Repelling leaves of g are attracting for g^-1, where the residual is well conditioned.
    CentralExtElement inv(inverse(s.stabilizer.base), -s.stabilizer.fiber);
    auto defect = [&](double x) {
        return std::min(std::abs(lr.act(s.stabilizer, x) - x), std::abs(lr.act(inv, x) - x));
    };
    for (const auto& p : cs)
        c.max_fixed_defect = std::max({c.max_fixed_defect, defect(p.s), defect(p.u)});
    c.invariant = c.max_fixed_defect <= kOrbitTol;
    for (std::size_t i = 1; i + 1 < cs.size(); ++i)
        c.separation = c.separation && cs[i - 1].s < cs[i].s && cs[i].s < cs[i + 1].s;
    auto same = [](const OrbitPoint& a, const OrbitPoint& b) {
        return std::abs(a.s - b.s) <= kOrbitTol && std::abs(a.u - b.u) <= kOrbitTol;
    };
    for (const auto& p : cs) {
        int n = 0;
        for (const auto& l : s.lozenges)
            n += same(l.corner_low, p) + same(l.corner_high, p);
        c.corner_multiplicity = c.corner_multiplicity && n <= 2;
    }
    return c;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

int project_count(const LiftedRep& lr, const StringOfLozenges& s, const DeckAction& deck) {
    int n = static_cast<int>(s.corners.size());
    UnionFind uf(n);
    switch (deck.kind) {
    case DeckAction::Kind::trivial:
        break;
    case DeckAction::Kind::string_periodicity: {
        if (!s.periodicity) {
            if (s.infinite)
                throw MissingPeriodicity("infinite string without period data");
            break;
        }
        const auto& per = *s.periodicity;
        if (per.shift <= 0)
            throw PreconditionViolated("periodicity shift must be positive");
        for (int i = 0; i + per.shift < n; ++i) {
            OrbitPoint img = act(lr, per.h, s.corners[i]);
            const auto& tgt = s.corners[i + per.shift];
            if (std::abs(img.s - tgt.s) <= kOrbitTol && std::abs(img.u - tgt.u) <= kOrbitTol)
                uf.unite(i, i + per.shift);
        }
        break;
    }
    case DeckAction::Kind::shift:
        if (deck.shift_by <= 0)
            throw PreconditionViolated("deck shift must be positive");
        for (int i = 0; i + deck.shift_by < n; ++i)
            uf.unite(i, i + deck.shift_by);
        break;
    case DeckAction::Kind::pairs:
        for (auto [a, b] : deck.identified) {
            if (a < 0 || b < 0 || a >= n || b >= n)
                throw PreconditionViolated("deck identification refers to a missing corner");
            uf.unite(a, b);
        }
        break;
    }
    int roots = 0;
    for (int i = 0; i < n; ++i)
        roots += uf.find(i) == i;
    return roots;
}

int project_count(const StringOfLozenges& s, const DeckAction& deck) { return project_count(genus2_lifted(), s, deck); }

// ---- chain graphs ------------------------------------------------------------------------

std::string rule_name(ChainRule r) {
    switch (r) {
    case ChainRule::corner_degree_lemma: return "corner_degree_lemma";
    case ChainRule::shared_side_lemma: return "shared_side_lemma";
    case ChainRule::structure: return "structure";
    }
    return "structure";
}

namespace {

struct Indexed {
    std::map<int, int> index;
    std::vector<std::vector<int>> incident; // edge ids per vertex index
};

} // namespace

std::vector<Violation> validate_chain(const ChainGraph& c) {
    std::vector<Violation> out;
    auto structural = [&](std::string what, std::vector<int> vs = {}, std::vector<int> es = {}) {
        out.push_back({ChainRule::structure, std::move(what), std::move(vs), std::move(es)});
    };
    Indexed ix;
    for (int v : c.vertices) {
        if (ix.index.count(v))
            structural("duplicate vertex id", {v});
        else
            ix.index.emplace(v, static_cast<int>(ix.index.size()));
    }
    ix.incident.assign(ix.index.size(), {});
    bool edges_ok = true;
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
        auto [a, b] = c.edges[e];
        int ei = static_cast<int>(e);
        if (!ix.index.count(a) || !ix.index.count(b)) {
            structural("lozenge corner is not a vertex", {a, b}, {ei});
            edges_ok = false;
            continue;
        }
        if (a == b) {
            structural("lozenge with both corners at one vertex", {a}, {ei});
            edges_ok = false;
            continue;
        }
        ix.incident[ix.index[a]].push_back(ei);
        ix.incident[ix.index[b]].push_back(ei);
    }
    for (int m : c.marks)
        if (!ix.index.count(m))
            structural("mark on a missing vertex", {m});
    for (auto [a, b] : c.vertex_identifications)
        if (!ix.index.count(a) || !ix.index.count(b))
            structural("identification refers to a missing vertex", {a, b});
    for (auto [a, b] : c.edge_identifications)
        if (a < 0 || b < 0 || a >= static_cast<int>(c.edges.size()) || b >= static_cast<int>(c.edges.size()))
            structural("identification refers to a missing lozenge", {}, {a, b});

    std::vector<int> id_of(ix.index.size());
    for (auto [v, i] : ix.index)
        id_of[i] = v;
    auto other = [&](int e, int v) { return c.edges[e].first == v ? c.edges[e].second : c.edges[e].first; };
    auto marked = [&](int v) { return c.marks.count(v) > 0; };

    for (std::size_t i = 0; i < id_of.size(); ++i) {
        int v = id_of[i];
        const auto& inc = ix.incident[i];
        if (inc.size() > 4)
            structural("corner of more than four lozenges", {v}, inc);
        if (inc.size() >= 3) {
            std::vector<int> unmarked;
            for (int e : inc) {
                int w = other(e, v);
                if (!marked(w) && std::find(unmarked.begin(), unmarked.end(), w) == unmarked.end())
                    unmarked.push_back(w);
            }
            if (!unmarked.empty()) {
                std::sort(unmarked.begin(), unmarked.end());
                out.push_back({ChainRule::corner_degree_lemma,
                               "corner of " + std::to_string(inc.size()) +
                                   " lozenges needs its opposite corners on nonseparated leaves",
                               unmarked, inc});
            }
        }
    }

    if (!id_of.empty() && edges_ok) {
        std::vector<bool> seen(id_of.size(), false);
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int e : ix.incident[i]) {
                int j = ix.index[other(e, id_of[i])];
                if (!seen[j]) {
                    seen[j] = true;
                    stack.push_back(j);
                }
            }
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end())
            structural("chain graph is disconnected");
    }

    int ne = static_cast<int>(c.edges.size());
    for (auto [e, f] : c.side_sharing) {
        if (e < 0 || f < 0 || e >= ne || f >= ne || e == f) {
            structural("side-sharing pair refers to invalid lozenges", {}, {e, f});
            continue;
        }
        auto [a, b] = c.edges[e];
        auto [p, q] = c.edges[f];
        std::vector<int> shared;
        for (int v : {a, b})
            if (v == p || v == q)
                shared.push_back(v);
        if (shared.empty()) {
            structural("side-sharing lozenges have no common corner", {}, {e, f});
            continue;
        }
        std::vector<int> need;
        if (shared.size() == 1) {
            need = {other(e, shared[0]), other(f, shared[0])};
        } else {
            need = {a, b};
        }
        std::vector<int> unmarked;
        for (int v : need)
            if (!marked(v) && std::find(unmarked.begin(), unmarked.end(), v) == unmarked.end())
                unmarked.push_back(v);
        if (!unmarked.empty()) {
            std::sort(unmarked.begin(), unmarked.end());
            out.push_back({ChainRule::shared_side_lemma,
                           "lozenges sharing a side need their other corners on nonseparated leaves", unmarked,
                           {e, f}});
        }
    }
    return out;
}

Decomposition decompose_class(const ChainGraph& c) {
    auto violations = validate_chain(c);
    if (!violations.empty())
        throw InvalidChain("chain graph violates " + rule_name(violations.front().rule) + ": " +
                           violations.front().detail);
    std::map<int, std::vector<int>> adj;
    for (int v : c.vertices)
        adj[v];
    for (auto [a, b] : c.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    Decomposition d;
    for (int m : c.marks) {
        d.finite_part.insert(m);
        for (int w : adj[m])
            d.finite_part.insert(w);
    }
    std::set<int> done;
    auto free_nbrs = [&](int v) {
        std::vector<int> r;
        for (int w : adj[v])
            if (!d.finite_part.count(w))
                r.push_back(w);
        std::sort(r.begin(), r.end());
        return r;
    };
    for (auto& [v, _] : adj) {
        if (d.finite_part.count(v) || done.count(v))
            continue;
        // Collect the component.
        std::vector<int> comp;
        std::vector<int> stack{v};
        std::set<int> in_comp{v};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            comp.push_back(x);
            for (int w : free_nbrs(x))
                if (in_comp.insert(w).second)
                    stack.push_back(w);
        }
        std::size_t edge_count = 0;
        for (int x : comp)
            edge_count += free_nbrs(x).size();
        edge_count /= 2;
        ChainString s;
        s.closed = edge_count >= comp.size();
        int start = *std::min_element(comp.begin(), comp.end());
        if (!s.closed) {
            start = -1;
            for (int x : comp)
                if (free_nbrs(x).size() <= 1 && (start < 0 || x < start))
                    start = x;
        }
        int prev = -1, cur = start;
        while (true) {
            s.vertices.push_back(cur);
            done.insert(cur);
            int next = -1;
            for (int w : free_nbrs(cur))
                if (w != prev && !done.count(w)) {
                    next = w;
                    break;
                }
            if (next < 0)
                break;
            prev = cur;
            cur = next;
        }
        d.strings.push_back(std::move(s));
    }
    std::sort(d.strings.begin(), d.strings.end(),
              [](const ChainString& a, const ChainString& b) { return a.vertices.front() < b.vertices.front(); });
    return d;
}

} // namespace anosov
