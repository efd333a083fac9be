#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "anosov/error.hpp"
#include "anosov/fuchsian.hpp"
#include "anosov/word.hpp"

namespace anosov {

// ---- Skewed R-covered orbit-space model -------------------------------------------------
//
// Both leaf spaces are the universal cover R of the boundary circle of the disk, with the
// surface group acting by lifted boundary maps. The orbit space is the strip
// {(s, u) : s - 2pi < u < s}.

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kOrbitTol = 1e-9;

struct CentralExtElement {
    Word base;
    std::int64_t fiber = 0;

    CentralExtElement() = default;
    CentralExtElement(const Word& w, std::int64_t n) : base(free_reduce(w)), fiber(n) {}

    bool is_central() const { return base.empty(); }
};

enum class LeafSide { stable, unstable };

struct OrbitPoint {
    double s;
    double u;

    OrbitPoint(double s_, double u_) : s(s_), u(u_) {
        if (!(s - kTwoPi < u && u < s))
            throw PreconditionViolated("orbit point must satisfy s - 2pi < u < s");
    }
};

// Per-letter SU(1,1) data with a fixed branch of arg(alpha); inverse letters use -theta.
class LiftedRep {
  public:
    explicit LiftedRep(const SurfaceGroupRep& rep);

    const SurfaceGroupRep& rep() const { return *rep_; }
    double letter_lift(Letter x, double angle) const;
    // Lift of g acting on R; the side argument selects the leaf space (both carry the same action).
    double act(const CentralExtElement& g, double x, LeafSide side = LeafSide::stable) const;
    // Fiber making the lift of base fix the lifts of its boundary fixed points.
    std::int64_t matching_fiber(const Word& base) const;

  private:
    const SurfaceGroupRep* rep_;
    std::array<cplx, kAlphabetSize> alpha_;
    std::array<cplx, kAlphabetSize> beta_;
    std::array<double, kAlphabetSize> theta_;
};

const LiftedRep& genus2_lifted();

double lifted_action(const CentralExtElement& g, double x, LeafSide side);
double lifted_action(const LiftedRep& lr, const CentralExtElement& g, double x, LeafSide side);

OrbitPoint act(const LiftedRep& lr, const CentralExtElement& g, const OrbitPoint& p);
OrbitPoint eta_map(const OrbitPoint& p);
OrbitPoint eta_squared(const OrbitPoint& p);

struct Window {
    double lo = 0;
    double hi = 2 * kTwoPi;
};

// Fixed points of the lifted action of g in [lo, hi), each refined by bisection.
std::vector<double> fixed_leaves(const LiftedRep& lr, const CentralExtElement& g, Window window = {});
// Corners (s, u): s a fixed leaf in the window, u the next fixed leaf below s.
std::vector<OrbitPoint> fixed_corners(const LiftedRep& lr, const CentralExtElement& g, Window window = {});
std::vector<OrbitPoint> fixed_corners(const CentralExtElement& g, Window window = {});

struct LozengeChecks {
    bool low_stable_ends_at_high_unstable;
    bool low_unstable_ends_at_high_stable;
    bool high_stable_ends_at_low_unstable;
    bool high_unstable_ends_at_low_stable;

    bool all() const {
        return low_stable_ends_at_high_unstable && low_unstable_ends_at_high_stable &&
               high_stable_ends_at_low_unstable && high_unstable_ends_at_low_stable;
    }
};

// Half-leaf tests for the lozenge spanned by p and q (ordered by stable coordinate).
LozengeChecks lozenge_checks(const OrbitPoint& p, const OrbitPoint& q);
bool is_lozenge(const OrbitPoint& p, const OrbitPoint& q);

struct Lozenge {
    OrbitPoint corner_low;
    OrbitPoint corner_high;
};

struct Periodicity {
    CentralExtElement h;
    int shift = 0;
};

struct StringOfLozenges {
    std::vector<OrbitPoint> corners;
    std::vector<Lozenge> lozenges;
    std::optional<Periodicity> periodicity;
    bool infinite = false;
    CentralExtElement stabilizer;
};

StringOfLozenges build_string(const LiftedRep& lr, const CentralExtElement& g, int count);
StringOfLozenges build_string(const CentralExtElement& g, int count);

struct StringCheck {
    bool consecutive_lozenges = true;
    bool invariant = true;
    bool separation = true;
    bool corner_multiplicity = true;
    double max_fixed_defect = 0;

    bool ok() const { return consecutive_lozenges && invariant && separation && corner_multiplicity; }
};

StringCheck check_string_of_lozenges(const LiftedRep& lr, const StringOfLozenges& s);

struct DeckAction {
    enum class Kind { trivial, string_periodicity, shift, pairs };
    Kind kind = Kind::trivial;
    int shift_by = 0;
    std::vector<std::pair<int, int>> identified; // corner index pairs

    static DeckAction trivial() { return {}; }
    static DeckAction from_periodicity() { return {Kind::string_periodicity, 0, {}}; }
    static DeckAction shift(int k) { return {Kind::shift, k, {}}; }
    static DeckAction pairs(std::vector<std::pair<int, int>> p) { return {Kind::pairs, 0, std::move(p)}; }
};

int project_count(const LiftedRep& lr, const StringOfLozenges& s, const DeckAction& deck);
int project_count(const StringOfLozenges& s, const DeckAction& deck);

// ---- Abstract chain graphs ---------------------------------------------------------------

struct ChainGraph {
    std::vector<int> vertices;
    std::vector<std::pair<int, int>> edges;        // lozenge id = index
    std::vector<std::pair<int, int>> side_sharing; // pairs of lozenge ids
    std::set<int> marks;                           // corners on nonseparated leaves
    std::vector<std::pair<int, int>> vertex_identifications;
    std::vector<std::pair<int, int>> edge_identifications;
};

enum class ChainRule { corner_degree_lemma, shared_side_lemma, structure };

std::string rule_name(ChainRule r);

struct Violation {
    ChainRule rule;
    std::string detail;
    std::vector<int> vertices;
    std::vector<int> edges;
};

std::vector<Violation> validate_chain(const ChainGraph& c);

struct ChainString {
    std::vector<int> vertices;
    bool closed = false;
};

struct Decomposition {
    std::set<int> finite_part;
    std::vector<ChainString> strings;
};

// Throws InvalidChain when validate_chain reports violations.
Decomposition decompose_class(const ChainGraph& c);

} // namespace anosov
