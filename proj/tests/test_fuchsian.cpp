#include <gtest/gtest.h>

#include <map>
#include <numbers>
#include <random>
#include <set>

#include "anosov/fuchsian.hpp"

using namespace anosov;

namespace {

const SurfaceGroupRep& rep() { return genus2_rep(); }

Word random_word(std::mt19937_64& rng, int min_len, int max_len) {
    std::uniform_int_distribution<int> len(min_len, max_len), let(0, kAlphabetSize - 1);
    Word w;
    int n = len(rng);
    for (int i = 0; i < n; ++i)
        w.letters.push_back(static_cast<Letter>(let(rng)));
    return w;
}

Word hyperbolic_word(std::mt19937_64& rng, int max_len) {
    for (;;) {
        Word w = cyclic_reduce(random_word(rng, 1, max_len));
        if (!w.empty() && classify_isometry(rep().word_matrix(w)).kind == IsometryKind::hyperbolic)
            return w;
    }
}

const Word kRelator = parse_word("a1b1A1B1a2b2A2B2");

// All group elements whose matrices satisfy |M|_F^2 < cap, found breadth first and deduplicated by
// their rounded projective matrix.
std::set<Word> ball_oracle(double t) {
    double cap = 2 * std::cosh(t + 2 * rep().vertex_radius + 0.01);
    auto key = [](const Mat2<double>& m) {
        Mat2<double> n = m;
        if (n.trace() < -1e-9 || (std::abs(n.trace()) <= 1e-9 && (n(0, 1) < 0 || (n(0, 1) == 0 && n(1, 0) < 0))))
            n = -n;
        return std::array<long long, 4>{std::llround(n(0, 0) * 1e6), std::llround(n(0, 1) * 1e6),
                                        std::llround(n(1, 0) * 1e6), std::llround(n(1, 1) * 1e6)};
    };
    std::map<std::array<long long, 4>, Word> seen;
    std::vector<std::pair<Word, Mat2<double>>> frontier{{Word{}, Mat2<double>::Identity()}};
    seen[key(frontier[0].second)] = Word{};
    while (!frontier.empty()) {
        std::vector<std::pair<Word, Mat2<double>>> next;
        for (auto& [w, m] : frontier)
            for (Letter x = 0; x < kAlphabetSize; ++x) {
                Mat2<double> mm = m * rep().generators[x].matrix();
                if (mm.squaredNorm() >= cap)
                    continue;
                auto k = key(mm);
                if (seen.count(k))
                    continue;
                Word u = w;
                u.letters.push_back(x);
                seen[k] = u;
                next.push_back({u, mm});
            }
        frontier.swap(next);
    }
    std::set<Word> ids;
    for (auto& [k, w] : seen) {
        if (w.empty())
            continue;
        auto c = classify_isometry(rep().word_matrix(w));
        if (c.kind == IsometryKind::hyperbolic && c.translation_length < t)
            ids.insert(surface_class(rep(), w).canonical);
    }
    return ids;
}

std::set<Word> spectrum_ids(const Spectrum& s) {
    std::set<Word> out;
    for (const auto& e : s.entries)
        out.insert(e.cls.canonical);
    return out;
}

} // namespace

TEST(Genus2, RelatorAndGenerators) {
    EXPECT_LE(rep().relator_defect(), 1e-8);
    Mat2<double> r = rep().word_matrix(kRelator).matrix();
    EXPECT_LE(std::min((r - Mat2<double>::Identity()).cwiseAbs().maxCoeff(),
                       (r + Mat2<double>::Identity()).cwiseAbs().maxCoeff()),
              1e-8);
    double l = translation_length(rep().generators[a1]);
    std::set<std::pair<long long, long long>> axes;
    for (Letter x = 0; x < kAlphabetSize; ++x) {
        EXPECT_EQ(classify_isometry(rep().generators[x]).kind, IsometryKind::hyperbolic);
        EXPECT_NEAR(translation_length(rep().generators[x]), l, 1e-10);
        EXPECT_LE((rep().generators[x] * rep().generators[inverse_letter(x)]).defect_from_identity(), 1e-10);
        if (x % 2 == 0) {
            auto ax = axis_endpoints(rep().generators[x]);
            auto lo = std::min(ax.from(), ax.to()), hi = std::max(ax.from(), ax.to());
            axes.insert({std::llround(lo * 1e6), std::isinf(hi) ? 0 : std::llround(hi * 1e6)});
        }
    }
    EXPECT_EQ(axes.size(), 4u);
    EXPECT_EQ(rep().fundamental_domain.size(), 8u);
}

TEST(Genus2, SidePairingMapsDomainToNeighbour) {
    // g = side_letter(k) carries the paired side onto side k; the image of the center
    // lies across side k, at twice the inradius, where cosh(inradius) = cos(pi/8) / sin(pi/8).
    double inradius = std::acosh(1 / std::tan(std::numbers::pi / 8));
    EXPECT_NEAR(std::cosh(rep().vertex_radius), std::pow(1 / std::tan(std::numbers::pi / 8), 2), 1e-9);
    for (int k = 0; k < 8; ++k) {
        Letter x = rep().side_letter(k);
        cplx c = disk_apply(rep().disk_generator(x), 0);
        EXPECT_NEAR(2 * std::atanh(std::abs(c)), 2 * inradius, 1e-9);
        cplx mid = 0.5 * (rep().fundamental_domain[k].start + rep().fundamental_domain[k].end);
        EXPECT_GT(std::real(c * std::conj(mid)), 0);
    }
}

TEST(Canonical, WordLevelExamples) {
    EXPECT_EQ(canonical_conjugacy(parse_word("a1b1A1")).canonical, parse_word("b1"));
    EXPECT_EQ(canonical_conjugacy(parse_word("a1b1")), canonical_conjugacy(parse_word("b1a1")));
    EXPECT_EQ(canonical_conjugacy(parse_word("a1b1")), canonical_conjugacy(parse_word("B1A1")));
    EXPECT_THROW(canonical_conjugacy(parse_word("a1A1")), TrivialWord);
    EXPECT_THROW(surface_class(rep(), parse_word("b2B2")), TrivialWord);
}

TEST(Canonical, WordLevelLengthMatchesMatrix) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        Word w = hyperbolic_word(rng, 10);
        ConjClass c = canonical_conjugacy(rep(), w);
        EXPECT_NEAR(c.length, translation_length(rep().word_matrix(c.canonical)), 1e-8);
        EXPECT_EQ(canonical_conjugacy(rep(), c.canonical), c);
    }
}

TEST(SurfaceClass, ClassFunction) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 300; ++i) {
        Word w = hyperbolic_word(rng, 8);
        ConjClass c = surface_class(rep(), w);
        Word u = random_word(rng, 0, 5);
        EXPECT_EQ(surface_class(rep(), concat(concat(u, w), inverse(u))), c);
        EXPECT_EQ(surface_class(rep(), inverse(w)), c);
        EXPECT_EQ(surface_class(rep(), c.canonical), c);
        EXPECT_NEAR(c.length, translation_length(rep().word_matrix(w)), 1e-8);
        EXPECT_NEAR(c.length, translation_length(rep().word_matrix(c.canonical)), 1e-8);
    }
}

TEST(SurfaceClass, RelatorInsertionGivesTheSameElement) {
    // Independent of any word combinatorics: inserting a rotation of the relator anywhere
    // leaves the group element unchanged.
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        Word w = hyperbolic_word(rng, 7);
        std::size_t at = rng() % (w.size() + 1), rot = rng() % kRelator.size();
        Word r = rotate(kRelator, rot);
        if (rng() % 2)
            r = inverse(r);
        Word v(std::vector<Letter>(w.letters.begin(), w.letters.begin() + at));
        v = concat(concat(v, r), Word(std::vector<Letter>(w.letters.begin() + at, w.letters.end())));
        EXPECT_EQ(surface_class(rep(), v), surface_class(rep(), w)) << format_word(w) << " vs " << format_word(v);
    }
}

TEST(SurfaceClass, CanonicalIsCyclicallyReducedAndMinimal) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        Word c = surface_class(rep(), hyperbolic_word(rng, 9)).canonical;
        EXPECT_TRUE(is_cyclically_reduced(c));
        EXPECT_EQ(least_rotation(c), c);
        EXPECT_LE(c, least_rotation(inverse(c)));
    }
}

TEST(Spectrum, BelowSystoleIsEmpty) {
    auto s = length_spectrum(rep(), 1.0);
    EXPECT_TRUE(s.entries.empty());
    EXPECT_TRUE(s.authoritative);
    EXPECT_THROW(length_spectrum(rep(), 0.0), PreconditionViolated);
}

TEST(Spectrum, SystoleContainsTheGeneratorClasses) {
    double l = translation_length(rep().generators[a1]);
    auto s = length_spectrum(rep(), l + 1e-6);
    ASSERT_FALSE(s.entries.empty());
    EXPECT_NEAR(systole(s), l, 1e-9);
    auto ids = spectrum_ids(s);
    for (Letter x : {a1, b1, a2, b2})
        EXPECT_TRUE(ids.count(surface_class(rep(), Word{x}).canonical)) << int(x);
    for (const auto& e : s.entries)
        EXPECT_NEAR(e.length, l, 1e-9);
}

TEST(Spectrum, SortedUniqueAndBelowCutoff) {
    auto s = length_spectrum(rep(), 8.0);
    std::set<Word> seen;
    std::mt19937_64 rng(5);
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        const auto& e = s.entries[i];
        EXPECT_LT(e.length, 8.0);
        if (i > 0) {
            EXPECT_LE(s.entries[i - 1].length, e.length + 1e-9);
        }
        EXPECT_TRUE(seen.insert(e.cls.canonical).second);
        // The length of a random conjugate.
        Word u = random_word(rng, 0, 5);
        Word g = concat(concat(u, e.cls.canonical), inverse(u));
        EXPECT_NEAR(translation_length(rep().word_matrix(g)), e.length, 1e-7);
        EXPECT_EQ(surface_class(rep(), e.cls.canonical).canonical, e.cls.canonical);
    }
}

TEST(Spectrum, MatchesOrbitBallOracle) {
    for (double t : {6.0, 7.5}) {
        auto s = length_spectrum(rep(), t);
        auto oracle = ball_oracle(t);
        EXPECT_EQ(spectrum_ids(s), oracle) << "t = " << t;
        EXPECT_EQ(s.entries.size(), oracle.size());
    }
}

TEST(Spectrum, FreeSubgroupMatchesBruteForce) {
    // <a1, b1> up to word length 8: every cyclically reduced word, deduplicated by rotation and inversion.
    const int L = 8;
    const double t = 40;
    std::set<Word> oracle;
    std::vector<Letter> letters{a1, A1, b1, B1};
    for (int n = 1; n <= L; ++n) {
        std::vector<int> idx(n, 0);
        for (;;) {
            Word w;
            for (int i : idx)
                w.letters.push_back(letters[i]);
            if (is_cyclically_reduced(w) && translation_length(rep().word_matrix(w)) < t)
                oracle.insert(canonical_word(w));
            int k = n - 1;
            while (k >= 0 && ++idx[k] == 4)
                idx[k--] = 0;
            if (k < 0)
                break;
        }
    }
    SpectrumOptions o;
    o.alphabet_mask = (1 << a1) | (1 << b1);
    o.max_word_length = L;
    auto s = length_spectrum(rep(), t, o);
    EXPECT_EQ(spectrum_ids(s), oracle);
    EXPECT_EQ(s.entries.size(), oracle.size());
    o.max_word_length = 0;
    EXPECT_THROW(length_spectrum(rep(), t, o), PreconditionViolated);
}

TEST(Spectrum, BudgetExceededCarriesPartialResult) {
    SpectrumOptions o;
    o.node_budget = 2000;
    try {
        length_spectrum(rep(), 10.0, o);
        FAIL() << "expected BudgetExceeded";
    } catch (const BudgetExceeded& e) {
        EXPECT_FALSE(e.partial.authoritative);
        EXPECT_LE(e.partial.stats.nodes, 2000u);
        auto full = spectrum_ids(length_spectrum(rep(), 10.0));
        for (const auto& x : e.partial.entries)
            EXPECT_TRUE(full.count(x.cls.canonical));
    }
}

TEST(Spectrum, NoInversionSymmetricClassesAndTwoOrientations) {
    auto s = length_spectrum(rep(), 9.0);
    for (const auto& e : s.entries) {
        EXPECT_FALSE(e.inversion_symmetric);
        EXPECT_NE(cutting_sequence(rep(), e.cls.canonical), cutting_sequence(rep(), inverse(e.cls.canonical)));
    }
}

TEST(Counts, FactorTwoAndPreconditions) {
    auto s = length_spectrum(rep(), 9.0);
    std::vector<double> grid{6, 7, 8, 9};
    auto r = count_report(s, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_EQ(r.N[i], 2 * r.CCl[i]);
        std::uint64_t direct = 0;
        for (const auto& e : s.entries)
            direct += e.length < grid[i];
        EXPECT_EQ(r.CCl[i], direct);
    }
    EXPECT_GT(r.slope, 0);
    EXPECT_THROW(count_report(s, {7, 6}), PreconditionViolated);
    EXPECT_THROW(count_report(s, {6, 10}), PreconditionViolated);
    Spectrum empty;
    empty.cutoff = 5;
    auto z = count_report(empty, {1, 2, 3});
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(z.N[i], 0u);
        EXPECT_EQ(z.CCl[i], 0u);
    }
}

TEST(Counts, LogSlopeOfExactExponential) {
    std::vector<double> g{1, 2, 3, 4};
    std::vector<std::uint64_t> c{10, 100, 1000, 10000};
    EXPECT_NEAR(log_slope(g, c, 1, 4), std::log(10.0), 1e-12);
    EXPECT_TRUE(std::isnan(log_slope(g, c, 1, 1)));
}

TEST(Cells, PartitionGeometry) {
    for (int levels : {0, 1, 2}) {
        auto cells = octagon_cells(rep(), levels);
        EXPECT_EQ(cells.cells.size(), 16u << (2 * levels));
        // Gauss-Bonnet: area of a genus-2 surface is 4 pi.
        EXPECT_NEAR(cells.total_area, 4 * std::numbers::pi, 1e-8);
        double sum = 0;
        for (double a : cells.normalized_areas())
            sum += a;
        EXPECT_NEAR(sum, 1, 1e-12);
    }
}

TEST(Cells, FoldLandsInTheDomain) {
    auto cells = octagon_cells(rep(), 1);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> r(0, 0.999), th(0, 2 * std::numbers::pi);
    for (int i = 0; i < 2000; ++i) {
        cplx w = std::polar(r(rng), th(rng));
        cplx f = fold_to_domain(rep(), w);
        EXPECT_LE(2 * std::atanh(std::abs(f)), rep().vertex_radius + 1e-9);
        EXPECT_GE(cells.locate(disk_to_klein(f)), 0);
    }
}

TEST(Equidist, AreaAgainstItselfAndTrend) {
    auto cells = octagon_cells(rep(), 1);
    auto a = cells.normalized_areas();
    EXPECT_EQ(total_variation(a, a), 0);
    auto s = length_spectrum(rep(), 10.0);
    auto e7 = equidistribution_test(rep(), s, cells, 7.0);
    auto e10 = equidistribution_test(rep(), s, cells, 10.0);
    EXPECT_LE(e10.tv_distance, e7.tv_distance + 3 / std::sqrt(static_cast<double>(e7.samples)));
    double sum = 0;
    for (double h : e10.histogram)
        sum += h;
    EXPECT_NEAR(sum, 1, 1e-12);
    EXPECT_THROW(equidistribution_test(rep(), s, cells, 1.0), EmptySpectrum);
}

TEST(Equidist, SingleGeodesicDoesNotEquidistribute) {
    auto cells = octagon_cells(rep(), 2);
    std::uint64_t samples = 0;
    auto h = geodesic_histogram(rep(), {Word{a1}}, cells, 0.005, &samples);
    EXPECT_GT(samples, 100u);
    EXPECT_GT(total_variation(h, cells.normalized_areas()), 0.5);
}
