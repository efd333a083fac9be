#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "anosov/error.hpp"
#include "anosov/hypgeom.hpp"
#include "anosov/word.hpp"

namespace anosov {

using cplx = std::complex<double>;
using DiskMat = Eigen::Matrix2cd;

// Upper half-plane <-> Poincare disk, with i <-> 0.
cplx uhp_to_disk(cplx z);
cplx disk_to_uhp(cplx w);
DiskMat to_disk(const Isometry2H<double>& m);
cplx disk_apply(const DiskMat& m, cplx w);
// Klein model coordinates of a Poincare disk point.
cplx disk_to_klein(cplx w);
cplx klein_to_disk(cplx k);

struct DomainSide {
    cplx start; // disk coordinates
    cplx end;
    GeodesicH<double> geodesic; // upper half-plane endpoints
    Letter letter;              // g with g(F) adjacent to F across this side
};

struct SurfaceGroupRep {
    int genus = 2;
    std::array<Isometry2H<double>, kAlphabetSize> generators;
    std::vector<DomainSide> fundamental_domain; // 8 sides, ccw, side k from vertex k to vertex k+1
    double vertex_radius = 0; // hyperbolic distance from the center to a vertex

    const Isometry2H<double>& generator(Letter x) const { return generators[x]; }
    Isometry2H<double> word_matrix(const Word& w) const;
    // Max entry distance of [a1,b1][a2,b2] from +-I.
    double relator_defect() const;
    DiskMat disk_generator(Letter x) const { return disk_[x]; }
    Letter side_letter(int side) const { return fundamental_domain[side].letter; }

    // Derived tables used by the enumeration and tracing code.
    std::array<DiskMat, kAlphabetSize> disk_;
    std::array<cplx, 8> disk_vertices_;
    std::array<cplx, 8> klein_vertices_;
    std::vector<DiskMat> near_tiles_inv_; // u^-1 for reduced u of length <= 4, shortest first
    std::vector<bool> winding5_;          // 5-letter words whose 6 tiles share a vertex
};

// Regular octagon with interior angles pi/4; side k is glued to side k+2 (k = 0, 1, 4, 5).
const SurfaceGroupRep& genus2_rep();

struct ConjClass {
    Word canonical;
    double length = 0;

    friend bool operator==(const ConjClass& a, const ConjClass& b) { return a.canonical == b.canonical; }
};

// Word-level class: cyclic reduction, rotation and inversion. Throws TrivialWord.
ConjClass canonical_conjugacy(const SurfaceGroupRep& rep, const Word& w);
ConjClass canonical_conjugacy(const Word& w);

// Cutting sequence of the closed geodesic of w pushed infinitesimally to its left,
// read against the tiling by copies of the fundamental domain; returned as its least rotation.
Word cutting_sequence(const SurfaceGroupRep& rep, const Word& w);
// Normal form for unoriented conjugacy classes in the surface group: the least canonical word
// among the cutting sequences of g and g^-1. Throws TrivialWord, NotHyperbolic.
ConjClass surface_class(const SurfaceGroupRep& rep, const Word& w);
// True when g is conjugate to g^-1.
bool is_inversion_symmetric(const SurfaceGroupRep& rep, const Word& w);

struct SpectrumEntry {
    ConjClass cls;
    double length = 0;
    bool primitive = true;
    bool inversion_symmetric = false;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t candidates = 0;
    std::uint64_t traced = 0;
};

struct Spectrum {
    std::vector<SpectrumEntry> entries;
    double cutoff = 0;
    bool authoritative = true;
    SearchStats stats;
};

struct SpectrumOptions {
    std::uint64_t node_budget = 0; // 0 = unlimited
    // Bit x set when letter x (and its inverse) may be used. Anything other than the
    // full alphabet enumerates the free subgroup generated by those letters.
    std::uint8_t alphabet_mask = 0xFF;
    int max_word_length = 0; // required for free subgroups, optional otherwise
};

struct BudgetExceeded : Error {
    BudgetExceeded(const std::string& what, Spectrum partial_) : Error(what), partial(std::move(partial_)) {}
    Spectrum partial;
};

Spectrum length_spectrum(const SurfaceGroupRep& rep, double t, const SpectrumOptions& opts = {});

double systole(const Spectrum& spec);

struct CountReport {
    std::vector<double> grid;
    std::vector<std::uint64_t> N;
    std::vector<std::uint64_t> CCl;
    double slope = 0;     // log N(t) over the upper half of the grid
    double slope_ccl = 0; // log CCl(t) over the same points
    bool sandwich_ok = true;
    std::uint64_t inversion_symmetric = 0;
};

CountReport count_report(const Spectrum& spec, const std::vector<double>& grid);

// Least-squares slope of log(count) against t over grid points in [lo, hi] with count > 0.
double log_slope(const std::vector<double>& grid, const std::vector<std::uint64_t>& counts, double lo, double hi);

// Hyperbolic triangle in Klein coordinates.
struct Cell {
    std::array<cplx, 3> klein;
    double area = 0;
};

struct CellPartition {
    std::vector<Cell> cells;
    double total_area = 0;

    // Cell index containing the Klein point k, or -1.
    int locate(cplx k) const;
    std::vector<double> normalized_areas() const;
};

// 16 triangles (center, side midpoint, vertex), each split into 4^levels pieces by geodesic midpoints.
CellPartition octagon_cells(const SurfaceGroupRep& rep, int levels = 1);

// Moves a disk point into the closed fundamental domain; returns the folded point.
cplx fold_to_domain(const SurfaceGroupRep& rep, cplx w);

struct EquidistributionResult {
    double tv_distance = 0;
    std::uint64_t samples = 0;
    std::uint64_t geodesics = 0;
    std::vector<double> histogram; // normalized
};

std::vector<double> geodesic_histogram(const SurfaceGroupRep& rep, const std::vector<Word>& geodesics,
                                       const CellPartition& cells, double sample_spacing = 0.02,
                                       std::uint64_t* samples = nullptr);

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

EquidistributionResult equidistribution_test(const SurfaceGroupRep& rep, const Spectrum& spec,
                                             const CellPartition& cells, double t, double sample_spacing = 0.02);

} // namespace anosov
