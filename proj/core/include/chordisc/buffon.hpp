#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "chordisc/chordmeasure.hpp"
#include "chordisc/geometry.hpp"
#include "chordisc/lowdisc.hpp"

namespace chordisc {

// 2 L chordLength / (pi |Omega|): the expected crossing count of a test chord.
double crofton_target(const ConvexBody& body, double total_length, double chord_length);

// Chords of S crossing the test chord. Throws ExceptionalConfiguration when
// the test shares an endpoint with S.
std::size_t count_crossings(const ChordSet& set, const Chord& test);

// Half-open counterclockwise boundary arc [a, b).
struct ArcInterval {
    BoundaryParam a;
    BoundaryParam b;

    static ArcInterval from(double a, double b) { return {BoundaryParam{a}, BoundaryParam{b}}; }
    double length() const;
    bool contains(double x) const;
};

// Neither arc endpoint is a chord endpoint of S.
bool admissible(const ChordSet& set, const ArcInterval& arc);

// Number of chords with exactly one endpoint in the arc. Throws
// std::invalid_argument for an inadmissible arc.
std::size_t cut_count(const ChordSet& set, const ArcInterval& arc);

// Chords with one endpoint in I and the other in J, counted directly and
// through four cut counts; throws std::logic_error when the two disagree.
std::size_t pair_count(const ChordSet& set, const ArcInterval& i, const ArcInterval& j);

enum class DiscMethod { exact_disk, exact_polygon, monte_carlo };
std::string to_string(DiscMethod method);

// How a witness endpoint is approached: exactly, or as a one-sided limit.
enum class LimitSide { exact, below, above };

// Test line through Γ(a) and Γ(b); its cut arc runs counterclockwise from a
// to b. A chord endpoint equal to a is inside the arc when a is approached
// from below; one equal to b is inside when b is approached from above.
struct ArcWitness {
    double a = 0.0;
    double b = 0.0;
    LimitSide a_side = LimitSide::exact;
    LimitSide b_side = LimitSide::exact;
};

struct DiscReport {
    double value = 0.0;  // count units
    ArcWitness witness;
    DiscMethod method = DiscMethod::exact_disk;
    std::size_t cells = 0;  // cells examined, or lines sampled
    double target_coefficient = 0.0;
    bool multiplicity = false;  // set had duplicate chords, counted with multiplicity
};

// |count - target| for the witness line, honoring one-sided limits.
double evaluate_witness(const ChordSet& set, const ArcWitness& witness);

DiscReport exact_discrepancy_disk(const ChordSet& set);
DiscReport exact_discrepancy_polygon(const ChordSet& set);
DiscReport exact_discrepancy(const ChordSet& set);

// Number of cells the exact evaluator visits.
std::size_t exact_cell_count(const ChordSet& set);

// Max over sampled lines (direction uniform, offset uniform across the width).
DiscReport mc_discrepancy(const ChordSet& set, std::size_t samples, std::uint64_t seed);

// Two disjoint arcs and the chords joining them, in window coordinates:
// x' = (x - U.a) / |U|, y' = (y - V.a) / |V|.
struct LocalizedWindow {
    ArcInterval u;
    ArcInterval v;
    double min_separation = 0.0;
    std::vector<ParamPair> points;

    static LocalizedWindow build(const ChordSet& set, const ArcInterval& u, const ArcInterval& v,
                                 double min_separation = 1.0 / 16.0);
    // U = [0, 1/16), V = [1/6, 1/6 + 1/16).
    static LocalizedWindow default_window(const ChordSet& set);
};

// Exact sup over subarc rectangles I x J of U x V of |N(I, J) - expected|,
// where expected = 2 (L / mean chord) mu(I x J). The witness is in boundary
// parameters.
RectDiscReport localized_rect_sup(const ChordSet& set, const LocalizedWindow& window);

}  // namespace chordisc
