#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chordisc/geometry.hpp"
#include "chordisc/lowdisc.hpp"

namespace chordisc {

enum class BuildMethod { transport, random, direction_lattice };
enum class ShiftMode { centered, random };

BuildMethod parse_build_method(std::string_view name);
std::string to_string(BuildMethod method);

struct BuildRecipe {
    BuildMethod method = BuildMethod::transport;
    std::size_t n = 0;           // transport / random
    std::size_t directions = 0;  // direction lattice
    std::size_t offsets = 0;     // direction lattice
    ShiftMode shift = ShiftMode::centered;
    SequenceKind generator = SequenceKind::hammersley_base2;
    std::uint64_t seed = 0;
    bool scramble = false;
    std::optional<double> target_length;
};

struct BuildResult {
    ChordSet set;
    std::size_t perturbations = 0;     // nudges applied to reach distinct, nondegenerate chords
    std::vector<ParamPair> pairs;      // endpoint pairs as used (transport and random builds)
    std::optional<RectDiscReport> rect;  // achieved rectangle discrepancy against the endpoint measure
};

enum class RectAudit { none, anchored, all };

// N chords whose endpoint pairs are a low-discrepancy set pushed to the
// endpoint measure.
BuildResult build_transport(const ConvexBody& body, std::size_t n, SequenceKind generator, std::uint64_t seed,
                            bool scramble = false, RectAudit audit = RectAudit::anchored);

// N independent chords distributed by the endpoint measure.
BuildResult build_random(const ConvexBody& body, std::size_t n, std::uint64_t seed,
                         RectAudit audit = RectAudit::none);

// Directions j*pi/m, each with k offsets spread evenly across the body's width
// (midpoints of k equal strips, or a seeded uniform shift per direction).
BuildResult build_direction_lattice(const ConvexBody& body, std::size_t directions, std::size_t offsets,
                                    ShiftMode shift, std::uint64_t seed = 0);

BuildResult build(const ConvexBody& body, const BuildRecipe& recipe);

// Direction window avoiding flat sides, and the length every direction in it
// can realize as a chord.
struct ChordWindow {
    double lo = 0.0;  // direction angles in radians
    double hi = 0.0;
    double unit_length = 0.0;
};

ChordWindow chord_unit_window(const ConvexBody& body);

// Longest chord of the body in direction theta.
double max_chord_in_direction(const ConvexBody& body, double theta);

struct CorrectionReport {
    std::vector<Chord> added;
    double deficit = 0.0;       // targetL - L(base)
    double added_length = 0.0;  // sum of added chord lengths
    double unit_length = 0.0;   // chord length available in every window direction
    std::size_t budget_used = 0;
    double budget_bound = 0.0;  // m * (deficit + 1), m = max(1, 1 / unit_length)
};

// Adds chords in distinct generic directions so that the total length becomes
// exactly target_length. Throws std::invalid_argument when target_length is
// below the current length.
std::pair<ChordSet, CorrectionReport> correct_length(const ChordSet& base, double target_length);

struct LengthBuild {
    BuildResult base;
    std::size_t reserve = 0;
    ChordSet set;
    CorrectionReport correction;
};

// Builds floor(target / mean chord) - reserve chords with the given method,
// shrinking N until the length fits, then corrects to the exact target.
// Without an explicit reserve, reserve = ceil(Δ_rect * |w|_HK / mean chord),
// from an anchored audit of the unreserved build.
LengthBuild build_to_length(const ConvexBody& body, double target_length, const BuildRecipe& recipe,
                            std::optional<std::size_t> reserve = std::nullopt);

// Hardy-Krause variation estimate of the chord-length function on a 2^10 grid.
double chord_length_variation(const ConvexBody& body, std::size_t resolution = 1024);

}  // namespace chordisc
