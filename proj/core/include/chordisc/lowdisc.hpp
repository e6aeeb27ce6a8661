#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chordisc/chordmeasure.hpp"
#include "chordisc/geometry.hpp"

namespace chordisc {

enum class SequenceKind { digital_base2, hammersley_base2, kronecker_fibonacci, pseudorandom };

SequenceKind parse_sequence_kind(std::string_view name);
std::string to_string(SequenceKind kind);

struct GeneratorDescriptor {
    SequenceKind kind = SequenceKind::digital_base2;
    std::uint64_t seed = 0;
    bool scramble = false;
};

struct PointSet2D {
    std::vector<Point> points;  // coordinates in [0,1)
    GeneratorDescriptor generator;
};

// Uniform double in [0,1) from 53 random bits; identical on every platform.
double unit_double(std::mt19937_64& rng);

// Base-2 radical inverse of i as a 32-bit fraction.
std::uint32_t radical_inverse_bits(std::uint32_t i);

// n points of a two-dimensional sequence. digital_base2 pairs the van der
// Corput sequence with the second Sobol coordinate (a (0,2)-sequence in base
// 2); scramble applies a seeded random digital shift. hammersley_base2 is the
// centered net ((i + 1/2)/n, {vdc(i) + 1/(2n)}), with the digital shift on the
// second coordinate only. kronecker_fibonacci is
// (i/n, {i * golden}), shifted by a seeded torus offset when scrambled.
PointSet2D ld_sequence_2d(std::size_t n, SequenceKind kind, std::uint64_t seed = 0, bool scramble = false);

struct TransportResult {
    std::vector<ParamPair> pairs;
    std::size_t perturbations = 0;  // nudges applied by the degeneracy guard
};

// Pushes unit-square points to the endpoint measure: s from the (uniform)
// marginal, t from the conditional inverse CDF. Degenerate outputs (too short,
// same flat side, start on a polygon corner, duplicates) are nudged
// deterministically.
TransportResult transport_to_measure(const PointSet2D& ps, const EndpointMeasure& measure);

enum class RectFamily { anchored, all };

std::string to_string(RectFamily family);

// One rectangle edge: value, or the one-sided limit value + 0 when after is set.
struct RectEdge {
    double value = 0.0;
    bool after = false;
};

// Half-open rectangle [x0, x1) x [y0, y1) with one-sided edges.
struct RectWitness {
    RectEdge x0, x1, y0, y1;
};

struct RectDiscReport {
    double value = 0.0;  // count units: |count - expected|
    RectWitness witness;
    RectFamily family = RectFamily::anchored;
    std::size_t candidates = 0;
};

// Anchored mass or expected-count function F(u, v) on [0,1]^2, for rectangles
// [0,u) x [0,v); must be continuous and monotone under inclusion.
using AnchoredFunction = std::function<double(double, double)>;

AnchoredFunction uniform_mass();
AnchoredFunction measure_mass(const EndpointMeasure& measure);

// Exact supremum of |count - N * mass| over the family. The all-rectangles
// family runs in O(N^3) time and O(N^2) memory.
RectDiscReport rect_discrepancy(std::span<const Point> points, const AnchoredFunction& mass, RectFamily family);

// As rect_discrepancy, with the expected count given directly.
RectDiscReport rect_discrepancy_expected(std::span<const Point> points, const AnchoredFunction& expected,
                                         RectFamily family);

// |count - expected| on a witness rectangle, honoring one-sided edges.
double evaluate_rect(std::span<const Point> points, const AnchoredFunction& expected, const RectWitness& rect);

std::vector<Point> to_points(std::span<const ParamPair> pairs);

}  // namespace chordisc
