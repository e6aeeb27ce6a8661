#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chordisc {

inline constexpr double kPi = 3.14159265358979323846;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double k, Point a) { return {k * a.x, k * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point a);
double distance(Point a, Point b);

// Shortest distance from p to the closed segment [a, b].
double point_segment_distance(Point p, Point a, Point b);

// Raised for invalid body descriptions (nonpositive radius, non-convex or
// clockwise polygons, ...).
class InvalidBody : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A parameter pair that does not describe a genuine full chord: s == t, or both
// endpoints on one flat side of a polygon.
class DegenerateChord : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Shared endpoints between chords: the crossing predicate is undefined there.
class ExceptionalConfiguration : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Arclength fraction on the boundary, always kept in [0, 1).
class BoundaryParam {
public:
    BoundaryParam() = default;
    explicit BoundaryParam(double v);

    double value() const { return value_; }
    friend bool operator==(BoundaryParam, BoundaryParam) = default;
    friend auto operator<=>(BoundaryParam, BoundaryParam) = default;

private:
    double value_ = 0.0;
};

// Wraps any finite real into [0, 1).
double wrap_unit(double v);

enum class BodyKind { disk, polygon };

// A compact convex body in the plane: either a disk or a strictly convex
// counterclockwise polygon. Boundary parameter 0 is the anchor (angle 0 for the
// disk, the first vertex for a polygon); the boundary is traversed
// counterclockwise at constant speed perimeter().
class ConvexBody {
public:
    BodyKind kind() const { return kind_; }
    bool is_disk() const { return kind_ == BodyKind::disk; }

    double area() const { return area_; }
    double perimeter() const { return perimeter_; }
    double diameter() const { return diameter_; }

    Point center() const { return center_; }
    double radius() const { return radius_; }
    const std::vector<Point>& vertices() const { return vertices_; }
    // Cumulative arclength at each vertex; size() == vertices().size() + 1.
    const std::vector<double>& cumulative_length() const { return cumulative_; }

    Point boundary_point(double s) const;
    Point boundary_point(BoundaryParam s) const { return boundary_point(s.value()); }

    // Unit tangent (counterclockwise) at s; at a polygon vertex the tangent of
    // the side that starts there.
    Point tangent(double s) const;

    // Side index containing s (the side that starts at s when s is a vertex).
    std::size_t side_index(double s) const;
    // True when s is exactly a polygon vertex parameter.
    bool is_vertex_param(double s) const;
    // Parameters of polygon vertices, ascending; empty for the disk.
    std::vector<double> vertex_params() const;
    // Sides (0, 1, or 2 of them) whose closed segment contains Γ(s).
    std::pair<std::optional<std::size_t>, std::optional<std::size_t>> sides_containing(double s) const;

    // Support interval [h_min, h_max] of the body in direction n (unit).
    std::pair<double, double> support(Point n) const;

    // Intersection of the line {x : dot(n, x) = offset} with the boundary, as a
    // pair of boundary parameters. Empty when the line misses the interior.
    std::optional<std::pair<double, double>> clip_line(Point n, double offset) const;

    // Boundary parameter where the ray from Γ(s) at angle phi (counterclockwise
    // from the tangent at s, phi in (0, pi)) leaves the body.
    double ray_exit(double s, double phi) const;

    // Boundary parameter of a point known to lie on the boundary.
    double param_of(Point p) const;

    friend bool operator==(const ConvexBody& a, const ConvexBody& b);

private:
    friend ConvexBody make_disk(Point center, double radius);
    friend ConvexBody make_polygon(std::vector<Point> vertices);

    BodyKind kind_ = BodyKind::disk;
    Point center_{};
    double radius_ = 0.0;
    std::vector<Point> vertices_;
    std::vector<Point> side_dir_;
    std::vector<double> cumulative_;
    double area_ = 0.0;
    double perimeter_ = 0.0;
    double diameter_ = 0.0;
};

ConvexBody make_disk(Point center, double radius);
ConvexBody make_polygon(std::vector<Point> vertices);
ConvexBody make_regular_polygon(std::size_t sides, Point center, double circumradius, double phase = 0.0);

inline ConvexBody unit_disk() { return make_disk({0.0, 0.0}, 1.0); }
inline ConvexBody unit_square() { return make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

std::string describe(const ConvexBody& body);

// One full chord, stored as the ordered pair of endpoint parameters it was
// built from; compared as an unordered pair.
struct Chord {
    BoundaryParam s;
    BoundaryParam t;
    double length = 0.0;

    // Endpoints as (min, max) parameter values.
    std::pair<double, double> sorted() const;
};

bool same_chord(const Chord& a, const Chord& b);

// |Γ(s) - Γ(t)|; closed form on the disk.
double chord_length(const ConvexBody& body, double s, double t);

// Throws DegenerateChord for s == t or a segment lying in one polygon side.
Chord chord_from_params(const ConvexBody& body, BoundaryParam s, BoundaryParam t);
inline Chord chord_from_params(const ConvexBody& body, double s, double t)
{
    return chord_from_params(body, BoundaryParam{s}, BoundaryParam{t});
}

// True when x lies strictly inside the counterclockwise arc from a to b.
bool in_open_arc(double x, double a, double b);

// Endpoint alternation. Throws ExceptionalConfiguration if the two chords
// share an endpoint parameter.
bool chords_cross(const Chord& a, const Chord& b);

// Direction of the chord as an angle in [0, pi).
double chord_direction(const ConvexBody& body, const Chord& c);

// A finite union of full chords in one body.
class ChordSet {
public:
    ChordSet() = default;
    // Rejects duplicate chords (as unordered pairs).
    ChordSet(ConvexBody body, std::vector<Chord> chords);
    // Accepts duplicates; they are counted with multiplicity and flagged.
    static ChordSet with_multiplicity(ConvexBody body, std::vector<Chord> chords);

    const ConvexBody& body() const { return body_; }
    const std::vector<Chord>& chords() const { return chords_; }
    std::size_t size() const { return chords_.size(); }
    bool empty() const { return chords_.empty(); }
    double total_length() const { return total_length_; }
    // All 2N endpoint parameters, ascending.
    const std::vector<double>& endpoints() const { return endpoints_; }
    bool has_duplicates() const { return has_duplicates_; }
    // True when two endpoint parameters coincide exactly.
    bool has_shared_endpoints() const;

private:
    void index();

    ConvexBody body_ = make_disk({0.0, 0.0}, 1.0);
    std::vector<Chord> chords_;
    std::vector<double> endpoints_;
    double total_length_ = 0.0;
    bool has_duplicates_ = false;
};

}  // namespace chordisc
