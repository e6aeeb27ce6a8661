#pragma once

// Independent reference computations for the tests. Nothing here calls the
// evaluators under test; geometry is redone in Cartesian coordinates.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "chordisc/geometry.hpp"

namespace chordisc::oracle {

// Proper crossing of the closed segments [p1, p2] and [q1, q2].
bool segments_cross(Point p1, Point p2, Point q1, Point q2);

// Intersection of the line {x : <n, x> = p} with the body, as a segment.
bool clip_line(const ConvexBody& body, double theta, double p, Point& a, Point& b);

// Endpoint-pair density in fraction coordinates from the boundary-angle
// formula P sin(alpha) sin(beta) / (2 w).
double endpoint_density(const ConvexBody& body, double s, double t);

// Tensor Gauss-Legendre integral of the density over [s0, s1) x [t0, t1),
// split into `panels` equal pieces per axis.
double density_mass(const ConvexBody& body, double s0, double s1, double t0, double t1, std::size_t panels,
                    std::size_t order = 16);

// Iterated integral of the density over [s0, s1) x [t0, t1) (all in [0, 1]),
// with pieces split at polygon vertices and at the diagonal and panels graded
// toward every split.
double density_mass_split(const ConvexBody& body, double s0, double s1, double t0, double t1);

struct LineStats {
    std::size_t samples = 0;
    double hit_fraction = 0.0;  // lines (over the bounding box) meeting the body
    double mean_chord = 0.0;    // over hitting lines
    double mean_chord_se = 0.0;
    double max_disc = 0.0;      // max |count - target| over hitting lines
};

// Lines with theta uniform on [0, pi) and offset uniform on [-R, R] around the
// centroid of the vertices (or the disk center). Counts crossings against the
// chord segments with segments_cross.
LineStats sample_lines(const ConvexBody& body, const std::vector<Chord>& chords, std::size_t samples,
                       std::uint64_t seed);

// Max over arcs [a, b) whose endpoints run through a grid of m points plus two
// interior points of every gap between chord endpoints. Every count cell is
// sampled within 1 / m of any of its points.
double dense_arc_disk(const ChordSet& set, std::size_t m);

// The Lipschitz slack that dense_arc_disk can miss on a disk of radius r.
double dense_arc_resolution(const ChordSet& set, std::size_t m);

// Max over anchored boxes [0, u) x [0, v) with u, v from a grid of r points
// plus interior points of every gap between point coordinates.
double grid_anchored(const std::vector<Point>& points, const std::function<double(double, double)>& mass,
                     std::size_t r);

}  // namespace chordisc::oracle
