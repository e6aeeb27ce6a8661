#include "chordisc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chordisc {

double norm(Point a) { return std::hypot(a.x, a.y); }

double distance(Point a, Point b) { return norm(a - b); }

double point_segment_distance(Point p, Point a, Point b)
{
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) {
        return distance(p, a);
    }
    const double lambda = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + lambda * ab);
}

double wrap_unit(double v)
{
    if (v >= 0.0 && v < 1.0) {
        return v;
    }
    double w = v - std::floor(v);
    // floor can round v - floor(v) up to exactly 1 for tiny negative inputs
    if (w >= 1.0) {
        w = 0.0;
    }
    return w;
}

BoundaryParam::BoundaryParam(double v) : value_(wrap_unit(v)) {}

namespace {

std::vector<double> cumulative_lengths(const std::vector<Point>& v)
{
    std::vector<double> cum(v.size() + 1, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        cum[i + 1] = cum[i] + distance(v[i], v[(i + 1) % v.size()]);
    }
    return cum;
}

}  // namespace

ConvexBody make_disk(Point center, double radius)
{
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw InvalidBody("disk radius must be positive and finite");
    }
    ConvexBody b;
    b.kind_ = BodyKind::disk;
    b.center_ = center;
    b.radius_ = radius;
    b.area_ = kPi * radius * radius;
    b.perimeter_ = 2.0 * kPi * radius;
    b.diameter_ = 2.0 * radius;
    return b;
}

ConvexBody make_polygon(std::vector<Point> vertices)
{
    const std::size_t n = vertices.size();
    if (n < 3) {
        throw InvalidBody("polygon needs at least 3 vertices");
    }
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point e0 = vertices[(i + 1) % n] - vertices[i];
        const Point e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
        const double l0 = norm(e0);
        const double l1 = norm(e1);
        if (l0 == 0.0 || l1 == 0.0) {
            throw InvalidBody("polygon has repeated vertices");
        }
        const double c = cross(e0, e1);
        if (std::abs(c) <= 1e-14 * l0 * l1) {
            throw InvalidBody("polygon has a collinear vertex triple");
        }
        if (c < 0.0) {
            throw InvalidBody("polygon is not counterclockwise and strictly convex");
        }
        turning += std::atan2(c, dot(e0, e1));
    }
    // all left turns but winding more than once: a star-shaped self-intersection
    if (std::abs(turning - 2.0 * kPi) > 1e-9) {
        throw InvalidBody("polygon is self-intersecting");
    }

    ConvexBody b;
    b.kind_ = BodyKind::polygon;
    b.vertices_ = std::move(vertices);
    b.cumulative_ = cumulative_lengths(b.vertices_);
    b.perimeter_ = b.cumulative_.back();
    double twice_area = 0.0;
    Point centroid{};
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = b.vertices_[i];
        const Point& q = b.vertices_[(i + 1) % n];
        twice_area += cross(p, q);
        centroid = centroid + (1.0 / static_cast<double>(n)) * p;
        b.side_dir_.push_back((1.0 / distance(p, q)) * (q - p));
    }
    b.area_ = 0.5 * twice_area;
    b.center_ = centroid;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            b.diameter_ = std::max(b.diameter_, distance(b.vertices_[i], b.vertices_[j]));
        }
    }
    return b;
}

ConvexBody make_regular_polygon(std::size_t sides, Point center, double circumradius, double phase)
{
    std::vector<Point> v;
    v.reserve(sides);
    for (std::size_t k = 0; k < sides; ++k) {
        const double a = phase + 2.0 * kPi * static_cast<double>(k) / static_cast<double>(sides);
        v.push_back({center.x + circumradius * std::cos(a), center.y + circumradius * std::sin(a)});
    }
    return make_polygon(std::move(v));
}

std::string describe(const ConvexBody& body)
{
    std::ostringstream os;
    os.precision(6);
    if (body.is_disk()) {
        os << "disk(center=(" << body.center().x << "," << body.center().y << "), r=" << body.radius() << ")";
    } else {
        os << "polygon(" << body.vertices().size() << " vertices, area=" << body.area()
           << ", perimeter=" << body.perimeter() << ")";
    }
    return os.str();
}

bool operator==(const ConvexBody& a, const ConvexBody& b)
{
    if (a.kind_ != b.kind_) {
        return false;
    }
    if (a.is_disk()) {
        return a.center_.x == b.center_.x && a.center_.y == b.center_.y && a.radius_ == b.radius_;
    }
    if (a.vertices_.size() != b.vertices_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.vertices_.size(); ++i) {
        if (a.vertices_[i].x != b.vertices_[i].x || a.vertices_[i].y != b.vertices_[i].y) {
            return false;
        }
    }
    return true;
}

std::vector<double> ConvexBody::vertex_params() const
{
    std::vector<double> out;
    if (is_disk()) {
        return out;
    }
    out.reserve(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        out.push_back(cumulative_[i] / perimeter_);
    }
    return out;
}

std::size_t ConvexBody::side_index(double s) const
{
    if (is_disk()) {
        return 0;
    }
    s = wrap_unit(s);
    const std::size_t n = vertices_.size();
    // side i covers [cum_i / P, cum_{i+1} / P)
    std::size_t lo = 0;
    std::size_t hi = n;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (cumulative_[mid] / perimeter_ <= s) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

bool ConvexBody::is_vertex_param(double s) const
{
    if (is_disk()) {
        return false;
    }
    s = wrap_unit(s);
    return cumulative_[side_index(s)] / perimeter_ == s;
}

std::pair<std::optional<std::size_t>, std::optional<std::size_t>> ConvexBody::sides_containing(double s) const
{
    if (is_disk()) {
        return {std::nullopt, std::nullopt};
    }
    const std::size_t i = side_index(s);
    if (is_vertex_param(s)) {
        const std::size_t n = vertices_.size();
        return {(i + n - 1) % n, i};
    }
    return {i, std::nullopt};
}

Point ConvexBody::boundary_point(double s) const
{
    s = wrap_unit(s);
    if (is_disk()) {
        const double a = 2.0 * kPi * s;
        return {center_.x + radius_ * std::cos(a), center_.y + radius_ * std::sin(a)};
    }
    const std::size_t i = side_index(s);
    const double along = (s - cumulative_[i] / perimeter_) * perimeter_;
    return vertices_[i] + along * side_dir_[i];
}

Point ConvexBody::tangent(double s) const
{
    if (is_disk()) {
        const double a = 2.0 * kPi * wrap_unit(s);
        return {-std::sin(a), std::cos(a)};
    }
    return side_dir_[side_index(s)];
}

std::pair<double, double> ConvexBody::support(Point n) const
{
    if (is_disk()) {
        const double c = dot(n, center_);
        return {c - radius_, c + radius_};
    }
    double lo = dot(n, vertices_[0]);
    double hi = lo;
    for (const Point& v : vertices_) {
        lo = std::min(lo, dot(n, v));
        hi = std::max(hi, dot(n, v));
    }
    return {lo, hi};
}

double ConvexBody::param_of(Point p) const
{
    if (is_disk()) {
        return wrap_unit(std::atan2(p.y - center_.y, p.x - center_.x) / (2.0 * kPi));
    }
    const std::size_t n = vertices_.size();
    std::size_t best = 0;
    double best_d = point_segment_distance(p, vertices_[0], vertices_[1 % n]);
    for (std::size_t i = 1; i < n; ++i) {
        const double d = point_segment_distance(p, vertices_[i], vertices_[(i + 1) % n]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    const double len = cumulative_[best + 1] - cumulative_[best];
    const double along = std::clamp(dot(p - vertices_[best], side_dir_[best]), 0.0, len);
    return wrap_unit((cumulative_[best] + along) / perimeter_);
}

std::optional<std::pair<double, double>> ConvexBody::clip_line(Point n, double offset) const
{
    if (is_disk()) {
        const double h = offset - dot(n, center_);
        if (std::abs(h) >= radius_) {
            return std::nullopt;
        }
        const Point foot = center_ + h * n;
        const double half = std::sqrt(radius_ * radius_ - h * h);
        const Point dir{-n.y, n.x};
        const double a = param_of(foot + half * dir);
        const double b = param_of(foot - half * dir);
        if (a == b) {
            return std::nullopt;
        }
        return std::make_pair(a, b);
    }
    const std::size_t m = vertices_.size();
    double found[2] = {0.0, 0.0};
    int count = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double hi = dot(n, vertices_[i]) - offset;
        const double hj = dot(n, vertices_[(i + 1) % m]) - offset;
        if ((hi > 0.0) != (hj > 0.0)) {
            if (count == 2) {
                return std::nullopt;
            }
            const double lambda = std::clamp(hi / (hi - hj), 0.0, 1.0);
            const double len = cumulative_[i + 1] - cumulative_[i];
            found[count++] = wrap_unit((cumulative_[i] + lambda * len) / perimeter_);
        }
    }
    if (count != 2 || found[0] == found[1]) {
        return std::nullopt;
    }
    return std::make_pair(found[0], found[1]);
}

double ConvexBody::ray_exit(double s, double phi) const
{
    s = wrap_unit(s);
    if (is_disk()) {
        return wrap_unit(s + phi / kPi);
    }
    const Point origin = boundary_point(s);
    const Point tau = tangent(s);
    const Point d{tau.x * std::cos(phi) - tau.y * std::sin(phi), tau.x * std::sin(phi) + tau.y * std::cos(phi)};
    const std::size_t own = side_index(s);
    const std::size_t m = vertices_.size();
    double best_rho = 0.0;
    std::optional<double> best;
    for (std::size_t j = 0; j < m; ++j) {
        if (j == own) {
            continue;
        }
        const Point e = vertices_[(j + 1) % m] - vertices_[j];
        const double denom = cross(d, e);
        if (denom == 0.0) {
            continue;
        }
        const Point w = vertices_[j] - origin;
        const double rho = cross(w, e) / denom;
        const double lambda = cross(w, d) / denom;
        if (rho > best_rho && lambda >= -1e-12 && lambda <= 1.0 + 1e-12) {
            best_rho = rho;
            const double len = cumulative_[j + 1] - cumulative_[j];
            best = wrap_unit((cumulative_[j] + std::clamp(lambda, 0.0, 1.0) * len) / perimeter_);
        }
    }
    if (!best) {
        throw DegenerateChord("ray does not enter the polygon interior");
    }
    return *best;
}

std::pair<double, double> Chord::sorted() const
{
    const double a = s.value();
    const double b = t.value();
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

bool same_chord(const Chord& a, const Chord& b) { return a.sorted() == b.sorted(); }

double chord_length(const ConvexBody& body, double s, double t)
{
    if (body.is_disk()) {
        return 2.0 * body.radius() * std::abs(std::sin(kPi * (t - s)));
    }
    return distance(body.boundary_point(s), body.boundary_point(t));
}

Chord chord_from_params(const ConvexBody& body, BoundaryParam s, BoundaryParam t)
{
    if (s == t) {
        throw DegenerateChord("chord endpoints coincide");
    }
    if (!body.is_disk()) {
        const auto [s0, s1] = body.sides_containing(s.value());
        const auto [t0, t1] = body.sides_containing(t.value());
        const auto shares = [](std::optional<std::size_t> x, std::optional<std::size_t> y) {
            return x && y && *x == *y;
        };
        if (shares(s0, t0) || shares(s0, t1) || shares(s1, t0) || shares(s1, t1)) {
            throw DegenerateChord("chord endpoints lie on one polygon side");
        }
    }
    const double w = distance(body.boundary_point(s), body.boundary_point(t));
    if (!(w > 0.0)) {
        throw DegenerateChord("chord has zero length");
    }
    return Chord{s, t, w};
}

bool in_open_arc(double x, double a, double b)
{
    if (a < b) {
        return a < x && x < b;
    }
    if (a > b) {
        return x > a || x < b;
    }
    return false;
}

bool chords_cross(const Chord& a, const Chord& b)
{
    const double p[4] = {a.s.value(), a.t.value(), b.s.value(), b.t.value()};
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (p[i] == p[j]) {
                throw ExceptionalConfiguration("chords share an endpoint");
            }
        }
    }
    const bool in_s = in_open_arc(p[2], p[0], p[1]);
    const bool in_t = in_open_arc(p[3], p[0], p[1]);
    return in_s != in_t;
}

double chord_direction(const ConvexBody& body, const Chord& c)
{
    const Point d = body.boundary_point(c.t) - body.boundary_point(c.s);
    double a = std::atan2(d.y, d.x);
    if (a < 0.0) {
        a += kPi;
    }
    if (a >= kPi) {
        a -= kPi;
    }
    return a;
}

ChordSet::ChordSet(ConvexBody body, std::vector<Chord> chords) : body_(std::move(body)), chords_(std::move(chords))
{
    index();
    if (has_duplicates_) {
        throw std::invalid_argument("chord set contains duplicate chords");
    }
}

ChordSet ChordSet::with_multiplicity(ConvexBody body, std::vector<Chord> chords)
{
    ChordSet set;
    set.body_ = std::move(body);
    set.chords_ = std::move(chords);
    set.index();
    return set;
}

void ChordSet::index()
{
    total_length_ = 0.0;
    endpoints_.clear();
    endpoints_.reserve(2 * chords_.size());
    std::vector<std::pair<double, double>> keys;
    keys.reserve(chords_.size());
    for (const Chord& c : chords_) {
        if (c.s == c.t || !(c.length > 0.0)) {
            throw DegenerateChord("chord set contains a degenerate chord");
        }
        total_length_ += c.length;
        endpoints_.push_back(c.s.value());
        endpoints_.push_back(c.t.value());
        keys.push_back(c.sorted());
    }
    std::sort(endpoints_.begin(), endpoints_.end());
    std::sort(keys.begin(), keys.end());
    has_duplicates_ = std::adjacent_find(keys.begin(), keys.end()) != keys.end();
}

bool ChordSet::has_shared_endpoints() const
{
    return std::adjacent_find(endpoints_.begin(), endpoints_.end()) != endpoints_.end();
}

}  // namespace chordisc
