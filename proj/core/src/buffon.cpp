#include "chordisc/buffon.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace chordisc {

double crofton_target(const ConvexBody& body, double total_length, double chord_length)
{
    return 2.0 * total_length * chord_length / (kPi * body.area());
}

std::size_t count_crossings(const ChordSet& set, const Chord& test)
{
    std::size_t count = 0;
    for (const Chord& c : set.chords()) {
        if (chords_cross(test, c)) {
            ++count;
        }
    }
    return count;
}

double ArcInterval::length() const
{
    const double d = b.value() - a.value();
    return d < 0.0 ? d + 1.0 : d;
}

namespace {

// x in the half-open cyclic arc [a, b); empty when a == b.
bool in_arc(double x, double a, double b)
{
    if (a < b) {
        return a <= x && x < b;
    }
    if (a > b) {
        return x >= a || x < b;
    }
    return false;
}

bool is_endpoint(const ChordSet& set, double x)
{
    return std::binary_search(set.endpoints().begin(), set.endpoints().end(), x);
}

// Cut count of the arc [a, b), or of the full circle when full is set.
std::size_t cut_between(const ChordSet& set, double a, double b, bool full = false)
{
    if (full || a == b) {
        return 0;
    }
    std::size_t count = 0;
    for (const Chord& c : set.chords()) {
        if (in_arc(c.s.value(), a, b) != in_arc(c.t.value(), a, b)) {
            ++count;
        }
    }
    return count;
}

}  // namespace

bool ArcInterval::contains(double x) const { return in_arc(wrap_unit(x), a.value(), b.value()); }

bool admissible(const ChordSet& set, const ArcInterval& arc)
{
    return !is_endpoint(set, arc.a.value()) && !is_endpoint(set, arc.b.value());
}

std::size_t cut_count(const ChordSet& set, const ArcInterval& arc)
{
    if (arc.a == arc.b) {
        throw std::invalid_argument("cut_count: arc endpoints coincide");
    }
    if (!admissible(set, arc)) {
        throw std::invalid_argument("cut_count: arc endpoint is a chord endpoint");
    }
    return cut_between(set, arc.a.value(), arc.b.value());
}

std::size_t pair_count(const ChordSet& set, const ArcInterval& i, const ArcInterval& j)
{
    if (i.a == i.b || j.a == j.b) {
        throw std::invalid_argument("pair_count: empty arc");
    }
    if (!admissible(set, i) || !admissible(set, j)) {
        throw std::invalid_argument("pair_count: arcs must be admissible");
    }
    const double i0 = i.a.value();
    const double i1 = i.b.value();
    const double j0 = j.a.value();
    const double j1 = j.b.value();
    const ArcInterval gap{i.b, j.a};
    const double span = i.length() + (i1 == j0 ? 0.0 : gap.length()) + j.length();
    if (span > 1.0 + 1e-12 || j.contains(i0) || i.contains(j0)) {
        throw std::invalid_argument("pair_count: arcs overlap");
    }

    std::size_t direct = 0;
    for (const Chord& c : set.chords()) {
        const double s = c.s.value();
        const double t = c.t.value();
        if ((i.contains(s) && j.contains(t)) || (i.contains(t) && j.contains(s))) {
            ++direct;
        }
    }

    const auto ig = static_cast<long long>(cut_between(set, i0, j0));
    const auto gj = static_cast<long long>(cut_between(set, i1, j1));
    const auto g = static_cast<long long>(cut_between(set, i1, j0));
    const auto igj = static_cast<long long>(cut_between(set, i0, j1, j1 == i0));
    const long long twice = ig + gj - g - igj;
    if (twice < 0 || twice % 2 != 0 || static_cast<std::size_t>(twice / 2) != direct) {
        throw std::logic_error("pair_count: cut identity mismatch");
    }
    return direct;
}

std::string to_string(DiscMethod method)
{
    switch (method) {
    case DiscMethod::exact_disk:
        return "exact-disk";
    case DiscMethod::exact_polygon:
        return "exact-polygon";
    case DiscMethod::monte_carlo:
        return "monte-carlo";
    }
    return "unknown";
}

namespace {

double target_coefficient(const ChordSet& set) { return crofton_target(set.body(), set.total_length(), 1.0); }

bool witness_contains(double x, const ArcWitness& w)
{
    if (w.a == w.b) {
        if (w.a_side == LimitSide::below && w.b_side == LimitSide::above) {
            return x == w.a;
        }
        if (w.a_side == LimitSide::above && w.b_side == LimitSide::below) {
            return x != w.a;
        }
        throw std::invalid_argument("witness with coincident endpoints needs opposite one-sided limits");
    }
    if (x == w.a) {
        if (w.a_side == LimitSide::exact) {
            throw ExceptionalConfiguration("witness endpoint is a chord endpoint");
        }
        return w.a_side == LimitSide::below;
    }
    if (x == w.b) {
        if (w.b_side == LimitSide::exact) {
            throw ExceptionalConfiguration("witness endpoint is a chord endpoint");
        }
        return w.b_side == LimitSide::above;
    }
    return in_open_arc(x, w.a, w.b);
}

void consider(DiscReport& r, double value, const ArcWitness& w)
{
    if (value > r.value) {
        r.value = value;
        r.witness = w;
    }
}

// Distinct sorted grid values with the chords ending at each.
struct EndpointGrid {
    std::vector<double> g;
    std::vector<std::vector<std::size_t>> owners;
};

EndpointGrid endpoint_grid(const ChordSet& set, bool with_vertices)
{
    std::vector<std::pair<double, std::size_t>> ends;
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    for (std::size_t c = 0; c < set.size(); ++c) {
        ends.emplace_back(set.chords()[c].s.value(), c);
        ends.emplace_back(set.chords()[c].t.value(), c);
    }
    if (with_vertices) {
        for (double v : set.body().vertex_params()) {
            ends.emplace_back(v, kNone);
        }
    }
    std::sort(ends.begin(), ends.end());
    EndpointGrid grid;
    for (const auto& [x, c] : ends) {
        if (grid.g.empty() || grid.g.back() != x) {
            grid.g.push_back(x);
            grid.owners.emplace_back();
        }
        if (c != kNone) {
            grid.owners.back().push_back(c);
        }
    }
    return grid;
}

// Runs the cut-count sweep: for each start gap i, visit(i, j, count) for every
// end gap j != i, where count is the cut count of an arc from gap i to gap j.
template <typename Visit>
void sweep_cells(const EndpointGrid& grid, std::size_t chords, Visit&& visit)
{
    const std::size_t m = grid.g.size();
    std::vector<unsigned char> inside(chords);
    for (std::size_t i = 0; i < m; ++i) {
        std::fill(inside.begin(), inside.end(), 0);
        long long count = 0;
        for (std::size_t step = 1; step < m; ++step) {
            const std::size_t j = (i + step) % m;
            for (std::size_t c : grid.owners[j]) {
                if (++inside[c] == 1) {
                    ++count;
                } else {
                    --count;
                }
            }
            visit(i, step, static_cast<double>(count));
        }
    }
}

}  // namespace

double evaluate_witness(const ChordSet& set, const ArcWitness& w)
{
    std::size_t count = 0;
    for (const Chord& c : set.chords()) {
        if (witness_contains(c.s.value(), w) != witness_contains(c.t.value(), w)) {
            ++count;
        }
    }
    const double target = target_coefficient(set) * chord_length(set.body(), w.a, w.b);
    return std::abs(static_cast<double>(count) - target);
}

std::size_t exact_cell_count(const ChordSet& set)
{
    std::size_t m = 0;
    const std::vector<double>& f = set.endpoints();
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (k == 0 || f[k] != f[k - 1]) {
            ++m;
        }
    }
    if (!set.body().is_disk()) {
        m += set.body().vertices().size();
    }
    return m * m;
}

DiscReport exact_discrepancy_disk(const ChordSet& set)
{
    const ConvexBody& body = set.body();
    if (!body.is_disk()) {
        throw std::invalid_argument("exact_discrepancy_disk: body is not a disk");
    }
    DiscReport r;
    r.method = DiscMethod::exact_disk;
    r.target_coefficient = target_coefficient(set);
    r.multiplicity = set.has_duplicates();
    if (set.empty()) {
        return r;
    }
    const EndpointGrid grid = endpoint_grid(set, false);
    const std::vector<double>& g = grid.g;
    const std::size_t m = g.size();
    const double peak = r.target_coefficient * 2.0 * body.radius();
    std::vector<double> sn(m);
    std::vector<double> cs(m);
    for (std::size_t k = 0; k < m; ++k) {
        sn[k] = std::sin(kPi * g[k]);
        cs[k] = std::cos(kPi * g[k]);
    }
    // extended coordinate of grid index k in [0, 2m)
    const auto ext = [&](std::size_t k) { return k < m ? g[k] : g[k - m] + 1.0; };
    const auto target = [&](std::size_t p, std::size_t q) {
        p %= m;
        q %= m;
        return peak * std::abs(sn[p] * cs[q] - cs[p] * sn[q]);
    };

    for (std::size_t i = 0; i < m; ++i) {
        // both endpoints in gap i: nothing is cut
        const double wi = ext(i + 1) - g[i];
        if (wi > 0.5) {
            const double a = g[i] + 0.5 * (wi - 0.5);
            consider(r, peak, {a, wrap_unit(a + 0.5), LimitSide::exact, LimitSide::exact});
        } else {
            consider(r, target(i + 1, i), {g[i], g[(i + 1) % m], LimitSide::above, LimitSide::below});
        }
    }
    sweep_cells(grid, set.size(), [&](std::size_t i, std::size_t step, double count) {
        const std::size_t j = i + step;
        const double lo = ext(j) - ext(i + 1);    // shortest arc in the cell
        const double hi = ext(j + 1) - g[i];      // longest arc in the cell
        const double t_lo = target(j, i + 1);
        const double t_hi = target(j + 1, i);
        if (std::abs(count - t_lo) > r.value) {
            consider(r, std::abs(count - t_lo), {g[(i + 1) % m], g[j % m], LimitSide::below, LimitSide::above});
        }
        if (std::abs(count - t_hi) > r.value) {
            consider(r, std::abs(count - t_hi), {g[i], g[(j + 1) % m], LimitSide::above, LimitSide::below});
        }
        if (lo < 0.5 && 0.5 < hi && peak - count > r.value) {
            const double o = ext(j) - g[i];
            const double wi = ext(i + 1) - g[i];
            const double wj = ext(j + 1) - ext(j);
            const double x0 = std::max(0.0, o - 0.5);
            const double x1 = std::min(wi, o + wj - 0.5);
            const double a = g[i] + 0.5 * (x0 + x1);
            consider(r, peak - count, {wrap_unit(a), wrap_unit(a + 0.5), LimitSide::exact, LimitSide::exact});
        }
    });
    r.cells = m * m;
    return r;
}

DiscReport exact_discrepancy_polygon(const ChordSet& set)
{
    const ConvexBody& body = set.body();
    if (body.is_disk()) {
        throw std::invalid_argument("exact_discrepancy_polygon: body is not a polygon");
    }
    DiscReport r;
    r.method = DiscMethod::exact_polygon;
    r.target_coefficient = target_coefficient(set);
    r.multiplicity = set.has_duplicates();
    if (set.empty()) {
        return r;
    }
    const double k = r.target_coefficient;
    const EndpointGrid grid = endpoint_grid(set, true);
    const std::vector<double>& g = grid.g;
    const std::size_t m = g.size();
    std::vector<Point> pt(m);
    std::vector<std::size_t> side(m);
    for (std::size_t q = 0; q < m; ++q) {
        pt[q] = body.boundary_point(g[q]);
        side[q] = body.side_index(g[q]);
    }
    const auto gap_len = [&](std::size_t q) {
        const double d = (q + 1 < m ? g[q + 1] : g[0] + 1.0) - g[q];
        return d;
    };
    const auto foot = [](Point p, Point a, Point b) {
        const Point e = b - a;
        const double ee = dot(e, e);
        return ee > 0.0 ? dot(p - a, e) / ee : 0.0;
    };

    std::size_t cells = 0;
    sweep_cells(grid, set.size(), [&](std::size_t i, std::size_t step, double count) {
        const std::size_t j = (i + step) % m;
        if (side[i] == side[j]) {
            return;
        }
        ++cells;
        const std::size_t i1 = (i + 1) % m;
        const std::size_t j1 = (j + 1) % m;
        const Point a0 = pt[i];
        const Point a1 = pt[i1];
        const Point b0 = pt[j];
        const Point b1 = pt[j1];
        const double c00 = distance(a0, b0);
        const double c01 = distance(a0, b1);
        const double c10 = distance(a1, b0);
        const double c11 = distance(a1, b1);

        double wmax = c00;
        ArcWitness wit{g[i], g[j], LimitSide::above, LimitSide::above};
        if (c01 > wmax) {
            wmax = c01;
            wit = {g[i], g[j1], LimitSide::above, LimitSide::below};
        }
        if (c10 > wmax) {
            wmax = c10;
            wit = {g[i1], g[j], LimitSide::below, LimitSide::above};
        }
        if (c11 > wmax) {
            wmax = c11;
            wit = {g[i1], g[j1], LimitSide::below, LimitSide::below};
        }
        if (k * wmax - count > r.value) {
            consider(r, k * wmax - count, wit);
        }
        if (count <= r.value) {
            return;
        }
        double wmin = c00;
        wit = {g[i], g[j], LimitSide::above, LimitSide::above};
        if (c01 < wmin) {
            wmin = c01;
            wit = {g[i], g[j1], LimitSide::above, LimitSide::below};
        }
        if (c10 < wmin) {
            wmin = c10;
            wit = {g[i1], g[j], LimitSide::below, LimitSide::above};
        }
        if (c11 < wmin) {
            wmin = c11;
            wit = {g[i1], g[j1], LimitSide::below, LimitSide::below};
        }
        // interior feet: a corner of one segment against the other segment
        const auto try_foot = [&](Point p, Point s0, Point s1, double base, double len, bool moving_b,
                                  double fixed, LimitSide fixed_side) {
            const double lam = foot(p, s0, s1);
            if (!(lam > 0.0 && lam < 1.0)) {
                return;
            }
            const double d = distance(p, s0 + lam * (s1 - s0));
            if (d < wmin) {
                wmin = d;
                const double x = wrap_unit(base + lam * len);
                wit = moving_b ? ArcWitness{fixed, x, fixed_side, LimitSide::exact}
                               : ArcWitness{x, fixed, LimitSide::exact, fixed_side};
            }
        };
        try_foot(a0, b0, b1, g[j], gap_len(j), true, g[i], LimitSide::above);
        try_foot(a1, b0, b1, g[j], gap_len(j), true, g[i1], LimitSide::below);
        try_foot(b0, a0, a1, g[i], gap_len(i), false, g[j], LimitSide::above);
        try_foot(b1, a0, a1, g[i], gap_len(i), false, g[j1], LimitSide::below);
        if (count - k * wmin > r.value) {
            consider(r, count - k * wmin, wit);
        }
    });
    r.cells = cells;
    return r;
}

DiscReport exact_discrepancy(const ChordSet& set)
{
    return set.body().is_disk() ? exact_discrepancy_disk(set) : exact_discrepancy_polygon(set);
}

DiscReport mc_discrepancy(const ChordSet& set, std::size_t samples, std::uint64_t seed)
{
    if (samples < 1) {
        throw std::invalid_argument("mc_discrepancy: samples must be at least 1");
    }
    const ConvexBody& body = set.body();
    DiscReport r;
    r.method = DiscMethod::monte_carlo;
    r.target_coefficient = target_coefficient(set);
    r.multiplicity = set.has_duplicates();
    r.cells = samples;
    if (set.empty()) {
        return r;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < samples; ++k) {
        const double theta = kPi * unit_double(rng);
        const double u = unit_double(rng);
        const Point n{-std::sin(theta), std::cos(theta)};
        const auto [lo, hi] = body.support(n);
        const auto ends = body.clip_line(n, lo + u * (hi - lo));
        if (!ends) {
            continue;
        }
        const double a = ends->first;
        const double b = ends->second;
        if (is_endpoint(set, a) || is_endpoint(set, b)) {
            continue;
        }
        std::size_t count = 0;
        for (const Chord& c : set.chords()) {
            if (in_open_arc(c.s.value(), a, b) != in_open_arc(c.t.value(), a, b)) {
                ++count;
            }
        }
        const double value = std::abs(static_cast<double>(count) - r.target_coefficient * chord_length(body, a, b));
        consider(r, value, {a, b, LimitSide::exact, LimitSide::exact});
    }
    return r;
}

LocalizedWindow LocalizedWindow::build(const ChordSet& set, const ArcInterval& u, const ArcInterval& v,
                                       double min_separation)
{
    if (u.a == u.b || v.a == v.b) {
        throw std::invalid_argument("localized window: empty arc");
    }
    const double g1 = ArcInterval{u.b, v.a}.length();
    const double g2 = ArcInterval{v.b, u.a}.length();
    if (std::abs(u.length() + g1 + v.length() + g2 - 1.0) > 1e-12 || u.contains(v.a.value()) ||
        v.contains(u.a.value())) {
        throw std::invalid_argument("localized window: arcs overlap");
    }
    if (std::min(g1, g2) < min_separation) {
        throw std::invalid_argument("localized window: arcs closer than the minimum separation");
    }
    LocalizedWindow w{u, v, min_separation, {}};
    const double lu = u.length();
    const double lv = v.length();
    const double below_one = std::nextafter(1.0, 0.0);
    const auto local = [](double x, const ArcInterval& arc, double len, double cap) {
        return std::min(wrap_unit(x - arc.a.value()) / len, cap);
    };
    for (const Chord& c : set.chords()) {
        const double s = c.s.value();
        const double t = c.t.value();
        if (u.contains(s) && v.contains(t)) {
            w.points.push_back({local(s, u, lu, below_one), local(t, v, lv, below_one)});
        } else if (u.contains(t) && v.contains(s)) {
            w.points.push_back({local(t, u, lu, below_one), local(s, v, lv, below_one)});
        }
    }
    return w;
}

LocalizedWindow LocalizedWindow::default_window(const ChordSet& set)
{
    constexpr double kEta = 1.0 / 16.0;
    constexpr double kV0 = 1.0 / 6.0;
    return build(set, ArcInterval::from(0.0, kEta), ArcInterval::from(kV0, kV0 + kEta), kEta);
}

RectDiscReport localized_rect_sup(const ChordSet& set, const LocalizedWindow& window)
{
    const EndpointMeasure measure(set.body());
    const double u0 = window.u.a.value();
    const double v0 = window.v.a.value();
    const double lu = window.u.length();
    const double lv = window.v.length();
    const double scale = 2.0 * set.total_length() / measure.mean_chord_length_closed_form();
    const AnchoredFunction expected = [&](double x, double y) {
        const ParamRect rect{{u0, std::clamp(x, 0.0, 1.0) * lu}, {v0, std::clamp(y, 0.0, 1.0) * lv}};
        return scale * measure.rect_mass(rect);
    };
    RectDiscReport r;
    if (window.points.empty()) {
        r.value = expected(1.0, 1.0);
        r.family = RectFamily::all;
        r.witness = {{0.0, false}, {1.0, false}, {0.0, false}, {1.0, false}};
        r.candidates = 1;
    } else {
        r = rect_discrepancy_expected(to_points(window.points), expected, RectFamily::all);
    }
    const auto back = [](RectEdge e, double start, double len) {
        return RectEdge{wrap_unit(start + e.value * len), e.after};
    };
    r.witness = {back(r.witness.x0, u0, lu), back(r.witness.x1, u0, lu), back(r.witness.y0, v0, lv),
                 back(r.witness.y1, v0, lv)};
    return r;
}

}  // namespace chordisc
