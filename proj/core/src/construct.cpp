#include "chordisc/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "chordisc/chordmeasure.hpp"

namespace chordisc {

BuildMethod parse_build_method(std::string_view name)
{
    if (name == "transport") {
        return BuildMethod::transport;
    }
    if (name == "random") {
        return BuildMethod::random;
    }
    if (name == "direction-lattice" || name == "lattice") {
        return BuildMethod::direction_lattice;
    }
    throw std::invalid_argument("unknown build method: " + std::string(name));
}

std::string to_string(BuildMethod method)
{
    switch (method) {
    case BuildMethod::transport:
        return "transport";
    case BuildMethod::random:
        return "random";
    case BuildMethod::direction_lattice:
        return "direction-lattice";
    }
    return "unknown";
}

namespace {

constexpr double kNudge = 0x1.0p-40;

// Moves repeated endpoint values by 2^-40 until all 2N values are distinct.
std::size_t separate_endpoints(std::vector<ParamPair>& pairs)
{
    std::size_t nudges = 0;
    for (int round = 0; round < 64; ++round) {
        std::vector<std::pair<double, std::size_t>> ends;
        ends.reserve(2 * pairs.size());
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            ends.emplace_back(pairs[i].s, 2 * i);
            ends.emplace_back(pairs[i].t, 2 * i + 1);
        }
        std::sort(ends.begin(), ends.end());
        bool changed = false;
        for (std::size_t k = 1; k < ends.size(); ++k) {
            if (ends[k].first == ends[k - 1].first) {
                const std::size_t id = ends[k].second;
                double& v = (id % 2 == 0) ? pairs[id / 2].s : pairs[id / 2].t;
                v = wrap_unit(v + kNudge);
                ++nudges;
                changed = true;
            }
        }
        if (!changed) {
            return nudges;
        }
    }
    throw std::runtime_error("could not separate coincident chord endpoints");
}

std::vector<Chord> chords_of(const ConvexBody& body, const std::vector<ParamPair>& pairs)
{
    std::vector<Chord> out;
    out.reserve(pairs.size());
    for (const ParamPair& z : pairs) {
        out.push_back(chord_from_params(body, z.s, z.t));
    }
    return out;
}

BuildResult finish(const ConvexBody& body, const EndpointMeasure& measure, std::vector<ParamPair> pairs,
                   std::size_t perturbations, RectAudit audit)
{
    perturbations += separate_endpoints(pairs);
    BuildResult r{ChordSet(body, chords_of(body, pairs)), perturbations, pairs, std::nullopt};
    if (audit != RectAudit::none && !pairs.empty()) {
        const std::vector<Point> pts = to_points(pairs);
        r.rect = rect_discrepancy(pts, measure_mass(measure),
                                  audit == RectAudit::all ? RectFamily::all : RectFamily::anchored);
    }
    return r;
}

double fold_direction(double a)
{
    a = std::fmod(a, kPi);
    return a < 0.0 ? a + kPi : a;
}

double direction_gap(double a, double b)
{
    const double d = std::abs(fold_direction(a) - fold_direction(b));
    return std::min(d, kPi - d);
}

Point normal_of(double theta) { return {-std::sin(theta), std::cos(theta)}; }

// Length of the intersection of the line {dot(n, x) = p} with the body.
double section_length(const ConvexBody& body, double theta, double p)
{
    const Point n = normal_of(theta);
    if (body.is_disk()) {
        const double h = p - dot(n, body.center());
        const double r = body.radius();
        return std::abs(h) >= r ? 0.0 : 2.0 * std::sqrt(r * r - h * h);
    }
    const Point u{std::cos(theta), std::sin(theta)};
    const auto& v = body.vertices();
    const std::size_t m = v.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < m; ++i) {
        const Point a = v[i];
        const Point b = v[(i + 1) % m];
        const double ha = dot(n, a) - p;
        const double hb = dot(n, b) - p;
        if (ha == 0.0) {
            lo = std::min(lo, dot(u, a));
            hi = std::max(hi, dot(u, a));
        }
        if ((ha < 0.0 && hb > 0.0) || (ha > 0.0 && hb < 0.0)) {
            const Point x = a + (ha / (ha - hb)) * (b - a);
            lo = std::min(lo, dot(u, x));
            hi = std::max(hi, dot(u, x));
        }
    }
    return hi > lo ? hi - lo : 0.0;
}

// Offset in [lo, hi] where the section length peaks.
double peak_offset(const ConvexBody& body, double theta)
{
    const Point n = normal_of(theta);
    if (body.is_disk()) {
        return dot(n, body.center());
    }
    double best = 0.0;
    double best_len = -1.0;
    for (const Point& v : body.vertices()) {
        const double p = dot(n, v);
        const double len = section_length(body, theta, p);
        if (len > best_len) {
            best_len = len;
            best = p;
        }
    }
    return best;
}

std::vector<double> side_directions(const ConvexBody& body)
{
    std::vector<double> out;
    const auto& v = body.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point e = v[(i + 1) % v.size()] - v[i];
        out.push_back(fold_direction(std::atan2(e.y, e.x)));
    }
    return out;
}

double nearest_side_gap(const std::vector<double>& sides, double theta)
{
    double g = kPi;
    for (double a : sides) {
        g = std::min(g, direction_gap(a, theta));
    }
    return g;
}

}  // namespace

BuildResult build_transport(const ConvexBody& body, std::size_t n, SequenceKind generator, std::uint64_t seed,
                            bool scramble, RectAudit audit)
{
    if (n < 1) {
        throw std::invalid_argument("build_transport: N must be at least 1");
    }
    const EndpointMeasure measure(body);
    TransportResult tr = transport_to_measure(ld_sequence_2d(n, generator, seed, scramble), measure);
    return finish(body, measure, std::move(tr.pairs), tr.perturbations, audit);
}

BuildResult build_random(const ConvexBody& body, std::size_t n, std::uint64_t seed, RectAudit audit)
{
    return build_transport(body, n, SequenceKind::pseudorandom, seed, false, audit);
}

BuildResult build_direction_lattice(const ConvexBody& body, std::size_t directions, std::size_t offsets,
                                    ShiftMode shift, std::uint64_t seed)
{
    if (directions < 1 || offsets < 1) {
        throw std::invalid_argument("build_direction_lattice: m and k must be at least 1");
    }
    std::mt19937_64 rng(seed);
    std::vector<ParamPair> pairs;
    pairs.reserve(directions * offsets);
    for (std::size_t j = 0; j < directions; ++j) {
        const double theta = static_cast<double>(j) * kPi / static_cast<double>(directions);
        const Point n = normal_of(theta);
        const auto [lo, hi] = body.support(n);
        const double u = shift == ShiftMode::centered ? 0.5 : unit_double(rng);
        for (std::size_t i = 0; i < offsets; ++i) {
            const double p = lo + (static_cast<double>(i) + u) * (hi - lo) / static_cast<double>(offsets);
            const auto ends = body.clip_line(n, p);
            if (!ends) {
                continue;
            }
            try {
                (void)chord_from_params(body, ends->first, ends->second);
            } catch (const DegenerateChord&) {
                continue;
            }
            pairs.push_back({ends->first, ends->second});
        }
    }
    const EndpointMeasure measure(body);
    return finish(body, measure, std::move(pairs), 0, RectAudit::none);
}

BuildResult build(const ConvexBody& body, const BuildRecipe& recipe)
{
    switch (recipe.method) {
    case BuildMethod::transport:
        return build_transport(body, recipe.n, recipe.generator, recipe.seed, recipe.scramble);
    case BuildMethod::random:
        return build_random(body, recipe.n, recipe.seed);
    case BuildMethod::direction_lattice:
        return build_direction_lattice(body, recipe.directions, recipe.offsets, recipe.shift, recipe.seed);
    }
    throw std::invalid_argument("unknown build method");
}

double max_chord_in_direction(const ConvexBody& body, double theta)
{
    if (body.is_disk()) {
        return 2.0 * body.radius();
    }
    return section_length(body, theta, peak_offset(body, theta));
}

ChordWindow chord_unit_window(const ConvexBody& body)
{
    if (body.is_disk()) {
        return {0.0, kPi, 2.0 * body.radius()};
    }
    const std::vector<double> sides = side_directions(body);
    constexpr int kCenters = 720;
    constexpr int kSamples = 33;
    ChordWindow best;
    for (int c = 0; c < kCenters; ++c) {
        const double center = kPi * (static_cast<double>(c) + 0.5) / kCenters;
        const double half = std::min(0.05, nearest_side_gap(sides, center) - 1e-3);
        if (half <= 0.0) {
            continue;
        }
        double worst = std::numeric_limits<double>::infinity();
        for (int k = 0; k < kSamples; ++k) {
            const double theta = center - half + 2.0 * half * k / (kSamples - 1);
            worst = std::min(worst, max_chord_in_direction(body, theta));
        }
        if (worst > best.unit_length) {
            best = {center - half, center + half, worst};
        }
    }
    if (best.unit_length <= 0.0) {
        throw std::runtime_error("no direction window avoids the polygon side directions");
    }
    best.unit_length *= 1.0 - 1e-6;
    return best;
}

namespace {

// Chord of the given length in direction theta, on the low side of the peak.
std::optional<ParamPair> chord_with_length(const ConvexBody& body, double theta, double length)
{
    const Point n = normal_of(theta);
    double p = 0.0;
    if (body.is_disk()) {
        const double r = body.radius();
        const double half = 0.5 * length;
        p = dot(n, body.center()) - std::sqrt(std::max(0.0, r * r - half * half));
    } else {
        double lo = body.support(n).first;
        double hi = peak_offset(body, theta);
        if (section_length(body, theta, hi) < length) {
            return std::nullopt;
        }
        for (int it = 0; it < 200 && lo < hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) {
                break;
            }
            (section_length(body, theta, mid) < length ? lo : hi) = mid;
        }
        p = hi;
    }
    const auto ends = body.clip_line(n, p);
    if (!ends) {
        return std::nullopt;
    }
    return ParamPair{ends->first, ends->second};
}

}  // namespace

std::pair<ChordSet, CorrectionReport> correct_length(const ChordSet& base, double target_length)
{
    const ConvexBody& body = base.body();
    const double current = base.total_length();
    if (!(target_length >= current)) {
        throw std::invalid_argument("correct_length: target length is below the current length");
    }
    CorrectionReport report;
    const ChordWindow window = chord_unit_window(body);
    const double d = window.unit_length;
    report.unit_length = d;
    report.deficit = target_length - current;
    report.budget_bound = std::max(1.0, 1.0 / d) * (report.deficit + 1.0);

    std::vector<double> lengths;
    if (report.deficit > 0.0) {
        const double whole = std::floor(report.deficit / d);
        auto n = static_cast<std::size_t>(whole);
        double r = report.deficit - whole * d;
        if (r < 0.0) {
            r = 0.0;
        }
        lengths.assign(n, d);
        if (r >= 1e-6 * d) {
            lengths.push_back(r);
        } else if (n >= 1) {
            lengths.back() = 0.5 * (d + r);
            lengths.push_back(0.5 * (d + r));
        } else {
            lengths.push_back(r);
        }
    }

    std::vector<double> used_dirs;
    used_dirs.reserve(base.size() + lengths.size());
    for (const Chord& c : base.chords()) {
        used_dirs.push_back(chord_direction(body, c));
    }
    std::sort(used_dirs.begin(), used_dirs.end());
    const auto direction_taken = [&](double theta) {
        const auto it = std::lower_bound(used_dirs.begin(), used_dirs.end(), theta);
        if (it != used_dirs.end() && direction_gap(*it, theta) < 1e-6) {
            return true;
        }
        if (it != used_dirs.begin() && direction_gap(*(it - 1), theta) < 1e-6) {
            return true;
        }
        // wrap-around neighbours of the folded range
        return !used_dirs.empty() &&
               (direction_gap(used_dirs.front(), theta) < 1e-6 || direction_gap(used_dirs.back(), theta) < 1e-6);
    };
    std::set<double> taken_ends(base.endpoints().begin(), base.endpoints().end());

    std::vector<Chord> chords = base.chords();
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    std::size_t k = 0;
    double sum_added = 0.0;
    for (std::size_t idx = 0; idx < lengths.size(); ++idx) {
        double want = lengths[idx];
        if (idx + 1 == lengths.size()) {
            // the last chord absorbs the rounding of the earlier ones
            want = target_length - current - sum_added;
        }
        for (;;) {
            ++k;
            if (k > 1000000) {
                throw std::runtime_error("correct_length: no admissible direction found");
            }
            double frac = static_cast<double>(k) * golden;
            frac -= std::floor(frac);
            const double theta = fold_direction(window.lo + frac * (window.hi - window.lo));
            if (direction_taken(theta)) {
                continue;
            }
            if (!body.is_disk() && max_chord_in_direction(body, theta) < want) {
                continue;
            }
            const auto z = chord_with_length(body, theta, want);
            if (!z || taken_ends.count(z->s) || taken_ends.count(z->t)) {
                continue;
            }
            Chord c;
            try {
                c = chord_from_params(body, z->s, z->t);
            } catch (const DegenerateChord&) {
                continue;
            }
            taken_ends.insert(z->s);
            taken_ends.insert(z->t);
            used_dirs.insert(std::lower_bound(used_dirs.begin(), used_dirs.end(), theta), theta);
            sum_added += c.length;
            report.added.push_back(c);
            chords.push_back(c);
            break;
        }
    }
    report.added_length = sum_added;
    report.budget_used = report.added.size();
    return {ChordSet(body, std::move(chords)), std::move(report)};
}

double chord_length_variation(const ConvexBody& body, std::size_t resolution)
{
    const SampleGrid grid =
        sample_grid([&body](double s, double t) { return chord_length(body, s, t); }, resolution);
    return hk_variation(grid, body.perimeter()).total;
}

LengthBuild build_to_length(const ConvexBody& body, double target_length, const BuildRecipe& recipe,
                            std::optional<std::size_t> reserve)
{
    if (!(target_length > 0.0)) {
        throw std::invalid_argument("build_to_length: target length must be positive");
    }
    if (recipe.method == BuildMethod::direction_lattice) {
        throw std::invalid_argument("build_to_length supports transport and random methods");
    }
    const EndpointMeasure measure(body);
    const double mean = measure.mean_chord_length_closed_form();
    const auto n0 = static_cast<std::size_t>(std::floor(target_length / mean));

    const auto make = [&](std::size_t n, RectAudit audit) {
        if (recipe.method == BuildMethod::random) {
            return build_random(body, n, recipe.seed, audit);
        }
        return build_transport(body, n, recipe.generator, recipe.seed, recipe.scramble, audit);
    };

    LengthBuild out;
    if (reserve) {
        out.reserve = *reserve;
    } else if (n0 >= 1) {
        const BuildResult probe = make(n0, RectAudit::anchored);
        const double delta = probe.rect ? probe.rect->value : 0.0;
        out.reserve = static_cast<std::size_t>(std::ceil(delta * chord_length_variation(body) / mean));
    }
    std::size_t n = n0 > out.reserve ? n0 - out.reserve : 0;
    for (;;) {
        if (n == 0) {
            out.base = BuildResult{ChordSet(body, {}), 0, {}, std::nullopt};
            break;
        }
        out.base = make(n, RectAudit::none);
        if (out.base.set.total_length() <= target_length) {
            out.base.rect = rect_discrepancy(to_points(out.base.pairs), measure_mass(measure), RectFamily::anchored);
            break;
        }
        --n;
    }
    auto [set, correction] = correct_length(out.base.set, target_length);
    out.set = std::move(set);
    out.correction = std::move(correction);
    return out;
}

}  // namespace chordisc
