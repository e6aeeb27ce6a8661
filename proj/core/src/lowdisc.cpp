#include "chordisc/lowdisc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

namespace chordisc {

SequenceKind parse_sequence_kind(std::string_view name)
{
    if (name == "digital-base2" || name == "digital") {
        return SequenceKind::digital_base2;
    }
    if (name == "hammersley-base2" || name == "hammersley") {
        return SequenceKind::hammersley_base2;
    }
    if (name == "kronecker-fibonacci" || name == "kronecker") {
        return SequenceKind::kronecker_fibonacci;
    }
    if (name == "pseudorandom" || name == "random") {
        return SequenceKind::pseudorandom;
    }
    throw std::invalid_argument("unknown sequence kind: " + std::string(name));
}

std::string to_string(SequenceKind kind)
{
    switch (kind) {
    case SequenceKind::digital_base2:
        return "digital-base2";
    case SequenceKind::hammersley_base2:
        return "hammersley-base2";
    case SequenceKind::kronecker_fibonacci:
        return "kronecker-fibonacci";
    case SequenceKind::pseudorandom:
        return "pseudorandom";
    }
    return "unknown";
}

std::string to_string(RectFamily family) { return family == RectFamily::anchored ? "anchored" : "all-rectangles"; }

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint32_t radical_inverse_bits(std::uint32_t i)
{
    i = (i << 16) | (i >> 16);
    i = ((i & 0x00ff00ffu) << 8) | ((i & 0xff00ff00u) >> 8);
    i = ((i & 0x0f0f0f0fu) << 4) | ((i & 0xf0f0f0f0u) >> 4);
    i = ((i & 0x33333333u) << 2) | ((i & 0xccccccccu) >> 2);
    i = ((i & 0x55555555u) << 1) | ((i & 0xaaaaaaaau) >> 1);
    return i;
}

namespace {

// Second Sobol coordinate: generator matrix is Pascal's triangle mod 2.
std::uint32_t sobol_second_bits(std::uint32_t i)
{
    std::uint32_t v = 1u << 31;
    std::uint32_t out = 0;
    for (; i != 0; i >>= 1) {
        if (i & 1u) {
            out ^= v;
        }
        v ^= v >> 1;
    }
    return out;
}

constexpr double kTwoPowMinus32 = 0x1.0p-32;

}  // namespace

PointSet2D ld_sequence_2d(std::size_t n, SequenceKind kind, std::uint64_t seed, bool scramble)
{
    if (n < 1) {
        throw std::invalid_argument("ld_sequence_2d: n must be at least 1");
    }
    PointSet2D ps;
    ps.generator = {kind, seed, scramble};
    ps.points.reserve(n);
    std::mt19937_64 rng(seed);
    switch (kind) {
    case SequenceKind::digital_base2: {
        if (n > (std::size_t{1} << 32)) {
            throw std::invalid_argument("digital-base2 supports at most 2^32 points");
        }
        std::uint32_t shift_x = 0;
        std::uint32_t shift_y = 0;
        if (scramble) {
            shift_x = static_cast<std::uint32_t>(rng() >> 32);
            shift_y = static_cast<std::uint32_t>(rng() >> 32);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const auto k = static_cast<std::uint32_t>(i);
            ps.points.push_back({static_cast<double>(radical_inverse_bits(k) ^ shift_x) * kTwoPowMinus32,
                                 static_cast<double>(sobol_second_bits(k) ^ shift_y) * kTwoPowMinus32});
        }
        break;
    }
    case SequenceKind::hammersley_base2: {
        if (n > (std::size_t{1} << 32)) {
            throw std::invalid_argument("hammersley-base2 supports at most 2^32 points");
        }
        const std::uint32_t shift_y = scramble ? static_cast<std::uint32_t>(rng() >> 32) : 0u;
        const double dn = static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double y = static_cast<double>(radical_inverse_bits(static_cast<std::uint32_t>(i)) ^ shift_y) *
                             kTwoPowMinus32;
            ps.points.push_back({(static_cast<double>(i) + 0.5) / dn, wrap_unit(y + 0.5 / dn)});
        }
        break;
    }
    case SequenceKind::kronecker_fibonacci: {
        const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
        double sx = 0.0;
        double sy = 0.0;
        if (scramble) {
            sx = unit_double(rng);
            sy = unit_double(rng);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double x = static_cast<double>(i) / static_cast<double>(n);
            const double y = static_cast<double>(i) * golden;
            ps.points.push_back({wrap_unit(x + sx), wrap_unit(y - std::floor(y) + sy)});
        }
        break;
    }
    case SequenceKind::pseudorandom:
        for (std::size_t i = 0; i < n; ++i) {
            const double x = unit_double(rng);
            const double y = unit_double(rng);
            ps.points.push_back({x, y});
        }
        break;
    }
    return ps;
}

TransportResult transport_to_measure(const PointSet2D& ps, const EndpointMeasure& measure)
{
    const ConvexBody& body = measure.body();
    const double min_length = 1e-9 * body.diameter();
    TransportResult out;
    out.pairs.reserve(ps.points.size());
    std::set<std::pair<double, double>> seen;

    for (const Point& p : ps.points) {
        double s = wrap_unit(p.x);
        double q = std::clamp(p.y, 0.0, 1.0);
        double step = 1e-9;
        for (int attempt = 0;; ++attempt) {
            if (attempt > 200) {
                throw std::runtime_error("transport_to_measure: could not resolve a degenerate pair");
            }
            if (body.is_vertex_param(s)) {
                s = wrap_unit(s + 0x1.0p-40);
                ++out.perturbations;
                continue;
            }
            bool ok = true;
            double t = s;
            try {
                t = measure.conditional_inverse(s, q);
                const Chord c = chord_from_params(body, s, t);
                ok = c.length >= min_length;
            } catch (const DegenerateChord&) {
                ok = false;
            }
            if (ok) {
                const auto key = s < t ? std::make_pair(s, t) : std::make_pair(t, s);
                if (seen.insert(key).second) {
                    out.pairs.push_back({s, t});
                    break;
                }
            }
            // deterministic tie-break: move q toward the middle of (0, 1)
            q = q < 0.5 ? q + step : q - step;
            step *= 2.0;
            ++out.perturbations;
        }
    }
    return out;
}

AnchoredFunction uniform_mass()
{
    return [](double u, double v) { return std::clamp(u, 0.0, 1.0) * std::clamp(v, 0.0, 1.0); };
}

AnchoredFunction measure_mass(const EndpointMeasure& measure)
{
    return [&measure](double u, double v) { return measure.anchored_mass(u, v); };
}

std::vector<Point> to_points(std::span<const ParamPair> pairs)
{
    std::vector<Point> out;
    out.reserve(pairs.size());
    for (const ParamPair& z : pairs) {
        out.push_back({z.s, z.t});
    }
    return out;
}

namespace {

struct RankedGrid {
    std::vector<double> gx;  // 0, distinct x ascending, 1
    std::vector<double> gy;
    std::vector<std::size_t> xr;  // rank of each point in 1..K
    std::vector<std::size_t> yr;
    // points grouped by x rank: column[r] lists y ranks
    std::vector<std::vector<std::size_t>> column;
};

RankedGrid rank_points(std::span<const Point> points)
{
    RankedGrid g;
    std::vector<double> xs;
    std::vector<double> ys;
    for (const Point& p : points) {
        if (!(p.x >= 0.0 && p.x < 1.0 && p.y >= 0.0 && p.y < 1.0)) {
            throw std::invalid_argument("rect_discrepancy: points must lie in [0,1)^2");
        }
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    g.gx.reserve(xs.size() + 2);
    g.gx.push_back(0.0);
    g.gx.insert(g.gx.end(), xs.begin(), xs.end());
    g.gx.push_back(1.0);
    g.gy.reserve(ys.size() + 2);
    g.gy.push_back(0.0);
    g.gy.insert(g.gy.end(), ys.begin(), ys.end());
    g.gy.push_back(1.0);
    g.column.resize(g.gx.size());
    for (const Point& p : points) {
        const auto rx = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), p.x) - xs.begin()) + 1;
        const auto ry = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), p.y) - ys.begin()) + 1;
        g.xr.push_back(rx);
        g.yr.push_back(ry);
        g.column[rx].push_back(ry);
    }
    return g;
}

void consider(RectDiscReport& report, double value, const RectWitness& w)
{
    if (value > report.value) {
        report.value = value;
        report.witness = w;
    }
}

RectDiscReport anchored_sup(const RankedGrid& g, const AnchoredFunction& expected)
{
    RectDiscReport report;
    report.family = RectFamily::anchored;
    report.witness = {{0.0, false}, {0.0, false}, {0.0, false}, {0.0, false}};
    const std::size_t kx = g.gx.size() - 2;
    const std::size_t ky = g.gy.size() - 2;
    // le[l] = #points with x rank <= j and y rank <= l (for the current j)
    std::vector<double> le(ky + 2, 0.0);
    std::vector<double> before(ky + 2, 0.0);
    for (std::size_t j = 1; j <= kx + 1; ++j) {
        before = le;
        if (j <= kx) {
            for (std::size_t r : g.column[j]) {
                for (std::size_t l = r; l <= ky + 1; ++l) {
                    le[l] += 1.0;
                }
            }
        }
        for (std::size_t l = 1; l <= ky + 1; ++l) {
            const double e = expected(g.gx[j], g.gy[l]);
            // [0, g_j) x [0, g_l): points strictly below both
            consider(report, e - before[l - 1], {{0.0, false}, {g.gx[j], false}, {0.0, false}, {g.gy[l], false}});
            if (j <= kx && l <= ky) {
                // [0, x_j] x [0, y_l] as a limit of half-open boxes
                consider(report, le[l] - e, {{0.0, false}, {g.gx[j], true}, {0.0, false}, {g.gy[l], true}});
            }
            report.candidates += 2;
        }
    }
    return report;
}

RectDiscReport all_rect_sup(const RankedGrid& g, const AnchoredFunction& expected)
{
    RectDiscReport report;
    report.family = RectFamily::all;
    report.witness = {{0.0, false}, {0.0, false}, {0.0, false}, {0.0, false}};
    const std::size_t nx = g.gx.size();
    const std::size_t ny = g.gy.size();
    const std::size_t kx = nx - 2;
    const std::size_t ky = ny - 2;
    if (nx * ny > (std::size_t{1} << 26)) {
        throw std::invalid_argument("all-rectangles discrepancy: point set too large for the exact search");
    }
    std::vector<double> table(nx * ny);
    for (std::size_t a = 0; a < nx; ++a) {
        for (std::size_t b = 0; b < ny; ++b) {
            table[a * ny + b] = expected(g.gx[a], g.gy[b]);
        }
    }
    const auto e = [&](std::size_t a, std::size_t b) { return table[a * ny + b]; };

    std::vector<double> cnt(ny, 0.0);
    std::vector<double> cpref(ny, 0.0);
    std::vector<double> row(ny, 0.0);

    // over-count: closed x-range [x_i, x_j], closed y-range [y_k, y_l]
    for (std::size_t i = 1; i <= kx; ++i) {
        std::fill(cnt.begin(), cnt.end(), 0.0);
        for (std::size_t j = i; j <= kx; ++j) {
            for (std::size_t r : g.column[j]) {
                cnt[r] += 1.0;
            }
            cpref[0] = 0.0;
            for (std::size_t l = 1; l <= ky; ++l) {
                cpref[l] = cpref[l - 1] + cnt[l];
                row[l] = e(j, l) - e(i, l);
            }
            double min_b = std::numeric_limits<double>::infinity();
            std::size_t arg_k = 1;
            for (std::size_t l = 1; l <= ky; ++l) {
                const double b = cpref[l - 1] - row[l];
                if (b < min_b) {
                    min_b = b;
                    arg_k = l;
                }
                const double value = (cpref[l] - row[l]) - min_b;
                if (value > report.value) {
                    report.value = value;
                    report.witness = {{g.gx[i], false}, {g.gx[j], true}, {g.gy[arg_k], false}, {g.gy[l], true}};
                }
            }
            report.candidates += ky * (ky + 1) / 2;
        }
    }

    // under-count: open x-range (g_i, g_j), open y-range (g_k, g_l)
    for (std::size_t i = 0; i + 1 < nx; ++i) {
        std::fill(cnt.begin(), cnt.end(), 0.0);
        for (std::size_t j = i + 1; j < nx; ++j) {
            if (j - 1 >= i + 1) {
                for (std::size_t r : g.column[j - 1]) {
                    cnt[r] += 1.0;
                }
            }
            cpref[0] = 0.0;
            row[0] = e(j, 0) - e(i, 0);
            for (std::size_t l = 1; l < ny; ++l) {
                cpref[l] = cpref[l - 1] + cnt[l];
                row[l] = e(j, l) - e(i, l);
            }
            double min_b = std::numeric_limits<double>::infinity();
            std::size_t arg_k = 0;
            for (std::size_t l = 1; l < ny; ++l) {
                const double b = row[l - 1] - cpref[l - 1];
                if (b < min_b) {
                    min_b = b;
                    arg_k = l - 1;
                }
                const double value = (row[l] - cpref[l - 1]) - min_b;
                if (value > report.value) {
                    report.value = value;
                    report.witness = {{g.gx[i], true}, {g.gx[j], false}, {g.gy[arg_k], true}, {g.gy[l], false}};
                }
            }
            report.candidates += (ny - 1) * ny / 2;
        }
    }
    return report;
}

}  // namespace

RectDiscReport rect_discrepancy_expected(std::span<const Point> points, const AnchoredFunction& expected,
                                         RectFamily family)
{
    if (points.empty()) {
        throw std::invalid_argument("rect_discrepancy: empty point set");
    }
    const RankedGrid g = rank_points(points);
    return family == RectFamily::anchored ? anchored_sup(g, expected) : all_rect_sup(g, expected);
}

RectDiscReport rect_discrepancy(std::span<const Point> points, const AnchoredFunction& mass, RectFamily family)
{
    const double n = static_cast<double>(points.size());
    return rect_discrepancy_expected(
        points, [&mass, n](double u, double v) { return n * mass(u, v); }, family);
}

double evaluate_rect(std::span<const Point> points, const AnchoredFunction& expected, const RectWitness& rect)
{
    const auto inside = [](double x, RectEdge lo, RectEdge hi) {
        const bool above = lo.after ? x > lo.value : x >= lo.value;
        const bool below = hi.after ? x <= hi.value : x < hi.value;
        return above && below;
    };
    double count = 0.0;
    for (const Point& p : points) {
        if (inside(p.x, rect.x0, rect.x1) && inside(p.y, rect.y0, rect.y1)) {
            count += 1.0;
        }
    }
    const double mass = expected(rect.x1.value, rect.y1.value) - expected(rect.x0.value, rect.y1.value) -
                        expected(rect.x1.value, rect.y0.value) + expected(rect.x0.value, rect.y0.value);
    return std::abs(count - mass);
}

}  // namespace chordisc
