#include "chordisc/chordmeasure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "quadrature.hpp"

namespace chordisc {

CyclicInterval CyclicInterval::from_to(double a, double b)
{
    a = wrap_unit(a);
    b = wrap_unit(b);
    double len = b - a;
    if (len < 0.0) {
        len += 1.0;
    }
    return {a, len};
}

std::vector<std::pair<double, double>> CyclicInterval::linear_pieces() const
{
    std::vector<std::pair<double, double>> out;
    if (empty()) {
        return out;
    }
    if (length >= 1.0) {
        out.emplace_back(0.0, 1.0);
        return out;
    }
    const double a = wrap_unit(start);
    const double b = a + length;
    if (b <= 1.0) {
        out.emplace_back(a, b);
    } else {
        out.emplace_back(a, 1.0);
        out.emplace_back(0.0, b - 1.0);
    }
    return out;
}

SampleGrid sample_grid(const std::function<double(double, double)>& f, std::size_t n)
{
    if (n < 1) {
        throw std::invalid_argument("sample grid needs at least 2x2 samples");
    }
    SampleGrid g;
    g.n = n;
    g.values.resize((n + 1) * (n + 1));
    const double h = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; j <= n; ++j) {
            g.values[i * (n + 1) + j] = f(static_cast<double>(i) * h, static_cast<double>(j) * h);
        }
    }
    return g;
}

VariationBudget hk_variation(const SampleGrid& grid, std::optional<double> diagonal_slope)
{
    const std::size_t n = grid.n;
    if (n < 1 || grid.values.size() != (n + 1) * (n + 1)) {
        throw std::invalid_argument("hk_variation: malformed sample grid");
    }
    VariationBudget b;
    b.resolution = n;
    b.corner = std::abs(grid.at(n, n));
    for (std::size_t i = 0; i < n; ++i) {
        b.face_x += std::abs(grid.at(i + 1, n) - grid.at(i, n));
        b.face_y += std::abs(grid.at(n, i + 1) - grid.at(n, i));
    }
    const double h = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d2 = grid.at(i + 1, j + 1) - grid.at(i, j + 1) - grid.at(i + 1, j) + grid.at(i, j);
            if (diagonal_slope && i == j) {
                // second difference of slope * |x - y| over a diagonal cell is -2 slope h
                const double kink = -2.0 * *diagonal_slope * h;
                b.mixed += std::abs(d2 - kink) + std::abs(kink);
            } else {
                b.mixed += std::abs(d2);
            }
        }
    }
    b.total = b.corner + b.face_x + b.face_y + b.mixed;
    return b;
}

EndpointMeasure::EndpointMeasure(ConvexBody body, double density_scale) : body_(std::move(body)), scale_(density_scale)
{
    if (!(density_scale > 0.0)) {
        throw std::invalid_argument("density scale must be positive");
    }
}

double EndpointMeasure::chord_length(double s, double t) const { return chordisc::chord_length(body_, s, t); }

double EndpointMeasure::density(double s, double t) const
{
    s = wrap_unit(s);
    t = wrap_unit(t);
    if (s == t) {
        return 0.0;
    }
    if (body_.is_disk()) {
        return scale_ * 0.5 * kPi * std::abs(std::sin(kPi * (t - s)));
    }
    const auto [s0, s1] = body_.sides_containing(s);
    const auto [t0, t1] = body_.sides_containing(t);
    for (auto a : {s0, s1}) {
        for (auto b : {t0, t1}) {
            if (a && b && *a == *b) {
                return 0.0;
            }
        }
    }
    const Point d = body_.boundary_point(t) - body_.boundary_point(s);
    const double w = norm(d);
    const double sin_s = std::abs(cross(body_.tangent(s), d)) / w;
    const double sin_t = std::abs(cross(body_.tangent(t), d)) / w;
    return scale_ * body_.perimeter() * sin_s * sin_t / (2.0 * w);
}

double EndpointMeasure::anchored_mass(double u, double v) const
{
    u = std::clamp(u, 0.0, 1.0);
    v = std::clamp(v, 0.0, 1.0);
    // mu([0,u) x [0,v)) = (W(u,v) - W(0,v) - W(u,0)) / (2P) + min(u,v); the
    // min term is the diagonal kink of the chord-length function W.
    double smooth = 0.0;
    if (body_.is_disk()) {
        smooth = (std::sin(kPi * std::abs(v - u)) - std::sin(kPi * u) - std::sin(kPi * v)) / (2.0 * kPi);
    } else {
        smooth = (chord_length(u, v) - chord_length(0.0, v) - chord_length(u, 0.0)) / (2.0 * body_.perimeter());
    }
    return scale_ * (smooth + std::min(u, v));
}

double EndpointMeasure::rect_mass(const ParamRect& rect) const
{
    double total = 0.0;
    for (const auto& [a, b] : rect.s.linear_pieces()) {
        for (const auto& [c, d] : rect.t.linear_pieces()) {
            total += anchored_mass(b, d) - anchored_mass(a, d) - anchored_mass(b, c) + anchored_mass(a, c);
        }
    }
    return total;
}

double EndpointMeasure::conditional_cdf(double s, double gap) const
{
    if (gap <= 0.0) {
        return 0.0;
    }
    if (gap >= 1.0) {
        return 1.0;
    }
    if (body_.is_disk()) {
        return 0.5 * (1.0 - std::cos(kPi * gap));
    }
    const Point d = body_.boundary_point(s + gap) - body_.boundary_point(s);
    const double w = norm(d);
    if (w == 0.0) {
        return 0.0;
    }
    const double c = std::clamp(dot(body_.tangent(s), d) / w, -1.0, 1.0);
    return 0.5 * (1.0 - c);
}

double EndpointMeasure::conditional_inverse(double s, double q) const
{
    s = wrap_unit(s);
    if (q <= 0.0) {
        return s;
    }
    // the chord direction angle phi from the tangent has CDF (1 - cos phi) / 2
    const double phi = std::acos(std::clamp(1.0 - 2.0 * q, -1.0, 1.0));
    if (phi >= kPi) {
        return s;
    }
    return body_.ray_exit(s, phi);
}

double EndpointMeasure::mean_chord_length_closed_form() const
{
    return kPi * body_.area() / body_.perimeter();
}

double EndpointMeasure::mean_chord_length() const
{
    const double closed = mean_chord_length_closed_form();
    const double quad = mean_chord_length_quadrature();
    if (std::abs(quad - closed * scale_) > 1e-6 * closed) {
        throw std::logic_error("mean chord length: quadrature disagrees with pi|Omega|/perimeter");
    }
    return closed;
}

double EndpointMeasure::mean_chord_length_quadrature(const QuadratureOptions& opt) const
{
    return integrate([this](double s, double t) { return chord_length(s, t); }, opt);
}

double EndpointMeasure::integrate(const std::function<double(double, double)>& f, const QuadratureOptions& opt) const
{
    const detail::GaussRule rule = detail::gauss_legendre(opt.order);

    if (body_.is_disk()) {
        // t = s + phi / pi; split phi where t wraps through 0
        const auto inner = [&](double s) {
            const auto g = [&](double phi) { return 0.5 * std::sin(phi) * f(s, wrap_unit(s + phi / kPi)); };
            const double wrap = kPi * (1.0 - s);
            if (wrap > 0.0 && wrap < kPi) {
                return detail::integrate_panel(rule, 0.0, wrap, g) + detail::integrate_panel(rule, wrap, kPi, g);
            }
            return detail::integrate_panel(rule, 0.0, kPi, g);
        };
        double total = 0.0;
        constexpr int kPanels = 16;
        for (int p = 0; p < kPanels; ++p) {
            total += detail::integrate_panel(rule, static_cast<double>(p) / kPanels,
                                             static_cast<double>(p + 1) / kPanels, inner);
        }
        return scale_ * total;
    }

    const auto& v = body_.vertices();
    const auto& cum = body_.cumulative_length();
    const std::size_t n = v.size();
    const double per = body_.perimeter();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double len = cum[i + 1] - cum[i];
        const Point tau = (1.0 / len) * (v[(i + 1) % n] - v[i]);
        const auto inner = [&](double frac) {
            const Point origin = v[i] + (frac * len) * tau;
            const double s = (cum[i] + frac * len) / per;
            double sum = 0.0;
            double prev_angle = 0.0;
            for (std::size_t k = 1; k < n; ++k) {
                const std::size_t side = (i + k) % n;
                const Point to_next = v[(side + 1) % n] - origin;
                const double next_angle = (k + 1 == n) ? kPi : std::atan2(cross(tau, to_next), dot(tau, to_next));
                const Point e = v[(side + 1) % n] - v[side];
                const double side_len = cum[side + 1] - cum[side];
                const auto g = [&](double phi) {
                    const Point d{tau.x * std::cos(phi) - tau.y * std::sin(phi),
                                  tau.x * std::sin(phi) + tau.y * std::cos(phi)};
                    const double lambda = std::clamp(cross(v[side] - origin, d) / cross(d, e), 0.0, 1.0);
                    const double t = wrap_unit((cum[side] + lambda * side_len) / per);
                    return 0.5 * std::sin(phi) * f(s, t);
                };
                if (next_angle > prev_angle) {
                    sum += detail::integrate_graded(rule, prev_angle, next_angle, g);
                }
                prev_angle = std::max(prev_angle, next_angle);
            }
            return sum;
        };
        total += detail::integrate_graded(rule, 0.0, 1.0, inner) * len / per;
    }
    return scale_ * total;
}

double EndpointMeasure::crossing_mass(const Chord& test) const
{
    return scale_ * 2.0 * test.length / body_.perimeter();
}

double EndpointMeasure::crossing_mass_by_rectangles(const Chord& test) const
{
    const CyclicInterval arc = CyclicInterval::from_to(test.s.value(), test.t.value());
    const CyclicInterval rest = CyclicInterval::from_to(test.t.value(), test.s.value());
    return rect_mass({arc, rest}) + rect_mass({rest, arc});
}

KoksmaRecord koksma_gap_check(std::span<const ParamPair> points, const EndpointMeasure& measure,
                              const std::function<double(double, double)>& f, const VariationBudget& variation,
                              double rect_discrepancy)
{
    KoksmaRecord r;
    r.integral = measure.integrate(f);
    double sum = 0.0;
    for (const ParamPair& z : points) {
        sum += f(z.s, z.t);
    }
    const double n = static_cast<double>(points.size());
    r.lhs = std::abs(sum - n * r.integral);
    r.variation = variation.total;
    r.rect_discrepancy = rect_discrepancy;
    r.bound = variation.total * rect_discrepancy;
    r.holds = r.lhs <= r.bound + 1e-9 * n;
    return r;
}

}  // namespace chordisc
