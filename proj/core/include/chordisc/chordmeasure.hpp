#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "chordisc/geometry.hpp"

namespace chordisc {

// Ordered endpoint pair in [0,1)^2.
struct ParamPair {
    double s = 0.0;
    double t = 0.0;
};

// Half-open cyclic interval [start, start + length) on the unit circle.
struct CyclicInterval {
    double start = 0.0;
    double length = 0.0;

    static CyclicInterval full() { return {0.0, 1.0}; }
    static CyclicInterval from_to(double a, double b);  // [a, b) counterclockwise

    bool empty() const { return length <= 0.0; }
    // At most two linear pieces [lo, hi) of [0, 1].
    std::vector<std::pair<double, double>> linear_pieces() const;
};

struct ParamRect {
    CyclicInterval s;
    CyclicInterval t;
};

// Function sampled on the (n+1) x (n+1) grid {i/n} x {j/n}, row-major in x.
struct SampleGrid {
    std::size_t n = 0;
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const { return values[i * (n + 1) + j]; }
};

SampleGrid sample_grid(const std::function<double(double, double)>& f, std::size_t n);

struct VariationBudget {
    double total = 0.0;
    double corner = 0.0;
    double face_x = 0.0;  // variation of f(., 1)
    double face_y = 0.0;  // variation of f(1, .)
    double mixed = 0.0;
    std::size_t resolution = 0;
};

// Hardy-Krause variation anchored at (1,1), evaluated on the sample grid. When
// diagonal_slope is set, f is modelled as smooth plus diagonal_slope * |x - y|
// and the kink contributes its exact mixed mass separately from the smooth
// remainder on cells cut by the diagonal.
VariationBudget hk_variation(const SampleGrid& grid, std::optional<double> diagonal_slope = std::nullopt);

struct QuadratureOptions {
    std::size_t order = 20;  // Gauss-Legendre nodes per panel
};

// The normalized, swap-symmetric pushforward of the invariant line measure to
// ordered endpoint pairs (s, t) in [0,1)^2.
class EndpointMeasure {
public:
    // density_scale != 1 deliberately misnormalizes the measure; used only as
    // a negative control by the verification suites.
    explicit EndpointMeasure(ConvexBody body, double density_scale = 1.0);

    const ConvexBody& body() const { return body_; }
    double line_measure() const { return body_.perimeter(); }
    double density_scale() const { return scale_; }

    double chord_length(double s, double t) const;

    // Density with respect to ds dt; zero on the diagonal and on same-side pairs.
    double density(double s, double t) const;

    // mu([0,u) x [0,v)) for u, v in [0,1].
    double anchored_mass(double u, double v) const;
    double rect_mass(const ParamRect& rect) const;

    // P(t < v | s), with t measured counterclockwise from s: CDF over the gap.
    double conditional_cdf(double s, double gap) const;
    // Endpoint t whose conditional CDF given s equals q. q == 0 returns s
    // itself (degenerate); callers guard against it.
    double conditional_inverse(double s, double q) const;

    // pi |Omega| / perimeter, cross-checked against quadrature of w dmu;
    // throws std::logic_error if the two disagree beyond 1e-6 relative.
    double mean_chord_length() const;
    // pi |Omega| / perimeter without the quadrature cross-check.
    double mean_chord_length_closed_form() const;
    double mean_chord_length_quadrature(const QuadratureOptions& opt = {}) const;

    // Integral of f(s, t) dmu via the (s, direction) parametrization.
    double integrate(const std::function<double(double, double)>& f, const QuadratureOptions& opt = {}) const;

    // 2 w / perimeter: mass of the endpoint pairs crossing the test chord.
    double crossing_mass(const Chord& test) const;
    // The same quantity as the mass of (I x I^c) u (I^c x I).
    double crossing_mass_by_rectangles(const Chord& test) const;

private:
    ConvexBody body_;
    double scale_ = 1.0;
};

struct KoksmaRecord {
    double lhs = 0.0;       // |sum f(z_i) - N int f dmu|
    double bound = 0.0;     // variation * rect discrepancy
    double integral = 0.0;  // int f dmu
    double variation = 0.0;
    double rect_discrepancy = 0.0;
    bool holds = false;
};

// rect_discrepancy is the all-rectangles discrepancy of the points against the
// measure in count units.
KoksmaRecord koksma_gap_check(std::span<const ParamPair> points, const EndpointMeasure& measure,
                              const std::function<double(double, double)>& f, const VariationBudget& variation,
                              double rect_discrepancy);

}  // namespace chordisc
