#include <cmath>
#include <random>

#include "doctest.h"

#include "chordisc/chordmeasure.hpp"
#include "chordisc/lowdisc.hpp"
#include "oracles.hpp"

using namespace chordisc;

TEST_SUITE("chordmeasure")
{
    TEST_CASE("density values")
    {
        const EndpointMeasure mu(unit_disk());
        CHECK(mu.density(0.0, 0.5) == doctest::Approx(kPi / 2.0));
        CHECK(mu.density(0.0, 0.5) / (4.0 * kPi * kPi) == doctest::Approx(1.0 / (8.0 * kPi)));
        CHECK(mu.density(0.3, 0.3) == 0.0);
        const EndpointMeasure sq(unit_square());
        CHECK(sq.density(0.05, 0.2) == 0.0);
        CHECK(sq.density(0.7, 0.7) == 0.0);
    }

    TEST_CASE("density matches the boundary-angle oracle")
    {
        std::mt19937_64 rng(2);
        for (const ConvexBody& body : {unit_disk(), unit_square(), make_regular_polygon(7, {0, 0}, 1.3, 0.2)}) {
            const EndpointMeasure mu(body);
            for (int k = 0; k < 2000; ++k) {
                const double s = unit_double(rng);
                const double t = unit_double(rng);
                REQUIRE(mu.density(s, t) == doctest::Approx(oracle::endpoint_density(body, s, t)).epsilon(1e-9));
            }
        }
    }

    TEST_CASE("rect masses")
    {
        const EndpointMeasure mu(unit_disk());
        CHECK(mu.rect_mass({{0.0, 0.5}, {0.5, 0.5}}) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
        CHECK(oracle::density_mass(unit_disk(), 0.0, 0.5, 0.5, 1.0, 4) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
        CHECK(mu.rect_mass({CyclicInterval::full(), CyclicInterval::full()}) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(mu.rect_mass({{0.2, 0.0}, {0.5, 0.3}}) == 0.0);
        const EndpointMeasure sq(unit_square());
        CHECK(std::abs(sq.rect_mass({CyclicInterval::full(), CyclicInterval::full()}) - 1.0) <= 1e-6);
    }

    TEST_CASE("rect mass agrees with density quadrature on random rectangles")
    {
        std::mt19937_64 rng(9);
        for (const ConvexBody& body : {unit_disk(), unit_square()}) {
            const EndpointMeasure mu(body);
            for (int k = 0; k < 20; ++k) {
                const double a = unit_double(rng) * 0.5;
                const double b = a + 0.05 + unit_double(rng) * 0.4;
                const double c = 0.5 + unit_double(rng) * 0.3;
                const double d = c + 0.05 + unit_double(rng) * 0.15;
                const double exact = mu.rect_mass({{a, b - a}, {c, d - c}});
                const double quad = oracle::density_mass_split(body, a, b, c, d);
                REQUIRE(std::abs(exact - quad) <= 1e-9);
            }
        }
    }

    TEST_CASE("rect mass is monotone under inclusion")
    {
        std::mt19937_64 rng(4);
        const EndpointMeasure mu(make_regular_polygon(5, {0, 0}, 1.0));
        for (int k = 0; k < 200; ++k) {
            const CyclicInterval s{unit_double(rng), 0.6 * unit_double(rng)};
            const CyclicInterval t{unit_double(rng), 0.6 * unit_double(rng)};
            const CyclicInterval s2{s.start - 0.1 * unit_double(rng), s.length + 0.2};
            const CyclicInterval t2{t.start, t.length + 0.1 * unit_double(rng)};
            CyclicInterval s2w = s2;
            s2w.start = wrap_unit(s2.start);
            REQUIRE(mu.rect_mass({s, t}) <= mu.rect_mass({s2w, t2}) + 1e-12);
        }
    }

    TEST_CASE("disk rectangles reproduce the localized target")
    {
        // N = 2L/pi chords, twice the mass of I x J, equals L/(2 pi^2) * int int sin((y - x)/2)
        const EndpointMeasure mu(unit_disk());
        const double l = 37.0;
        const double n = 2.0 * l / kPi;
        const double a = 0.1, b = 0.7, c = 2.0, d = 2.9;  // angles
        const auto f = [](double x) { return std::sin(x / 2.0); };
        const double integral = 4.0 * (f(c - a) + f(d - b) - f(c - b) - f(d - a));
        const double rect = mu.rect_mass({{a / (2 * kPi), (b - a) / (2 * kPi)}, {c / (2 * kPi), (d - c) / (2 * kPi)}});
        CHECK(n * 2.0 * rect == doctest::Approx(l / (2.0 * kPi * kPi) * integral).epsilon(1e-9));
    }

    TEST_CASE("conditional inverse")
    {
        const EndpointMeasure mu(unit_disk());
        CHECK(wrap_unit(mu.conditional_inverse(0.1, 0.5) - 0.1) == doctest::Approx(0.5));
        CHECK(2 * kPi * wrap_unit(mu.conditional_inverse(0.0, 0.25)) == doctest::Approx(2.0 * kPi / 3.0));
        CHECK(mu.conditional_inverse(0.3, 0.0) == 0.3);
        const EndpointMeasure sq(unit_square());
        std::mt19937_64 rng(1);
        for (int k = 0; k < 500; ++k) {
            const double s = unit_double(rng);
            const double q = unit_double(rng);
            const double t = sq.conditional_inverse(s, q);
            REQUIRE(sq.conditional_cdf(s, wrap_unit(t - s)) == doctest::Approx(q).epsilon(1e-9));
        }
    }

    TEST_CASE("mean chord length")
    {
        CHECK(std::abs(EndpointMeasure(unit_disk()).mean_chord_length() - kPi / 2.0) <= 1e-9);
        CHECK(EndpointMeasure(make_disk({1, 1}, 2.0)).mean_chord_length() == doctest::Approx(kPi));
        CHECK(EndpointMeasure(unit_square()).mean_chord_length() == doctest::Approx(kPi / 4.0));
        const oracle::LineStats st = oracle::sample_lines(unit_square(), {}, 400000, 7);
        CHECK(std::abs(st.mean_chord - kPi / 4.0) <= 3.0 * st.mean_chord_se);
        const EndpointMeasure hex(make_regular_polygon(6, {0, 0}, 1.0));
        CHECK(std::abs(hex.mean_chord_length_quadrature() - hex.mean_chord_length_closed_form()) <= 1e-6);
    }

    TEST_CASE("crossing mass both ways")
    {
        const EndpointMeasure mu(unit_disk());
        CHECK(mu.crossing_mass(chord_from_params(unit_disk(), 0.0, 0.5)) == doctest::Approx(2.0 / kPi));
        const EndpointMeasure sq(unit_square());
        CHECK(sq.crossing_mass(chord_from_params(unit_square(), 0.0, 0.5)) ==
              doctest::Approx(2.0 * std::sqrt(2.0) / 4.0));
        CHECK(mu.crossing_mass(chord_from_params(unit_disk(), 0.0, 1e-12)) == doctest::Approx(0.0));

        std::mt19937_64 rng(6);
        for (int k = 0; k < 200; ++k) {
            const Chord c = chord_from_params(unit_disk(), unit_double(rng), unit_double(rng));
            REQUIRE(std::abs(mu.crossing_mass(c) - mu.crossing_mass_by_rectangles(c)) <= 1e-9);
        }
    }

    TEST_CASE("crossing mass of a diameter by sampling")
    {
        // fraction of measure-distributed chords crossing a fixed diameter
        const ConvexBody d = unit_disk();
        const EndpointMeasure mu(d);
        const Chord dia = chord_from_params(d, 0.05, 0.55);
        std::mt19937_64 rng(8);
        const int n = 200000;
        int cross = 0;
        for (int k = 0; k < n; ++k) {
            const double s = unit_double(rng);
            const double t = mu.conditional_inverse(s, unit_double(rng));
            const Point a = d.boundary_point(s);
            const Point b = d.boundary_point(t);
            cross += oracle::segments_cross(a, b, d.boundary_point(dia.s), d.boundary_point(dia.t)) ? 1 : 0;
        }
        const double p = 2.0 / kPi;
        CHECK(std::abs(cross / double(n) - p) <= 4.0 * std::sqrt(p * (1 - p) / n));
    }

    TEST_CASE("Hardy-Krause variation")
    {
        const VariationBudget xy = hk_variation(sample_grid([](double x, double y) { return x * y; }, 64));
        CHECK(xy.total == doctest::Approx(4.0));
        CHECK(xy.corner == doctest::Approx(1.0));
        CHECK(xy.mixed == doctest::Approx(1.0));
        const VariationBudget c = hk_variation(sample_grid([](double, double) { return -2.5; }, 8));
        CHECK(c.total == doctest::Approx(2.5));
        CHECK(c.total == doctest::Approx(c.corner + c.face_x + c.face_y + c.mixed).epsilon(1e-12));

        const ConvexBody d = unit_disk();
        const auto w = [&d](double s, double t) { return chord_length(d, s, t); };
        const double v10 = hk_variation(sample_grid(w, 1024), d.perimeter()).total;
        const double v11 = hk_variation(sample_grid(w, 2048), d.perimeter()).total;
        CHECK(std::isfinite(v10));
        CHECK(std::abs(v11 - v10) <= 0.01 * v10);
    }

    TEST_CASE("Koksma check")
    {
        const EndpointMeasure mu(unit_disk());
        const auto w = [](double s, double t) { return chord_length(unit_disk(), s, t); };
        const VariationBudget var = hk_variation(sample_grid(w, 256), unit_disk().perimeter());
        const std::vector<ParamPair> pts{{0.1, 0.6}, {0.3, 0.9}};
        const KoksmaRecord flat = koksma_gap_check(
            pts, mu, [](double, double) { return 1.0; }, hk_variation(sample_grid([](double, double) { return 1.0; }, 4)),
            0.0);
        CHECK(flat.lhs == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(flat.holds);

        // one point, all rectangle discrepancy computed from the measure
        const std::vector<ParamPair> one{{0.0, 0.5}};
        const RectDiscReport r = rect_discrepancy(to_points(one), measure_mass(mu), RectFamily::all);
        const KoksmaRecord rec = koksma_gap_check(one, mu, w, var, r.value);
        CHECK(rec.lhs == doctest::Approx(std::abs(2.0 - kPi / 2.0)));
        CHECK(rec.holds);
    }

    TEST_CASE("negative control scales the mass")
    {
        const EndpointMeasure bad(unit_disk(), 1.01);
        CHECK(bad.rect_mass({CyclicInterval::full(), CyclicInterval::full()}) == doctest::Approx(1.01));
    }
}
