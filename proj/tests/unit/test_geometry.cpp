#include <cmath>
#include <random>

#include "doctest.h"

#include "chordisc/geometry.hpp"
#include "oracles.hpp"

using namespace chordisc;

TEST_SUITE("geometry")
{
    TEST_CASE("disk closed forms")
    {
        const ConvexBody d = unit_disk();
        CHECK(d.area() == doctest::Approx(3.14159265).epsilon(1e-9));
        CHECK(d.perimeter() == doctest::Approx(6.28318531).epsilon(1e-9));
        CHECK(d.diameter() == 2.0);
        CHECK(make_disk({0, 0}, 2.0).area() == doctest::Approx(4.0 * kPi));
        CHECK_THROWS_AS(make_disk({0, 0}, 0.0), InvalidBody);
    }

    TEST_CASE("polygon closed forms")
    {
        const ConvexBody sq = unit_square();
        CHECK(sq.area() == doctest::Approx(1.0));
        CHECK(sq.perimeter() == doctest::Approx(4.0));
        CHECK(sq.diameter() == doctest::Approx(std::sqrt(2.0)));
        CHECK_THROWS_AS(make_polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), InvalidBody);
        CHECK_THROWS_AS(make_polygon({{0, 0}, {1, 0}, {2, 0}, {1, 1}}), InvalidBody);
        CHECK_THROWS_AS(make_polygon({{0, 0}, {1, 0}}), InvalidBody);
        // bow-tie: turns change sign
        CHECK_THROWS_AS(make_polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), InvalidBody);

        // side-1 hexagon against a shoelace sum done here
        const ConvexBody hex = make_regular_polygon(6, {0, 0}, 1.0);
        double shoelace = 0.0;
        const auto& v = hex.vertices();
        for (std::size_t i = 0; i < v.size(); ++i) {
            shoelace += cross(v[i], v[(i + 1) % v.size()]);
        }
        CHECK(hex.perimeter() == doctest::Approx(6.0));
        CHECK(hex.area() == doctest::Approx(0.5 * shoelace));
        CHECK(hex.area() == doctest::Approx(2.598076).epsilon(1e-6));
    }

    TEST_CASE("boundary points")
    {
        const Point p = unit_disk().boundary_point(0.25);
        CHECK(p.x == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(p.y == doctest::Approx(1.0));
        const ConvexBody sq = unit_square();
        CHECK(sq.boundary_point(0.25).x == doctest::Approx(1.0));
        CHECK(sq.boundary_point(0.25).y == doctest::Approx(0.0));
        CHECK(sq.boundary_point(0.375).x == doctest::Approx(1.0));
        CHECK(sq.boundary_point(0.375).y == doctest::Approx(0.5));
        // wraps out-of-range input
        CHECK(sq.boundary_point(1.375).y == doctest::Approx(0.5));
        CHECK(sq.param_of({1.0, 0.5}) == doctest::Approx(0.375));
    }

    TEST_CASE("chord_from_params")
    {
        const ConvexBody d = unit_disk();
        CHECK(chord_from_params(d, 0.0, 0.5).length == doctest::Approx(2.0));
        const Chord q = chord_from_params(d, 0.0, 0.25);
        CHECK(q.length == doctest::Approx(distance(d.boundary_point(0.0), d.boundary_point(0.25))));
        CHECK(q.length == doctest::Approx(std::sqrt(2.0)));
        CHECK_THROWS_AS(chord_from_params(unit_square(), 0.1, 0.1), DegenerateChord);
        CHECK_THROWS_AS(chord_from_params(unit_square(), 0.05, 0.2), DegenerateChord);
        CHECK_NOTHROW(chord_from_params(unit_square(), 0.2, 0.3));
    }

    TEST_CASE("chords_cross")
    {
        const ConvexBody d = unit_disk();
        const auto ang = [&](double a, double b) { return chord_from_params(d, a / (2 * kPi), b / (2 * kPi)); };
        CHECK(chords_cross(ang(0.1, 3.0), ang(1.0, 5.0)));
        CHECK_FALSE(chords_cross(ang(0.1, 1.0), ang(2.0, 3.0)));
        CHECK_THROWS_AS(chords_cross(ang(0.0, kPi), ang(0.0, kPi / 2)), ExceptionalConfiguration);
    }

    TEST_CASE("chord set rejects duplicates and flags multiplicity")
    {
        const ConvexBody d = unit_disk();
        std::vector<Chord> c{chord_from_params(d, 0.1, 0.6), chord_from_params(d, 0.6, 0.1)};
        CHECK_THROWS(ChordSet(d, c));
        const ChordSet m = ChordSet::with_multiplicity(d, c);
        CHECK(m.has_duplicates());
        CHECK(m.total_length() == doctest::Approx(4.0));
    }

    TEST_CASE("random pairs agree with Cartesian crossing")
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (const ConvexBody& body : {unit_disk(), unit_square(), make_regular_polygon(5, {0.3, -0.2}, 1.7)}) {
            std::size_t compared = 0;
            while (compared < 10000) {
                Chord a;
                Chord b;
                try {
                    a = chord_from_params(body, u(rng), u(rng));
                    b = chord_from_params(body, u(rng), u(rng));
                } catch (const DegenerateChord&) {
                    continue;
                }
                REQUIRE(a.length <= body.diameter() * (1.0 + 1e-12));
                const bool cart = oracle::segments_cross(body.boundary_point(a.s), body.boundary_point(a.t),
                                                         body.boundary_point(b.s), body.boundary_point(b.t));
                REQUIRE(chords_cross(a, b) == cart);
                ++compared;
            }
        }
    }

    TEST_CASE("boundary_point is Lipschitz in perimeter units")
    {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (const ConvexBody& body : {unit_disk(), unit_square()}) {
            for (int k = 0; k < 10000; ++k) {
                const double s = u(rng);
                const double t = u(rng);
                const double cyc = std::min(std::abs(s - t), 1.0 - std::abs(s - t));
                REQUIRE(distance(body.boundary_point(s), body.boundary_point(t)) <=
                        body.perimeter() * cyc + 1e-12);
            }
        }
    }

    TEST_CASE("line measure of the hitting set equals the perimeter")
    {
        for (const ConvexBody& body : {unit_disk(), unit_square()}) {
            const oracle::LineStats st = oracle::sample_lines(body, {}, 1000000, 5);
            // lines sampled over theta in [0, pi) and offsets across 2R
            const double r = body.is_disk() ? 1.0 : std::sqrt(0.5);
            const double measure = st.hit_fraction * kPi * 2.0 * r;
            const double p = st.hit_fraction;
            const double se = kPi * 2.0 * r * std::sqrt(p * (1 - p) / 1e6);
            CHECK(std::abs(measure - body.perimeter()) <= 3.0 * se + 1e-12);
        }
    }
}
