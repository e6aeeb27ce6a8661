#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"

#include "chordisc/buffon.hpp"
#include "chordisc/construct.hpp"
#include "oracles.hpp"

using namespace chordisc;

namespace {

ChordSet random_set(const ConvexBody& body, std::size_t n, std::mt19937_64& rng)
{
    std::vector<Chord> chords;
    while (chords.size() < n) {
        try {
            chords.push_back(chord_from_params(body, unit_double(rng), unit_double(rng)));
        } catch (const DegenerateChord&) {
        }
    }
    return ChordSet(body, std::move(chords));
}

ChordSet diameter() { return ChordSet(unit_disk(), {chord_from_params(unit_disk(), 0.0, 0.5)}); }

// An arc endpoint that avoids every chord endpoint.
double free_param(const ChordSet& set, std::mt19937_64& rng)
{
    for (;;) {
        const double x = unit_double(rng);
        if (!std::binary_search(set.endpoints().begin(), set.endpoints().end(), x)) {
            return x;
        }
    }
}

}  // namespace

TEST_SUITE("buffon")
{
    TEST_CASE("Crofton target")
    {
        CHECK(crofton_target(unit_disk(), kPi * kPi, 2.0) == doctest::Approx(4.0));
        CHECK(crofton_target(unit_disk(), 0.0, 1.3) == 0.0);
        const double l = kPi * kPi;
        for (double arc : {0.3, 1.0, 2.5}) {
            CHECK(crofton_target(unit_disk(), l, 2.0 * std::sin(arc / 2.0)) ==
                  doctest::Approx(4.0 * l / (kPi * kPi) * std::sin(arc / 2.0)));
        }
    }

    TEST_CASE("crossing counts")
    {
        const ChordSet d = diameter();
        CHECK(count_crossings(d, chord_from_params(unit_disk(), 0.25, 0.75)) == 1);
        CHECK(count_crossings(d, chord_from_params(unit_disk(), 0.125, 0.375)) == 0);
        CHECK_THROWS_AS(count_crossings(d, chord_from_params(unit_disk(), 0.0, 0.3)), ExceptionalConfiguration);

        std::mt19937_64 rng(21);
        for (const ConvexBody& body : {unit_disk(), unit_square()}) {
            const ChordSet set = random_set(body, 100, rng);
            for (int k = 0; k < 1000; ++k) {
                Chord test;
                try {
                    test = chord_from_params(body, free_param(set, rng), free_param(set, rng));
                } catch (const DegenerateChord&) {
                    continue;
                }
                std::size_t cart = 0;
                for (const Chord& c : set.chords()) {
                    cart += oracle::segments_cross(body.boundary_point(test.s), body.boundary_point(test.t),
                                                   body.boundary_point(c.s), body.boundary_point(c.t))
                                ? 1
                                : 0;
                }
                REQUIRE(count_crossings(set, test) == cart);
            }
        }
    }

    TEST_CASE("cut counts")
    {
        const ChordSet d = diameter();
        CHECK(cut_count(d, ArcInterval::from(0.25, 0.75)) == 1);
        CHECK(cut_count(d, ArcInterval::from(0.9, 0.8)) == 0);
        CHECK_FALSE(admissible(d, ArcInterval::from(0.0, 0.3)));
        CHECK_THROWS_AS(cut_count(d, ArcInterval::from(0.5, 0.3)), std::invalid_argument);

        std::mt19937_64 rng(5);
        const ChordSet set = random_set(unit_disk(), 60, rng);
        const double dexact = exact_discrepancy(set).value;
        const double k = 4.0 * set.total_length() / (kPi * kPi);
        for (int i = 0; i < 1000; ++i) {
            const ArcInterval arc = ArcInterval::from(free_param(set, rng), free_param(set, rng));
            const double c = static_cast<double>(cut_count(set, arc));
            const double chord = chord_from_params(unit_disk(), arc.a, arc.b).length;
            REQUIRE(c == static_cast<double>(count_crossings(set, chord_from_params(unit_disk(), arc.a, arc.b))));
            REQUIRE(std::abs(c - k * std::sin(kPi * arc.length())) <= dexact + 1e-9);
            REQUIRE(chord == doctest::Approx(2.0 * std::sin(kPi * arc.length())));
        }
    }

    TEST_CASE("pair counts")
    {
        const ChordSet d = diameter();
        CHECK(pair_count(d, ArcInterval::from(0.9, 0.1), ArcInterval::from(0.4, 0.6)) == 1);
        CHECK(pair_count(d, ArcInterval::from(0.1, 0.2), ArcInterval::from(0.3, 0.4)) == 0);
        CHECK_THROWS_AS(pair_count(d, ArcInterval::from(0.1, 0.3), ArcInterval::from(0.2, 0.4)),
                        std::invalid_argument);

        std::mt19937_64 rng(77);
        for (int k = 0; k < 1000; ++k) {
            const ConvexBody body = k % 2 ? unit_square() : unit_disk();
            const ChordSet set = random_set(body, 1 + rng() % 200, rng);
            std::vector<double> cut{free_param(set, rng), free_param(set, rng), free_param(set, rng),
                                    free_param(set, rng)};
            std::sort(cut.begin(), cut.end());
            const ArcInterval i = ArcInterval::from(cut[0], cut[1]);
            const ArcInterval j = ArcInterval::from(cut[2], cut[3]);
            std::size_t direct = 0;
            for (const Chord& c : set.chords()) {
                const bool si = i.contains(c.s.value());
                const bool sj = j.contains(c.s.value());
                const bool ti = i.contains(c.t.value());
                const bool tj = j.contains(c.t.value());
                direct += ((si && tj) || (sj && ti)) ? 1 : 0;
            }
            REQUIRE(pair_count(set, i, j) == direct);
        }
    }

    TEST_CASE("exact disk evaluator")
    {
        CHECK(exact_discrepancy(ChordSet(unit_disk(), {})).value == 0.0);
        const DiscReport one = exact_discrepancy(diameter());
        CHECK(one.value == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(one.method == DiscMethod::exact_disk);
        CHECK(evaluate_witness(diameter(), one.witness) == doctest::Approx(1.0));
        CHECK(one.target_coefficient == doctest::Approx(2.0 * 2.0 / (kPi * kPi)));

        const ChordSet two(unit_disk(), {chord_from_params(unit_disk(), 0.0, 0.5),
                                         chord_from_params(unit_disk(), 0.25, 0.75)});
        const DiscReport r = exact_discrepancy(two);
        const double oracle = oracle::dense_arc_disk(two, 1000);
        CHECK(oracle <= r.value + 1e-12);
        CHECK(r.value - oracle <= oracle::dense_arc_resolution(two, 1000));
    }

    TEST_CASE("exact disk evaluator against the dense-arc oracle")
    {
        std::mt19937_64 rng(31);
        for (int k = 0; k < 20; ++k) {
            const ChordSet set = random_set(unit_disk(), 1 + rng() % 30, rng);
            const DiscReport r = exact_discrepancy(set);
            const double o = oracle::dense_arc_disk(set, 1000);
            REQUIRE(o <= r.value + 1e-9);
            REQUIRE(r.value - o <= oracle::dense_arc_resolution(set, 1000));
            REQUIRE(evaluate_witness(set, r.witness) == doctest::Approx(r.value).epsilon(1e-9));
        }
    }

    TEST_CASE("exact polygon evaluator")
    {
        CHECK(exact_discrepancy(ChordSet(unit_square(), {})).value == 0.0);
        // horizontal chord at mid height: a line in the upper half-square
        // from (0, 1/2+) to (1, 1) misses it, so D = (2/pi) sqrt(5/4)
        const ConvexBody sq = unit_square();
        const ChordSet mid(sq, {chord_from_params(sq, 0.875, 0.375)});
        const DiscReport r = exact_discrepancy(mid);
        CHECK(r.method == DiscMethod::exact_polygon);
        CHECK(r.value == doctest::Approx(2.0 / kPi * std::sqrt(1.25)).epsilon(1e-9));
        const oracle::LineStats st = oracle::sample_lines(sq, mid.chords(), 1000000, 17);
        CHECK(st.max_disc <= r.value + 1e-9);
        CHECK(r.value - st.max_disc <= 0.01);
        CHECK(evaluate_witness(mid, r.witness) == doctest::Approx(r.value).epsilon(1e-9));
    }

    TEST_CASE("regular 64-gon tracks the disk")
    {
        const ConvexBody disk = unit_disk();
        const ConvexBody gon = make_regular_polygon(64, {0, 0}, 1.0);
        for (std::size_t n : {8u, 32u, 128u}) {
            const ChordSet ds = build_transport(disk, n, SequenceKind::hammersley_base2, 0, false, RectAudit::none).set;
            std::vector<Chord> mapped;
            for (const Chord& c : ds.chords()) {
                mapped.push_back(chord_from_params(gon, gon.param_of(gon.boundary_point(c.s.value())),
                                                   gon.param_of(gon.boundary_point(c.t.value()))));
            }
            const ChordSet gs(gon, mapped);
            const double dd = exact_discrepancy(ds).value;
            const double dg = exact_discrepancy(gs).value;
            CHECK(std::abs(dg - dd) <= 0.05 * dd);
        }
    }

    TEST_CASE("Monte-Carlo evaluator")
    {
        CHECK(mc_discrepancy(ChordSet(unit_disk(), {}), 100, 1).value == 0.0);
        const DiscReport m = mc_discrepancy(diameter(), 1000000, 3);
        CHECK(m.value >= 0.99);
        CHECK(m.value <= 1.0);
        CHECK(mc_discrepancy(diameter(), 5000, 9).value == mc_discrepancy(diameter(), 5000, 9).value);

        std::mt19937_64 rng(4);
        const ChordSet set = random_set(unit_square(), 15, rng);
        const double exact = exact_discrepancy(set).value;
        double prev = 0.0;
        for (std::size_t samples : {10000u, 100000u, 1000000u}) {
            const double v = mc_discrepancy(set, samples, 1).value;
            CHECK(v <= exact + 1e-9);
            CHECK(v >= prev - 0.05);
            prev = std::max(prev, v);
        }
        CHECK(exact - prev <= 0.05 * exact);
    }

    TEST_CASE("duplicates are counted with multiplicity")
    {
        const Chord c = chord_from_params(unit_disk(), 0.1, 0.6);
        const ChordSet dup = ChordSet::with_multiplicity(unit_disk(), {c, c});
        const DiscReport r = exact_discrepancy(dup);
        CHECK(r.multiplicity);
        CHECK(r.value == doctest::Approx(2.0));
    }

    TEST_CASE("localized window")
    {
        // no chord joins U and V: the sup is the target mass of the whole window
        const ChordSet d = diameter();
        const ArcInterval u = ArcInterval::from(0.1, 0.11);
        const ArcInterval v = ArcInterval::from(0.3, 0.31);
        const LocalizedWindow w = LocalizedWindow::build(d, u, v, 0.05);
        CHECK(w.points.empty());
        const RectDiscReport r = localized_rect_sup(d, w);
        const EndpointMeasure mu(unit_disk());
        const double expected = 2.0 * (d.total_length() / (kPi / 2.0)) * mu.rect_mass({{0.1, 0.01}, {0.3, 0.01}});
        CHECK(r.value == doctest::Approx(expected).epsilon(1e-9));
        CHECK_THROWS(LocalizedWindow::build(d, u, ArcInterval::from(0.105, 0.2), 0.05));

        std::mt19937_64 rng(8);
        for (int k = 0; k < 20; ++k) {
            const ChordSet set = random_set(unit_disk(), 50 + rng() % 200, rng);
            const double loc = localized_rect_sup(set, LocalizedWindow::default_window(set)).value;
            REQUIRE(loc <= 2.0 * exact_discrepancy(set).value + 1e-9);
        }
    }

    TEST_CASE("oracle dominance on random instances")
    {
        std::mt19937_64 rng(99);
        for (int k = 0; k < 30; ++k) {
            const ConvexBody body = k % 3 == 0 ? make_regular_polygon(5, {0, 0}, 1.0) : unit_disk();
            const ChordSet set = random_set(body, 1 + rng() % 40, rng);
            const DiscReport e = exact_discrepancy(set);
            REQUIRE(e.value + 1e-9 >= mc_discrepancy(set, 20000, k).value);
            REQUIRE(evaluate_witness(set, e.witness) == doctest::Approx(e.value).epsilon(1e-9));
        }
    }
}
