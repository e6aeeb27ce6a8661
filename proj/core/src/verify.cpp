#include "chordisc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <stdexcept>

#include "chordisc/buffon.hpp"
#include "chordisc/chordmeasure.hpp"
#include "chordisc/construct.hpp"
#include "chordisc/lowdisc.hpp"

namespace chordisc {

std::vector<Suite> all_suites()
{
    return {Suite::normalization, Suite::cut_identity, Suite::lemma_chain, Suite::koksma, Suite::oracle_dominance};
}

Suite parse_suite(std::string_view name)
{
    for (Suite s : all_suites()) {
        if (to_string(s) == name) {
            return s;
        }
    }
    throw std::invalid_argument("unknown verify suite: " + std::string(name));
}

std::string to_string(Suite suite)
{
    switch (suite) {
    case Suite::normalization:
        return "normalization";
    case Suite::cut_identity:
        return "cut-identity";
    case Suite::lemma_chain:
        return "lemma-chain";
    case Suite::koksma:
        return "koksma";
    case Suite::oracle_dominance:
        return "oracle-dominance";
    }
    return "unknown";
}

bool all_passed(const std::vector<SuiteResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.passed; });
}

namespace {

class Tally {
public:
    explicit Tally(Suite suite) { result_.suite = suite; }

    void check(bool ok, const std::function<std::string()>& what)
    {
        ++result_.checks;
        if (!ok) {
            if (result_.failures == 0) {
                result_.detail = what();
            }
            ++result_.failures;
        }
    }

    SuiteResult finish()
    {
        result_.passed = result_.failures == 0 && result_.checks > 0;
        return result_;
    }

private:
    SuiteResult result_;
};

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<ConvexBody> test_bodies()
{
    return {unit_disk(), unit_square(), make_regular_polygon(6, {0.0, 0.0}, 1.0)};
}

ChordSet random_chords(const ConvexBody& body, std::size_t n, std::mt19937_64& rng)
{
    std::vector<Chord> chords;
    while (chords.size() < n) {
        try {
            chords.push_back(chord_from_params(body, unit_double(rng), unit_double(rng)));
        } catch (const DegenerateChord&) {
        }
    }
    return ChordSet::with_multiplicity(body, std::move(chords));
}

SuiteResult normalization(const VerifyOptions& opt)
{
    Tally t(Suite::normalization);
    for (const ConvexBody& body : test_bodies()) {
        const EndpointMeasure mu(body, opt.density_scale);
        const double tol = body.is_disk() ? 1e-9 : 1e-6;
        const std::string name = describe(body);
        const double full = mu.rect_mass({CyclicInterval::full(), CyclicInterval::full()});
        t.check(std::abs(full - 1.0) <= tol, [&] { return name + ": full-square mass " + num(full); });
        const double quad = mu.integrate([](double, double) { return 1.0; });
        t.check(std::abs(quad - 1.0) <= 1e-6, [&] { return name + ": quadrature total mass " + num(quad); });
        const double mean = mu.mean_chord_length_quadrature();
        const double closed = mu.mean_chord_length_closed_form();
        t.check(std::abs(mean - closed) <= 1e-6 * closed,
                [&] { return name + ": mean chord " + num(mean) + " vs " + num(closed); });
        if (body.is_disk()) {
            const double half = mu.rect_mass({{0.0, 0.5}, {0.5, 0.5}});
            t.check(std::abs(half - 1.0 / kPi) <= 1e-9, [&] { return "disk half-window mass " + num(half); });
        }
    }
    return t.finish();
}

SuiteResult cut_identity(const VerifyOptions& opt)
{
    Tally t(Suite::cut_identity);
    for (std::size_t rep = 0; rep < opt.repetitions; ++rep) {
        std::mt19937_64 rng(opt.seed + rep);
        for (int k = 0; k < 20; ++k) {
            const ConvexBody body = k % 2 == 0 ? unit_disk() : unit_square();
            const std::size_t n = 1 + static_cast<std::size_t>(unit_double(rng) * 200.0);
            const ChordSet set = random_chords(body, n, rng);
            for (int w = 0; w < 10; ++w) {
                std::vector<double> cuts{unit_double(rng), unit_double(rng), unit_double(rng), unit_double(rng)};
                std::sort(cuts.begin(), cuts.end());
                if (w == 8) {
                    cuts[2] = cuts[1];  // I and J touch
                }
                const ArcInterval i = ArcInterval::from(cuts[0], cuts[1]);
                const ArcInterval j = w == 9 ? ArcInterval::from(cuts[2], cuts[0]) : ArcInterval::from(cuts[2], cuts[3]);
                bool ok = true;
                std::string why;
                try {
                    (void)pair_count(set, i, j);
                } catch (const std::exception& e) {
                    ok = false;
                    why = e.what();
                }
                t.check(ok, [&] { return "seed " + std::to_string(opt.seed + rep) + ": " + why; });
            }
        }
    }
    return t.finish();
}

SuiteResult lemma_chain(const VerifyOptions& opt)
{
    Tally t(Suite::lemma_chain);
    const auto run = [&](const ChordSet& set, const std::string& label) {
        const double d = exact_discrepancy(set).value;
        const double loc = localized_rect_sup(set, LocalizedWindow::default_window(set)).value;
        t.check(loc <= 2.0 * d + 1e-9, [&] { return label + ": localized " + num(loc) + " > 2 * " + num(d); });
    };
    for (std::size_t rep = 0; rep < opt.repetitions; ++rep) {
        const std::uint64_t seed = opt.seed + rep;
        for (std::size_t n : {64u, 256u, 1024u}) {
            run(build_transport(unit_disk(), n, SequenceKind::hammersley_base2, seed, rep > 0, RectAudit::none).set,
                "disk transport N=" + std::to_string(n));
            run(build_random(unit_disk(), n, seed).set, "disk random N=" + std::to_string(n));
        }
        for (std::size_t n : {32u, 128u}) {
            run(build_transport(unit_square(), n, SequenceKind::hammersley_base2, seed, rep > 0, RectAudit::none).set,
                "square transport N=" + std::to_string(n));
            run(build_random(unit_square(), n, seed).set, "square random N=" + std::to_string(n));
        }
    }
    return t.finish();
}

SuiteResult koksma(const VerifyOptions&)
{
    Tally t(Suite::koksma);
    const ConvexBody body = unit_disk();
    const EndpointMeasure mu(body);
    const auto w = [&body](double s, double u) { return chord_length(body, s, u); };
    const VariationBudget var = hk_variation(sample_grid(w, 1024), body.perimeter());
    for (std::size_t n : {16u, 64u, 256u}) {
        const BuildResult b = build_transport(body, n, SequenceKind::hammersley_base2, 0, false, RectAudit::all);
        const KoksmaRecord rec = koksma_gap_check(b.pairs, mu, w, var, b.rect->value);
        t.check(rec.holds, [&] {
            return "N=" + std::to_string(n) + ": lhs " + num(rec.lhs) + " > bound " + num(rec.bound);
        });
    }
    return t.finish();
}

SuiteResult oracle_dominance(const VerifyOptions& opt)
{
    Tally t(Suite::oracle_dominance);
    for (std::size_t rep = 0; rep < opt.repetitions; ++rep) {
        std::mt19937_64 rng(opt.seed + 1000 + rep);
        for (const ConvexBody& body : {unit_disk(), unit_square()}) {
            for (std::size_t n : {1u, 5u, 20u, 50u}) {
                const ChordSet set = random_chords(body, n, rng);
                const DiscReport exact = exact_discrepancy(set);
                const DiscReport mc = mc_discrepancy(set, 20000, opt.seed + rep);
                const std::string label = describe(body) + " N=" + std::to_string(n);
                t.check(exact.value + 1e-9 >= mc.value,
                        [&] { return label + ": exact " + num(exact.value) + " < mc " + num(mc.value); });
                const double again = evaluate_witness(set, exact.witness);
                t.check(std::abs(again - exact.value) <= 1e-9,
                        [&] { return label + ": witness gives " + num(again) + " vs " + num(exact.value); });
            }
        }
    }
    return t.finish();
}

}  // namespace

std::vector<SuiteResult> verify(const std::vector<Suite>& suites, const VerifyOptions& options)
{
    std::vector<SuiteResult> out;
    for (Suite s : suites) {
        switch (s) {
        case Suite::normalization:
            out.push_back(normalization(options));
            break;
        case Suite::cut_identity:
            out.push_back(cut_identity(options));
            break;
        case Suite::lemma_chain:
            out.push_back(lemma_chain(options));
            break;
        case Suite::koksma:
            out.push_back(koksma(options));
            break;
        case Suite::oracle_dominance:
            out.push_back(oracle_dominance(options));
            break;
        }
    }
    return out;
}

}  // namespace chordisc
