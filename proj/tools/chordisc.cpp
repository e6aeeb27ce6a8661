#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chordisc/buffon.hpp"
#include "chordisc/chordset_io.hpp"
#include "chordisc/construct.hpp"
#include "chordisc/scan.hpp"
#include "chordisc/verify.hpp"

using namespace chordisc;
using nlohmann::ordered_json;

namespace {

struct BodyFlags {
    std::string kind = "disk";
    double radius = 1.0;
    std::string vertices;  // "x,y;x,y;..."

    ConvexBody make() const
    {
        if (kind == "disk") {
            return make_disk({0.0, 0.0}, radius);
        }
        if (kind != "polygon") {
            throw std::invalid_argument("--body must be disk or polygon");
        }
        if (vertices.empty()) {
            return unit_square();
        }
        std::vector<Point> pts;
        std::stringstream ss(vertices);
        std::string item;
        while (std::getline(ss, item, ';')) {
            Point p;
            if (std::sscanf(item.c_str(), "%lf,%lf", &p.x, &p.y) != 2) {
                throw std::invalid_argument("bad vertex '" + item + "'");
            }
            pts.push_back(p);
        }
        return make_polygon(std::move(pts));
    }
};

void add_body_flags(CLI::App* cmd, BodyFlags& body)
{
    cmd->add_option("--body", body.kind, "disk or polygon")->check(CLI::IsMember({"disk", "polygon"}));
    cmd->add_option("--radius", body.radius, "disk radius");
    cmd->add_option("--vertices", body.vertices, "polygon vertices \"x,y;x,y;...\" (default unit square)");
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path);
    }
    out << text;
}

std::string side_name(LimitSide s)
{
    switch (s) {
    case LimitSide::exact:
        return "exact";
    case LimitSide::below:
        return "below";
    case LimitSide::above:
        return "above";
    }
    return "exact";
}

ordered_json report_json(const DiscReport& r)
{
    return {{"value", r.value},
            {"method", to_string(r.method)},
            {"cells", r.cells},
            {"target_coefficient", r.target_coefficient},
            {"multiplicity", r.multiplicity},
            {"witness",
             {{"a", r.witness.a},
              {"b", r.witness.b},
              {"a_side", side_name(r.witness.a_side)},
              {"b_side", side_name(r.witness.b_side)}}}};
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Full-chord sets in convex bodies and their Buffon discrepancy"};
    app.require_subcommand(1);

    BodyFlags body;

    // construct
    auto* construct = app.add_subcommand("construct", "Build a chord set and write it as JSON");
    add_body_flags(construct, body);
    std::string method = "transport";
    std::size_t n = 256;
    std::size_t directions = 0;
    std::size_t offsets = 0;
    std::string shift = "centered";
    std::string generator = "hammersley-base2";
    std::uint64_t seed = 1;
    bool scramble = false;
    double target_length = 0.0;
    std::size_t reserve = 0;
    bool has_reserve = false;
    std::string out_path;
    construct->add_option("--method", method, "transport, random or direction-lattice")
        ->check(CLI::IsMember({"transport", "random", "direction-lattice"}));
    construct->add_option("--n", n, "number of chords");
    construct->add_option("--directions", directions, "direction-lattice: number of directions");
    construct->add_option("--offsets", offsets, "direction-lattice: offsets per direction");
    construct->add_option("--shift", shift, "direction-lattice offsets: centered or random")
        ->check(CLI::IsMember({"centered", "random"}));
    construct->add_option("--generator", generator, "hammersley-base2, digital-base2, kronecker-fibonacci or pseudorandom");
    construct->add_option("--seed", seed, "seed");
    construct->add_flag("--scramble", scramble, "random digital shift of the low-discrepancy input");
    construct->add_option("--target-length", target_length, "build to this exact total length");
    auto* reserve_opt = construct->add_option("--reserve", reserve, "chords held back before length correction");
    construct->add_option("--out", out_path, "output file (default stdout)");

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate the Buffon discrepancy of a saved chord set");
    std::string in_path;
    std::size_t samples = 100000;
    std::size_t cell_limit = 100000000;
    eval->add_option("--in", in_path, "chord-set JSON")->required();
    eval->add_option("--samples", samples, "Monte-Carlo lines");
    eval->add_option("--seed", seed, "Monte-Carlo seed");
    eval->add_option("--cell-limit", cell_limit, "largest exact cell count before falling back to Monte-Carlo");
    eval->add_option("--out", out_path, "output file (default stdout)");

    // scan
    auto* scan = app.add_subcommand("scan", "Run a scaling ladder and write CSV rows");
    add_body_flags(scan, body);
    std::vector<std::string> methods{"transport", "random"};
    std::vector<std::size_t> ladder;
    std::size_t seeds = 1;
    std::size_t threads = 1;
    bool timing = false;
    std::string summary_path;
    scan->add_option("--method", methods, "methods to scan")->delimiter(',');
    scan->add_option("--n", ladder, "ladder of chord counts, e.g. 64,128,256")->delimiter(',')->required();
    scan->add_option("--seeds", seeds, "seeds per ladder point for random and direction-lattice rows");
    scan->add_option("--seed", seed, "first seed");
    scan->add_option("--generator", generator, "transport input sequence");
    scan->add_flag("--scramble", scramble, "random digital shift for transport rows (seeded per row)");
    scan->add_option("--samples", samples, "Monte-Carlo lines per row");
    scan->add_option("--threads", threads, "worker threads");
    scan->add_option("--cell-limit", cell_limit, "largest exact cell count before falling back to Monte-Carlo");
    scan->add_flag("--timing", timing, "fill the wall_time column");
    scan->add_option("--out", out_path, "CSV output (default stdout)");
    scan->add_option("--summary", summary_path, "JSON summary output");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suites");
    std::vector<std::string> suites;
    std::size_t repetitions = 1;
    double density_scale = 1.0;
    verify_cmd->add_option("--suite", suites, "suites to run (default all)")->delimiter(',');
    verify_cmd->add_option("--seed", seed, "seed");
    verify_cmd->add_option("--repetitions", repetitions, "independent seeds per randomized suite");
    verify_cmd->add_option("--density-scale", density_scale, "misnormalize the endpoint density (negative control)")
        ->group("");

    // correct-length
    auto* correct = app.add_subcommand("correct-length", "Add chords until the total length is exact");
    correct->add_option("--in", in_path, "chord-set JSON")->required();
    correct->add_option("--target-length", target_length, "target total length")->required();
    correct->add_option("--out", out_path, "output file (default stdout)");
    std::string report_path;
    correct->add_option("--report", report_path, "JSON correction report");

    CLI11_PARSE(app, argc, argv);
    has_reserve = reserve_opt->count() > 0;

    try {
        if (construct->parsed()) {
            const ConvexBody b = body.make();
            BuildRecipe recipe;
            recipe.method = parse_build_method(method);
            recipe.n = n;
            recipe.generator = parse_sequence_kind(generator);
            recipe.seed = seed;
            recipe.scramble = scramble;
            recipe.shift = shift == "random" ? ShiftMode::random : ShiftMode::centered;
            recipe.directions = directions;
            recipe.offsets = offsets;
            if (recipe.method == BuildMethod::direction_lattice && (directions == 0 || offsets == 0)) {
                throw std::invalid_argument("direction-lattice needs --directions and --offsets");
            }
            if (target_length > 0.0) {
                const LengthBuild lb = build_to_length(
                    b, target_length, recipe, has_reserve ? std::optional<std::size_t>(reserve) : std::nullopt);
                std::cerr << "base chords " << lb.base.set.size() << ", reserve " << lb.reserve << ", added "
                          << lb.correction.added.size() << "\n";
                write_output(out_path, chordset_to_json(lb.set));
            } else {
                const BuildResult r = build(b, recipe);
                if (r.rect) {
                    std::cerr << "rectangle discrepancy vs endpoint measure (anchored): " << r.rect->value << "\n";
                }
                write_output(out_path, chordset_to_json(r.set));
            }
        } else if (eval->parsed()) {
            const ChordSet set = load_chordset(in_path);
            const DiscReport mc = mc_discrepancy(set, samples, seed);
            ordered_json doc;
            doc["N"] = set.size();
            doc["L"] = set.total_length();
            if (!set.body().is_disk() && exact_cell_count(set) > cell_limit) {
                std::cerr << "warning: exact evaluation exceeds the cell limit; reporting Monte-Carlo only\n";
                doc["exact"] = nullptr;
            } else {
                doc["exact"] = report_json(exact_discrepancy(set));
            }
            doc["monte_carlo"] = report_json(mc);
            doc["localized_sup"] = localized_rect_sup(set, LocalizedWindow::default_window(set)).value;
            write_output(out_path, doc.dump(2) + "\n");
        } else if (scan->parsed()) {
            ScanConfig cfg;
            cfg.body = body.make();
            for (const std::string& m : methods) {
                const BuildMethod bm = parse_build_method(m);
                const bool seeded = bm != BuildMethod::transport || scramble ||
                                    parse_sequence_kind(generator) == SequenceKind::pseudorandom;
                cfg.methods.push_back({bm, seeded ? seeds : 1});
            }
            cfg.ladder = ladder;
            cfg.generator = parse_sequence_kind(generator);
            cfg.scramble = scramble;
            cfg.base_seed = seed;
            cfg.mc_samples = samples;
            cfg.threads = threads;
            cfg.timing = timing;
            cfg.exact_cell_limit = cell_limit;
            const ScanResult result = run_scan(cfg);
            for (const std::string& w : result.warnings) {
                std::cerr << "warning: " << w << "\n";
            }
            write_output(out_path, scan_csv(result, timing));
            if (!summary_path.empty()) {
                write_output(summary_path, scan_summary_json(result));
            }
        } else if (verify_cmd->parsed()) {
            std::vector<Suite> selected;
            for (const std::string& s : suites) {
                selected.push_back(parse_suite(s));
            }
            if (selected.empty()) {
                selected = all_suites();
            }
            VerifyOptions opt;
            opt.seed = seed;
            opt.repetitions = repetitions;
            opt.density_scale = density_scale;
            const std::vector<SuiteResult> results = verify(selected, opt);
            for (const SuiteResult& r : results) {
                std::cout << (r.passed ? "PASS " : "FAIL ") << to_string(r.suite) << " (" << r.checks << " checks, "
                          << r.failures << " failures)";
                if (!r.detail.empty()) {
                    std::cout << ": " << r.detail;
                }
                std::cout << "\n";
            }
            return all_passed(results) ? 0 : 1;
        } else if (correct->parsed()) {
            const ChordSet base = load_chordset(in_path);
            const auto [set, rep] = correct_length(base, target_length);
            write_output(out_path, chordset_to_json(set));
            if (!report_path.empty()) {
                ordered_json doc;
                doc["deficit"] = rep.deficit;
                doc["added"] = rep.added.size();
                doc["added_length"] = rep.added_length;
                doc["unit_length"] = rep.unit_length;
                doc["budget_bound"] = rep.budget_bound;
                doc["final_length"] = set.total_length();
                write_output(report_path, doc.dump(2) + "\n");
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
