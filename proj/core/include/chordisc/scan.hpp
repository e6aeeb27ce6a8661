#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "chordisc/buffon.hpp"
#include "chordisc/construct.hpp"
#include "chordisc/geometry.hpp"
#include "chordisc/lowdisc.hpp"

namespace chordisc {

struct MethodPlan {
    BuildMethod method = BuildMethod::transport;
    std::size_t seeds = 1;  // rows per ladder point, seeds base_seed, base_seed + 1, ...
};

struct ScanConfig {
    ConvexBody body = unit_disk();
    std::vector<MethodPlan> methods;
    std::vector<std::size_t> ladder;  // chord counts N, strictly increasing
    SequenceKind generator = SequenceKind::hammersley_base2;
    bool scramble = false;  // seeded digital shift for transport rows
    std::uint64_t base_seed = 1;
    std::size_t mc_samples = 20000;
    ArcInterval window_u = ArcInterval::from(0.0, 1.0 / 16.0);
    ArcInterval window_v = ArcInterval::from(1.0 / 6.0, 1.0 / 6.0 + 1.0 / 16.0);
    double window_separation = 1.0 / 16.0;
    std::size_t threads = 1;
    bool timing = false;
    std::size_t exact_cell_limit = 100000000;
};

// Throws std::invalid_argument for an empty ladder, a non-increasing ladder,
// no methods, or zero seeds.
void validate(const ScanConfig& config);

struct ScanRow {
    std::string method;
    std::size_t n = 0;
    double length = 0.0;
    double exact_d = 0.0;
    double mc_d = 0.0;
    double rect_delta = 0.0;  // anchored rectangle discrepancy vs the endpoint measure, count units
    double localized_sup = 0.0;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
    bool exact_fallback = false;  // exact evaluation skipped; exact_d is the Monte-Carlo value
};

// Least-squares fit D = a + b * phi(L) with its root-mean-square residual.
struct ModelFit {
    std::string model;
    double a = 0.0;
    double b = 0.0;
    double rms_residual = 0.0;
};

struct MethodSummary {
    std::string method;
    std::size_t rows = 0;
    std::vector<ModelFit> fits;  // (log L)^{3/2}, log L, sqrt L
    std::string best_model;
};

struct ScanResult {
    std::vector<ScanRow> rows;  // ordered by (method, N, seed)
    std::vector<MethodSummary> summary;
    std::vector<std::string> warnings;
};

ScanResult run_scan(const ScanConfig& config);

ModelFit fit_model(const std::string& name, const std::vector<double>& lengths, const std::vector<double>& values,
                   const std::function<double(double)>& phi);
std::vector<ModelFit> fit_models(const std::vector<double>& lengths, const std::vector<double>& values);

// Columns: method, N, L, exact D, mc D, rect delta, localized sup, wall time.
// Wall time is left empty unless timing is set, so identical inputs give
// identical bytes.
std::string scan_csv(const ScanResult& result, bool timing);
std::string scan_summary_json(const ScanResult& result);

// Runs fn(0), ..., fn(count - 1) on up to `threads` worker threads. The first
// exception by index is rethrown after all tasks finish.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace chordisc
