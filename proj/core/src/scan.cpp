#include "chordisc/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace chordisc {

void validate(const ScanConfig& config)
{
    if (config.ladder.empty()) {
        throw std::invalid_argument("scan: empty size ladder");
    }
    for (std::size_t k = 0; k < config.ladder.size(); ++k) {
        if (config.ladder[k] < 1 || (k > 0 && config.ladder[k] <= config.ladder[k - 1])) {
            throw std::invalid_argument("scan: ladder must be positive and strictly increasing");
        }
    }
    if (config.methods.empty()) {
        throw std::invalid_argument("scan: no methods");
    }
    for (const MethodPlan& m : config.methods) {
        if (m.seeds < 1) {
            throw std::invalid_argument("scan: every method needs at least one seed");
        }
    }
    if (config.mc_samples < 1) {
        throw std::invalid_argument("scan: mc samples must be positive");
    }
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn)
{
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k = next++; k < count; k = next++) {
            try {
                fn(k);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }
    for (const std::exception_ptr& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

namespace {

struct Task {
    BuildMethod method;
    std::size_t n;
    std::uint64_t seed;
};

// m directions times k offsets with m * k = n and m the largest divisor <= sqrt(n).
std::pair<std::size_t, std::size_t> lattice_shape(std::size_t n)
{
    std::size_t m = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (m > 1 && n % m != 0) {
        --m;
    }
    m = std::max<std::size_t>(m, 1);
    return {m, n / m};
}

ScanRow run_row(const ScanConfig& config, const Task& task, std::string& warning)
{
    const auto start = std::chrono::steady_clock::now();
    BuildResult built = [&] {
        switch (task.method) {
        case BuildMethod::transport:
            return build_transport(config.body, task.n, config.generator, task.seed,
                                   config.scramble, RectAudit::none);
        case BuildMethod::random:
            return build_random(config.body, task.n, task.seed, RectAudit::none);
        case BuildMethod::direction_lattice: {
            const auto [m, k] = lattice_shape(task.n);
            return build_direction_lattice(config.body, m, k, ShiftMode::random, task.seed);
        }
        }
        throw std::invalid_argument("unknown build method");
    }();
    const ChordSet& set = built.set;

    ScanRow row;
    row.method = to_string(task.method);
    row.n = set.size();
    row.seed = task.seed;
    row.length = set.total_length();
    const std::uint64_t mc_seed = task.seed * 0x9E3779B97F4A7C15ull + task.n;
    row.mc_d = mc_discrepancy(set, config.mc_samples, mc_seed).value;
    if (!config.body.is_disk() && exact_cell_count(set) > config.exact_cell_limit) {
        row.exact_fallback = true;
        row.exact_d = row.mc_d;
        warning = row.method + " N=" + std::to_string(task.n) + " seed=" + std::to_string(task.seed) +
                  ": exact evaluation exceeds the cell limit; reporting the Monte-Carlo value";
    } else {
        row.exact_d = exact_discrepancy(set).value;
    }
    if (!built.pairs.empty()) {
        const EndpointMeasure measure(config.body);
        row.rect_delta = rect_discrepancy(to_points(built.pairs), measure_mass(measure), RectFamily::anchored).value;
    }
    const LocalizedWindow window =
        LocalizedWindow::build(set, config.window_u, config.window_v, config.window_separation);
    row.localized_sup = localized_rect_sup(set, window).value;
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

ModelFit fit_model(const std::string& name, const std::vector<double>& lengths, const std::vector<double>& values,
                   const std::function<double(double)>& phi)
{
    if (lengths.size() != values.size() || lengths.size() < 2) {
        throw std::invalid_argument("fit_model: need at least two (L, D) observations");
    }
    const double n = static_cast<double>(lengths.size());
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t k = 0; k < lengths.size(); ++k) {
        sx += phi(lengths[k]);
        sy += values[k];
    }
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < lengths.size(); ++k) {
        const double dx = phi(lengths[k]) - mx;
        sxx += dx * dx;
        sxy += dx * (values[k] - my);
    }
    ModelFit f;
    f.model = name;
    f.b = sxx > 0.0 ? sxy / sxx : 0.0;
    f.a = my - f.b * mx;
    double rss = 0.0;
    for (std::size_t k = 0; k < lengths.size(); ++k) {
        const double e = values[k] - (f.a + f.b * phi(lengths[k]));
        rss += e * e;
    }
    f.rms_residual = std::sqrt(rss / n);
    return f;
}

std::vector<ModelFit> fit_models(const std::vector<double>& lengths, const std::vector<double>& values)
{
    return {fit_model("log^1.5", lengths, values, [](double l) { return std::pow(std::log(l), 1.5); }),
            fit_model("log", lengths, values, [](double l) { return std::log(l); }),
            fit_model("sqrt", lengths, values, [](double l) { return std::sqrt(l); })};
}

ScanResult run_scan(const ScanConfig& config)
{
    validate(config);
    std::vector<Task> tasks;
    for (const MethodPlan& plan : config.methods) {
        for (std::size_t n : config.ladder) {
            for (std::size_t s = 0; s < plan.seeds; ++s) {
                tasks.push_back({plan.method, n, config.base_seed + s});
            }
        }
    }
    std::stable_sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
        if (a.method != b.method) {
            return to_string(a.method) < to_string(b.method);
        }
        if (a.n != b.n) {
            return a.n < b.n;
        }
        return a.seed < b.seed;
    });

    ScanResult result;
    result.rows.resize(tasks.size());
    std::vector<std::string> warnings(tasks.size());
    parallel_for(tasks.size(), config.threads, [&](std::size_t k) {
        try {
            result.rows[k] = run_row(config, tasks[k], warnings[k]);
        } catch (const std::exception& e) {
            throw std::runtime_error("scan row " + to_string(tasks[k].method) + " N=" + std::to_string(tasks[k].n) +
                                     " seed=" + std::to_string(tasks[k].seed) + ": " + e.what());
        }
    });
    for (std::string& w : warnings) {
        if (!w.empty()) {
            result.warnings.push_back(std::move(w));
        }
    }

    std::vector<std::string> names;
    for (const ScanRow& r : result.rows) {
        if (std::find(names.begin(), names.end(), r.method) == names.end()) {
            names.push_back(r.method);
        }
    }
    for (const std::string& name : names) {
        MethodSummary s;
        s.method = name;
        std::vector<double> ls;
        std::vector<double> ds;
        for (const ScanRow& r : result.rows) {
            if (r.method == name) {
                ls.push_back(r.length);
                ds.push_back(r.exact_d);
            }
        }
        s.rows = ls.size();
        if (ls.size() >= 2 && *std::min_element(ls.begin(), ls.end()) > 1.0) {
            s.fits = fit_models(ls, ds);
            const auto best = std::min_element(s.fits.begin(), s.fits.end(), [](const ModelFit& a, const ModelFit& b) {
                return a.rms_residual < b.rms_residual;
            });
            s.best_model = best->model;
        }
        result.summary.push_back(std::move(s));
    }
    return result;
}

std::string scan_csv(const ScanResult& result, bool timing)
{
    std::string out = "method,N,L,exact_D,mc_D,rect_delta,localized_sup,wall_time\n";
    for (const ScanRow& r : result.rows) {
        out += r.method + "," + std::to_string(r.n) + "," + fmt(r.length) + "," + fmt(r.exact_d) + "," +
               fmt(r.mc_d) + "," + fmt(r.rect_delta) + "," + fmt(r.localized_sup) + "," +
               (timing ? fmt(r.wall_seconds) : std::string()) + "\n";
    }
    return out;
}

std::string scan_summary_json(const ScanResult& result)
{
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["version"] = 1;
    ordered_json methods = ordered_json::array();
    for (const MethodSummary& s : result.summary) {
        ordered_json m;
        m["method"] = s.method;
        m["rows"] = s.rows;
        ordered_json fits = ordered_json::array();
        for (const ModelFit& f : s.fits) {
            fits.push_back({{"model", f.model}, {"a", f.a}, {"b", f.b}, {"rms_residual", f.rms_residual}});
        }
        m["fits"] = fits;
        m["best_model"] = s.best_model;
        methods.push_back(m);
    }
    doc["methods"] = methods;
    bool dominance = true;
    bool chain = true;
    for (const ScanRow& r : result.rows) {
        dominance = dominance && r.exact_d >= r.mc_d;
        chain = chain && r.localized_sup <= 2.0 * r.exact_d + 1e-9;
    }
    doc["exact_dominates_mc"] = dominance;
    doc["localized_within_twice_exact"] = chain;
    doc["warnings"] = result.warnings;
    return doc.dump(2) + "\n";
}

}  // namespace chordisc
