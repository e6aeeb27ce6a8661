#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace chordisc::detail {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre rule by Newton iteration on P_n.
inline GaussRule gauss_legendre(std::size_t n)
{
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = 3.14159265358979323846;
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

// Integrates f over [a, b] with the given rule.
template <class F>
double integrate_panel(const GaussRule& rule, double a, double b, F&& f)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        sum += rule.weights[k] * f(mid + half * rule.nodes[k]);
    }
    return sum * half;
}

// Integrates f over [a, b] on panels graded geometrically toward both ends,
// for integrands with near-singular behaviour at an endpoint.
template <class F>
double integrate_graded(const GaussRule& rule, double a, double b, F&& f)
{
    static constexpr double kCuts[] = {0.0,  1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 0.5};
    constexpr std::size_t kCount = sizeof kCuts / sizeof kCuts[0];
    const double len = b - a;
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < kCount; ++k) {
        sum += integrate_panel(rule, a + kCuts[k] * len, a + kCuts[k + 1] * len, f);
        sum += integrate_panel(rule, b - kCuts[k + 1] * len, b - kCuts[k] * len, f);
    }
    return sum;
}

}  // namespace chordisc::detail
