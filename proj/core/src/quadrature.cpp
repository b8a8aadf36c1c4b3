#include "ccs/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ccs {

namespace {

// Newton iteration on P_n; standard initial guesses, converges in a handful
// of steps for any desk-scale order.
GaussRule compute_rule(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // map from [-1,1] to [0,1]
        r.nodes[n - 1 - i] = 0.5 * (x + 1.0);
        r.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

}  // namespace

const GaussRule& gauss_rule(int order) {
    if (order < 1 || order > 256) throw std::invalid_argument("gauss_rule: order out of range");
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

double pairwise_sum(std::vector<double> terms) {
    if (terms.empty()) return 0.0;
    size_t n = terms.size();
    while (n > 1) {
        size_t half = (n + 1) / 2;
        for (size_t i = 0; i + half < n; ++i) terms[i] += terms[i + half];
        n = half;
    }
    return terms[0];
}

}  // namespace ccs
