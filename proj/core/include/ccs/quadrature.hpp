#pragma once

#include <vector>

namespace ccs {

/// Gauss-Legendre nodes and weights on [0,1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_rule(int order);

/// Deterministic pairwise reduction; result is independent of how the terms
/// were produced (fixed tree over the materialized vector).
double pairwise_sum(std::vector<double> terms);

}  // namespace ccs
