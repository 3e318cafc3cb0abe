#pragma once

#include <vector>

#include "ornstein/norms.hpp"

namespace ornstein {

/// Standard lacunary family for growth experiments: d_k = (base * radix^{k-1}, k)
/// with radix = floor(M) + 1, so consecutive l-infinity ratios strictly exceed
/// M and every sign combination keeps a nonzero first coordinate.
std::vector<LatticeVector> lacunary_frequencies(int m, const Rational& M,
                                                const Integer& base = Integer(2));

struct EstimatorConfig {
    std::string method = "auto";  // "auto", "grid", "montecarlo"
    long long samples = 2'000'000;
    uint64_t seed = 0x6f726e73u;  // arbitrary fixed default
    double confidence = 0.999;
    int oversample = 1;
};

struct GrowthRow {
    int m = 0;
    NormEstimate estimate;
};

/// Least-squares fit of the norm table against m.
struct GrowthFit {
    std::vector<GrowthRow> table;
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
    Oscillator osc = Oscillator::cosine;
    Rational lacunarity_target;
    std::vector<int> sigma;
    bool monotone = true;  // nondecreasing within combined error bars
};

/// Norm of the weighted cascade over the first m generators, for m = 1..m_max,
/// with a linear fit. sigma supplies the 0/1 weights (all ones when empty).
/// Each row picks the grid when it fits the budget and Monte Carlo otherwise;
/// rows share the seed so the table is reproducible run to run.
GrowthFit growth_experiment(int m_max, const Rational& M, const std::vector<int>& sigma,
                            Oscillator osc, const EstimatorConfig& cfg);

/// Exhaustive argmax of the estimated norm over all 2^m weight patterns
/// (m <= 12), ties broken toward the lexicographically smallest pattern.
std::vector<int> sigma_search(int m, const Rational& M, Oscillator osc,
                              const EstimatorConfig& cfg);

}  // namespace ornstein
