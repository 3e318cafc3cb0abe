#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "ornstein/riesz.hpp"

namespace ornstein {

/// L1 norm estimate with a bracket. Invariant: lower <= value <= upper.
/// method is one of "grid", "montecarlo", "coeff-bound"; the detail fields
/// for the other methods stay at their defaults.
struct NormEstimate {
    double value = 0;
    double lower = 0;
    double upper = 0;
    std::string method;

    // grid
    long long grid_n1 = 0;       // base grid size, axis 1
    long long grid_n2 = 0;       // base grid size, axis 2
    int oversample = 0;
    double refinement_delta = 0;  // |estimate(2N) - estimate(N)|

    // montecarlo
    long long samples = 0;
    uint64_t seed = 0;
    double std_error = 0;   // standard error of the mean
    double confidence = 0;  // two-sided level of [lower, upper]

    // coeff-bound
    std::string exact_lower;  // rational rendered exactly
    std::string exact_upper;
};

/// Thrown when a trigonometric grid would exceed the memory or operation
/// budget; callers fall back to Monte Carlo.
struct GridInfeasible : std::runtime_error {
    explicit GridInfeasible(const std::string& what) : std::runtime_error(what) {}
};

/// Inverse standard normal CDF (Acklam's rational approximation, |rel err|
/// below 1.2e-9 on (0,1)).
double normal_quantile(double p);

/// Grid quadrature of the L1 norm over uniform N_i = oversample * (2 F_i + 1)
/// points per axis, where F_i bounds the support (so the trapezoid mean is an
/// exact quadrature of |f| up to the refinement defect). The estimate is
/// taken on the doubled grid; the bracket half-width is the difference
/// between the two grids.
NormEstimate l1_grid(const SparseTrigPoly& p, int oversample = 4);
NormEstimate l1_grid(const StructuralProduct& sp, int oversample = 4);

/// True when the cascade fits the grid budget (no exception probing needed).
bool grid_feasible(const StructuralProduct& sp, int oversample = 4);

/// Smallest cascade value seen on the base grid during l1_grid; used for
/// positivity checks of Riesz products. Runs the same evaluation as l1_grid.
double structural_grid_min(const StructuralProduct& sp, int oversample = 4);

/// Monte Carlo mean of |f| over denominator-2^64 torus points generated by
/// Philox4x32-10. Phases are reduced exactly via 64-bit wraparound, so
/// frequency size never affects accuracy. Deterministic for fixed
/// (seed, samples) regardless of thread count. [lower, upper] is the
/// two-sided normal-approximation interval at the given confidence.
NormEstimate l1_montecarlo(const StructuralProduct& sp, long long samples, uint64_t seed,
                           double confidence = 0.999);

/// Exact coefficient bounds: max_q max(|re|,|im|) <= ||f||_1 <= sum_q |c_q|.
/// Rational endpoints are rendered exactly and rounded outward to doubles.
NormEstimate l1_coeff_bounds(const SparseTrigPoly& p);

}  // namespace ornstein
