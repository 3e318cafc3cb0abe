#pragma once

#include "ornstein/frequency.hpp"
#include "ornstein/growth.hpp"
#include "ornstein/norms.hpp"

namespace ornstein {

/// Derivative family alpha_l = (4 - l, 2l), l = 0..m. Entries stay
/// nonnegative only for m <= 4. The total order is 4 + l, which is also the
/// exponent of the dropped (2 pi i) factors when converting the normalized
/// symbol action back to honest partial derivatives.
std::vector<MultiIndex> derivative_family(int m);

struct CertificateParams {
    int n = 0;
    int m = 4;
    Mode mode = Mode::compact;
    Rational K;
    uint64_t seed = 0;
    long long samples = 0;
    double confidence = 0.999;
};

/// Certified lower bound on the ratio
///   ||D^{alpha_1} f||_1 / (||D^{alpha_0} f||_1 + sum_{l=2..m} ||D^{alpha_l} f||_1)
/// for the witness built on seq. All arithmetic after the single statistical
/// input (N1) is exact rational.
struct Certificate {
    CertificateParams params;
    AdmissibleSequence seq;
    std::vector<Rational> S;   // sparse remainder bounds, l = 1..m
    std::vector<Rational> T;   // cascade triangle bounds tau^l n, l = 2..m
    bool s_exact = false;      // S from the materialized expansion (vs (2^n - 1) delta_l)
    NormEstimate n1;           // Monte Carlo estimate of ||II_1||_1
    Rational n1_rational;      // exact rationalization of n1.lower
    Rational u0 = Rational(2); // ||D^{alpha_0} f||_1 <= ||R_n||_1 + |I_0| sum = 2
    Rational numerator;        // max(0, N1 - S_1)
    Rational denominator;      // U0 + sum_{l>=2} (S_l + T_l)
    Rational khat;             // numerator / denominator, exact
    bool verdict = false;      // khat >= K
    std::vector<int> conversion;  // dropped (2 pi)^{4+l} exponents, l = 0..m
    double c_baseline = 0;     // growth slope used for n selection (0 when n forced)
};

/// Assembles the exact ratio from prepared bounds. S must have one entry per
/// l = 1..m; n1 must be a statistical estimate carrying samples and seed.
Certificate assemble_certificate(const AdmissibleSequence& seq,
                                 const std::vector<Rational>& S, bool s_exact,
                                 const NormEstimate& n1, const CertificateParams& params);

/// Recomputes numerator, denominator and khat from the stored parts and
/// checks them against the stored values (exact comparison).
bool replay_consistent(const Certificate& cert);

struct PipelineOptions {
    Rational K = Rational(1, 10);
    int n_override = 0;  // 0 derives n from K via the growth baseline
    Mode mode = Mode::compact;
    uint64_t seed = 0x6f726e73u;
    long long samples = 1'000'000;
    double confidence = 0.999;
    int m = 4;
    long long baseline_samples = 200'000;  // for the growth fit when n is derived
};

/// End-to-end: pick n, build the sequence, verify it, bound every S_l,
/// estimate N1, assemble. Deterministic for fixed options.
Certificate run_pipeline(const PipelineOptions& opt);

}  // namespace ornstein
