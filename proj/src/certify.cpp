#include "ornstein/certify.hpp"

#include <cmath>

namespace ornstein {

std::vector<MultiIndex> derivative_family(int m) {
    if (m < 1 || m > 4)
        throw std::invalid_argument("derivative_family: m must be between 1 and 4");
    std::vector<MultiIndex> out;
    for (int l = 0; l <= m; ++l) out.push_back({4 - l, 2 * l});
    return out;
}

Certificate assemble_certificate(const AdmissibleSequence& seq,
                                 const std::vector<Rational>& S, bool s_exact,
                                 const NormEstimate& n1, const CertificateParams& params) {
    if (params.m < 1 || params.m > 4)
        throw std::invalid_argument("assemble_certificate: m must be between 1 and 4");
    if (S.size() != static_cast<size_t>(params.m))
        throw std::invalid_argument("assemble_certificate: need one S bound per order");
    if (n1.method != "montecarlo" || n1.samples <= 0)
        throw std::invalid_argument(
            "assemble_certificate: N1 must be a statistical estimate with recorded samples");
    if (seq.m < params.m)
        throw std::invalid_argument("assemble_certificate: sequence certifies fewer orders");

    Certificate cert;
    cert.params = params;
    cert.seq = seq;
    cert.S = S;
    cert.s_exact = s_exact;
    cert.n1 = n1;
    cert.c_baseline = 0;

    // Exact rationalization of the statistical lower endpoint; every later
    // step is exact arithmetic on this value.
    cert.n1_rational = Rational(n1.lower > 0 ? n1.lower : 0.0);
    cert.n1_rational.canonicalize();

    cert.u0 = Rational(2);
    cert.numerator = cert.n1_rational - S[0];
    if (cert.numerator < 0) cert.numerator = 0;
    cert.denominator = cert.u0;
    cert.T.clear();
    for (int l = 2; l <= params.m; ++l) {
        Rational t_l = pow_rational(seq.tau, static_cast<unsigned>(l)) * Rational(seq.n);
        cert.T.push_back(t_l);
        cert.denominator += S[static_cast<size_t>(l) - 1] + t_l;
    }
    cert.khat = cert.numerator / cert.denominator;
    cert.verdict = cert.khat >= params.K;
    for (int l = 0; l <= params.m; ++l) cert.conversion.push_back(4 + l);
    return cert;
}

bool replay_consistent(const Certificate& cert) {
    Rational num = cert.n1_rational - cert.S.at(0);
    if (num < 0) num = 0;
    Rational den = cert.u0;
    for (size_t i = 0; i < cert.T.size(); ++i) den += cert.S.at(i + 1) + cert.T[i];
    if (num != cert.numerator || den != cert.denominator) return false;
    if (num / den != cert.khat) return false;
    Rational n1_again(cert.n1.lower > 0 ? cert.n1.lower : 0.0);
    n1_again.canonicalize();
    return n1_again == cert.n1_rational && cert.verdict == (cert.khat >= cert.params.K);
}

namespace {

int derive_n(const PipelineOptions& opt, double* c_baseline) {
    EstimatorConfig cfg;
    cfg.samples = opt.baseline_samples;
    cfg.seed = opt.seed;
    GrowthFit fit = growth_experiment(8, Rational(20), {}, Oscillator::cosine, cfg);
    *c_baseline = fit.slope;
    if (fit.slope <= 0)
        throw std::runtime_error("run_pipeline: growth baseline has nonpositive slope");
    // Bookkeeping target: khat >= (C sqrt(n) - 1) / 8 >= K once
    // sqrt(n) >= (8K + 1) / C.
    double root = (8 * opt.K.get_d() + 1) / fit.slope;
    long long n = static_cast<long long>(std::ceil(root * root));
    if (n < 4) n = 4;
    if (opt.mode == Mode::compact) {
        long long r = static_cast<long long>(std::ceil(std::sqrt(static_cast<double>(n))));
        n = r * r;
    }
    // The K -> 0 floor of this formula sits near (1/C)^2, about 55..85 for
    // observed baselines, so the guard only has to stop runaway requests.
    if (n > 144)
        throw std::runtime_error("run_pipeline: derived n exceeds the supported range");
    return static_cast<int>(n);
}

}  // namespace

Certificate run_pipeline(const PipelineOptions& opt) {
    if (opt.samples < 100'000)
        throw std::invalid_argument("run_pipeline: at least 1e5 samples required");
    if (opt.m < 1 || opt.m > 4)
        throw std::invalid_argument("run_pipeline: m must be between 1 and 4");

    double c_baseline = 0;
    int n = opt.n_override > 0 ? opt.n_override : derive_n(opt, &c_baseline);

    std::vector<int> sigma(static_cast<size_t>(n), 1);
    AdmissibleSequence seq = select_sequence(n, opt.m, sigma, opt.mode);
    ConditionReport rep = verify_sequence(seq, n <= 8);
    if (!rep.ok)
        throw std::logic_error("run_pipeline: constructed sequence failed verification");

    std::vector<Rational> S;
    bool s_exact = n <= 12;
    Integer two_n;
    mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n));
    for (int l = 1; l <= opt.m; ++l) {
        if (s_exact) {
            Decomposition dec = decompose(seq.freqs, seq.sigma, seq.tau, l);
            S.push_back(coeff_sum(dec.sparse));
        } else {
            // |coeff| <= delta_l 2^-r termwise and sum_q 2^-r(q) = 2^n - 1.
            S.push_back(Rational(two_n - 1) * seq.delta[static_cast<size_t>(l) - 1]);
        }
    }

    StructuralProduct ii1 = structural_part(seq.freqs, seq.sigma, seq.tau, 1);
    NormEstimate n1 = l1_montecarlo(ii1, opt.samples, opt.seed, opt.confidence);

    CertificateParams params;
    params.n = n;
    params.m = opt.m;
    params.mode = opt.mode;
    params.K = opt.K;
    params.seed = opt.seed;
    params.samples = opt.samples;
    params.confidence = opt.confidence;
    Certificate cert = assemble_certificate(seq, S, s_exact, n1, params);
    cert.c_baseline = c_baseline;
    return cert;
}

}  // namespace ornstein
