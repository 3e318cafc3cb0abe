#include "ornstein/certify.hpp"

#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "ornstein/riesz.hpp"

using namespace ornstein;

namespace {

NormEstimate fake_mc(double lower, double value) {
    NormEstimate e;
    e.method = "montecarlo";
    e.value = value;
    e.lower = lower;
    e.upper = 2 * value - lower;
    e.samples = 1000;
    e.seed = 1;
    e.confidence = 0.999;
    e.std_error = (value - lower) / 3.29;
    return e;
}

AdmissibleSequence small_seq() {
    return select_sequence(4, 4, {1, 1, 1, 1}, Mode::compact);
}

CertificateParams params_for(const Rational& K) {
    CertificateParams p;
    p.n = 4;
    p.m = 4;
    p.mode = Mode::compact;
    p.K = K;
    p.seed = 1;
    p.samples = 1000;
    return p;
}

}  // namespace

TEST_CASE("derivative family walks the progression") {
    std::vector<MultiIndex> fam = derivative_family(4);
    CHECK(fam == std::vector<MultiIndex>{{4, 0}, {3, 2}, {2, 4}, {1, 6}, {0, 8}});
    CHECK(derivative_family(1) == std::vector<MultiIndex>{{4, 0}, {3, 2}});
    CHECK_THROWS_AS(derivative_family(0), std::invalid_argument);
    CHECK_THROWS_AS(derivative_family(5), std::invalid_argument);
}

TEST_CASE("bookkeeping mirror with budgets at their cap values") {
    // N1 = 9, S1 = 1 gives L = 8; with S_l + T_l summing to 2 per order the
    // denominator is also 8, so the ratio lands exactly at 1.
    AdmissibleSequence seq = small_seq();
    std::vector<Rational> S{Rational(1), Rational(1), make_rational(3, 2),
                            make_rational(7, 4)};
    Certificate cert = assemble_certificate(seq, S, true, fake_mc(9.0, 9.1), params_for(Rational(1)));
    CHECK(cert.numerator == 8);
    CHECK(cert.T == std::vector<Rational>{Rational(1), make_rational(1, 2), make_rational(1, 4)});
    CHECK(cert.denominator == 8);
    CHECK(cert.khat == 1);
    CHECK(cert.verdict);
    CHECK(cert.conversion == std::vector<int>{4, 5, 6, 7, 8});
    CHECK(replay_consistent(cert));
}

TEST_CASE("remainder larger than the estimate degenerates to zero") {
    AdmissibleSequence seq = small_seq();
    std::vector<Rational> S{Rational(1), Rational(0), Rational(0), Rational(0)};
    Certificate cert =
        assemble_certificate(seq, S, true, fake_mc(0.5, 0.6), params_for(make_rational(1, 100)));
    CHECK(cert.numerator == 0);
    CHECK(cert.khat == 0);
    CHECK_FALSE(cert.verdict);
    CHECK(replay_consistent(cert));
}

TEST_CASE("negative statistical endpoints clamp to zero") {
    AdmissibleSequence seq = small_seq();
    std::vector<Rational> S{Rational(0), Rational(0), Rational(0), Rational(0)};
    Certificate cert =
        assemble_certificate(seq, S, true, fake_mc(-0.25, 0.1), params_for(Rational(1)));
    CHECK(cert.n1_rational == 0);
    CHECK(cert.khat == 0);
}

TEST_CASE("assembly validates its inputs") {
    AdmissibleSequence seq = small_seq();
    std::vector<Rational> S{Rational(1), Rational(1), Rational(1), Rational(1)};
    NormEstimate grid;
    grid.method = "grid";
    CHECK_THROWS_AS(assemble_certificate(seq, S, true, grid, params_for(Rational(1))),
                    std::invalid_argument);
    std::vector<Rational> bad{Rational(1)};
    CHECK_THROWS_AS(assemble_certificate(seq, bad, true, fake_mc(1, 1), params_for(Rational(1))),
                    std::invalid_argument);
    CertificateParams p = params_for(Rational(1));
    p.m = 0;
    CHECK_THROWS_AS(assemble_certificate(seq, S, true, fake_mc(1, 1), p),
                    std::invalid_argument);
}

TEST_CASE("replay rejects tampering") {
    AdmissibleSequence seq = small_seq();
    std::vector<Rational> S{Rational(1), Rational(1), make_rational(3, 2),
                            make_rational(7, 4)};
    Certificate cert =
        assemble_certificate(seq, S, true, fake_mc(9.0, 9.1), params_for(Rational(1)));

    Certificate bent = cert;
    bent.khat = make_rational(2, 1);
    CHECK_FALSE(replay_consistent(bent));

    bent = cert;
    bent.numerator += 1;
    CHECK_FALSE(replay_consistent(bent));

    bent = cert;
    bent.S[2] = Rational(0);
    CHECK_FALSE(replay_consistent(bent));

    bent = cert;
    bent.verdict = false;
    CHECK_FALSE(replay_consistent(bent));

    bent = cert;
    bent.n1.lower *= 2;
    CHECK_FALSE(replay_consistent(bent));
}

TEST_CASE("pipeline at fixed size is deterministic") {
    PipelineOptions opt;
    opt.K = make_rational(1, 100);
    opt.n_override = 4;
    opt.samples = 100'000;
    opt.seed = 0x7777;
    Certificate a = run_pipeline(opt);
    Certificate b = run_pipeline(opt);
    CHECK(a.khat == b.khat);
    CHECK(a.n1.value == b.n1.value);
    CHECK(a.n1.std_error == b.n1.std_error);
    CHECK(a.numerator == b.numerator);
    CHECK(replay_consistent(a));
    CHECK(a.params.n == 4);
    CHECK(a.s_exact);
    CHECK(a.khat > 0);
    CHECK(a.c_baseline == 0);  // no growth baseline when n is forced
}

TEST_CASE("ratio dominates the eight-fold bookkeeping bound") {
    PipelineOptions opt;
    opt.K = make_rational(1, 100);
    opt.n_override = 9;
    opt.samples = 100'000;
    opt.seed = 0x9999;
    Certificate cert = run_pipeline(opt);
    CHECK(replay_consistent(cert));
    // Every budget S_l, T_l stays within its structural cap, so D <= 8 and
    // the assembled ratio can never undercut (N1 - S1) / 8.
    CHECK(cert.denominator <= 8);
    CHECK(cert.khat >= (cert.n1_rational - cert.S[0]) / 8);
}

TEST_CASE("faithful run keeps every remainder budget within one") {
    PipelineOptions opt;
    opt.K = make_rational(1, 100);
    opt.n_override = 4;
    opt.mode = Mode::faithful;
    opt.samples = 100'000;
    opt.seed = 0x4444;
    Certificate cert = run_pipeline(opt);
    CHECK(cert.s_exact);
    for (const Rational& s : cert.S) CHECK(s <= 1);
    CHECK(replay_consistent(cert));
}

TEST_CASE("derived size is a perfect square within range") {
    PipelineOptions opt;
    opt.K = make_rational(1, 200);
    opt.samples = 100'000;
    opt.baseline_samples = 50'000;
    opt.seed = 0x1234;
    Certificate cert = run_pipeline(opt);
    CHECK(cert.c_baseline > 0);
    Integer root;
    CHECK(perfect_square(Integer(cert.params.n), &root));
    // sqrt(n) must clear (8K + 1) / C_hat so the bookkeeping target is met.
    double need = (8 * opt.K.get_d() + 1) / cert.c_baseline;
    CHECK(static_cast<double>(cert.params.n) >= need * need - 1e-6);
    CHECK(replay_consistent(cert));
}

TEST_CASE("pipeline rejects underpowered sampling") {
    PipelineOptions opt;
    opt.samples = 50'000;
    CHECK_THROWS_AS(run_pipeline(opt), std::invalid_argument);
}
