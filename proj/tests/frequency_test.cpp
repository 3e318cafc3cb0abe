#include "ornstein/frequency.hpp"

#include <doctest.h>

#include <stdexcept>
#include <vector>

using namespace ornstein;

namespace {

std::vector<int> ones(int n) { return std::vector<int>(n, 1); }

}  // namespace

TEST_CASE("tolerance presets") {
    CHECK(delta_preset(Mode::faithful, 4) == make_rational(1, 81));
    CHECK(delta_preset(Mode::compact, 4) == make_rational(1, 80));
    CHECK(delta_preset(Mode::faithful, 1) == make_rational(1, 3));
}

TEST_CASE("mode names round-trip") {
    CHECK(to_string(Mode::faithful) == "faithful");
    CHECK(mode_from_string("compact") == Mode::compact);
    CHECK_THROWS_AS(mode_from_string("loose"), std::invalid_argument);
}

TEST_CASE("first ratio element has an empty perturbation set") {
    // (18,3) with tau = 1/2: base ratio 9/18 is exactly tau, so every distance
    // vanishes and the element is admissible at k = 1.
    PrefixCheck pc = check_prefix({{18, 3}}, 1, make_rational(1, 2), 4, true);
    CHECK(pc.x_nonzero);
    for (const Rational& d : pc.dist) CHECK(d == 0);
}

TEST_CASE("single silent element example") {
    AdmissibleSequence seq =
        select_sequence(1, 1, {0}, Mode::faithful, make_rational(1, 100));
    REQUIRE(seq.freqs.size() == 1);
    CHECK(seq.freqs[0] == LatticeVector{101, 1});
    CHECK(seq.delta[0] == make_rational(1, 101));
    ConditionReport rep = verify_sequence(seq, true);
    CHECK(rep.ok);
}

TEST_CASE("second-element scale threshold") {
    // After a_1 = (18,3) with tau = 1/2 and the compact n=4 tolerance 1/80,
    // candidates (2t^2, t) become admissible exactly at t = 240: the dominant
    // excursion is 3t/(t^2+9) on the +a_1 side.
    Rational tau = make_rational(1, 2);
    Rational delta = make_rational(1, 80);
    auto admissible_at = [&](Integer t, int m) {
        std::vector<LatticeVector> prefix{{18, 3}, {2 * t * t, t}};
        PrefixCheck pc = check_prefix(prefix, 1, tau, m, true);
        if (!pc.x_nonzero) return false;
        for (const Rational& d : pc.dist)
            if (d > delta) return false;
        return true;
    };
    Integer first_pass(0);
    for (Integer t = 4; t <= 400; ++t)
        if (admissible_at(t, 1)) {
            first_pass = t;
            break;
        }
    CHECK(first_pass == 240);
    CHECK_FALSE(admissible_at(239, 1));
    // Higher powers amplify the excursion, so their threshold cannot be lower,
    // and once one t passes all orders every larger scan value in range does.
    Integer first_all(0);
    for (Integer t = 240; t <= 400; ++t)
        if (admissible_at(t, 4)) {
            first_all = t;
            break;
        }
    REQUIRE(first_all != 0);
    CHECK(first_all >= 240);
}

TEST_CASE("interval check is conservative against the exhaustive scan") {
    std::vector<std::vector<LatticeVector>> prefixes{
        {{18, 3}, {120000, 245}},
        {{18, 3}, {115200, 240}, {33800000, 4100}},
        {{7, 2}, {50, 9}},
        {{101, 1}, {5000, 3}},
    };
    for (const auto& prefix : prefixes)
        for (int sigma_k : {0, 1}) {
            PrefixCheck exact = check_prefix(prefix, sigma_k, make_rational(1, 2), 4, true);
            PrefixCheck boxed = check_prefix(prefix, sigma_k, make_rational(1, 2), 4, false);
            if (!boxed.x_nonzero) continue;  // enclosure gave up; nothing to compare
            CHECK(exact.x_nonzero);
            for (size_t l = 0; l < exact.dist.size(); ++l)
                CHECK(boxed.dist[l] >= exact.dist[l]);
        }
}

TEST_CASE("verifier flags each condition separately") {
    AdmissibleSequence seq;
    seq.n = 2;
    seq.m = 1;
    seq.tau = make_rational(1, 2);
    seq.delta = {make_rational(1, 8)};
    seq.sigma = {1, 1};

    seq.freqs = {{18, 3}, {18, 3}};
    ConditionReport dup = verify_sequence(seq, true);
    CHECK_FALSE(dup.ok_lacunary);
    CHECK_FALSE(dup.ok);

    seq.freqs = {{1, 5}, {1, 7}};
    ConditionReport zero = verify_sequence(seq, true);
    CHECK_FALSE(zero.ok_nonzero);  // difference lands on q1 = 0
    CHECK_FALSE(zero.ok);

    seq.freqs = {{18, 3}, {32, 5}};
    ConditionReport loose = verify_sequence(seq, true);
    CHECK(loose.ok_nonzero);
    CHECK(loose.ok_lacunary);
    CHECK_FALSE(loose.ok_ratio);  // (5+-3)^2/(32+-18) strays far from 1/2
}

TEST_CASE("constructed compact sequence passes both verifiers") {
    AdmissibleSequence seq = select_sequence(4, 4, ones(4), Mode::compact);
    CHECK(seq.tau == make_rational(1, 2));
    CHECK(seq.freqs.size() == 4);
    ConditionReport interval = verify_sequence(seq, false);
    ConditionReport exact = verify_sequence(seq, true);
    CHECK(interval.ok);
    CHECK(exact.ok);
    CHECK(interval.min_ratio > 1);
    for (int l = 0; l < 4; ++l) {
        CHECK(exact.achieved_delta[l] <= seq.delta[l]);
        CHECK(seq.delta[l] <= delta_preset(Mode::compact, 4));
    }
}

TEST_CASE("faithful budget holds by construction") {
    for (int n : {2, 3, 4}) {
        AdmissibleSequence seq = select_sequence(n, 4, ones(n), Mode::faithful);
        Rational p3(1);
        for (int k = 0; k < n; ++k) p3 *= 3;
        for (const Rational& d : seq.delta) CHECK((p3 - 1) * d <= 1);
        CHECK(verify_sequence(seq, true).ok);
    }
    CHECK_THROWS_AS(select_sequence(2, 1, {0, 0}, Mode::faithful, make_rational(1, 2)),
                    std::invalid_argument);
}

TEST_CASE("mixed sigma patterns and non-square compact sizes") {
    for (int n : {2, 3, 6}) {
        std::vector<int> sigma(n);
        for (int k = 0; k < n; ++k) sigma[k] = k % 2;
        AdmissibleSequence seq = select_sequence(n, 3, sigma, Mode::compact);
        ConditionReport rep = verify_sequence(seq, true);
        CHECK(rep.ok);
        // tau carries the certified enclosure guarantee around 1/sqrt(n).
        Rational err = seq.tau * seq.tau - make_rational(1, n);
        Rational band = delta_preset(Mode::compact, n);
        CHECK(abs_rational(err) <= band);
    }
}

TEST_CASE("tolerances tighten as the scale boost grows") {
    AdmissibleSequence base = select_sequence(3, 2, ones(3), Mode::compact);
    AdmissibleSequence boosted =
        select_sequence(3, 2, ones(3), Mode::compact, std::nullopt, Rational(4));
    for (size_t l = 0; l < base.delta.size(); ++l) CHECK(boosted.delta[l] <= base.delta[l]);
    CHECK(boosted.lacunarity >= base.lacunarity);
}

TEST_CASE("builder input validation") {
    CHECK_THROWS_AS(select_sequence(0, 1, {}, Mode::compact), std::invalid_argument);
    CHECK_THROWS_AS(select_sequence(2, 1, {1}, Mode::compact), std::invalid_argument);
    CHECK_THROWS_AS(select_sequence(2, 1, {1, 2}, Mode::compact), std::invalid_argument);
    CHECK_THROWS_AS(select_sequence(2, 0, {1, 1}, Mode::compact), std::invalid_argument);
    CHECK_THROWS_AS(select_sequence(2, 1, {1, 1}, Mode::compact, Rational(0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        select_sequence(2, 1, {1, 1}, Mode::compact, std::nullopt, make_rational(1, 2)),
        std::invalid_argument);
}
