#include <doctest.h>

#include <limits>
#include <string>
#include <vector>

#include "ornstein/serialize.hpp"

using namespace ornstein;

namespace {

AdmissibleSequence small_sequence() {
    return select_sequence(4, 4, {1, 1, 1, 1}, Mode::compact);
}

Certificate synthetic_certificate() {
    AdmissibleSequence seq = small_sequence();
    std::vector<Rational> S{Rational(1), Rational(1), Rational(3, 2), Rational(7, 4)};
    NormEstimate n1;
    n1.method = "montecarlo";
    n1.value = 9.05;
    n1.lower = 9.0;
    n1.upper = 9.1;
    n1.samples = 100'000;
    n1.seed = 123;
    n1.std_error = 0.01;
    n1.confidence = 0.999;
    CertificateParams params;
    params.n = 4;
    params.m = 4;
    params.mode = Mode::compact;
    params.K = Rational(1);
    params.seed = 123;
    params.samples = 100'000;
    return assemble_certificate(seq, S, false, n1, params);
}

}  // namespace

TEST_CASE("lattice vectors serialize as decimal strings") {
    LatticeVector q(Integer(3), Integer(-2));
    CHECK(to_json(q).dump() == R"(["3","-2"])");

    LatticeVector big(Integer("123456789012345678901234567890"), Integer(-1));
    LatticeVector back = lattice_vector_from_json(to_json(big));
    CHECK(back.x == big.x);
    CHECK(back.y == big.y);

    CHECK_THROWS_AS(lattice_vector_from_json(Json::array({"1"})), std::invalid_argument);
    CHECK_THROWS_AS(lattice_vector_from_json(Json::object()), std::invalid_argument);
}

TEST_CASE("admissible sequences round-trip byte for byte") {
    AdmissibleSequence seq = small_sequence();
    Json j = to_json(seq);
    CHECK(j["n"] == 4);
    CHECK(j["m"] == 4);
    CHECK(j["mode"] == "compact");
    CHECK(j["tau"] == "1/2");
    CHECK(j["freqs"].size() == 4);
    CHECK(j["delta"].size() == 4);

    AdmissibleSequence back = sequence_from_json(j);
    CHECK(to_json(back).dump() == j.dump());

    Json tampered = j;
    tampered["sigma"] = Json::array({1, 1, 1});
    CHECK_THROWS_AS(sequence_from_json(tampered), std::invalid_argument);
}

TEST_CASE("expansions round-trip and reject duplicate frequencies") {
    SparseTrigPoly p = expand_riesz({LatticeVector(Integer(10), Integer(3)),
                                     LatticeVector(Integer(200), Integer(41))});
    Json j = to_json(p);
    CHECK(j["terms"].size() == 8);

    SparseTrigPoly back = poly_from_json(j);
    CHECK(to_json(back).dump() == j.dump());

    Json dup = j;
    dup["terms"].push_back(dup["terms"][0]);
    CHECK_THROWS_AS(poly_from_json(dup), std::invalid_argument);
}

TEST_CASE("norm estimates keep only their method's details") {
    NormEstimate g;
    g.method = "grid";
    g.value = 0.6366;
    g.lower = 0.63;
    g.upper = 0.64;
    g.grid_n1 = 12;
    g.grid_n2 = 4;
    g.oversample = 4;
    g.refinement_delta = 1e-6;
    Json jg = to_json(g);
    CHECK(jg.contains("grid_n1"));
    CHECK(!jg.contains("samples"));
    CHECK(!jg.contains("exact_lower"));
    NormEstimate g2 = estimate_from_json(jg);
    CHECK(to_json(g2).dump() == jg.dump());

    NormEstimate m;
    m.method = "montecarlo";
    m.value = 1.5;
    m.lower = 1.4;
    m.upper = 1.6;
    m.samples = 1'000'000;
    m.seed = std::numeric_limits<uint64_t>::max();
    m.std_error = 0.03;
    m.confidence = 0.999;
    Json jm = to_json(m);
    CHECK(jm["seed"] == Json(std::numeric_limits<uint64_t>::max()));
    CHECK(!jm.contains("grid_n1"));
    NormEstimate m2 = estimate_from_json(jm);
    CHECK(m2.seed == m.seed);
    CHECK(to_json(m2).dump() == jm.dump());

    NormEstimate c;
    c.method = "coeff-bound";
    c.value = 0.5;
    c.lower = 0.5;
    c.upper = 1.0;
    c.exact_lower = "1/2";
    c.exact_upper = "1";
    Json jc = to_json(c);
    CHECK(jc["exact_lower"] == "1/2");
    CHECK(!jc.contains("samples"));
    NormEstimate c2 = estimate_from_json(jc);
    CHECK(to_json(c2).dump() == jc.dump());
}

TEST_CASE("certificates replay after a round trip") {
    Certificate cert = synthetic_certificate();
    Json j = to_json(cert);
    CHECK(j["ratio"]["exact"] == "1");
    CHECK(j["bounds"]["N1"]["method"] == "montecarlo");
    CHECK(j["bounds"]["U0"] == "2");
    CHECK(j["verdict"] == true);

    Certificate back = certificate_from_json(j);
    CHECK(to_json(back).dump() == j.dump());
    CHECK(replay_consistent(back));
}

TEST_CASE("growth fits serialize the whole table") {
    EstimatorConfig cfg;
    cfg.method = "grid";
    GrowthFit fit = growth_experiment(2, Rational(20), {}, Oscillator::cosine, cfg);
    Json j = to_json(fit);
    CHECK(j["oscillator"] == "cosine");
    CHECK(j["lacunarity"] == "20");
    CHECK(j["sigma"] == Json(std::vector<int>{1, 1}));
    REQUIRE(j["table"].size() == 2);
    CHECK(j["table"][0]["m"] == 1);
    CHECK(j["table"][0]["estimate"]["method"] == "grid");
    CHECK(j.contains("slope"));
    CHECK(j.contains("r2"));
}

TEST_CASE("hypothesis reports expose both pairing vectors") {
    std::vector<MultiIndex> family{{4, 0}, {3, 2}, {2, 4}, {1, 6}, {0, 8}};
    HypothesisReport rep = check_pair(family, MultiIndex{2, 1}, MultiIndex{0, 1});
    Json j = to_json(rep);
    CHECK(j["lambda_ok"] == true);
    CHECK(j["gamma_ok"] == true);
    CHECK(j["pairings"]["lambda"] == Json(std::vector<long long>{8, 8, 8, 8, 8}));
    CHECK(j["pairings"]["gamma"] == Json(std::vector<long long>{0, 2, 4, 6, 8}));
}

TEST_CASE("condition reports serialize their flags") {
    AdmissibleSequence seq = small_sequence();
    ConditionReport rep = verify_sequence(seq, true);
    Json j = to_json(rep);
    CHECK(j["ok"] == true);
    CHECK(j["exhaustive"] == true);
    CHECK(j["achieved_delta"].size() == 4);
    CHECK(j["min_ratio"].is_string());
    CHECK(j["violations"].empty());
}

TEST_CASE("growth csv matches the documented layout") {
    GrowthFit fit;
    GrowthRow r1;
    r1.m = 1;
    r1.estimate.value = 0.5;
    r1.estimate.lower = 0.25;
    r1.estimate.upper = 0.75;
    r1.estimate.method = "grid";
    GrowthRow r2;
    r2.m = 2;
    r2.estimate.value = 1;
    r2.estimate.lower = 1;
    r2.estimate.upper = 1;
    r2.estimate.method = "montecarlo";
    fit.table = {r1, r2};
    CHECK(growth_table_csv(fit) ==
          "m,norm,lower,upper,method\n"
          "1,0.5,0.25,0.75,grid\n"
          "2,1,1,1,montecarlo\n");
}

TEST_CASE("ratio csv encodes verdicts as 0/1") {
    Certificate a;
    a.params.n = 4;
    a.khat = Rational(1, 2);
    a.verdict = true;
    Certificate b;
    b.params.n = 9;
    b.khat = Rational(1, 4);
    b.verdict = false;
    CHECK(khat_table_csv({a, b}) ==
          "n,khat,verdict\n"
          "4,0.5,1\n"
          "9,0.25,0\n");
}
