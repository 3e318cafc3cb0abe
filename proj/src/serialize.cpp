#include "ornstein/serialize.hpp"

#include <sstream>

namespace ornstein {

namespace {

Json rationals_to_json(const std::vector<Rational>& v) {
    Json arr = Json::array();
    for (const auto& r : v) arr.push_back(to_string(r));
    return arr;
}

std::vector<Rational> rationals_from_json(const Json& j) {
    std::vector<Rational> out;
    for (const auto& e : j) out.push_back(rational_from_string(e.get<std::string>()));
    return out;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

Json to_json(const LatticeVector& q) {
    return Json::array({to_string(q.x), to_string(q.y)});
}

LatticeVector lattice_vector_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("lattice vector: expected a 2-element array");
    return {Integer(j[0].get<std::string>()), Integer(j[1].get<std::string>())};
}

Json to_json(const HypothesisReport& rep) {
    Json j;
    j["lambda_ok"] = rep.lambda_ok;
    j["gamma_ok"] = rep.gamma_ok;
    j["lambda"] = rep.lambda;
    j["gamma"] = rep.gamma;
    j["pairings"] = Json::object();
    j["pairings"]["lambda"] = rep.lambda_pairings;
    j["pairings"]["gamma"] = rep.gamma_pairings;
    return j;
}

Json to_json(const AdmissibleSequence& seq) {
    Json j;
    j["n"] = seq.n;
    j["m"] = seq.m;
    j["mode"] = to_string(seq.mode);
    j["tau"] = to_string(seq.tau);
    j["delta"] = rationals_to_json(seq.delta);
    j["sigma"] = seq.sigma;
    j["lacunarity"] = to_string(seq.lacunarity);
    Json freqs = Json::array();
    for (const auto& q : seq.freqs) freqs.push_back(to_json(q));
    j["freqs"] = freqs;
    return j;
}

AdmissibleSequence sequence_from_json(const Json& j) {
    AdmissibleSequence seq;
    seq.n = j.at("n").get<int>();
    seq.m = j.at("m").get<int>();
    seq.mode = mode_from_string(j.at("mode").get<std::string>());
    seq.tau = rational_from_string(j.at("tau").get<std::string>());
    seq.delta = rationals_from_json(j.at("delta"));
    seq.sigma = j.at("sigma").get<std::vector<int>>();
    seq.lacunarity = rational_from_string(j.at("lacunarity").get<std::string>());
    for (const auto& e : j.at("freqs")) seq.freqs.push_back(lattice_vector_from_json(e));
    if (seq.freqs.size() != static_cast<size_t>(seq.n) ||
        seq.sigma.size() != static_cast<size_t>(seq.n))
        throw std::invalid_argument("sequence: length fields disagree with arrays");
    return seq;
}

Json to_json(const ConditionReport& rep) {
    Json j;
    j["ok"] = rep.ok;
    j["ratio_ok"] = rep.ok_ratio;
    j["lacunary_ok"] = rep.ok_lacunary;
    j["nonzero_ok"] = rep.ok_nonzero;
    j["exhaustive"] = rep.exhaustive;
    j["achieved_delta"] = rationals_to_json(rep.achieved_delta);
    j["min_ratio"] = to_string(rep.min_ratio);
    j["violations"] = rep.violations;
    return j;
}

Json to_json(const SparseTrigPoly& p) {
    Json j;
    j["terms"] = Json::array();
    for (const auto& [q, t] : p.terms) {
        Json term;
        term["q"] = to_json(q);
        term["re"] = to_string(t.re);
        term["im"] = to_string(t.im);
        term["r"] = t.r;
        j["terms"].push_back(term);
    }
    return j;
}

SparseTrigPoly poly_from_json(const Json& j) {
    SparseTrigPoly p;
    for (const auto& e : j.at("terms")) {
        Term t;
        t.re = rational_from_string(e.at("re").get<std::string>());
        t.im = rational_from_string(e.at("im").get<std::string>());
        t.r = e.at("r").get<int>();
        LatticeVector q = lattice_vector_from_json(e.at("q"));
        if (p.terms.count(q))
            throw std::invalid_argument("polynomial: duplicate frequency");
        p.terms.emplace(q, std::move(t));
    }
    return p;
}

Json to_json(const NormEstimate& e) {
    Json j;
    j["method"] = e.method;
    j["value"] = e.value;
    j["lower"] = e.lower;
    j["upper"] = e.upper;
    if (e.method == "grid") {
        j["grid_n1"] = e.grid_n1;
        j["grid_n2"] = e.grid_n2;
        j["oversample"] = e.oversample;
        j["refinement_delta"] = e.refinement_delta;
    } else if (e.method == "montecarlo") {
        j["samples"] = e.samples;
        j["seed"] = e.seed;
        j["std_error"] = e.std_error;
        j["confidence"] = e.confidence;
    } else if (e.method == "coeff-bound") {
        j["exact_lower"] = e.exact_lower;
        j["exact_upper"] = e.exact_upper;
    }
    return j;
}

NormEstimate estimate_from_json(const Json& j) {
    NormEstimate e;
    e.method = j.at("method").get<std::string>();
    e.value = j.at("value").get<double>();
    e.lower = j.at("lower").get<double>();
    e.upper = j.at("upper").get<double>();
    if (e.method == "grid") {
        e.grid_n1 = j.at("grid_n1").get<long long>();
        e.grid_n2 = j.at("grid_n2").get<long long>();
        e.oversample = j.at("oversample").get<int>();
        e.refinement_delta = j.at("refinement_delta").get<double>();
    } else if (e.method == "montecarlo") {
        e.samples = j.at("samples").get<long long>();
        e.seed = j.at("seed").get<uint64_t>();
        e.std_error = j.at("std_error").get<double>();
        e.confidence = j.at("confidence").get<double>();
    } else if (e.method == "coeff-bound") {
        e.exact_lower = j.at("exact_lower").get<std::string>();
        e.exact_upper = j.at("exact_upper").get<std::string>();
    }
    return e;
}

Json to_json(const GrowthFit& fit) {
    Json j;
    j["oscillator"] = fit.osc == Oscillator::cosine ? "cosine" : "sine";
    j["lacunarity"] = to_string(fit.lacunarity_target);
    j["sigma"] = fit.sigma;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["r2"] = fit.r2;
    j["monotone"] = fit.monotone;
    j["table"] = Json::array();
    for (const auto& row : fit.table) {
        Json r;
        r["m"] = row.m;
        r["estimate"] = to_json(row.estimate);
        j["table"].push_back(r);
    }
    return j;
}

Json to_json(const Certificate& cert) {
    Json j;
    Json params;
    params["n"] = cert.params.n;
    params["m"] = cert.params.m;
    params["mode"] = to_string(cert.params.mode);
    params["K"] = to_string(cert.params.K);
    params["seed"] = cert.params.seed;
    params["samples"] = cert.params.samples;
    params["confidence"] = cert.params.confidence;
    j["params"] = params;
    j["sequence"] = to_json(cert.seq);

    Json bounds;
    bounds["S"] = rationals_to_json(cert.S);
    bounds["S_exact"] = cert.s_exact;
    Json t = Json::array();
    for (const auto& r : cert.T) t.push_back(to_string(r));
    bounds["T"] = t;
    Json n1;
    n1["value"] = cert.n1.value;
    n1["lower"] = cert.n1.lower;
    n1["lower_exact"] = to_string(cert.n1_rational);
    n1["confidence"] = cert.n1.confidence;
    n1["method"] = cert.n1.method;
    n1["seed"] = cert.n1.seed;
    n1["samples"] = cert.n1.samples;
    n1["std_error"] = cert.n1.std_error;
    bounds["N1"] = n1;
    bounds["U0"] = to_string(cert.u0);
    j["bounds"] = bounds;

    Json ratio;
    ratio["numerator"] = to_string(cert.numerator);
    ratio["denominator"] = to_string(cert.denominator);
    ratio["exact"] = to_string(cert.khat);
    ratio["decimal"] = cert.khat.get_d();
    j["ratio"] = ratio;
    j["verdict"] = cert.verdict;
    j["conversion"] = cert.conversion;
    j["c_baseline"] = cert.c_baseline;
    return j;
}

Certificate certificate_from_json(const Json& j) {
    Certificate cert;
    const Json& params = j.at("params");
    cert.params.n = params.at("n").get<int>();
    cert.params.m = params.at("m").get<int>();
    cert.params.mode = mode_from_string(params.at("mode").get<std::string>());
    cert.params.K = rational_from_string(params.at("K").get<std::string>());
    cert.params.seed = params.at("seed").get<uint64_t>();
    cert.params.samples = params.at("samples").get<long long>();
    cert.params.confidence = params.at("confidence").get<double>();
    cert.seq = sequence_from_json(j.at("sequence"));

    const Json& bounds = j.at("bounds");
    cert.S = rationals_from_json(bounds.at("S"));
    cert.s_exact = bounds.at("S_exact").get<bool>();
    cert.T = rationals_from_json(bounds.at("T"));
    const Json& n1 = bounds.at("N1");
    cert.n1.method = n1.at("method").get<std::string>();
    cert.n1.value = n1.at("value").get<double>();
    cert.n1.lower = n1.at("lower").get<double>();
    cert.n1.confidence = n1.at("confidence").get<double>();
    cert.n1.seed = n1.at("seed").get<uint64_t>();
    cert.n1.samples = n1.at("samples").get<long long>();
    cert.n1.std_error = n1.at("std_error").get<double>();
    cert.n1_rational = rational_from_string(n1.at("lower_exact").get<std::string>());
    cert.u0 = rational_from_string(bounds.at("U0").get<std::string>());
    cert.numerator = rational_from_string(j.at("ratio").at("numerator").get<std::string>());
    cert.denominator =
        rational_from_string(j.at("ratio").at("denominator").get<std::string>());
    cert.khat = rational_from_string(j.at("ratio").at("exact").get<std::string>());
    cert.verdict = j.at("verdict").get<bool>();
    cert.conversion = j.at("conversion").get<std::vector<int>>();
    cert.c_baseline = j.at("c_baseline").get<double>();
    return cert;
}

std::string growth_table_csv(const GrowthFit& fit) {
    std::ostringstream os;
    os << "m,norm,lower,upper,method\n";
    for (const auto& row : fit.table) {
        os << row.m << ',' << format_double(row.estimate.value) << ','
           << format_double(row.estimate.lower) << ',' << format_double(row.estimate.upper)
           << ',' << row.estimate.method << '\n';
    }
    return os.str();
}

std::string khat_table_csv(const std::vector<Certificate>& certs) {
    std::ostringstream os;
    os << "n,khat,verdict\n";
    for (const auto& c : certs)
        os << c.params.n << ',' << format_double(c.khat.get_d()) << ','
           << (c.verdict ? 1 : 0) << '\n';
    return os.str();
}

}  // namespace ornstein
