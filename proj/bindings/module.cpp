// Python bindings. Exact quantities cross the boundary as fractions.Fraction
// (built from the decimal string forms), frequencies as (int, int) pairs, so
// nothing is rounded until the caller asks for a float.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "ornstein/certify.hpp"
#include "ornstein/frequency.hpp"
#include "ornstein/growth.hpp"
#include "ornstein/hypothesis.hpp"
#include "ornstein/norms.hpp"
#include "ornstein/parallel.hpp"
#include "ornstein/riesz.hpp"
#include "ornstein/serialize.hpp"

namespace py = pybind11;
using namespace ornstein;

namespace {

py::object py_int(const Integer& z) {
    return py::module_::import("builtins").attr("int")(py::str(to_string(z)));
}

py::object py_fraction(const Rational& r) {
    return py::module_::import("fractions").attr("Fraction")(py::str(to_string(r)));
}

Integer integer_in(const py::handle& o) {
    return Integer(py::str(o).cast<std::string>());
}

Rational rational_in(const py::handle& o) {
    if (py::isinstance<py::float_>(o))
        throw py::type_error("pass exact values as int, 'p/q' string, or fractions.Fraction");
    return rational_from_string(py::str(o).cast<std::string>());
}

LatticeVector vector_in(const py::handle& o) {
    auto seq = o.cast<py::sequence>();
    if (py::len(seq) != 2) throw py::value_error("a frequency is a pair (q1, q2)");
    return {integer_in(seq[0]), integer_in(seq[1])};
}

std::vector<LatticeVector> vectors_in(const py::iterable& it) {
    std::vector<LatticeVector> out;
    for (const auto& o : it) out.push_back(vector_in(o));
    return out;
}

py::tuple vector_out(const LatticeVector& q) {
    return py::make_tuple(py_int(q.x), py_int(q.y));
}

py::list vectors_out(const std::vector<LatticeVector>& qs) {
    py::list out;
    for (const auto& q : qs) out.append(vector_out(q));
    return out;
}

py::list fractions_out(const std::vector<Rational>& rs) {
    py::list out;
    for (const auto& r : rs) out.append(py_fraction(r));
    return out;
}

Oscillator oscillator_in(const std::string& s) {
    if (s == "cosine") return Oscillator::cosine;
    if (s == "sine") return Oscillator::sine;
    throw py::value_error("oscillator must be 'cosine' or 'sine'");
}

std::string oscillator_out(Oscillator osc) {
    return osc == Oscillator::cosine ? "cosine" : "sine";
}

EstimatorConfig config_in(const std::string& method, long long samples, uint64_t seed,
                          double confidence, int oversample) {
    EstimatorConfig cfg;
    cfg.method = method;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.confidence = confidence;
    cfg.oversample = oversample;
    return cfg;
}

py::dict report_out(const ConditionReport& rep) {
    py::dict d;
    d["ok"] = rep.ok;
    d["ratio_ok"] = rep.ok_ratio;
    d["lacunary_ok"] = rep.ok_lacunary;
    d["nonzero_ok"] = rep.ok_nonzero;
    d["exhaustive"] = rep.exhaustive;
    d["achieved_delta"] = fractions_out(rep.achieved_delta);
    d["min_ratio"] = py_fraction(rep.min_ratio);
    d["violations"] = rep.violations;
    return d;
}

}  // namespace

PYBIND11_MODULE(_ornstein, m) {
    m.doc() = "Witness polynomials and certified norm bounds on the 2-torus";
    m.attr("__version__") = "1.0.0";

    py::class_<AdmissibleSequence>(m, "AdmissibleSequence")
        .def_readonly("n", &AdmissibleSequence::n)
        .def_readonly("m", &AdmissibleSequence::m)
        .def_property_readonly("mode",
                               [](const AdmissibleSequence& s) { return to_string(s.mode); })
        .def_property_readonly("tau",
                               [](const AdmissibleSequence& s) { return py_fraction(s.tau); })
        .def_property_readonly(
            "delta", [](const AdmissibleSequence& s) { return fractions_out(s.delta); })
        .def_property_readonly(
            "lacunarity",
            [](const AdmissibleSequence& s) { return py_fraction(s.lacunarity); })
        .def_readonly("sigma", &AdmissibleSequence::sigma)
        .def_property_readonly(
            "freqs", [](const AdmissibleSequence& s) { return vectors_out(s.freqs); })
        .def("to_json", [](const AdmissibleSequence& s) { return to_json(s).dump(); })
        .def("__repr__", [](const AdmissibleSequence& s) {
            return "<AdmissibleSequence n=" + std::to_string(s.n) + " mode=" +
                   to_string(s.mode) + ">";
        });

    py::class_<SparseTrigPoly>(m, "SparseTrigPoly")
        .def_property_readonly("support_size", &SparseTrigPoly::support_size)
        .def("coeff_sum", [](const SparseTrigPoly& p) { return py_fraction(coeff_sum(p)); })
        .def("coeff_max_lower",
             [](const SparseTrigPoly& p) { return py_fraction(coeff_max_lower(p)); })
        .def("terms",
             [](const SparseTrigPoly& p) {
                 py::list out;
                 for (const auto& [q, c] : p.terms)
                     out.append(py::make_tuple(vector_out(q), py_fraction(c.re),
                                               py_fraction(c.im)));
                 return out;
             })
        .def(
            "eval",
            [](const SparseTrigPoly& p, const py::handle& x, const py::handle& y) {
                auto [re, im] = eval_sparse(p, {rational_in(x), rational_in(y)});
                return std::complex<double>(re, im);
            },
            py::arg("x"), py::arg("y"))
        .def("to_json", [](const SparseTrigPoly& p) { return to_json(p).dump(); })
        .def("__len__", &SparseTrigPoly::support_size)
        .def("__repr__", [](const SparseTrigPoly& p) {
            return "<SparseTrigPoly support=" + std::to_string(p.support_size()) + ">";
        });

    py::class_<StructuralProduct>(m, "StructuralProduct")
        .def_property_readonly("size", &StructuralProduct::size)
        .def_property_readonly(
            "oscillator", [](const StructuralProduct& sp) { return oscillator_out(sp.osc); })
        .def_property_readonly(
            "freqs", [](const StructuralProduct& sp) { return vectors_out(sp.freqs); })
        .def_property_readonly(
            "weights", [](const StructuralProduct& sp) { return fractions_out(sp.weights); })
        .def("triangle_bound",
             [](const StructuralProduct& sp) {
                 return py_fraction(structural_triangle_bound(sp));
             })
        .def(
            "eval",
            [](const StructuralProduct& sp, const py::handle& x, const py::handle& y) {
                return eval_product_form(sp, {rational_in(x), rational_in(y)});
            },
            py::arg("x"), py::arg("y"))
        .def("expand", [](const StructuralProduct& sp) { return expand_structural(sp); })
        .def("__len__", &StructuralProduct::size)
        .def("__repr__", [](const StructuralProduct& sp) {
            return "<StructuralProduct size=" + std::to_string(sp.size()) + " " +
                   oscillator_out(sp.osc) + ">";
        });

    py::class_<Decomposition>(m, "Decomposition")
        .def_readonly("sparse", &Decomposition::sparse)
        .def_readonly("product", &Decomposition::product)
        .def_readonly("l", &Decomposition::l);

    py::class_<NormEstimate>(m, "NormEstimate")
        .def_readonly("value", &NormEstimate::value)
        .def_readonly("lower", &NormEstimate::lower)
        .def_readonly("upper", &NormEstimate::upper)
        .def_readonly("method", &NormEstimate::method)
        .def_readonly("grid_n1", &NormEstimate::grid_n1)
        .def_readonly("grid_n2", &NormEstimate::grid_n2)
        .def_readonly("oversample", &NormEstimate::oversample)
        .def_readonly("refinement_delta", &NormEstimate::refinement_delta)
        .def_readonly("samples", &NormEstimate::samples)
        .def_readonly("seed", &NormEstimate::seed)
        .def_readonly("std_error", &NormEstimate::std_error)
        .def_readonly("confidence", &NormEstimate::confidence)
        .def_readonly("exact_lower", &NormEstimate::exact_lower)
        .def_readonly("exact_upper", &NormEstimate::exact_upper)
        .def("to_json", [](const NormEstimate& e) { return to_json(e).dump(); })
        .def("__repr__", [](const NormEstimate& e) {
            return "<NormEstimate " + e.method + " value=" + std::to_string(e.value) + ">";
        });

    py::class_<GrowthRow>(m, "GrowthRow")
        .def_readonly("m", &GrowthRow::m)
        .def_readonly("estimate", &GrowthRow::estimate);

    py::class_<GrowthFit>(m, "GrowthFit")
        .def_readonly("table", &GrowthFit::table)
        .def_readonly("slope", &GrowthFit::slope)
        .def_readonly("intercept", &GrowthFit::intercept)
        .def_readonly("r2", &GrowthFit::r2)
        .def_readonly("monotone", &GrowthFit::monotone)
        .def_property_readonly("oscillator",
                               [](const GrowthFit& f) { return oscillator_out(f.osc); })
        .def_readonly("sigma", &GrowthFit::sigma)
        .def("to_json", [](const GrowthFit& f) { return to_json(f).dump(); })
        .def("to_csv", [](const GrowthFit& f) { return growth_table_csv(f); })
        .def("__repr__", [](const GrowthFit& f) {
            return "<GrowthFit rows=" + std::to_string(f.table.size()) + " slope=" +
                   std::to_string(f.slope) + ">";
        });

    py::class_<Certificate>(m, "Certificate")
        .def_property_readonly("params",
                               [](const Certificate& c) {
                                   py::dict d;
                                   d["n"] = c.params.n;
                                   d["m"] = c.params.m;
                                   d["mode"] = to_string(c.params.mode);
                                   d["K"] = py_fraction(c.params.K);
                                   d["seed"] = c.params.seed;
                                   d["samples"] = c.params.samples;
                                   d["confidence"] = c.params.confidence;
                                   return d;
                               })
        .def_readonly("seq", &Certificate::seq)
        .def_property_readonly("S", [](const Certificate& c) { return fractions_out(c.S); })
        .def_property_readonly("T", [](const Certificate& c) { return fractions_out(c.T); })
        .def_readonly("s_exact", &Certificate::s_exact)
        .def_readonly("n1", &Certificate::n1)
        .def_property_readonly(
            "n1_rational", [](const Certificate& c) { return py_fraction(c.n1_rational); })
        .def_property_readonly("u0", [](const Certificate& c) { return py_fraction(c.u0); })
        .def_property_readonly(
            "numerator", [](const Certificate& c) { return py_fraction(c.numerator); })
        .def_property_readonly(
            "denominator", [](const Certificate& c) { return py_fraction(c.denominator); })
        .def_property_readonly("khat",
                               [](const Certificate& c) { return py_fraction(c.khat); })
        .def_readonly("verdict", &Certificate::verdict)
        .def_readonly("conversion", &Certificate::conversion)
        .def_readonly("c_baseline", &Certificate::c_baseline)
        .def("to_json", [](const Certificate& c) { return to_json(c).dump(); })
        .def("__repr__", [](const Certificate& c) {
            // khat itself is exact; the repr only needs a readable scale
            return "<Certificate n=" + std::to_string(c.params.n) + " khat~" +
                   std::to_string(c.khat.get_d()) + (c.verdict ? " ok>" : " below-target>");
        });

    m.def("derivative_family", &derivative_family, py::arg("m"),
          "Multiindexes (4 - l, 2l) for l = 0..m.");

    m.def(
        "check_pair",
        [](const std::vector<MultiIndex>& alphas, const MultiIndex& lam,
           const MultiIndex& gamma) {
            HypothesisReport rep = check_pair(alphas, lam, gamma);
            py::dict d;
            d["ok"] = rep.ok();
            d["lambda_ok"] = rep.lambda_ok;
            d["gamma_ok"] = rep.gamma_ok;
            d["lambda"] = rep.lambda;
            d["gamma"] = rep.gamma;
            d["lambda_pairings"] = rep.lambda_pairings;
            d["gamma_pairings"] = rep.gamma_pairings;
            return d;
        },
        py::arg("alphas"), py::arg("lam"), py::arg("gamma"));

    m.def(
        "search_witnesses",
        [](const std::vector<MultiIndex>& alphas, long long bound) -> py::object {
            auto found = search_witnesses(alphas, bound);
            if (!found) return py::none();
            return py::make_tuple(found->first, found->second);
        },
        py::arg("alphas"), py::arg("bound") = 8);

    m.def(
        "delta_preset",
        [](const std::string& mode, int n) {
            return py_fraction(delta_preset(mode_from_string(mode), n));
        },
        py::arg("mode"), py::arg("n"));

    m.def(
        "select_sequence",
        [](int n, int m, py::object sigma, const std::string& mode, py::object delta,
           py::object growth_boost) {
            std::vector<int> sig = sigma.is_none() ? std::vector<int>(n, 1)
                                                   : sigma.cast<std::vector<int>>();
            std::optional<Rational> target;
            if (!delta.is_none()) target = rational_in(delta);
            Rational boost =
                growth_boost.is_none() ? Rational(1) : rational_in(growth_boost);
            return select_sequence(n, m, sig, mode_from_string(mode), target, boost);
        },
        py::arg("n"), py::arg("m") = 4, py::arg("sigma") = py::none(),
        py::arg("mode") = "compact", py::arg("delta") = py::none(),
        py::arg("growth_boost") = py::none());

    m.def(
        "verify_sequence",
        [](const AdmissibleSequence& seq, bool exhaustive) {
            return report_out(verify_sequence(seq, exhaustive));
        },
        py::arg("seq"), py::arg("exhaustive") = false);

    m.def(
        "expand_riesz", [](const py::iterable& freqs) { return expand_riesz(vectors_in(freqs)); },
        py::arg("freqs"));

    m.def(
        "build_z",
        [](const py::iterable& freqs, const MultiIndex& alpha0) {
            return build_z(vectors_in(freqs), alpha0);
        },
        py::arg("freqs"), py::arg("alpha0") = MultiIndex{4, 0});

    m.def("apply_derivative", &apply_derivative, py::arg("poly"), py::arg("alpha"));

    m.def(
        "decompose",
        [](const AdmissibleSequence& seq, int l) {
            return decompose(seq.freqs, seq.sigma, seq.tau, l);
        },
        py::arg("seq"), py::arg("l"));

    m.def(
        "structural_part",
        [](const AdmissibleSequence& seq, int l) {
            return structural_part(seq.freqs, seq.sigma, seq.tau, l);
        },
        py::arg("seq"), py::arg("l"));

    m.def(
        "cascade",
        [](const py::iterable& freqs, const py::iterable& weights,
           const std::string& oscillator) {
            StructuralProduct sp;
            sp.freqs = vectors_in(freqs);
            for (const auto& w : weights) sp.weights.push_back(rational_in(w));
            sp.osc = oscillator_in(oscillator);
            if (sp.freqs.size() != sp.weights.size())
                throw py::value_error("freqs and weights must have equal length");
            return sp;
        },
        py::arg("freqs"), py::arg("weights"), py::arg("oscillator") = "cosine",
        "Builds a weighted oscillator cascade over the given generators.");

    m.def(
        "l1_grid", [](const SparseTrigPoly& p, int oversample) { return l1_grid(p, oversample); },
        py::arg("poly"), py::arg("oversample") = 4);
    m.def(
        "l1_grid",
        [](const StructuralProduct& sp, int oversample) { return l1_grid(sp, oversample); },
        py::arg("cascade"), py::arg("oversample") = 4);

    m.def(
        "grid_feasible",
        [](const StructuralProduct& sp, int oversample) {
            return grid_feasible(sp, oversample);
        },
        py::arg("cascade"), py::arg("oversample") = 4);

    m.def(
        "structural_grid_min",
        [](const StructuralProduct& sp, int oversample) {
            return structural_grid_min(sp, oversample);
        },
        py::arg("cascade"), py::arg("oversample") = 4);

    m.def("l1_montecarlo", &l1_montecarlo, py::arg("cascade"), py::arg("samples"),
          py::arg("seed"), py::arg("confidence") = 0.999);

    m.def("l1_coeff_bounds", &l1_coeff_bounds, py::arg("poly"));

    m.def(
        "lacunary_frequencies",
        [](int m, const py::handle& M, const py::handle& base) {
            return vectors_out(lacunary_frequencies(m, rational_in(M), integer_in(base)));
        },
        py::arg("m"), py::arg("M"), py::arg("base") = 2);

    m.def(
        "growth_experiment",
        [](int m_max, const py::handle& M, const std::vector<int>& sigma,
           const std::string& oscillator, const std::string& method, long long samples,
           uint64_t seed, double confidence, int oversample) {
            return growth_experiment(m_max, rational_in(M), sigma, oscillator_in(oscillator),
                                     config_in(method, samples, seed, confidence, oversample));
        },
        py::arg("m_max"), py::arg("M") = 20, py::arg("sigma") = std::vector<int>{},
        py::arg("oscillator") = "cosine", py::arg("method") = "auto",
        py::arg("samples") = 2'000'000, py::arg("seed") = uint64_t{0x6f726e73u},
        py::arg("confidence") = 0.999, py::arg("oversample") = 1);

    m.def(
        "sigma_search",
        [](int m, const py::handle& M, const std::string& oscillator, const std::string& method,
           long long samples, uint64_t seed, double confidence, int oversample) {
            return sigma_search(m, rational_in(M), oscillator_in(oscillator),
                                config_in(method, samples, seed, confidence, oversample));
        },
        py::arg("m"), py::arg("M") = 20, py::arg("oscillator") = "cosine",
        py::arg("method") = "auto", py::arg("samples") = 2'000'000,
        py::arg("seed") = uint64_t{0x6f726e73u}, py::arg("confidence") = 0.999,
        py::arg("oversample") = 1);

    m.def(
        "run_pipeline",
        [](const py::handle& K, int n, const std::string& mode, uint64_t seed,
           long long samples, double confidence, int m, long long baseline_samples) {
            PipelineOptions opt;
            opt.K = rational_in(K);
            opt.n_override = n;
            opt.mode = mode_from_string(mode);
            opt.seed = seed;
            opt.samples = samples;
            opt.confidence = confidence;
            opt.m = m;
            opt.baseline_samples = baseline_samples;
            return run_pipeline(opt);
        },
        py::arg("K") = "1/10", py::arg("n") = 0, py::arg("mode") = "compact",
        py::arg("seed") = uint64_t{0x6f726e73u}, py::arg("samples") = 1'000'000,
        py::arg("confidence") = 0.999, py::arg("m") = 4,
        py::arg("baseline_samples") = 200'000,
        "Selects a sequence (n derived from K unless forced), bounds every "
        "derivative norm, and assembles the exact ratio certificate.");

    m.def("replay_consistent", &replay_consistent, py::arg("cert"));

    m.def(
        "sequence_from_json",
        [](const std::string& s) { return sequence_from_json(Json::parse(s)); },
        py::arg("text"));
    m.def(
        "poly_from_json", [](const std::string& s) { return poly_from_json(Json::parse(s)); },
        py::arg("text"));
    m.def(
        "certificate_from_json",
        [](const std::string& s) { return certificate_from_json(Json::parse(s)); },
        py::arg("text"));

    m.def(
        "khat_table_csv",
        [](const std::vector<Certificate>& certs) { return khat_table_csv(certs); },
        py::arg("certs"));

    m.def("thread_count", &thread_count);
    m.def("set_thread_count", &set_thread_count, py::arg("n"));
}
