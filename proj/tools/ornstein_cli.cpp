#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "ornstein/parallel.hpp"
#include "ornstein/serialize.hpp"
#include "ornstein/svg.hpp"

namespace {

using namespace ornstein;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFalse = 2;  // ran fine, but the checked claim is false

MultiIndex parse_multiindex(const std::string& s) {
    MultiIndex out;
    std::istringstream in(s);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        size_t pos = 0;
        int v = std::stoi(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument("bad multiindex entry '" + cell + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty multiindex");
    return out;
}

std::vector<MultiIndex> parse_multiindex_list(const std::string& s) {
    std::vector<MultiIndex> out;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, ';')) out.push_back(parse_multiindex(part));
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (int v : parse_multiindex(s)) out.push_back(v);
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

/// stdout by default, file when --out was given.
void deliver(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload << '\n';
    } else {
        spill(out_path, payload + "\n");
        std::cerr << "wrote " << out_path << '\n';
    }
}

int cmd_check_hypothesis(const std::string& alphas_arg, const std::string& lambda_arg,
                         const std::string& gamma_arg, const std::string& out_path) {
    auto alphas = parse_multiindex_list(alphas_arg);
    HypothesisReport rep =
        check_pair(alphas, parse_multiindex(lambda_arg), parse_multiindex(gamma_arg));
    deliver(to_json(rep).dump(2), out_path);
    return rep.ok() ? kExitOk : kExitFalse;
}

int cmd_search_witnesses(const std::string& alphas_arg, long long bound,
                         const std::string& out_path) {
    auto alphas = parse_multiindex_list(alphas_arg);
    auto found = search_witnesses(alphas, bound);
    Json j;
    j["found"] = found.has_value();
    if (found) {
        HypothesisReport rep = check_pair(alphas, found->first, found->second);
        j["lambda"] = found->first;
        j["gamma"] = found->second;
        j["report"] = to_json(rep);
    }
    deliver(j.dump(2), out_path);
    return found ? kExitOk : kExitFalse;
}

int cmd_select_frequencies(int n, int m, const std::string& mode_arg,
                           const std::string& sigma_arg, const std::string& delta_arg,
                           const std::string& boost_arg, const std::string& verify_arg,
                           const std::string& out_path) {
    Mode mode = mode_from_string(mode_arg);
    std::vector<int> sigma = sigma_arg.empty() ? std::vector<int>(static_cast<size_t>(n), 1)
                                               : parse_int_list(sigma_arg);
    std::optional<Rational> delta;
    if (!delta_arg.empty()) delta = rational_from_string(delta_arg);
    Rational boost = boost_arg.empty() ? Rational(1) : rational_from_string(boost_arg);

    AdmissibleSequence seq = select_sequence(n, m, sigma, mode, delta, boost);
    Json j = to_json(seq);
    if (verify_arg != "none") {
        ConditionReport rep = verify_sequence(seq, verify_arg == "exhaustive");
        j["verification"] = to_json(rep);
        if (!rep.ok) {
            deliver(j.dump(2), out_path);
            return kExitFalse;
        }
    }
    deliver(j.dump(2), out_path);
    return kExitOk;
}

int cmd_build_witness(const std::string& seq_path, const std::string& what,
                      const std::string& alpha0_arg, int l, const std::string& out_path) {
    AdmissibleSequence seq = sequence_from_json(Json::parse(slurp(seq_path)));
    Json j;
    if (what == "z") {
        j = to_json(build_z(seq.freqs, parse_multiindex(alpha0_arg)));
    } else if (what == "riesz") {
        j = to_json(expand_riesz(seq.freqs));
    } else if (what == "split") {
        Decomposition dec = decompose(seq.freqs, seq.sigma, seq.tau, l);
        j["l"] = l;
        j["sparse"] = to_json(dec.sparse);
        Json cascade;
        cascade["oscillator"] =
            dec.product.osc == Oscillator::cosine ? "cosine" : "sine";
        Json freqs = Json::array(), weights = Json::array();
        for (const auto& q : dec.product.freqs) freqs.push_back(to_json(q));
        for (const auto& w : dec.product.weights) weights.push_back(to_string(w));
        cascade["freqs"] = freqs;
        cascade["weights"] = weights;
        j["cascade"] = cascade;
    } else {
        throw std::invalid_argument("--what must be z, riesz or split");
    }
    deliver(j.dump(2), out_path);
    return kExitOk;
}

int cmd_estimate_norms(const std::string& poly_path, const std::string& seq_path,
                       int cascade_l, const std::string& method, int oversample,
                       long long samples, uint64_t seed, double confidence,
                       const std::string& out_path) {
    if (poly_path.empty() == seq_path.empty())
        throw std::invalid_argument("pass exactly one of --poly or --seq");

    NormEstimate est;
    if (!poly_path.empty()) {
        SparseTrigPoly p = poly_from_json(Json::parse(slurp(poly_path)));
        if (method == "grid") {
            est = l1_grid(p, oversample);
        } else if (method == "coeff") {
            est = l1_coeff_bounds(p);
        } else if (method == "auto") {
            try {
                est = l1_grid(p, oversample);
            } catch (const GridInfeasible&) {
                est = l1_coeff_bounds(p);
            }
        } else {
            throw std::invalid_argument("sparse input supports --method grid, coeff or auto");
        }
    } else {
        AdmissibleSequence seq = sequence_from_json(Json::parse(slurp(seq_path)));
        StructuralProduct sp = structural_part(seq.freqs, seq.sigma, seq.tau, cascade_l);
        if (method == "grid") {
            est = l1_grid(sp, oversample);
        } else if (method == "montecarlo") {
            est = l1_montecarlo(sp, samples, seed, confidence);
        } else if (method == "auto") {
            est = grid_feasible(sp, oversample) ? l1_grid(sp, oversample)
                                                : l1_montecarlo(sp, samples, seed, confidence);
        } else {
            throw std::invalid_argument(
                "cascade input supports --method grid, montecarlo or auto");
        }
    }
    deliver(to_json(est).dump(2), out_path);
    return kExitOk;
}

int cmd_lemma_growth(int m_max, const std::string& m_arg, const std::string& osc_arg,
                     const std::string& sigma_arg, const std::string& method,
                     long long samples, uint64_t seed, double confidence, int oversample,
                     const std::string& csv_path, const std::string& svg_path,
                     const std::string& out_path) {
    EstimatorConfig cfg;
    cfg.method = method;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.confidence = confidence;
    cfg.oversample = oversample;
    Oscillator osc = osc_arg == "sine" ? Oscillator::sine : Oscillator::cosine;
    if (osc_arg != "sine" && osc_arg != "cosine")
        throw std::invalid_argument("--oscillator must be cosine or sine");
    std::vector<int> sigma = sigma_arg.empty() ? std::vector<int>{} : parse_int_list(sigma_arg);

    GrowthFit fit = growth_experiment(m_max, rational_from_string(m_arg), sigma, osc, cfg);
    if (!csv_path.empty()) {
        spill(csv_path, growth_table_csv(fit));
        std::cerr << "wrote " << csv_path << '\n';
    }
    if (!svg_path.empty()) {
        PlotOptions popt;
        popt.title = std::string(osc == Oscillator::sine ? "sine" : "cosine") +
                     " cascade L1 growth";
        popt.x_label = "m";
        popt.y_label = "estimated L1 norm";
        popt.fit = std::make_pair(fit.slope, fit.intercept);
        spill(svg_path, plot_csv_to_svg(growth_table_csv(fit), popt));
        std::cerr << "wrote " << svg_path << '\n';
    }
    deliver(to_json(fit).dump(2), out_path);
    return kExitOk;
}

int cmd_certify(const std::string& k_arg, int n, const std::string& n_list_arg,
                const std::string& mode_arg, uint64_t seed, long long samples,
                double confidence, int m, const std::string& out_path,
                const std::string& table_path, const std::string& svg_path) {
    PipelineOptions opt;
    opt.K = rational_from_string(k_arg);
    opt.mode = mode_from_string(mode_arg);
    opt.seed = seed;
    opt.samples = samples;
    opt.confidence = confidence;
    opt.m = m;

    if (n_list_arg.empty()) {
        opt.n_override = n;
        Certificate cert = run_pipeline(opt);
        std::cerr << "n=" << cert.params.n << " khat=" << cert.khat.get_d() << " ("
                  << to_string(cert.khat) << ") verdict="
                  << (cert.verdict ? "true" : "false") << '\n';
        deliver(to_json(cert).dump(2), out_path);
        return cert.verdict ? kExitOk : kExitFalse;
    }

    std::vector<Certificate> certs;
    bool all_true = true;
    Json arr = Json::array();
    for (int nv : parse_int_list(n_list_arg)) {
        opt.n_override = nv;
        Certificate cert = run_pipeline(opt);
        std::cerr << "n=" << nv << " khat=" << cert.khat.get_d() << " verdict="
                  << (cert.verdict ? "true" : "false") << '\n';
        all_true = all_true && cert.verdict;
        arr.push_back(to_json(cert));
        certs.push_back(std::move(cert));
    }
    if (!table_path.empty()) {
        spill(table_path, khat_table_csv(certs));
        std::cerr << "wrote " << table_path << '\n';
    }
    if (!svg_path.empty()) {
        PlotOptions popt;
        popt.title = "certified ratio vs n";
        popt.x_label = "n";
        popt.y_label = "khat";
        spill(svg_path, plot_csv_to_svg(khat_table_csv(certs), popt));
        std::cerr << "wrote " << svg_path << '\n';
    }
    deliver(arr.dump(2), out_path);
    return all_true ? kExitOk : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"witness construction and certified L1 ratio bounds for mixed-derivative"
                 " inequalities on the 2-torus"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: ORNSTEIN_THREADS or all cores)");

    // check-hypothesis
    auto* chk = app.add_subcommand("check-hypothesis",
                                   "test a witness pair against a derivative family");
    std::string chk_alphas, chk_lambda, chk_gamma, chk_out;
    chk->add_option("--alphas", chk_alphas, "family, e.g. \"4,0;3,2;2,4\"")->required();
    chk->add_option("--lambda", chk_lambda, "equal-pairing witness, e.g. \"2,1\"")->required();
    chk->add_option("--gamma", chk_gamma, "separating witness, e.g. \"0,1\"")->required();
    chk->add_option("--out", chk_out, "write JSON here instead of stdout");

    // search-witnesses
    auto* srch = app.add_subcommand("search-witnesses",
                                    "search a box for the lex-smallest witness pair");
    std::string srch_alphas, srch_out;
    long long srch_bound = 64;
    srch->add_option("--alphas", srch_alphas, "family, e.g. \"4,0;3,2;2,4\"")->required();
    srch->add_option("--bound", srch_bound, "box bound (default 64)");
    srch->add_option("--out", srch_out, "write JSON here instead of stdout");

    // select-frequencies
    auto* sel = app.add_subcommand("select-frequencies",
                                   "construct an admissible generator sequence");
    int sel_n = 0, sel_m = 4;
    std::string sel_mode = "compact", sel_sigma, sel_delta, sel_boost, sel_out;
    std::string sel_verify = "interval";
    sel->add_option("--n", sel_n, "sequence length")->required();
    sel->add_option("--m", sel_m, "certified derivative orders (default 4)");
    sel->add_option("--mode", sel_mode, "faithful or compact (default compact)");
    sel->add_option("--sigma", sel_sigma, "0/1 pattern, e.g. \"1,1,1,1\" (default all ones)");
    sel->add_option("--delta", sel_delta, "tolerance override, e.g. \"1/80\"");
    sel->add_option("--boost", sel_boost, "scale multiplier >= 1");
    sel->add_option("--verify", sel_verify, "interval, exhaustive or none (default interval)");
    sel->add_option("--out", sel_out, "write JSON here instead of stdout");

    // build-witness
    auto* bld = app.add_subcommand("build-witness",
                                   "expand the witness polynomial or its derivative split");
    std::string bld_seq, bld_what = "z", bld_alpha0 = "4,0", bld_out;
    int bld_l = 1;
    bld->add_option("--seq", bld_seq, "sequence JSON from select-frequencies")->required();
    bld->add_option("--what", bld_what, "z, riesz or split (default z)");
    bld->add_option("--alpha0", bld_alpha0, "base multiindex for z (default \"4,0\")");
    bld->add_option("--l", bld_l, "derivative step for split (default 1)");
    bld->add_option("--out", bld_out, "write JSON here instead of stdout");

    // estimate-norms
    auto* est = app.add_subcommand("estimate-norms", "L1 norm estimates with brackets");
    std::string est_poly, est_seq, est_method = "auto", est_out;
    int est_l = 1, est_oversample = 4;
    long long est_samples = 1'000'000;
    uint64_t est_seed = 0x6f726e73u;
    double est_conf = 0.999;
    est->add_option("--poly", est_poly, "sparse polynomial JSON");
    est->add_option("--seq", est_seq, "sequence JSON; estimates the order-l cascade");
    est->add_option("--l", est_l, "cascade order (default 1)");
    est->add_option("--method", est_method,
                    "grid, coeff, montecarlo or auto (default auto)");
    est->add_option("--oversample", est_oversample, "grid oversampling (default 4)");
    est->add_option("--samples", est_samples, "Monte Carlo samples (default 1e6)");
    est->add_option("--seed", est_seed, "Monte Carlo seed");
    est->add_option("--confidence", est_conf, "bracket confidence (default 0.999)");
    est->add_option("--out", est_out, "write JSON here instead of stdout");

    // lemma-growth
    auto* gro = app.add_subcommand("lemma-growth",
                                   "cascade norm growth table and linear fit");
    int gro_mmax = 10, gro_oversample = 1;
    std::string gro_m = "20", gro_osc = "cosine", gro_sigma, gro_method = "auto";
    std::string gro_csv, gro_svg, gro_out;
    long long gro_samples = 2'000'000;
    uint64_t gro_seed = 0x6f726e73u;
    double gro_conf = 0.999;
    gro->add_option("--m-max", gro_mmax, "largest prefix length (default 10)");
    gro->add_option("--M", gro_m, "lacunarity target (default 20)");
    gro->add_option("--oscillator", gro_osc, "cosine or sine (default cosine)");
    gro->add_option("--sigma", gro_sigma, "0/1 weights (default all ones)");
    gro->add_option("--method", gro_method, "auto, grid or montecarlo (default auto)");
    gro->add_option("--samples", gro_samples, "Monte Carlo samples per row (default 2e6)");
    gro->add_option("--seed", gro_seed, "Monte Carlo seed");
    gro->add_option("--confidence", gro_conf, "bracket confidence (default 0.999)");
    gro->add_option("--oversample", gro_oversample, "grid oversampling (default 1)");
    gro->add_option("--csv", gro_csv, "write the table as CSV");
    gro->add_option("--svg", gro_svg, "write the table as an SVG plot");
    gro->add_option("--out", gro_out, "write JSON here instead of stdout");

    // certify
    auto* cer = app.add_subcommand("certify", "end-to-end certified ratio bound");
    std::string cer_k = "1/10", cer_mode = "compact", cer_nlist, cer_out, cer_table, cer_svg;
    int cer_n = 0, cer_m = 4;
    long long cer_samples = 1'000'000;
    uint64_t cer_seed = 0x6f726e73u;
    double cer_conf = 0.999;
    cer->add_option("--K", cer_k, "ratio threshold to certify (default \"1/10\")");
    cer->add_option("--n", cer_n, "sequence length (default: derived from K)");
    cer->add_option("--n-list", cer_nlist, "comma list of n values, e.g. \"4,9,16\"");
    cer->add_option("--mode", cer_mode, "faithful or compact (default compact)");
    cer->add_option("--seed", cer_seed, "Monte Carlo seed");
    cer->add_option("--samples", cer_samples, "Monte Carlo samples (default 1e6)");
    cer->add_option("--confidence", cer_conf, "N1 confidence level (default 0.999)");
    cer->add_option("--m", cer_m, "derivative steps (default 4)");
    cer->add_option("--out", cer_out, "write JSON here instead of stdout");
    cer->add_option("--table", cer_table, "write the n-list ratio table as CSV");
    cer->add_option("--svg", cer_svg, "write the n-list ratio table as an SVG plot");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (threads > 0) set_thread_count(threads);
        if (chk->parsed())
            return cmd_check_hypothesis(chk_alphas, chk_lambda, chk_gamma, chk_out);
        if (srch->parsed()) return cmd_search_witnesses(srch_alphas, srch_bound, srch_out);
        if (sel->parsed())
            return cmd_select_frequencies(sel_n, sel_m, sel_mode, sel_sigma, sel_delta,
                                          sel_boost, sel_verify, sel_out);
        if (bld->parsed())
            return cmd_build_witness(bld_seq, bld_what, bld_alpha0, bld_l, bld_out);
        if (est->parsed())
            return cmd_estimate_norms(est_poly, est_seq, est_l, est_method, est_oversample,
                                      est_samples, est_seed, est_conf, est_out);
        if (gro->parsed())
            return cmd_lemma_growth(gro_mmax, gro_m, gro_osc, gro_sigma, gro_method,
                                    gro_samples, gro_seed, gro_conf, gro_oversample,
                                    gro_csv, gro_svg, gro_out);
        if (cer->parsed())
            return cmd_certify(cer_k, cer_n, cer_nlist, cer_mode, cer_seed, cer_samples,
                               cer_conf, cer_m, cer_out, cer_table, cer_svg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    std::cerr << "error: no subcommand\n";
    return kExitError;
}
