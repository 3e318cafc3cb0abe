#include "ornstein/growth.hpp"

#include <cmath>

namespace ornstein {

std::vector<LatticeVector> lacunary_frequencies(int m, const Rational& M,
                                                const Integer& base) {
    if (m < 1) throw std::invalid_argument("lacunary_frequencies: m must be >= 1");
    if (M < 1) throw std::invalid_argument("lacunary_frequencies: M must be >= 1");
    if (base < 1) throw std::invalid_argument("lacunary_frequencies: base must be >= 1");
    Integer floor_m;
    mpz_fdiv_q(floor_m.get_mpz_t(), M.get_num().get_mpz_t(), M.get_den().get_mpz_t());
    Integer radix = floor_m + 1;
    std::vector<LatticeVector> out;
    out.reserve(static_cast<size_t>(m));
    Integer pw = base;
    for (int k = 1; k <= m; ++k) {
        out.emplace_back(pw, Integer(k));
        pw *= radix;
    }
    return out;
}

namespace {

NormEstimate estimate_row(const StructuralProduct& sp, const EstimatorConfig& cfg) {
    if (cfg.method == "grid") return l1_grid(sp, cfg.oversample);
    if (cfg.method == "montecarlo")
        return l1_montecarlo(sp, cfg.samples, cfg.seed, cfg.confidence);
    if (cfg.method != "auto")
        throw std::invalid_argument("unknown estimator method '" + cfg.method + "'");
    if (grid_feasible(sp, cfg.oversample)) return l1_grid(sp, cfg.oversample);
    return l1_montecarlo(sp, cfg.samples, cfg.seed, cfg.confidence);
}

StructuralProduct cascade_for(const std::vector<LatticeVector>& freqs,
                              const std::vector<int>& sigma, int m, Oscillator osc) {
    StructuralProduct sp;
    sp.osc = osc;
    sp.freqs.assign(freqs.begin(), freqs.begin() + m);
    sp.weights.reserve(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k) sp.weights.emplace_back(sigma[static_cast<size_t>(k)]);
    return sp;
}

}  // namespace

GrowthFit growth_experiment(int m_max, const Rational& M, const std::vector<int>& sigma,
                            Oscillator osc, const EstimatorConfig& cfg) {
    if (m_max < 1) throw std::invalid_argument("growth_experiment: m_max must be >= 1");
    std::vector<int> sig = sigma.empty() ? std::vector<int>(static_cast<size_t>(m_max), 1)
                                         : sigma;
    if (sig.size() != static_cast<size_t>(m_max))
        throw std::invalid_argument("growth_experiment: sigma length mismatch");
    for (int s : sig)
        if (s != 0 && s != 1)
            throw std::invalid_argument("growth_experiment: sigma entries must be 0 or 1");

    GrowthFit fit;
    fit.osc = osc;
    fit.lacunarity_target = M;
    fit.sigma = sig;
    std::vector<LatticeVector> freqs = lacunary_frequencies(m_max, M);

    for (int m = 1; m <= m_max; ++m) {
        GrowthRow row;
        row.m = m;
        row.estimate = estimate_row(cascade_for(freqs, sig, m, osc), cfg);
        fit.table.push_back(std::move(row));
    }

    for (size_t i = 1; i < fit.table.size(); ++i) {
        const NormEstimate& a = fit.table[i - 1].estimate;
        const NormEstimate& b = fit.table[i].estimate;
        double slack = (a.upper - a.value) + (b.value - b.lower);
        if (b.value < a.value - slack) fit.monotone = false;
    }

    size_t n = fit.table.size();
    if (n >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& row : fit.table) {
            double x = row.m, y = row.estimate.value;
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double nn = static_cast<double>(n);
        double denom = nn * sxx - sx * sx;
        fit.slope = (nn * sxy - sx * sy) / denom;
        fit.intercept = (sy - fit.slope * sx) / nn;
        double ybar = sy / nn, ss_res = 0, ss_tot = 0;
        for (const auto& row : fit.table) {
            double y = row.estimate.value;
            double pred = fit.slope * row.m + fit.intercept;
            ss_res += (y - pred) * (y - pred);
            ss_tot += (y - ybar) * (y - ybar);
        }
        fit.r2 = ss_tot > 0 ? 1 - ss_res / ss_tot : 1;
    }
    return fit;
}

std::vector<int> sigma_search(int m, const Rational& M, Oscillator osc,
                              const EstimatorConfig& cfg) {
    if (m < 1 || m > 12)
        throw std::invalid_argument("sigma_search: m must be between 1 and 12");
    std::vector<LatticeVector> freqs = lacunary_frequencies(m, M);
    std::vector<int> best;
    double best_value = -1;
    for (uint32_t c = 0; c < (1u << m); ++c) {
        std::vector<int> sig(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) sig[static_cast<size_t>(i)] = (c >> (m - 1 - i)) & 1u;
        bool all_zero = c == 0;
        double value = 0;
        if (!all_zero)
            value = estimate_row(cascade_for(freqs, sig, m, osc), cfg).value;
        if (value > best_value) {  // lex ascending enumeration: ties keep the first
            best_value = value;
            best = sig;
        }
    }
    return best;
}

}  // namespace ornstein
