#include "ornstein/frequency.hpp"

#include <algorithm>

#include "ornstein/riesz.hpp"

namespace ornstein {

std::string to_string(Mode m) { return m == Mode::faithful ? "faithful" : "compact"; }

Mode mode_from_string(const std::string& s) {
    if (s == "faithful") return Mode::faithful;
    if (s == "compact") return Mode::compact;
    throw std::invalid_argument("unknown mode '" + s + "'");
}

Rational delta_preset(Mode mode, int n) {
    if (n < 1) throw std::invalid_argument("delta_preset: n must be >= 1");
    Integer p3;
    mpz_ui_pow_ui(p3.get_mpz_t(), 3, static_cast<unsigned long>(n));
    return mode == Mode::faithful ? make_rational(1, p3) : make_rational(1, p3 - 1);
}

namespace {

Rational sigma_base(int sigma_k, const Rational& tau) {
    if (sigma_k != 0 && sigma_k != 1)
        throw std::invalid_argument("sigma entries must be 0 or 1");
    return sigma_k == 1 ? tau : Rational(0);
}

PrefixCheck check_prefix_interval(const std::vector<LatticeVector>& prefix, int sigma_k,
                                  const Rational& tau, int m) {
    const LatticeVector& a = prefix.back();
    Integer e1(0), e2(0);
    for (size_t j = 0; j + 1 < prefix.size(); ++j) {
        e1 += abs(prefix[j].x);
        e2 += abs(prefix[j].y);
    }
    PrefixCheck out;
    RationalInterval ix(Rational(a.x - e1), Rational(a.x + e1));
    RationalInterval iy(Rational(a.y - e2), Rational(a.y + e2));
    out.x_nonzero = !ix.contains_zero();
    if (!out.x_nonzero) {
        out.dist.assign(static_cast<size_t>(m), Rational(0));
        return out;
    }
    RationalInterval rho = interval_div(interval_square(iy), ix);
    Rational base = sigma_base(sigma_k, tau);
    RationalInterval rho_pow = RationalInterval::point(Rational(1));
    Rational base_pow(1);
    for (int l = 1; l <= m; ++l) {
        rho_pow = interval_mul(rho_pow, rho);
        base_pow *= base;
        out.dist.push_back(interval_dist_max(rho_pow, base_pow));
    }
    return out;
}

PrefixCheck check_prefix_exhaustive(const std::vector<LatticeVector>& prefix, int sigma_k,
                                    const Rational& tau, int m) {
    const LatticeVector& a = prefix.back();
    std::vector<LatticeVector> rest(prefix.begin(), prefix.end() - 1);
    Rational base = sigma_base(sigma_k, tau);

    PrefixCheck out;
    out.x_nonzero = true;
    out.dist.assign(static_cast<size_t>(m), Rational(0));
    auto consider = [&](const LatticeVector& q) {
        if (q.x == 0) {
            out.x_nonzero = false;
            return;
        }
        Rational rho = make_rational(q.y * q.y, q.x);
        Rational rho_pow(1), base_pow(1);
        for (int l = 1; l <= m; ++l) {
            rho_pow *= rho;
            base_pow *= base;
            Rational d = abs_rational(rho_pow - base_pow);
            if (d > out.dist[static_cast<size_t>(l) - 1]) out.dist[static_cast<size_t>(l) - 1] = d;
        }
    };
    consider(a);  // empty perturbation
    if (!rest.empty()) {
        for_each_sign_pattern(rest, [&](const std::vector<int>&, const LatticeVector& q, int,
                                        int) { consider(a + q); });
    }
    return out;
}

}  // namespace

PrefixCheck check_prefix(const std::vector<LatticeVector>& prefix, int sigma_k,
                         const Rational& tau, int m, bool exhaustive) {
    if (prefix.empty()) throw std::invalid_argument("check_prefix: empty prefix");
    if (m < 1) throw std::invalid_argument("check_prefix: m must be >= 1");
    return exhaustive ? check_prefix_exhaustive(prefix, sigma_k, tau, m)
                      : check_prefix_interval(prefix, sigma_k, tau, m);
}

ConditionReport verify_sequence(const AdmissibleSequence& seq, bool exhaustive) {
    if (seq.freqs.empty()) throw std::invalid_argument("verify_sequence: empty sequence");
    if (seq.sigma.size() != seq.freqs.size())
        throw std::invalid_argument("verify_sequence: sigma length mismatch");
    if (seq.delta.size() != static_cast<size_t>(seq.m))
        throw std::invalid_argument("verify_sequence: delta length mismatch");

    ConditionReport rep;
    rep.exhaustive = exhaustive;
    rep.ok_nonzero = true;
    rep.ok_ratio = true;
    rep.achieved_delta.assign(static_cast<size_t>(seq.m), Rational(0));

    std::vector<LatticeVector> prefix;
    for (size_t k = 0; k < seq.freqs.size(); ++k) {
        prefix.push_back(seq.freqs[k]);
        PrefixCheck pc = check_prefix(prefix, seq.sigma[k], seq.tau, seq.m, exhaustive);
        if (!pc.x_nonzero) {
            rep.ok_nonzero = false;
            rep.violations.push_back("index " + std::to_string(k + 1) +
                                     ": a combination reaches q1 = 0");
            continue;
        }
        for (int l = 1; l <= seq.m; ++l) {
            const Rational& d = pc.dist[static_cast<size_t>(l) - 1];
            if (d > rep.achieved_delta[static_cast<size_t>(l) - 1])
                rep.achieved_delta[static_cast<size_t>(l) - 1] = d;
            if (d > seq.delta[static_cast<size_t>(l) - 1]) {
                rep.ok_ratio = false;
                rep.violations.push_back("index " + std::to_string(k + 1) + ", order " +
                                         std::to_string(l) + ": ratio tolerance exceeded");
            }
        }
    }

    rep.min_ratio = Rational(0);
    rep.ok_lacunary = true;
    for (size_t k = 1; k < seq.freqs.size(); ++k) {
        Integer prev = seq.freqs[k - 1].norm_inf();
        Integer cur = seq.freqs[k].norm_inf();
        if (prev == 0) {
            rep.ok_lacunary = false;
            rep.violations.push_back("index " + std::to_string(k) + ": zero frequency");
            continue;
        }
        Rational ratio = make_rational(cur, prev);
        if (k == 1 || ratio < rep.min_ratio) rep.min_ratio = ratio;
        if (ratio <= 1) {
            rep.ok_lacunary = false;
            rep.violations.push_back("index " + std::to_string(k + 1) +
                                     ": l-infinity norm does not grow");
        }
    }

    rep.ok = rep.ok_nonzero && rep.ok_ratio && rep.ok_lacunary;
    return rep;
}

namespace {

Integer ceil_rational(const Rational& r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

/// max over l = 1..m of l * (tau + cap)^{l-1}, the power amplification factor
/// turning a first-order ratio error into an order-l one.
Rational power_amplification(const Rational& tau, const Rational& cap, int m) {
    Rational best(0);
    Rational base = tau + cap;
    Rational pw(1);
    for (int l = 1; l <= m; ++l) {
        Rational v = Rational(l) * pw;
        if (v > best) best = v;
        pw *= base;
    }
    return best;
}

}  // namespace

AdmissibleSequence select_sequence(int n, int m, const std::vector<int>& sigma, Mode mode,
                                   std::optional<Rational> delta_target,
                                   const Rational& growth_boost) {
    if (n < 1) throw std::invalid_argument("select_sequence: n must be >= 1");
    if (m < 1) throw std::invalid_argument("select_sequence: m must be >= 1");
    if (sigma.size() != static_cast<size_t>(n))
        throw std::invalid_argument("select_sequence: sigma length mismatch");
    for (int s : sigma)
        if (s != 0 && s != 1)
            throw std::invalid_argument("select_sequence: sigma entries must be 0 or 1");
    if (growth_boost < 1)
        throw std::invalid_argument("select_sequence: growth_boost must be >= 1");

    Rational delta = delta_target.value_or(delta_preset(mode, n));
    if (delta <= 0) throw std::invalid_argument("select_sequence: delta must be positive");

    Integer p3;
    mpz_ui_pow_ui(p3.get_mpz_t(), 3, static_cast<unsigned long>(n));
    if (mode == Mode::faithful && delta * Rational(p3 - 1) > 1)
        throw std::invalid_argument(
            "select_sequence: faithful tolerance budget (3^n - 1) delta <= 1 violated");

    AdmissibleSequence seq;
    seq.n = n;
    seq.m = m;
    seq.mode = mode;
    seq.sigma = sigma;
    seq.delta.assign(static_cast<size_t>(m), delta);

    {
        Integer root;
        if (perfect_square(Integer(n), &root)) {
            seq.tau = make_rational(1, root);
        } else {
            RationalInterval enc = sqrt_interval(Integer(n), delta / 5);
            seq.tau = (enc.lo + enc.hi) / 2;
        }
    }
    const Integer tau_num = seq.tau.get_num();
    const Integer tau_den = seq.tau.get_den();

    // Conservative per-order budget: a first-order worst case below
    // delta / amplification keeps every order within delta.
    Rational cap = delta < Rational(1, 8) ? delta : Rational(1, 8);
    Rational amp = power_amplification(seq.tau, cap, m);
    Rational budget = delta / amp;

    Integer e1(0), e2(0);
    Integer prev_norm(0);
    for (int k = 0; k < n; ++k) {
        LatticeVector cand;
        Integer escalate_src;  // scale parameter to escalate on failure
        bool ratio_element = sigma[static_cast<size_t>(k)] == 1;

        if (ratio_element) {
            // a_k = (tau_den * tau_num * s^2, tau_num * s): base ratio exactly tau.
            // Threshold from the worst-case enclosure
            //   rho_hi - tau = (2 t e2 + e2^2 + tau e1) / (t^2/tau - e1), t = tau_num * s.
            Rational q_over_p = make_rational(tau_den, tau_num);
            Rational disc = Rational(e2 * e2) +
                            budget * q_over_p * (Rational(e2 * e2) + seq.tau * Rational(e1) +
                                                 budget * Rational(e1));
            Rational t_min = (Rational(e2) + sqrt_upper_bound(disc)) / (budget * q_over_p);
            Integer t = ceil_rational(t_min) + 1;
            if (t < 2 * e2 + 1) t = 2 * e2 + 1;
            // keep the l-infinity norm strictly growing (factor 2 margin)
            Integer nf = ceil_rational(Rational(2 * prev_norm + 1) / q_over_p);
            Integer t_norm = isqrt_floor(nf);
            if (t_norm * t_norm < nf) t_norm += 1;
            if (t < t_norm) t = t_norm;
            if (t < tau_num) t = tau_num;
            Integer s = ceil_rational(make_rational(t, tau_num) * growth_boost);
            if (s < 1) s = 1;
            cand = LatticeVector(tau_den * tau_num * s * s, tau_num * s);
            escalate_src = s;
        } else {
            // a_k = (H, t) with rho below every tolerance.
            Integer t = e2 + 1;
            Rational h_min = Rational(e1) + Rational((t + e2) * (t + e2)) / delta + 1;
            Integer h = ceil_rational(h_min * growth_boost);
            if (h < 2 * prev_norm + 1) h = 2 * prev_norm + 1;
            cand = LatticeVector(h, t);
            escalate_src = h;
        }

        std::vector<LatticeVector> prefix = seq.freqs;
        prefix.push_back(cand);
        int attempts = 0;
        while (true) {
            PrefixCheck pc =
                check_prefix(prefix, sigma[static_cast<size_t>(k)], seq.tau, m, false);
            bool pass = pc.x_nonzero;
            for (int l = 1; l <= m && pass; ++l)
                if (pc.dist[static_cast<size_t>(l) - 1] > delta) pass = false;
            if (pass && cand.norm_inf() <= prev_norm) pass = false;
            if (pass) break;
            if (++attempts > 300)
                throw std::runtime_error("select_sequence: no admissible scale found");
            escalate_src = escalate_src * 2;
            if (ratio_element)
                cand = LatticeVector(tau_den * tau_num * escalate_src * escalate_src,
                                     tau_num * escalate_src);
            else
                cand = LatticeVector(escalate_src, cand.y);
            prefix.back() = cand;
        }

        seq.freqs.push_back(cand);
        e1 += abs(cand.x);
        e2 += abs(cand.y);
        prev_norm = cand.norm_inf();
    }

    // Record the certified worst case actually achieved (interval mode, so the
    // stored tolerances stay valid for every sign combination).
    ConditionReport rep = verify_sequence(seq, false);
    seq.delta = rep.achieved_delta;
    for (auto& d : seq.delta)
        if (d > delta) throw std::logic_error("select_sequence: certified bound regressed");
    seq.lacunarity = rep.min_ratio;
    return seq;
}

}  // namespace ornstein
