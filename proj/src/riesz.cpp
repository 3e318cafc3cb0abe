#include "ornstein/riesz.hpp"

#include <cmath>

namespace ornstein {

namespace {

constexpr size_t kMaxExpandGenerators = 13;  // 3^13 terms is the materialization cap
constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_expand_size(size_t n) {
    if (n == 0) throw std::invalid_argument("generator set is empty");
    if (n > kMaxExpandGenerators)
        throw std::invalid_argument("expansion over " + std::to_string(n) +
                                    " generators exceeds the materialization cap");
}

}  // namespace

void SparseTrigPoly::add(const LatticeVector& q, const Term& c) {
    auto [it, inserted] = terms.try_emplace(q, c);
    if (inserted) {
        if (it->second.is_zero()) terms.erase(it);
        return;
    }
    it->second.re += c.re;
    it->second.im += c.im;
    if (it->second.is_zero()) terms.erase(it);
}

const Term* SparseTrigPoly::find(const LatticeVector& q) const {
    auto it = terms.find(q);
    return it == terms.end() ? nullptr : &it->second;
}

Rational coeff_sum(const SparseTrigPoly& p) {
    Rational s(0);
    for (const auto& [q, t] : p.terms) s += t.abs_bound();
    return s;
}

Rational coeff_max_lower(const SparseTrigPoly& p) {
    Rational best(0);
    for (const auto& [q, t] : p.terms) {
        Rational re = abs_rational(t.re), im = abs_rational(t.im);
        const Rational& m = re > im ? re : im;
        if (m > best) best = m;
    }
    return best;
}

std::pair<double, double> eval_sparse(const SparseTrigPoly& p, const RationalPoint& x) {
    double re = 0, im = 0;
    for (const auto& [q, t] : p.terms) {
        double u = mod1(q, x).get_d();
        double c = std::cos(kTwoPi * u), s = std::sin(kTwoPi * u);
        double tre = t.re.get_d(), tim = t.im.get_d();
        re += tre * c - tim * s;
        im += tre * s + tim * c;
    }
    return {re, im};
}

Rational max_abs_coeff(const SparseTrigPoly& p) {
    Rational best(0);
    for (const auto& [q, t] : p.terms) {
        Rational b = t.abs_bound();
        if (b > best) best = b;
    }
    return best;
}

SparseTrigPoly multiply_by_i(const SparseTrigPoly& p) {
    SparseTrigPoly out;
    for (const auto& [q, t] : p.terms) {
        Term u;
        u.re = -t.im;
        u.im = t.re;
        u.r = t.r;
        out.terms.emplace(q, std::move(u));
    }
    return out;
}

bool has_parity_symmetry(const SparseTrigPoly& p, int parity) {
    for (const auto& [q, t] : p.terms) {
        const Term* m = p.find(-q);
        if (!m) return false;
        Rational sre = parity % 2 == 0 ? t.re : Rational(-t.re);
        Rational sim = parity % 2 == 0 ? t.im : Rational(-t.im);
        if (m->re != sre || m->im != sim) return false;
    }
    return true;
}

namespace {

void sign_pattern_rec(const std::vector<LatticeVector>& freqs, size_t j,
                      std::vector<int>& eps, LatticeVector& q, int r, int top,
                      const SignPatternFn& fn) {
    if (j == freqs.size()) {
        if (r > 0) fn(eps, q, r, top);
        return;
    }
    sign_pattern_rec(freqs, j + 1, eps, q, r, top, fn);
    eps[j] = 1;
    q.x += freqs[j].x;
    q.y += freqs[j].y;
    sign_pattern_rec(freqs, j + 1, eps, q, r + 1, static_cast<int>(j) + 1, fn);
    eps[j] = -1;
    q.x -= 2 * freqs[j].x;
    q.y -= 2 * freqs[j].y;
    sign_pattern_rec(freqs, j + 1, eps, q, r + 1, static_cast<int>(j) + 1, fn);
    eps[j] = 0;
    q.x += freqs[j].x;
    q.y += freqs[j].y;
}

}  // namespace

void for_each_sign_pattern(const std::vector<LatticeVector>& freqs, const SignPatternFn& fn) {
    std::vector<int> eps(freqs.size(), 0);
    LatticeVector q;
    sign_pattern_rec(freqs, 0, eps, q, 0, 0, fn);
}

SparseTrigPoly expand_riesz(const std::vector<LatticeVector>& freqs) {
    check_expand_size(freqs.size());
    SparseTrigPoly out;
    Rational one(1);
    for_each_sign_pattern(freqs, [&](const std::vector<int>&, const LatticeVector& q, int r,
                                     int) {
        if (q.is_zero())
            throw std::invalid_argument("generators are not dissociate: combination hits 0");
        Term t;
        t.re = make_rational(1, Integer(1) << r);
        t.im = 0;
        t.r = r;
        auto [it, inserted] = out.terms.emplace(q, std::move(t));
        (void)it;
        if (!inserted)
            throw std::invalid_argument("generators are not dissociate: frequency collision");
    });
    return out;
}

SparseTrigPoly build_z(const std::vector<LatticeVector>& freqs, const MultiIndex& alpha0) {
    check_expand_size(freqs.size());
    SparseTrigPoly out;
    for_each_sign_pattern(freqs, [&](const std::vector<int>&, const LatticeVector& q, int r,
                                     int) {
        if (q.is_zero())
            throw std::invalid_argument("generators are not dissociate: combination hits 0");
        Rational sym = monomial(q, alpha0);
        if (sym == 0)
            throw std::invalid_argument("witness symbol vanishes on the support");
        Term t;
        t.re = make_rational(1, Integer(1) << r) / sym;
        t.im = 0;
        t.r = r;
        auto [it, inserted] = out.terms.emplace(q, std::move(t));
        (void)it;
        if (!inserted)
            throw std::invalid_argument("generators are not dissociate: frequency collision");
    });
    return out;
}

SparseTrigPoly apply_derivative(const SparseTrigPoly& p, const MultiIndex& alpha) {
    if (alpha.size() != 2)
        throw std::invalid_argument("apply_derivative: multiindex must have 2 entries");
    SparseTrigPoly out;
    for (const auto& [q, t] : p.terms) {
        Rational sym = monomial(q, alpha);
        if (sym == 0) continue;
        Term u;
        u.re = t.re * sym;
        u.im = t.im * sym;
        u.r = t.r;
        out.terms.emplace(q, std::move(u));
    }
    return out;
}

double eval_product_form(const StructuralProduct& sp, const RationalPoint& x) {
    if (sp.freqs.empty()) throw std::invalid_argument("empty cascade");
    double acc = 0;
    double running = 1;  // prod_{j<k} (1 + cos)
    for (size_t k = 0; k < sp.freqs.size(); ++k) {
        double u = mod1(sp.freqs[k], x).get_d();
        double c = std::cos(kTwoPi * u);
        double w = sp.weights[k].get_d();
        if (w != 0) {
            double o = sp.osc == Oscillator::cosine ? c : std::sin(kTwoPi * u);
            acc += w * o * running;
        }
        running *= 1 + c;
    }
    return acc;
}

SparseTrigPoly expand_structural(const StructuralProduct& sp) {
    check_expand_size(sp.size());
    if (sp.weights.size() != sp.freqs.size())
        throw std::invalid_argument("cascade weight count mismatch");
    SparseTrigPoly out;
    // Every term of the cascade is a nonzero sign pattern whose top index
    // carries the oscillator; patterns with eps_top = +1 are mirrored to -q.
    for_each_sign_pattern(sp.freqs, [&](const std::vector<int>& eps, const LatticeVector& q,
                                        int r, int top) {
        if (eps[top - 1] != 1) return;  // mirror handled below
        const Rational& w = sp.weights[top - 1];
        if (w == 0) return;
        if (q.is_zero())
            throw std::invalid_argument("generators are not dissociate: combination hits 0");
        Rational mag = w * make_rational(1, Integer(1) << r);
        Term plus, minus;
        plus.r = r;
        minus.r = r;
        if (sp.osc == Oscillator::cosine) {
            plus.re = mag;
            minus.re = mag;
        } else {
            plus.im = -mag;
            minus.im = mag;
        }
        auto ins1 = out.terms.emplace(q, std::move(plus));
        auto ins2 = out.terms.emplace(-q, std::move(minus));
        if (!ins1.second || !ins2.second)
            throw std::invalid_argument("generators are not dissociate: frequency collision");
    });
    return out;
}

Rational structural_triangle_bound(const StructuralProduct& sp) {
    Rational s(0);
    for (const auto& w : sp.weights) s += abs_rational(w);
    return s;
}

StructuralProduct structural_part(const std::vector<LatticeVector>& freqs,
                                  const std::vector<int>& sigma, const Rational& tau,
                                  int l) {
    if (freqs.empty()) throw std::invalid_argument("empty generator set");
    if (sigma.size() != freqs.size())
        throw std::invalid_argument("sigma length mismatch");
    if (l < 0) throw std::invalid_argument("derivative step must be >= 0");
    StructuralProduct sp;
    sp.freqs = freqs;
    sp.osc = l % 2 == 0 ? Oscillator::cosine : Oscillator::sine;
    sp.weights.reserve(freqs.size());
    for (size_t k = 0; k < freqs.size(); ++k) {
        if (sigma[k] != 0 && sigma[k] != 1)
            throw std::invalid_argument("sigma entries must be 0 or 1");
        Rational base = sigma[k] == 1 ? tau : Rational(0);
        sp.weights.push_back(pow_rational(base, static_cast<unsigned>(l)));
    }
    return sp;
}

Decomposition decompose(const std::vector<LatticeVector>& freqs,
                        const std::vector<int>& sigma, const Rational& tau, int l) {
    check_expand_size(freqs.size());
    Decomposition d;
    d.l = l;
    d.product = structural_part(freqs, sigma, tau, l);

    // Coefficient of D^{alpha_l} Z at q with top generator k is 2^-r rho_q^l;
    // subtracting the cascade's (sigma_k tau)^l leaves the sparse remainder.
    for_each_sign_pattern(freqs, [&](const std::vector<int>& eps, const LatticeVector& q,
                                     int r, int top) {
        if (eps[top - 1] != 1) return;
        if (q.x == 0)
            throw std::invalid_argument("support touches the line q1 = 0");
        Rational rho = make_rational(q.y * q.y, q.x);
        Rational base = sigma[top - 1] == 1 ? tau : Rational(0);
        Rational cI = (pow_rational(rho, static_cast<unsigned>(l)) -
                       pow_rational(base, static_cast<unsigned>(l))) *
                      make_rational(1, Integer(1) << r);
        if (cI == 0) return;
        Term plus, minus;
        plus.r = r;
        minus.r = r;
        plus.re = cI;
        minus.re = l % 2 == 0 ? cI : Rational(-cI);
        auto ins1 = d.sparse.terms.emplace(q, std::move(plus));
        auto ins2 = d.sparse.terms.emplace(-q, std::move(minus));
        if (!ins1.second || !ins2.second)
            throw std::invalid_argument("generators are not dissociate: frequency collision");
    });
    return d;
}

}  // namespace ornstein
