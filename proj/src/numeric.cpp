#include "ornstein/numeric.hpp"

namespace ornstein {

long long dot(const MultiIndex& u, const MultiIndex& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("dot: dimension mismatch");
    long long s = 0;
    for (size_t i = 0; i < u.size(); ++i) s += static_cast<long long>(u[i]) * v[i];
    return s;
}

Integer dot(const LatticeVector& q, const MultiIndex& v) {
    if (v.size() != 2)
        throw std::invalid_argument("dot: lattice vector needs a 2-entry multiindex");
    return q.x * v[0] + q.y * v[1];
}

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Integer n(s);
            return Rational(n);
        }
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        return make_rational(num, den);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("rational_from_string: malformed value '" + s + "'");
    }
}

std::string to_string(const Rational& r) { return r.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Rational abs_rational(const Rational& r) { return r < 0 ? Rational(-r) : r; }

Rational pow_rational(const Rational& r, unsigned e) {
    Rational acc(1);
    Rational base = r;
    unsigned k = e;
    while (k > 0) {
        if (k & 1u) acc *= base;
        base *= base;
        k >>= 1u;
    }
    return acc;
}

Rational frac(const Rational& v) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
    Rational r = v - Rational(q);
    return r;
}

Rational mod1(const LatticeVector& q, const RationalPoint& p) {
    Rational v = Rational(q.x) * p.x + Rational(q.y) * p.y;
    return frac(v);
}

Rational monomial(const LatticeVector& q, const MultiIndex& alpha) {
    if (alpha.size() != 2)
        throw std::invalid_argument("monomial: multiindex must have 2 entries");
    if (alpha[0] < 0 || alpha[1] < 0)
        throw std::invalid_argument("monomial: negative derivative order");
    Integer px, py;
    mpz_pow_ui(px.get_mpz_t(), q.x.get_mpz_t(), static_cast<unsigned long>(alpha[0]));
    mpz_pow_ui(py.get_mpz_t(), q.y.get_mpz_t(), static_cast<unsigned long>(alpha[1]));
    return Rational(px * py);
}

RationalInterval interval_add(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

RationalInterval interval_sub(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

RationalInterval interval_mul(const RationalInterval& a, const RationalInterval& b) {
    Rational c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
    Rational lo = c1, hi = c1;
    for (const Rational* c : {&c2, &c3, &c4}) {
        if (*c < lo) lo = *c;
        if (*c > hi) hi = *c;
    }
    return {lo, hi};
}

RationalInterval interval_square(const RationalInterval& a) {
    if (a.lo >= 0) return {a.lo * a.lo, a.hi * a.hi};
    if (a.hi <= 0) return {a.hi * a.hi, a.lo * a.lo};
    Rational l2 = a.lo * a.lo, h2 = a.hi * a.hi;
    return {Rational(0), l2 > h2 ? l2 : h2};
}

RationalInterval interval_div(const RationalInterval& a, const RationalInterval& b) {
    if (b.contains_zero())
        throw std::domain_error("interval_div: divisor interval contains zero");
    RationalInterval inv(Rational(1) / b.hi, Rational(1) / b.lo);
    return interval_mul(a, inv);
}

RationalInterval interval_pow(const RationalInterval& a, unsigned e) {
    if (e == 0) return RationalInterval::point(Rational(1));
    Rational plo = pow_rational(a.lo, e), phi = pow_rational(a.hi, e);
    if (e % 2 == 1) return {plo, phi};  // odd powers are monotone
    // Even power: image of |.|^e over the interval.
    if (a.contains_zero()) return {Rational(0), plo > phi ? plo : phi};
    if (plo <= phi) return {plo, phi};
    return {phi, plo};
}

Rational interval_abs_max(const RationalInterval& a) {
    Rational al = abs_rational(a.lo), ah = abs_rational(a.hi);
    return al > ah ? al : ah;
}

Rational interval_dist_max(const RationalInterval& a, const Rational& c) {
    Rational dl = abs_rational(a.lo - c), dh = abs_rational(a.hi - c);
    return dl > dh ? dl : dh;
}

Integer isqrt_floor(const Integer& n) {
    if (n < 0) throw std::domain_error("isqrt_floor: negative input");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool perfect_square(const Integer& n, Integer* root) {
    if (n < 0) return false;
    Integer r = isqrt_floor(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

Rational sqrt_upper_bound(const Rational& v) {
    if (v < 0) throw std::domain_error("sqrt_upper_bound: negative input");
    if (v == 0) return Rational(0);
    const Integer& p = v.get_num();
    const Integer& q = v.get_den();
    // sqrt(p/q) = sqrt(pq)/q <= (floor(sqrt(pq)) + 1)/q.
    Integer s = isqrt_floor(p * q) + 1;
    return make_rational(s, q);
}

RationalInterval sqrt_interval(const Integer& n, const Rational& width) {
    if (n <= 0) throw std::domain_error("sqrt_interval: n must be positive");
    if (width <= 0) throw std::domain_error("sqrt_interval: width must be positive");
    Integer root;
    if (perfect_square(n, &root)) {
        Rational v = make_rational(1, root);
        return RationalInterval::point(v);
    }
    Integer fl = isqrt_floor(n);
    // 1/(fl+1) < 1/sqrt(n) < 1/fl.
    Rational lo = make_rational(1, fl + 1);
    Rational hi = make_rational(1, fl);
    Rational target = make_rational(1, n);  // compare squares against 1/n
    while (hi - lo > width) {
        Rational mid = (lo + hi) / 2;
        if (mid * mid <= target)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

}  // namespace ornstein
