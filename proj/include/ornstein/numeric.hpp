#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ornstein {

using Integer = mpz_class;
using Rational = mpq_class;

/// Frequency point in Z^2. Coordinates may be arbitrarily large.
struct LatticeVector {
    Integer x;  // coordinate 1
    Integer y;  // coordinate 2

    LatticeVector() : x(0), y(0) {}
    LatticeVector(Integer x_, Integer y_) : x(std::move(x_)), y(std::move(y_)) {}

    friend LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
        return {a.x + b.x, a.y + b.y};
    }
    friend LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
        return {a.x - b.x, a.y - b.y};
    }
    LatticeVector operator-() const { return {-x, -y}; }
    friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const LatticeVector& a, const LatticeVector& b) { return !(a == b); }
    friend bool operator<(const LatticeVector& a, const LatticeVector& b) {
        int c = cmp(a.x, b.x);
        if (c != 0) return c < 0;
        return cmp(a.y, b.y) < 0;
    }

    bool is_zero() const { return x == 0 && y == 0; }
    /// l-infinity norm.
    Integer norm_inf() const {
        Integer ax = abs(x), ay = abs(y);
        return ax >= ay ? ax : ay;
    }
};

/// Derivative orders, one nonnegative entry per axis.
using MultiIndex = std::vector<int>;

inline int order_of(const MultiIndex& a) {
    int s = 0;
    for (int e : a) s += e;
    return s;
}

/// Exact inner product of two multiindexes of equal dimension.
long long dot(const MultiIndex& u, const MultiIndex& v);

/// Exact inner product of a lattice vector with a 2-entry multiindex.
Integer dot(const LatticeVector& q, const MultiIndex& v);

/// Builds a canonical rational from an integer pair (denominator forced positive).
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p/q" or "p" into a canonical rational.
Rational rational_from_string(const std::string& s);

std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

Rational abs_rational(const Rational& r);

/// r^e for nonnegative integer exponent.
Rational pow_rational(const Rational& r, unsigned e);

/// Point on the torus with exact rational coordinates.
struct RationalPoint {
    Rational x;
    Rational y;
};

/// <q, p> mod 1, exactly, as a rational in [0, 1).
Rational mod1(const LatticeVector& q, const RationalPoint& p);

/// Fractional part of a rational, in [0, 1).
Rational frac(const Rational& v);

/// prod_i q(i)^{alpha_i} as an exact integer-valued rational. alpha must have 2 entries.
Rational monomial(const LatticeVector& q, const MultiIndex& alpha);

/// Closed rational interval [lo, hi].
struct RationalInterval {
    Rational lo;
    Rational hi;

    RationalInterval() = default;
    RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("RationalInterval: lo > hi");
    }
    static RationalInterval point(const Rational& v) { return {v, v}; }

    Rational width() const { return hi - lo; }
    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    bool contains(const Rational& v) const { return lo <= v && hi >= v; }
};

RationalInterval interval_add(const RationalInterval& a, const RationalInterval& b);
RationalInterval interval_sub(const RationalInterval& a, const RationalInterval& b);
RationalInterval interval_mul(const RationalInterval& a, const RationalInterval& b);
RationalInterval interval_square(const RationalInterval& a);
/// a / b; b must not contain zero.
RationalInterval interval_div(const RationalInterval& a, const RationalInterval& b);
/// a^e for nonnegative integer exponent (sign-aware).
RationalInterval interval_pow(const RationalInterval& a, unsigned e);
/// max |v| over v in the interval.
Rational interval_abs_max(const RationalInterval& a);
/// max |v - c| over v in the interval.
Rational interval_dist_max(const RationalInterval& a, const Rational& c);

/// Floor of sqrt (n >= 0).
Integer isqrt_floor(const Integer& n);

/// True iff n is a perfect square; if so *root holds sqrt(n).
bool perfect_square(const Integer& n, Integer* root = nullptr);

/// Smallest-effort rational upper bound on sqrt(v), v >= 0.
Rational sqrt_upper_bound(const Rational& v);

/// Enclosure [lo, hi] of 1/sqrt(n) with lo^2 <= 1/n <= hi^2 and hi - lo <= width.
/// For perfect squares the interval is the exact point.
RationalInterval sqrt_interval(const Integer& n, const Rational& width);

}  // namespace ornstein
