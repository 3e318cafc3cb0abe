#pragma once

#include <functional>
#include <map>
#include <vector>

#include "ornstein/numeric.hpp"

namespace ornstein {

/// One Fourier term. Coefficient is re + i*im with exact rational parts.
/// r counts the generators combined into this frequency when the term came
/// from a Riesz-type expansion (coefficient magnitude scale 2^-r).
struct Term {
    Rational re;
    Rational im;
    int r = 0;

    bool is_zero() const { return re == 0 && im == 0; }
    /// Upper bound on the modulus: exact for pure-real or pure-imaginary terms.
    Rational abs_bound() const { return abs_rational(re) + abs_rational(im); }
};

/// Trigonometric polynomial on the 2-torus, stored sparsely by frequency.
/// Zero coefficients are never stored.
struct SparseTrigPoly {
    std::map<LatticeVector, Term> terms;

    size_t support_size() const { return terms.size(); }
    /// Adds c at frequency q, erasing the entry if the sum cancels.
    void add(const LatticeVector& q, const Term& c);
    const Term* find(const LatticeVector& q) const;
};

/// Exact sum of term modulus bounds (upper bound for the L1 norm).
Rational coeff_sum(const SparseTrigPoly& p);

/// Largest single-term lower bound for the L1 norm: max over q of
/// max(|re|, |im|), which never exceeds the coefficient modulus.
Rational coeff_max_lower(const SparseTrigPoly& p);

/// f(x) as a complex value (re, im), evaluated in double precision with the
/// phase reduced exactly to [0,1) first.
std::pair<double, double> eval_sparse(const SparseTrigPoly& p, const RationalPoint& x);

/// Visits every nonzero sign pattern eps in {-1,0,1}^n once, in a fixed
/// deterministic order. Arguments: eps, combined frequency q = sum eps_j a_j,
/// r = #nonzero entries, top = largest index (1-based) with eps_top != 0.
using SignPatternFn =
    std::function<void(const std::vector<int>&, const LatticeVector&, int, int)>;
void for_each_sign_pattern(const std::vector<LatticeVector>& freqs, const SignPatternFn& fn);

/// Expands -1 + prod_k (1 + cos(2 pi <a_k, x>)) into its 3^n - 1 terms with
/// coefficients 2^-r(q). Throws if combined frequencies collide or hit zero
/// (the generator set is not dissociate).
SparseTrigPoly expand_riesz(const std::vector<LatticeVector>& freqs);

/// Antiderivative-of-order-alpha0 witness: coefficient 2^-r(q) / q^alpha0 on
/// the same support. Throws if q^alpha0 vanishes anywhere on the support.
SparseTrigPoly build_z(const std::vector<LatticeVector>& freqs, const MultiIndex& alpha0);

/// Multiplies the coefficient at q by q^alpha (normalized symbol action,
/// no 2 pi i factors). Terms whose symbol vanishes are dropped; with odd
/// |alpha| the result is Hermitian-antisymmetric rather than symmetric.
SparseTrigPoly apply_derivative(const SparseTrigPoly& p, const MultiIndex& alpha);

/// Largest |coefficient| bound over the support (exact rational).
Rational max_abs_coeff(const SparseTrigPoly& p);

/// Multiplies every coefficient by i (used to reassemble odd-order splits).
SparseTrigPoly multiply_by_i(const SparseTrigPoly& p);

/// Checks c(-q) == (-1)^parity * c(q) over the whole support; real
/// coefficients are assumed. parity 0 is plain Hermitian symmetry for a
/// real-coefficient polynomial.
bool has_parity_symmetry(const SparseTrigPoly& p, int parity);

enum class Oscillator { cosine, sine };

/// Weighted oscillator cascade
///   sum_k w_k osc(2 pi <a_k, x>) prod_{j<k} (1 + cos(2 pi <a_j, x>)).
/// With cosine and all weights 1 this telescopes to the Riesz product minus 1.
struct StructuralProduct {
    std::vector<LatticeVector> freqs;
    std::vector<Rational> weights;
    Oscillator osc = Oscillator::cosine;

    size_t size() const { return freqs.size(); }
};

/// Evaluates the cascade at an exact rational point (phases reduced mod 1
/// before any floating-point work).
double eval_product_form(const StructuralProduct& sp, const RationalPoint& x);

/// Honest sparse expansion of the cascade (cosine terms real, sine terms
/// imaginary). Throws on frequency collisions.
SparseTrigPoly expand_structural(const StructuralProduct& sp);

/// Exact upper bound sum_k |w_k| * prod_{j<k} 2 for the cascade's L1 norm is
/// not used; the triangle bound sum_k |w_k| holds because each summand has
/// L1 norm exactly |w_k|. Returned as an exact rational.
Rational structural_triangle_bound(const StructuralProduct& sp);

/// Derivative split of D^{alpha_l} applied to the witness built from seq:
/// sparse remainder I_l plus (i^{l mod 2}) times the cascade II_l.
struct Decomposition {
    SparseTrigPoly sparse;      // I_l
    StructuralProduct product;  // II_l, weights (sigma_k * tau)^l
    int l = 0;
};

/// Materializes I_l and II_l for derivative step l >= 0. The sparse part has
/// coefficients (rho_q^l - (sigma_k tau)^l) 2^-r(q) with rho_q = q2^2 / q1.
/// Requires n <= 13 (support grows as 3^n); the cascade alone is available
/// through structural_part for larger n.
Decomposition decompose(const std::vector<LatticeVector>& freqs,
                        const std::vector<int>& sigma, const Rational& tau, int l);

/// The cascade II_l only; no materialization, any n.
StructuralProduct structural_part(const std::vector<LatticeVector>& freqs,
                                  const std::vector<int>& sigma, const Rational& tau,
                                  int l);

}  // namespace ornstein
