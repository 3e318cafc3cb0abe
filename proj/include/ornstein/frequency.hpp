#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ornstein/numeric.hpp"

namespace ornstein {

enum class Mode { faithful, compact };

std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

/// Generator family a_1..a_n in Z^2 together with everything the downstream
/// bounds need: the ratio target tau, certified per-order tolerances delta_l
/// (l = 1..m), the sigma pattern, and the achieved l-infinity lacunarity
/// (0 when n = 1, where the growth condition is vacuous).
struct AdmissibleSequence {
    int n = 0;
    int m = 0;
    Mode mode = Mode::compact;
    Rational tau;
    std::vector<Rational> delta;
    Rational lacunarity;
    std::vector<int> sigma;
    std::vector<LatticeVector> freqs;
};

/// Default tolerance: 3^-n (faithful) or 1/(3^n - 1) (compact).
Rational delta_preset(Mode mode, int n);

/// Worst case over all combinations q = a_k + sum_{j<k} eps_j a_j of the
/// prefix ending at index k (eps in {-1,0,1}^{k-1}).
struct PrefixCheck {
    bool x_nonzero = false;          // no combination has q1 = 0
    std::vector<Rational> dist;      // per l = 1..m: max |rho_q^l - (sigma_k tau)^l|
};

/// exhaustive = true enumerates all 3^{k-1} combinations exactly; false uses
/// one conservative interval enclosure (sound: never reports a smaller worst
/// case than the exhaustive scan).
PrefixCheck check_prefix(const std::vector<LatticeVector>& prefix, int sigma_k,
                         const Rational& tau, int m, bool exhaustive);

/// Verification outcome for a full sequence.
struct ConditionReport {
    bool ok = false;
    bool ok_ratio = false;      // every delta_l honored at every index
    bool ok_lacunary = false;   // strictly growing l-infinity norms
    bool ok_nonzero = false;    // no combination with q1 = 0
    bool exhaustive = false;
    std::vector<Rational> achieved_delta;  // per l, worst case over all k
    Rational min_ratio;                    // 0 when n = 1
    std::vector<std::string> violations;
};

/// Checks the three admissibility conditions against the tolerances stored in
/// the sequence. Interval mode is conservative; exhaustive mode is exact and
/// costs O(3^n) rational operations.
ConditionReport verify_sequence(const AdmissibleSequence& seq, bool exhaustive);

/// Constructs an admissible sequence deterministically.
///
/// sigma_k = 1 elements follow (tau_den * s^2 * tau_num, tau_num * s) so the
/// base ratio is exactly tau; sigma_k = 0 elements follow (H, t) with H large
/// enough that the ratio is below every tolerance. Scales jump directly to a
/// conservative threshold and are then certified by interval checks, doubling
/// on failure, so no linear scan happens even when coordinates grow past
/// 10^100. growth_boost >= 1 multiplies every chosen scale (used to probe how
/// tolerances tighten as the geometric scale increases).
///
/// tau is 1/sqrt(n) exactly for perfect-square n and otherwise the midpoint
/// of an enclosure with |tau - 1/sqrt(n)| <= delta/10. The compact preset is
/// 1/(3^n - 1); faithful uses 3^-n and requires (3^n - 1) * delta <= 1.
AdmissibleSequence select_sequence(int n, int m, const std::vector<int>& sigma, Mode mode,
                                   std::optional<Rational> delta_target = std::nullopt,
                                   const Rational& growth_boost = Rational(1));

}  // namespace ornstein
