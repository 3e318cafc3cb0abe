#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ornstein/numeric.hpp"

namespace ornstein {

/// Outcome of testing a witness pair (Lambda, Gamma) against a derivative family.
///
/// lambda_ok: all pairings <alpha_j, Lambda> are equal.
/// gamma_ok:  the pairings <alpha_j, Gamma> satisfy p_0 < p_1 < p_2 <= ... <= p_last
///            (with fewer than three indexes only the strict part applies).
struct HypothesisReport {
    bool lambda_ok = false;
    bool gamma_ok = false;
    MultiIndex lambda;
    MultiIndex gamma;
    std::vector<long long> lambda_pairings;
    std::vector<long long> gamma_pairings;

    bool ok() const { return lambda_ok && gamma_ok; }
};

/// Tests one candidate pair against the family. All multiindexes must share one
/// dimension d >= 1 and the family must have at least two members; Lambda and
/// Gamma must be nonzero with nonnegative entries.
HypothesisReport check_pair(const std::vector<MultiIndex>& alphas,
                            const MultiIndex& lambda,
                            const MultiIndex& gamma);

/// Searches the box {0..bound}^d for the lexicographically smallest witnesses.
/// Lambda comes from the integer kernel of the differences alpha_j - alpha_0,
/// Gamma from direct enumeration. Returns nothing when either search fails.
std::optional<std::pair<MultiIndex, MultiIndex>> search_witnesses(
    const std::vector<MultiIndex>& alphas, long long bound);

}  // namespace ornstein
