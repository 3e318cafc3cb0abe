#include "ornstein/hypothesis.hpp"

#include <algorithm>

namespace ornstein {

namespace {

void validate_family(const std::vector<MultiIndex>& alphas) {
    if (alphas.size() < 2)
        throw std::invalid_argument("derivative family needs at least two members");
    size_t d = alphas[0].size();
    if (d == 0) throw std::invalid_argument("multiindexes must have dimension >= 1");
    for (const auto& a : alphas) {
        if (a.size() != d) throw std::invalid_argument("derivative family: dimension mismatch");
        for (int e : a)
            if (e < 0) throw std::invalid_argument("derivative family: negative entry");
    }
}

void validate_witness(const MultiIndex& w, size_t d, const char* name) {
    if (w.size() != d)
        throw std::invalid_argument(std::string(name) + ": dimension mismatch");
    bool nonzero = false;
    for (int e : w) {
        if (e < 0) throw std::invalid_argument(std::string(name) + ": negative entry");
        if (e != 0) nonzero = true;
    }
    if (!nonzero) throw std::invalid_argument(std::string(name) + ": zero vector");
}

bool gamma_chain_ok(const std::vector<long long>& p) {
    // p_0 < p_1 < p_2 <= p_3 <= ... <= p_last.
    for (size_t j = 1; j < p.size(); ++j) {
        if (j <= 2) {
            if (p[j - 1] >= p[j]) return false;
        } else {
            if (p[j - 1] > p[j]) return false;
        }
    }
    return true;
}

}  // namespace

HypothesisReport check_pair(const std::vector<MultiIndex>& alphas,
                            const MultiIndex& lambda,
                            const MultiIndex& gamma) {
    validate_family(alphas);
    size_t d = alphas[0].size();
    validate_witness(lambda, d, "lambda");
    validate_witness(gamma, d, "gamma");

    HypothesisReport rep;
    rep.lambda = lambda;
    rep.gamma = gamma;
    for (const auto& a : alphas) {
        rep.lambda_pairings.push_back(dot(a, lambda));
        rep.gamma_pairings.push_back(dot(a, gamma));
    }
    rep.lambda_ok = std::all_of(rep.lambda_pairings.begin(), rep.lambda_pairings.end(),
                                [&](long long v) { return v == rep.lambda_pairings[0]; });
    rep.gamma_ok = gamma_chain_ok(rep.gamma_pairings);
    return rep;
}

namespace {

/// Kernel basis of the rows (alpha_j - alpha_0) over Q, via Gauss elimination.
/// Returns pivot columns and the reduced rows so candidates can be completed
/// from free-column assignments.
struct Rref {
    std::vector<std::vector<Rational>> rows;  // reduced nonzero rows
    std::vector<int> pivot_col;               // pivot column of each row
    std::vector<int> free_cols;
};

Rref reduce(const std::vector<MultiIndex>& alphas) {
    size_t d = alphas[0].size();
    std::vector<std::vector<Rational>> rows;
    for (size_t j = 1; j < alphas.size(); ++j) {
        std::vector<Rational> r(d);
        bool nz = false;
        for (size_t i = 0; i < d; ++i) {
            r[i] = Rational(alphas[j][i] - alphas[0][i]);
            if (r[i] != 0) nz = true;
        }
        if (nz) rows.push_back(std::move(r));
    }

    Rref out;
    size_t rank = 0;
    std::vector<bool> is_pivot(d, false);
    for (size_t col = 0; col < d && rank < rows.size(); ++col) {
        size_t sel = rank;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        Rational inv = Rational(1) / rows[rank][col];
        for (size_t i = col; i < d; ++i) rows[rank][i] *= inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Rational f = rows[r][col];
            for (size_t i = col; i < d; ++i) rows[r][i] -= f * rows[rank][i];
        }
        out.pivot_col.push_back(static_cast<int>(col));
        is_pivot[col] = true;
        ++rank;
    }
    rows.resize(rank);
    out.rows = std::move(rows);
    for (size_t i = 0; i < d; ++i)
        if (!is_pivot[i]) out.free_cols.push_back(static_cast<int>(i));
    return out;
}

/// Lexicographically smallest nonzero Lambda in {0..bound}^d with equal pairings.
std::optional<MultiIndex> find_lambda(const std::vector<MultiIndex>& alphas, long long bound) {
    size_t d = alphas[0].size();
    Rref rr = reduce(alphas);

    std::optional<MultiIndex> best;
    size_t nfree = rr.free_cols.size();
    if (nfree == 0) return std::nullopt;  // kernel is trivial

    // Enumerate free-column assignments; pivots are then determined. Candidate
    // count is (bound+1)^nfree which stays small for the dimensions in scope.
    std::vector<long long> assign(nfree, 0);
    while (true) {
        bool nonzero = std::any_of(assign.begin(), assign.end(),
                                   [](long long v) { return v != 0; });
        if (nonzero) {
            MultiIndex cand(d, 0);
            for (size_t i = 0; i < nfree; ++i)
                cand[rr.free_cols[i]] = static_cast<int>(assign[i]);
            bool feasible = true;
            for (size_t r = 0; r < rr.rows.size() && feasible; ++r) {
                Rational s(0);
                for (size_t i = 0; i < nfree; ++i)
                    s += rr.rows[r][rr.free_cols[i]] * Rational(static_cast<long>(assign[i]));
                Rational v = -s;  // pivot value forced by the row equation
                if (v.get_den() != 1 || v < 0 || v > static_cast<long>(bound)) {
                    feasible = false;
                    break;
                }
                cand[rr.pivot_col[r]] = static_cast<int>(v.get_num().get_si());
            }
            if (feasible) {
                if (!best || std::lexicographical_compare(cand.begin(), cand.end(),
                                                          best->begin(), best->end()))
                    best = cand;
            }
        }
        // odometer over assignments, most significant digit first (keeps the
        // enumeration order irrelevant; lex-min is tracked explicitly)
        size_t pos = nfree;
        while (pos > 0) {
            if (assign[pos - 1] < bound) {
                ++assign[pos - 1];
                break;
            }
            assign[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) break;
    }
    return best;
}

std::optional<MultiIndex> find_gamma(const std::vector<MultiIndex>& alphas, long long bound) {
    size_t d = alphas[0].size();
    // Lexicographic odometer; the first hit is the lex-min witness.
    MultiIndex cand(d, 0);
    while (true) {
        size_t pos = d;
        while (pos > 0) {
            if (cand[pos - 1] < bound) {
                ++cand[pos - 1];
                break;
            }
            cand[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) return std::nullopt;
        std::vector<long long> p;
        p.reserve(alphas.size());
        for (const auto& a : alphas) p.push_back(dot(a, cand));
        if (gamma_chain_ok(p)) return cand;
    }
}

}  // namespace

std::optional<std::pair<MultiIndex, MultiIndex>> search_witnesses(
    const std::vector<MultiIndex>& alphas, long long bound) {
    validate_family(alphas);
    if (bound < 1) throw std::invalid_argument("search_witnesses: bound must be >= 1");

    auto lambda = find_lambda(alphas, bound);
    if (!lambda) return std::nullopt;
    auto gamma = find_gamma(alphas, bound);
    if (!gamma) return std::nullopt;
    return std::make_pair(*lambda, *gamma);
}

}  // namespace ornstein
