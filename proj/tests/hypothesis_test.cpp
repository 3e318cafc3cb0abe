#include "ornstein/hypothesis.hpp"

#include <doctest.h>

#include <optional>
#include <stdexcept>
#include <vector>

using namespace ornstein;

namespace {

std::vector<MultiIndex> mixed_family() {
    return {{4, 0}, {3, 2}, {2, 4}, {1, 6}, {0, 8}};
}

// Independent oracle: walk the whole (bound+1)^d box twice and return the
// lex-smallest passing Lambda and Gamma separately. Deliberately brute force.
std::optional<std::pair<MultiIndex, MultiIndex>> box_oracle(
    const std::vector<MultiIndex>& alphas, int bound) {
    size_t d = alphas[0].size();
    std::optional<MultiIndex> lam, gam;
    MultiIndex cand(d, 0);
    auto advance = [&]() {
        size_t pos = d;
        while (pos > 0) {
            if (cand[pos - 1] < bound) {
                ++cand[pos - 1];
                return true;
            }
            cand[pos - 1] = 0;
            --pos;
        }
        return false;
    };
    auto lex_less = [](const MultiIndex& a, const MultiIndex& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    };
    while (advance()) {
        HypothesisReport rep = check_pair(alphas, cand, cand);
        if (rep.lambda_ok && (!lam || lex_less(cand, *lam))) lam = cand;
        if (rep.gamma_ok && (!gam || lex_less(cand, *gam))) gam = cand;
    }
    if (!lam || !gam) return std::nullopt;
    return std::make_pair(*lam, *gam);
}

}  // namespace

TEST_CASE("mixed-derivative family accepts (2,1) and (0,1)") {
    HypothesisReport rep = check_pair(mixed_family(), MultiIndex{2, 1}, MultiIndex{0, 1});
    CHECK(rep.lambda_ok);
    CHECK(rep.gamma_ok);
    CHECK(rep.ok());
    CHECK(rep.lambda_pairings == std::vector<long long>{8, 8, 8, 8, 8});
    CHECK(rep.gamma_pairings == std::vector<long long>{0, 2, 4, 6, 8});
}

TEST_CASE("gamma ordering is strict-strict then weak") {
    // (1,0) reverses the family: 4 > 3 at the first step.
    HypothesisReport rep = check_pair(mixed_family(), MultiIndex{2, 1}, MultiIndex{1, 0});
    CHECK(rep.lambda_ok);
    CHECK_FALSE(rep.gamma_ok);

    // Pairings 0 < 2 < 4 = 4 would fail if the tail were strict too.
    std::vector<MultiIndex> fam{{0, 0}, {1, 0}, {2, 0}, {2, 1}};
    HypothesisReport weak = check_pair(fam, MultiIndex{1, 1}, MultiIndex{1, 0});
    CHECK(weak.gamma_pairings == std::vector<long long>{0, 1, 2, 2});
    CHECK(weak.gamma_ok);

    // A tie inside the strict prefix must fail.
    std::vector<MultiIndex> tie{{0, 0}, {1, 0}, {1, 1}};
    HypothesisReport strict = check_pair(tie, MultiIndex{1, 1}, MultiIndex{1, 0});
    CHECK(strict.gamma_pairings == std::vector<long long>{0, 1, 1});
    CHECK_FALSE(strict.gamma_ok);
}

TEST_CASE("duplicate indexes can never order strictly") {
    std::vector<MultiIndex> dup{{1, 0}, {1, 0}};
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) {
            if (a == 0 && b == 0) continue;
            HypothesisReport rep = check_pair(dup, MultiIndex{1, 1}, MultiIndex{a, b});
            CHECK_FALSE(rep.gamma_ok);
        }
    CHECK_FALSE(search_witnesses(dup, 6).has_value());
}

TEST_CASE("check_pair input validation") {
    CHECK_THROWS_AS(check_pair({{1, 0}}, MultiIndex{1, 1}, MultiIndex{1, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_pair({{1, 0}, {0, 1, 0}}, MultiIndex{1, 1}, MultiIndex{1, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_pair(mixed_family(), MultiIndex{0, 0}, MultiIndex{1, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_pair(mixed_family(), MultiIndex{2, 1}, MultiIndex{-1, 2}),
                    std::invalid_argument);
}

TEST_CASE("search on the mixed family matches the box oracle") {
    auto got = search_witnesses(mixed_family(), 8);
    REQUIRE(got.has_value());
    CHECK(got->first == MultiIndex{2, 1});
    CHECK(got->second == MultiIndex{0, 1});
    auto oracle = box_oracle(mixed_family(), 8);
    REQUIRE(oracle.has_value());
    CHECK(got->first == oracle->first);
    CHECK(got->second == oracle->second);
}

TEST_CASE("search on the pure second-order family") {
    std::vector<MultiIndex> fam{{2, 0}, {1, 1}, {0, 2}};
    auto got = search_witnesses(fam, 4);
    REQUIRE(got.has_value());
    CHECK(got->first == MultiIndex{1, 1});
    CHECK(got->second == MultiIndex{0, 1});
    HypothesisReport rep = check_pair(fam, got->first, got->second);
    CHECK(rep.lambda_pairings == std::vector<long long>{2, 2, 2});
    CHECK(rep.gamma_pairings == std::vector<long long>{0, 1, 2});
    auto oracle = box_oracle(fam, 4);
    REQUIRE(oracle.has_value());
    CHECK(got->first == oracle->first);
    CHECK(got->second == oracle->second);
}

TEST_CASE("search results round-trip through check_pair") {
    std::vector<std::vector<MultiIndex>> families{
        mixed_family(),
        {{2, 0}, {1, 1}, {0, 2}},
        {{3, 0}, {0, 3}},
        {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
    };
    for (const auto& fam : families) {
        auto got = search_witnesses(fam, 8);
        if (!got) continue;
        HypothesisReport rep = check_pair(fam, got->first, got->second);
        CHECK(rep.ok());
    }
}

TEST_CASE("witness flags survive positive scaling") {
    HypothesisReport base = check_pair(mixed_family(), MultiIndex{2, 1}, MultiIndex{0, 1});
    for (int c = 2; c <= 5; ++c) {
        HypothesisReport scaled =
            check_pair(mixed_family(), MultiIndex{2 * c, c}, MultiIndex{0, c});
        CHECK(scaled.lambda_ok == base.lambda_ok);
        CHECK(scaled.gamma_ok == base.gamma_ok);
    }
}

TEST_CASE("search is deterministic") {
    auto a = search_witnesses(mixed_family(), 8);
    auto b = search_witnesses(mixed_family(), 8);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->first == b->first);
    CHECK(a->second == b->second);
}
