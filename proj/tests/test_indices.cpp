#include <doctest.h>

#include <vector>

#include "qmzv/indices.hpp"

using namespace qmzv;

namespace {

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long v = 1;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return v;
}

}  // namespace

TEST_CASE("MultiIndex invariants and classification") {
    CHECK_THROWS_AS(MultiIndex(std::vector<int>{}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex({2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex({-1}), std::invalid_argument);

    const MultiIndex a({3, 1});
    CHECK(a.admissible());
    CHECK(classify(a) == IndexClass{4, 2, 1});
    CHECK(classify(MultiIndex({2, 2})) == IndexClass{4, 2, 2});
    CHECK_FALSE(MultiIndex({1, 3}).admissible());
    CHECK(a.shifted() == MultiIndex({4, 1}));
    CHECK(a.to_string() == "[3,1]");
}

TEST_CASE("ones_padded shapes") {
    CHECK(ones_padded(0, 0) == MultiIndex({2}));
    CHECK(ones_padded(1, 2) == MultiIndex({3, 1, 1}));
    CHECK(ones_padded(0, 1) == MultiIndex({2, 1}));
    // zeta[m+2,{1}^n] has weight m+n+2, depth n+1, height 1
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n)
            CHECK(classify(ones_padded(m, n)) == IndexClass{m + n + 2, n + 1, 1});
}

TEST_CASE("compositions stream in descending lexicographic order") {
    std::vector<std::vector<int>> got;
    for (const auto& parts : compositions(4, 2)) got.push_back(parts);
    CHECK(got == std::vector<std::vector<int>>{{3, 1}, {2, 2}, {1, 3}});

    got.clear();
    for (const auto& parts : compositions(7, 1)) got.push_back(parts);
    CHECK(got == std::vector<std::vector<int>>{{7}});

    CHECK(all_compositions(5, 3).size() == 6);
    CHECK(all_compositions(2, 3).empty());  // N < r

    // strictly descending order, each summing to N
    const LexDescendingLess less;
    for (int N : {5, 8}) {
        for (int r = 1; r <= N; ++r) {
            std::vector<MultiIndex> seq = all_compositions(N, r);
            for (std::size_t i = 0; i < seq.size(); ++i) {
                CHECK(seq[i].weight() == N);
                CHECK(seq[i].depth() == r);
                if (i) CHECK(less(seq[i - 1], seq[i]));
            }
        }
    }
}

TEST_CASE("composition counts match C(N-1, r-1)") {
    for (int N = 1; N <= 12; ++N)
        for (int r = 1; r <= N; ++r)
            CHECK(static_cast<long>(all_compositions(N, r).size()) == binom(N - 1, r - 1));
}

TEST_CASE("I0 enumeration") {
    CHECK(enumerate_I0(4, 2, 1) == std::vector<MultiIndex>{MultiIndex({3, 1})});
    CHECK(enumerate_I0(3, 1, 1) == std::vector<MultiIndex>{MultiIndex({3})});
    CHECK(enumerate_I0(4, 2, 2) == std::vector<MultiIndex>{MultiIndex({2, 2})});
    CHECK(enumerate_I0(3, 3, 1).empty());  // weight 3 depth 3 forces (1,1,1), n1 < 2
}

TEST_CASE("I0 strata partition the admissible compositions") {
    for (int n = 2; n <= 10; ++n) {
        for (int r = 1; r <= n; ++r) {
            std::size_t admissible = 0;
            for (const auto& parts : compositions(n, r))
                admissible += parts.front() >= 2;
            std::size_t strata = 0;
            for (int s = 1; s <= r; ++s) strata += enumerate_I0(n, r, s).size();
            CHECK(strata == admissible);
        }
    }
}

TEST_CASE("classify is internally consistent") {
    for (int n = 2; n <= 9; ++n) {
        for (int r = 1; r <= n; ++r) {
            for (const auto& parts : compositions(n, r)) {
                const IndexClass c = classify(MultiIndex(parts));
                CHECK(c.height <= c.depth);
                CHECK(c.weight >= c.depth);
            }
        }
    }
}
