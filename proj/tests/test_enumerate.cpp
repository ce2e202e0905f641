#include <doctest.h>

#include <random>
#include <unordered_set>

#include "oracles.hpp"
#include "qmr/enumerate.hpp"

using namespace qmr;

TEST_CASE("enumerator counts equal the product formula and every member is distinct")
{
    for (std::uint32_t p : {2u, 3u}) {
        const auto f = std::make_shared<const Field>(Field::prime(p));
        for (std::size_t n = 0; n <= (p == 2 ? 6u : 4u); ++n) {
            for (std::size_t d = 0; d <= n; ++d) {
                CAPTURE(p);
                CAPTURE(n);
                CAPTURE(d);
                SubspaceEnumerator it(f, n, d);
                const std::uint64_t expected = oracle::gaussian(p, n, d);
                REQUIRE(it.size() == expected);
                REQUIRE(gaussian_binomial(p, n, d) == expected);
                std::unordered_set<Subspace, SubspaceHash> seen;
                std::uint64_t i = 0;
                for (; it.valid(); it.advance(), ++i) {
                    REQUIRE(it.index() == i);
                    const Subspace s = Subspace::span(it.current());
                    REQUIRE(s.dim() == d);
                    REQUIRE(s.basis() == it.current());  // already canonical
                    seen.insert(s);
                }
                CHECK(i == expected);
                CHECK(seen.size() == expected);
            }
        }
    }
}

TEST_CASE("seek, at and index_of are consistent")
{
    std::mt19937_64 rng(31);
    const auto f = std::make_shared<const Field>(Field::prime(3));
    for (auto [n, d] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 2}, {5, 1}, {5, 3}, {6, 2}}) {
        SubspaceEnumerator it(f, n, d);
        for (int t = 0; t < 50; ++t) {
            const std::uint64_t idx = rng() % it.size();
            SubspaceEnumerator probe(f, n, d);
            probe.seek(idx);
            REQUIRE(probe.valid());
            CHECK(probe.current() == it.at(idx));
            CHECK(it.index_of(probe.current()) == idx);
            if (idx + 1 < it.size()) {
                probe.advance();
                CHECK(probe.current() == it.at(idx + 1));
            }
        }
        it.seek(it.size());
        CHECK_FALSE(it.valid());
    }
}

TEST_CASE("disjoint index ranges cover the Grassmannian exactly once")
{
    const auto f = std::make_shared<const Field>(Field::prime(2));
    SubspaceEnumerator base(f, 6, 3);
    const std::uint64_t total = base.size();
    std::unordered_set<Subspace, SubspaceHash> seen;
    const std::uint64_t chunk = 97;
    for (std::uint64_t b = 0; b < total; b += chunk) {
        SubspaceEnumerator it(f, 6, 3);
        it.seek(b);
        for (std::uint64_t i = b; i < std::min(total, b + chunk); ++i, it.advance())
            CHECK(seen.insert(it.current_subspace()).second);
    }
    CHECK(seen.size() == total);
}

TEST_CASE("totals, budgets and nested lattices")
{
    const auto f = std::make_shared<const Field>(Field::prime(2));
    CHECK(subspace_count(2, 5) == 374);
    CHECK(subspace_count(2, 4) == 67);
    CHECK(gaussian_binomial(2, 3, 2) == 7);
    CHECK(gaussian_binomial(2, 4, 2) == 35);
    CHECK(gaussian_binomial(2, 6, 2) == 651);
    CHECK(gaussian_binomial(64, 2, 1) == 65);

    const auto all = all_subspaces(f, 4);
    REQUIRE(all.size() == 67);
    for (std::size_t i = 1; i < all.size(); ++i)
        CHECK(all[i - 1].dim() <= all[i].dim());
    CHECK_THROWS_AS(all_subspaces(f, 8, 1000), BudgetExceeded);
    CHECK_THROWS_AS(require_budget(BigInt(1001), 1000, "test"), BudgetExceeded);
    CHECK_NOTHROW(require_budget(BigInt(1000), 1000, "test"));

    std::mt19937_64 rng(32);
    for (int t = 0; t < 10; ++t) {
        const Subspace v = random_subspace(f, 5, 1 + rng() % 4, rng);
        const auto inside = subspaces_within(v);
        CHECK(inside.size() == subspace_count(2, v.dim()));
        std::unordered_set<Subspace, SubspaceHash> distinct(inside.begin(), inside.end());
        CHECK(distinct.size() == inside.size());
        for (const auto& s : inside)
            CHECK(v.contains(s));
    }
}

TEST_CASE("random subspaces have the requested dimension and reach every member")
{
    const auto f = std::make_shared<const Field>(Field::prime(2));
    std::mt19937_64 rng(33);
    std::unordered_set<Subspace, SubspaceHash> hit;
    for (int t = 0; t < 600; ++t) {
        const Subspace s = random_subspace(f, 4, 2, rng);
        CHECK(s.dim() == 2);
        hit.insert(s);
    }
    CHECK(hit.size() == 35);
    const Mat g = random_full_rank(f, 3, 5, rng);
    CHECK(rank(g) == 3);
}

TEST_CASE("index_of rejects non-canonical bases")
{
    const auto f = std::make_shared<const Field>(Field::prime(2));
    SubspaceEnumerator it(f, 3, 2);
    const Mat bad = Mat::from_rows(f, 3, {{Elt{1}, Elt{1}, Elt{0}}, {Elt{1}, Elt{0}, Elt{0}}});
    CHECK_THROWS_AS(it.index_of(bad), InvalidInput);
    const Mat wrong_shape = Mat::identity(f, 3);
    CHECK_THROWS_AS(it.index_of(wrong_shape), InvalidInput);
}
