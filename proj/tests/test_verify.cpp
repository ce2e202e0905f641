#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qmr/verify.hpp"

using namespace qmr;

namespace {

Subspace random_system_space(const FieldTower& t, std::size_t k, std::size_t n, std::mt19937_64& rng)
{
    for (;;) {
        Subspace s = random_subspace(t.small_ptr(), t.m() * k, n, rng);
        if (rho(t, s) == k)
            return s;
    }
}

}  // namespace

TEST_CASE("the coprime construction represents U_{1,2} + U_{1,3}")
{
    const auto sum = coprime_pseudoregulus_sum(2, {{2, 1, 2}, {3, 1, 3}});
    const auto v = verify_uniform_sum_representation(sum.blocks);
    CHECK(v.status == RepStatus::representable_with_witness);
    REQUIRE(v.triple.has_value());
    CHECK(v.triple->ran);
    CHECK(v.triple->cond1);
    CHECK(v.triple->cond2);
    CHECK(v.triple->cond3);
    CHECK(v.triple->subspaces_checked == 374);
    REQUIRE(v.cascade.has_value());
    CHECK(v.cascade->holds);
    CHECK(v.nvec == std::vector<std::size_t>{2, 3});
    CHECK(v.witness_blocks.size() == 2);
}

TEST_CASE("the three conditions agree on random systems")
{
    // Property: for any choice of blocks, (1) ⇔ (2) ⇔ (3). Disagreement would
    // throw from verify_uniform_sum_representation.
    std::mt19937_64 rng(81);
    const auto t3 = FieldTower::create(2, 1, 3);
    const auto t4 = FieldTower::create(2, 1, 4);
    int positives = 0, negatives = 0;
    for (int s = 0; s < 30; ++s) {
        std::vector<QSystem> blocks;
        if (s % 3 == 0) {
            blocks.push_back(make_system(t4, 1, random_system_space(*t4, 1, 2, rng)));
            blocks.push_back(make_system(t4, 1, random_system_space(*t4, 1, 2, rng)));
        } else if (s % 3 == 1) {
            blocks.push_back(make_system(t3, 2, random_system_space(*t3, 2, 3, rng)));
            blocks.push_back(make_system(t3, 1, random_system_space(*t3, 1, 2, rng)));
        } else {
            blocks.push_back(make_system(t3, 1, random_system_space(*t3, 1, 2, rng)));
            blocks.push_back(make_system(t3, 1, random_system_space(*t3, 1, 2, rng)));
            blocks.push_back(make_system(t3, 1, random_system_space(*t3, 1, 2, rng)));
        }
        VerifyOptions opts;
        opts.triple_budget = 1u << 12;
        const auto v = verify_uniform_sum_representation(blocks, opts);
        REQUIRE(v.triple.has_value());
        CHECK(v.triple->agree);
        CHECK(v.triple->cond1 == (v.status == RepStatus::representable_with_witness));
        if (!v.triple->cond1)
            CHECK(v.triple->cond1_witness.has_value());
        (v.triple->cond1 ? positives : negatives)++;
        if (s % 3 == 0)
            CHECK(v.triple->cond3 ==
                  oracle::literal_sidon(*t4, blocks[0].space, blocks[1].space));
    }
    CHECK(positives > 0);
    CHECK(negatives > 0);
}

TEST_CASE("a single rank-one block is always a representation")
{
    const auto t = FieldTower::create(2, 1, 4);
    const QSystem s = make_system(t, 1, Subspace::full(t->small_ptr(), 3).embed(4, 0));
    const auto v = verify_uniform_sum_representation({s});
    CHECK(v.status == RepStatus::representable_with_witness);
    CHECK(v.triple->agree);
}

TEST_CASE("the necessary bound for rank-one sums")
{
    CHECK(necessary_condition_rank1({2, 2}, 3).result == NecessaryCheck::Result::violation);
    CHECK(necessary_condition_rank1({2, 2}, 4).result == NecessaryCheck::Result::pass);
    CHECK(necessary_condition_rank1({7, 6}, 13).result == NecessaryCheck::Result::violation);
    CHECK(necessary_condition_rank1({7, 6}, 14).result == NecessaryCheck::Result::pass);
    CHECK(necessary_condition_rank1({1, 6}, 3).result == NecessaryCheck::Result::not_applicable);
    CHECK(necessary_condition_rank1({2, 3, 3}, 5).result == NecessaryCheck::Result::violation);
}

TEST_CASE("dispatch: clauses, witnesses and rejections")
{
    for (std::uint32_t m = 1; m < 14; ++m)
        CHECK(dispatch_theorem_summary(2, 7, 6, m).status == RepStatus::necessary_condition_violated);
    const auto d14 = dispatch_theorem_summary(2, 7, 6, 14);
    CHECK(d14.status == RepStatus::representable_cited);
    REQUIRE(d14.clauses.size() == 2);
    CHECK(d14.clauses[0].clause == 1);
    CHECK(d14.clauses[1].clause == 4);

    const auto d6 = dispatch_theorem_summary(2, 2, 3, 6);
    CHECK(d6.status == RepStatus::representable_with_witness);
    bool clause2 = false;
    for (const auto& c : d6.clauses)
        if (c.clause == 2) {
            clause2 = true;
            REQUIRE(c.witness.has_value());
            CHECK(oracle::literal_sidon(*d6.tower, c.witness->a, c.witness->b));
        }
    CHECK(clause2);

    const auto d8 = dispatch_theorem_summary(2, 3, 2, 8);
    bool clause5 = false;
    for (const auto& c : d8.clauses)
        if (c.clause == 5) {
            clause5 = true;
            CHECK(c.built);
            CHECK(c.evidence->verdict);
        }
    CHECK(clause5);

    // Clause (3) with the roles swapped: m = 6 = 3 * 2, n = (2, 3) fits as
    // t1 = 3 >= 3 and 2 <= 3*1/2 + 1.
    const auto d = dispatch_theorem_summary(2, 2, 3, 6);
    bool clause3 = false;
    for (const auto& c : d.clauses)
        clause3 = clause3 || c.clause == 3;
    CHECK(clause3);

    DispatchOptions cheap;
    cheap.build_witnesses = false;
    CHECK(dispatch_theorem_summary(2, 2, 3, 6, cheap).status == RepStatus::representable_cited);
    CHECK_THROWS_AS(dispatch_theorem_summary(2, 1, 3, 6), InvalidInput);
    CHECK_THROWS_AS(dispatch_theorem_summary(6, 2, 3, 6), InvalidInput);
}

TEST_CASE("exhaustive search at the m = 3 / m = 4 boundary")
{
    const auto t3 = FieldTower::create(2, 1, 3);
    PairSearchOptions plain;
    plain.reduce_orbits = false;
    const auto r3 = exhaustive_pair_search(t3, 2, 2, plain);
    CHECK(r3.status == RepStatus::refuted_exhaustively);
    CHECK(r3.pairs_checked == 49);
    CHECK(r3.pairs_covered == 49);
    const auto r3r = exhaustive_pair_search(t3, 2, 2);
    CHECK(r3r.status == RepStatus::refuted_exhaustively);
    CHECK(r3r.pairs_covered == 49);
    CHECK(r3r.pairs_checked < 49);

    const auto t4 = FieldTower::create(2, 1, 4);
    const auto r4 = exhaustive_pair_search(t4, 2, 2);
    CHECK(r4.status == RepStatus::representable_with_witness);
    REQUIRE(r4.witness_blocks.size() == 2);
    CHECK(oracle::literal_sidon(*t4, r4.witness_blocks[0], r4.witness_blocks[1]));
    REQUIRE(r4.cascade.has_value());
    CHECK(r4.cascade->holds);

    PairSearchOptions many;
    many.workers = 3;
    const auto r4w = exhaustive_pair_search(t4, 2, 2, many);
    CHECK(r4w.pairs_checked == r4.pairs_checked);
    CHECK(r4w.witness_blocks == r4.witness_blocks);

    PairSearchOptions tiny;
    tiny.budget = 10;
    CHECK_THROWS_AS(exhaustive_pair_search(t4, 2, 2, tiny), BudgetExceeded);
    CHECK_THROWS_AS(exhaustive_pair_search(t4, 5, 2), InvalidInput);
}

TEST_CASE("the fast reject agrees with exhaustive search for small m")
{
    for (std::uint32_t m = 2; m <= 4; ++m) {
        const auto t = FieldTower::create(2, 1, m);
        for (std::size_t n1 : {2u, 3u})
            for (std::size_t n2 : {2u, 3u}) {
                if (n1 > m || n2 > m)
                    continue;
                const bool reject = necessary_condition_rank1({n1, n2}, m).result == NecessaryCheck::Result::violation;
                const auto r = exhaustive_pair_search(t, n1, n2);
                if (reject)
                    CHECK(r.status == RepStatus::refuted_exhaustively);
                else
                    CHECK(r.status == RepStatus::representable_with_witness);
            }
    }
}

TEST_CASE("randomized search is reproducible from its seed")
{
    const auto t = FieldTower::create(2, 1, 6);
    const auto a = randomized_pair_search(t, 2, 3, 5, 1000);
    const auto b = randomized_pair_search(t, 2, 3, 5, 1000);
    CHECK(a.trials == b.trials);
    CHECK(a.transcript == b.transcript);
    CHECK(a.verdict.status == RepStatus::representable_with_witness);
    CHECK(a.verdict.witness_blocks == b.verdict.witness_blocks);
    CHECK(oracle::literal_sidon(*t, a.verdict.witness_blocks[0], a.verdict.witness_blocks[1]));
    const auto c = randomized_pair_search(t, 2, 3, 6, 1000);
    CHECK(c.transcript != a.transcript);

    // Below the bound nothing can be found.
    const auto none = randomized_pair_search(FieldTower::create(2, 1, 5), 3, 3, 1, 50);
    CHECK(none.verdict.status == RepStatus::unknown);
    CHECK(none.trials == 50);
}

TEST_CASE("certify_pair runs both routes")
{
    const auto t = FieldTower::create(2, 1, 6);
    const auto pair = polynomial_pair(*t, 2, 3);
    const auto reports = certify_pair(t, pair);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].family.kind == FamilyDescriptor::Kind::sidon);
    CHECK(reports[1].family.kind == FamilyDescriptor::Kind::lambda_k);
    CHECK(reports[0].verdict);
    CHECK(reports[1].verdict);
    CHECK(reports[1].scanned == 63);
    CHECK(certify_pair(t, pair, 10).size() == 1);
}
