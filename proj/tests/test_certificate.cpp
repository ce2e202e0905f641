#include <doctest.h>

#include "qmr/certificate.hpp"

using namespace qmr;

namespace {

Json pair_construction(const char* type, std::uint64_t q, std::uint32_t m, std::size_t n1, std::size_t n2)
{
    return Json{{"type", type}, {"q", q}, {"m", m}, {"n1", n1}, {"n2", n2}};
}

Json blocks_sum(const char* blocks)
{
    return Json{{"construction", Json{{"type", "pseudoregulus_sum"}, {"q", 2}, {"blocks", Json::parse(blocks)}}}};
}

Json certify(const std::string& command, const Json& inputs)
{
    return make_certificate(command, inputs, run_job(command, inputs), {"qmr", command}, 0.0);
}

}  // namespace

TEST_CASE("serialized subspaces and matrices round-trip")
{
    const auto t = FieldTower::create(2, 2, 3);
    CHECK(field_spec_from_json(to_json(t->spec())) == t->spec());
    const auto s = polynomial_pair(*FieldTower::create(2, 1, 6), 2, 3).b;
    CHECK(subspace_from_json(s.field_ptr(), to_json(s)) == s);

    // A reordered basis is re-canonicalized; a dependent one is caught.
    Json j = to_json(s);
    std::swap(j["basis"][0], j["basis"][1]);
    CHECK(subspace_from_json(s.field_ptr(), j) == s);
    j["basis"][0] = j["basis"][1];
    CHECK_THROWS_AS(subspace_from_json(s.field_ptr(), j), InvalidInput);
    j = to_json(s);
    j["basis"][0][0] = 7;
    CHECK_THROWS_AS(subspace_from_json(s.field_ptr(), j), InvalidInput);
    j = to_json(s);
    j["ambient"] = 5;
    CHECK_THROWS_AS(subspace_from_json(s.field_ptr(), j), InvalidInput);
}

TEST_CASE("every command replays to an identical result")
{
    const std::vector<std::pair<std::string, Json>> jobs{
        {"field", Json{{"q", 4}, {"m", 3}}},
        {"construct", Json{{"construction", pair_construction("polynomial_pair", 2, 6, 2, 3)}}},
        {"rank", Json::parse(R"({"oracle":{"kind":"uniform","q":2,"k":2,"n":4},"vectors":[[1,0,0,0],[0,1,1,0]]})")},
        {"cyclic-flats",
         Json::parse(R"({"oracle":{"kind":"direct_sum","q":2,"summands":[{"k":1,"n":2},{"k":1,"n":2}]}})")},
        {"axioms", Json::parse(R"({"oracle":{"kind":"uniform","q":2,"k":1,"n":3}})")},
        {"evasive", Json{{"construction", pair_construction("polynomial_pair", 2, 6, 2, 3)}}},
        {"verify", blocks_sum(R"([{"n":2,"k":1,"m":2},{"n":3,"k":1,"m":3}])")},
        {"search", Json{{"q", 2}, {"m", 4}, {"n1", 2}, {"n2", 2}}},
        {"dispatch", Json{{"q", 2}, {"m", 8}, {"n1", 3}, {"n2", 2}}},
        {"reproduce", Json{{"name", "example-1.12"}}},
    };
    for (const auto& [command, inputs] : jobs) {
        CAPTURE(command);
        const Json cert = certify(command, inputs);
        CHECK(cert["format"] == "qmrep-certificate");
        CHECK(cert["version"] == kCertificateVersion);
        const auto check = verify_certificate(cert);
        CHECK(check.pass);
        CHECK(check.messages.front() == "replay: result identical");
        // Timing never takes part in the comparison.
        Json later = cert;
        later["timing"]["seconds"] = 123.0;
        CHECK(verify_certificate(later).pass);
    }
}

TEST_CASE("tampering is detected")
{
    const Json inputs{{"q", 2}, {"m", 4}, {"n1", 2}, {"n2", 2}};
    const Json cert = certify("search", inputs);

    Json edited = cert;
    edited["result"]["pairs_checked"] = 1;
    CHECK_FALSE(verify_certificate(edited).pass);

    // Swap in a failing witness: A = B fails the pair criterion.
    Json forged = cert["result"];
    forged["witness_blocks"][1] = forged["witness_blocks"][0];
    const auto re = recheck_witness(forged);
    CHECK_FALSE(re.pass);

    CHECK(recheck_witness(cert["result"]).pass);

    Json wrong_format = cert;
    wrong_format["format"] = "something-else";
    CHECK_THROWS_AS(verify_certificate(wrong_format), InvalidInput);
    Json wrong_version = cert;
    wrong_version["version"] = 99;
    CHECK_THROWS_AS(verify_certificate(wrong_version), InvalidInput);
}

TEST_CASE("witnesses with larger blocks are rechecked through the full verifier")
{
    const Json inputs = blocks_sum(R"([{"n":3,"k":2,"m":3},{"n":2,"k":1,"m":2}])");
    const Json cert = certify("verify", inputs);
    CHECK(cert["result"]["status"] == "representable_with_witness");
    const auto check = verify_certificate(cert);
    CHECK(check.pass);
    CHECK(check.messages.back() == "block witness: representable_with_witness");
}

TEST_CASE("reproduce names and aliases")
{
    CHECK(reproduce_names().size() == 5);
    CHECK(resolve_reproduce_name("example-1.12") == "boundary-m4");
    CHECK(resolve_reproduce_name("boundary-m4") == "boundary-m4");
    CHECK(resolve_reproduce_name("theorem-3.1") == "coprime-sum");
    CHECK(resolve_reproduce_name("corollary-4.2-reject") == "necessary-bound");
    CHECK(resolve_reproduce_name("remark-magma-q2m7") == "random-q2m7");
    CHECK(resolve_reproduce_name("corollary-4.9") == "modular-pair");
    CHECK(resolve_reproduce_name("nope").empty());
    CHECK_THROWS_AS(run_job("reproduce", Json{{"name", "nope"}}), InvalidInput);
    CHECK_THROWS_AS(run_job("bogus", Json::object()), InvalidInput);

    const Json nb = run_job("reproduce", Json{{"name", "necessary-bound"}});
    CHECK(nb["boundary_exact"] == true);
    CHECK(nb["consistent"] == true);
}

TEST_CASE("bad job inputs name the problem")
{
    const Json shared_factor = blocks_sum(R"([{"n":2,"k":1,"m":2},{"n":2,"k":1,"m":4}])");
    CHECK_THROWS_AS(run_job("verify", shared_factor), InvalidInput);
    const Json bad_q = Json::parse(R"({"q":6,"m":3,"n1":2,"n2":2})");
    CHECK_THROWS_AS(run_job("search", bad_q), InvalidInput);
    const Json too_big = Json::parse(R"({"q":2,"m":12,"n1":6,"n2":6,"budget":1000})");
    CHECK_THROWS_AS(run_job("search", too_big), BudgetExceeded);
}
