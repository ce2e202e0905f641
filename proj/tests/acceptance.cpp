// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Expected counts come from the oracles in oracles.hpp or closed formulas here,
// never from the library under test. Every criterion with a job equivalent also
// emits a certificate and re-verifies it.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "qmr/certificate.hpp"

using namespace qmr;

namespace {

// Wall-clock ceilings in seconds. Exactness is the criterion; these only catch
// a scan that has silently blown up.
constexpr double kUnderASecond = 1.0;
constexpr double kSeconds = 60.0;
constexpr double kUnderAMinute = 60.0;
constexpr double kMinutes = 900.0;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

// Emit a certificate for the job, verify it, and hand back the result.
Json roundtrip(Outcome& out, const std::string& command, const Json& inputs)
{
    const Json result = run_job(command, inputs);
    const Json cert = make_certificate(command, inputs, result, {"acceptance", command}, 0.0);
    const Json reread = Json::parse(cert.dump());
    const auto check = verify_certificate(reread);
    out.require(check.pass, "certificate round-trip for " + command);
    return result;
}

std::uint64_t total_subspaces(std::uint64_t q, std::size_t n)
{
    std::uint64_t t = 0;
    for (std::size_t d = 0; d <= n; ++d)
        t += oracle::gaussian(q, n, d);
    return t;
}

Subspace subspace_from_blocks(const FieldTower& t, const Json& basis)
{
    return subspace_from_json(t.small_ptr(), basis);
}

int failures = 0;

void run(int number, const char* title, double ceiling, const std::function<void(Outcome&)>& body)
{
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(secs <= ceiling, "runtime ceiling");
    if (!out.pass)
        ++failures;
    std::printf("%s  %2d  %-44s %8.2fs %s\n", out.pass ? "PASS" : "FAIL", number, title, secs,
                out.detail.str().c_str());
    std::fflush(stdout);
}

// ---- criteria ------------------------------------------------------------------

void boundary(Outcome& out)
{
    const auto t3 = FieldTower::create(2, 1, 3), t4 = FieldTower::create(2, 1, 4);
    PairSearchOptions plain;
    plain.reduce_orbits = false;
    const auto r3 = exhaustive_pair_search(t3, 2, 2, plain);
    const std::uint64_t pairs = oracle::gaussian(2, 3, 2) * oracle::gaussian(2, 3, 2);
    out.require(r3.status == RepStatus::refuted_exhaustively, "m = 3 refuted");
    out.require(r3.pairs_checked == pairs, "m = 3 scans every unreduced pair");
    const auto r4 = exhaustive_pair_search(t4, 2, 2);
    out.require(r4.status == RepStatus::representable_with_witness, "m = 4 witness");
    out.require(r4.witness_blocks.size() == 2 &&
                    oracle::literal_sidon(*t4, r4.witness_blocks[0], r4.witness_blocks[1]),
                "m = 4 witness passes the literal check");
    const Json j = roundtrip(out, "reproduce", Json{{"name", "boundary-m4"}});
    out.require(j["iff_holds"] == true, "bundle verdict pair");
    out.detail << "m=3: " << r3.pairs_checked << "/" << pairs << " pairs refuted; m=4: witness at pair "
               << r4.pairs_checked;
}

void coprime_construction(Outcome& out)
{
    const auto first = coprime_pseudoregulus_sum(2, {{2, 1, 2}, {3, 1, 3}});
    const auto& t = first.tower;
    const std::uint64_t Q = t->big().order();
    // Points of PG(1, q^m) other than the two coordinate axes.
    const std::uint64_t admissible1 = oracle::gaussian(Q, 2, 1) - 2;
    const auto r1 = is_evasive(first.system, lambda_hk_family(t, {1, 1}, 1), 1);
    out.require(r1.verdict && r1.exhaustive, "(2,1,2)+(3,1,3) is (Λ_1, 1)-evasive");
    out.require(r1.scanned == admissible1, "every admissible point scanned");

    const auto second = coprime_pseudoregulus_sum(2, {{3, 2, 3}, {2, 1, 2}});
    // Lines of PG(2, q^m) except the first block plane and those through the
    // third coordinate point.
    const std::uint64_t admissible2 = oracle::gaussian(Q, 3, 2) - 1 - oracle::gaussian(Q, 2, 1);
    const auto r2 = is_evasive(second.system, lambda_hk_family(second.tower, {2, 1}, 2), 2);
    out.require(r2.verdict && r2.exhaustive, "(3,2,3)+(2,1,2) is (Λ_2, 2)-evasive");
    out.require(r2.scanned == admissible2, "every admissible plane scanned");

    roundtrip(out, "evasive",
              Json{{"construction", Json{{"type", "pseudoregulus_sum"},
                                         {"q", 2},
                                         {"blocks", Json::parse(R"([{"n":2,"k":1,"m":2},{"n":3,"k":1,"m":3}])")}}},
                   {"family", "lambda_k"},
                   {"h", 1},
                   {"bound", 1}});
    out.detail << "Λ_{1,(1,1)}: " << r1.scanned << "/" << admissible1 << "; Λ_{2,(2,1)}: " << r2.scanned << "/"
               << admissible2;
}

void triple_equivalence(Outcome& out)
{
    const auto sum = coprime_pseudoregulus_sum(2, {{2, 1, 2}, {3, 1, 3}});
    const auto v = verify_uniform_sum_representation(sum.blocks);
    const std::uint64_t expected = total_subspaces(2, 5);
    out.require(v.status == RepStatus::representable_with_witness, "representation verified");
    out.require(v.triple.has_value() && v.triple->ran && v.triple->agree, "conditions agree");
    out.require(v.triple && v.triple->cond1 && v.triple->cond2 && v.triple->cond3, "all three hold");
    out.require(v.triple && v.triple->subspaces_checked == expected, "every subspace of F_2^5 checked");
    const Json j = roundtrip(out, "verify",
                             Json{{"construction", Json{{"type", "pseudoregulus_sum"},
                                                        {"q", 2},
                                                        {"blocks", Json::parse(
                                                                       R"([{"n":2,"k":1,"m":2},{"n":3,"k":1,"m":3}])")}}}});
    out.require(j["status"] == "representable_with_witness", "job verdict");
    out.detail << (v.triple ? v.triple->subspaces_checked : 0) << "/" << expected << " subspaces agree";
}

// Cyclic flats straight from the definitions: a flat gains rank in every
// cover, and a cyclic space keeps its rank on every hyperplane.
std::vector<std::pair<Subspace, std::size_t>> brute_cyclic_flats(const RankOracle& m)
{
    const auto lattice = all_subspaces(m.field(), m.ground_dim());
    std::vector<std::pair<Subspace, std::size_t>> out;
    for (const auto& v : lattice) {
        const std::size_t r = m.rank(v);
        bool flat = true, cyclic = true;
        for (const auto& w : lattice) {
            if (w.dim() == v.dim() + 1 && w.contains(v) && m.rank(w) == r)
                flat = false;
            if (w.dim() + 1 == v.dim() && v.contains(w) && m.rank(w) != r)
                cyclic = false;
        }
        if (flat && cyclic)
            out.emplace_back(v, r);
    }
    return out;
}

void cyclic_flats(Outcome& out)
{
    const auto f2 = std::make_shared<const Field>(Field::prime(2));
    int cases = 0;
    for (std::size_t n = 2; n <= 4; ++n)
        for (std::size_t k = 1; k < n; ++k) {
            const auto u = uniform_oracle(f2, k, n);
            const auto got = derived_families(*u).cyclic_flats;
            const auto brute = brute_cyclic_flats(*u);
            out.require(got.size() == 2 && brute.size() == 2, "two cyclic flats");
            out.require(got.size() == 2 && got[0].flat.dim() == 0 && got[0].rank == 0 && got[1].flat.dim() == n &&
                            got[1].rank == k,
                        "they are {0} and the whole space");
            ++cases;
        }
    const auto u12 = uniform_oracle(f2, 1, 2);
    const auto sum = direct_sum_oracle({u12, u12});
    const auto got = derived_families(*sum).cyclic_flats;
    const auto brute = brute_cyclic_flats(*sum);
    std::multiset<std::size_t> ranks, brute_ranks;
    for (const auto& c : got)
        ranks.insert(c.rank);
    for (const auto& [s, r] : brute)
        brute_ranks.insert(r);
    out.require(got.size() == 4 && brute.size() == 4, "four cyclic flats of the sum");
    out.require(ranks == std::multiset<std::size_t>{0, 1, 1, 2} && ranks == brute_ranks, "ranks 0,1,1,2");
    const Json j =
        roundtrip(out, "cyclic-flats",
                  Json::parse(R"({"oracle":{"kind":"direct_sum","q":2,"summands":[{"k":1,"n":2},{"k":1,"n":2}]}})"));
    out.require(j["cyclic_flats"].size() == 4, "job lists four");
    out.detail << cases << " uniform q-matroids with 2 each; U_{1,2}+U_{1,2}: " << got.size();
}

void axioms(Outcome& out)
{
    const auto f2 = std::make_shared<const Field>(Field::prime(2));
    const std::uint64_t lattice = total_subspaces(2, 4);
    std::uint64_t pairs = 0;
    int sums = 0;
    // Every direct sum of two uniform q-matroids with ground space F_2^4.
    for (std::size_t n1 = 1; n1 <= 3; ++n1)
        for (std::size_t k1 = 0; k1 <= n1; ++k1)
            for (std::size_t k2 = 0; k2 <= 4 - n1; ++k2) {
                const auto sum = direct_sum_oracle({uniform_oracle(f2, k1, n1), uniform_oracle(f2, k2, 4 - n1)});
                const auto r = check_axioms(*sum);
                out.require(r.pass, "R1-R3 on U_{" + std::to_string(k1) + "," + std::to_string(n1) + "}+U_{" +
                                        std::to_string(k2) + "," + std::to_string(4 - n1) + "} " + r.axiom);
                out.require(r.exhaustive && r.pairs_checked == lattice * lattice, "all pairs");
                pairs += r.pairs_checked;
                ++sums;
            }
    roundtrip(out, "axioms",
              Json::parse(R"({"oracle":{"kind":"direct_sum","q":2,"summands":[{"k":1,"n":2},{"k":1,"n":2}]}})"));
    out.detail << sums << " sums, " << pairs << " pairs";
}

void fast_reject(Outcome& out)
{
    int rejected = 0, instances = 0;
    for (std::uint32_t m = 2; m <= 4; ++m) {
        const auto t = FieldTower::create(2, 1, m);
        for (std::size_t n1 : {2u, 3u})
            for (std::size_t n2 : {2u, 3u}) {
                if (n1 > m || n2 > m)
                    continue;
                ++instances;
                const bool below = m < 2 * std::max(n1, n2);
                const bool reject =
                    necessary_condition_rank1({n1, n2}, m).result == NecessaryCheck::Result::violation;
                out.require(reject == below, "bound fires exactly below 2 max n_i");
                PairSearchOptions plain;
                plain.reduce_orbits = false;
                const auto r = exhaustive_pair_search(t, n1, n2, plain);
                if (reject) {
                    ++rejected;
                    out.require(r.status == RepStatus::refuted_exhaustively, "no witness when rejected");
                } else {
                    out.require(r.status == RepStatus::representable_with_witness, "witness when allowed");
                }
            }
    }
    const Json j = roundtrip(out, "reproduce", Json{{"name", "necessary-bound"}});
    out.require(j["consistent"] == true && j["boundary_exact"] == true, "bundle agrees");
    out.detail << rejected << "/" << instances << " rejected, all refuted exhaustively";
}

void rank_one_witnesses(Outcome& out)
{
    const auto t = FieldTower::create(2, 1, 6);
    const auto pp = polynomial_pair(*t, 2, 3);
    const auto scan = sidon_pair_check(*t, pp.a, pp.b, SidonMethod::lambda_scan);
    const std::uint64_t classes = (t->big().order() - 1) / (t->q() - 1);
    out.require(scan.verdict && scan.exhaustive && scan.scanned == classes, "polynomial pair full λ-scan");
    out.require(oracle::literal_sidon(*t, pp.a, pp.b), "polynomial pair literal check");

    const auto mp = modular_pair(2, 1, 3, 3, 2);
    out.require(mp.tower->m() == 8, "m = 8");
    out.require(mp.dim_f1 == 3 && mp.dim_f2 == 2 && mp.dim_fl == 4, "kernel dimensions");
    out.require(mp.pair.a.dim() == 3 && mp.pair.b.dim() == 2, "pair dimensions");
    // ξ separates F_{n2}: F_{n2} ∩ ξ F_{n2} = {0}, checked on elements.
    const auto f2 = oracle::nonzero_elements(*mp.tower, artin_schreier_kernel(*mp.tower, 2));
    bool separated = true;
    for (Elt x : f2)
        for (Elt y : f2)
            separated = separated && mp.tower->big().mul(mp.xi, x) != y;
    out.require(separated, "ξ separates");
    const auto mscan = sidon_pair_check(*mp.tower, mp.pair.a, mp.pair.b, SidonMethod::lambda_scan);
    out.require(mscan.verdict && oracle::literal_sidon(*mp.tower, mp.pair.a, mp.pair.b), "modular pair passes");

    roundtrip(out, "evasive",
              Json{{"construction", Json::parse(R"({"type":"polynomial_pair","q":2,"m":6,"n1":2,"n2":3})")},
                   {"family", "sidon"},
                   {"method", "lambda-scan"}});
    const Json j = roundtrip(out, "reproduce", Json{{"name", "modular-pair"}});
    out.require(j["verdict"]["status"] == "representable_with_witness", "bundle verdict");
    out.detail << "λ-scan " << scan.scanned << "/" << classes << " classes; ξ after " << mp.xi_trials
               << " trials, dims " << mp.dim_f1 << "," << mp.dim_f2 << "," << mp.dim_fl;
}

void random_search(Outcome& out)
{
    const Json inputs{{"q", 2}, {"m", 7}, {"n1", 3}, {"n2", 3}, {"mode", "random"}, {"seed", 7}, {"trials", 100000}};
    const Json result = run_job("search", inputs);
    const Json cert = make_certificate("search", inputs, result, {"acceptance", "search"}, 0.0);
    const Json reread = Json::parse(cert.dump());
    out.require(reread["result"]["status"] == "representable_with_witness", "witness found");
    out.require(verify_certificate(reread).pass, "certificate re-verifies");
    // Independent literal check on the blocks as stored in the certificate.
    const auto t = FieldTower::create(2, 1, 7);
    const auto& blocks = reread["result"]["witness_blocks"];
    out.require(blocks.size() == 2, "two blocks");
    if (blocks.size() == 2) {
        const Subspace a = subspace_from_blocks(*t, blocks[0]), b = subspace_from_blocks(*t, blocks[1]);
        out.require(a.dim() == 3 && b.dim() == 3, "dimensions (3,3)");
        out.require(oracle::literal_sidon(*t, a, b), "literal quadruple check");
    }
    out.detail << "witness after " << reread["result"].value("trials", Json(0)).dump() << " trials";
}

void mrd(Outcome& out)
{
    const auto t = FieldTower::create(2, 1, 4);
    const auto& b = t->gamma_basis();
    const RankMetricCode g(t, gabidulin_generator(*t, 2, {b[0], b[1], b[2], b[3]}));
    const auto cw = min_rank_distance(g, DistanceMethod::codeword);
    const std::uint64_t codewords = oracle::ipow(t->big().order(), 2) - 1;
    out.require(cw.distance == 3 && cw.scanned == codewords, "Gabidulin [4,2] distance 3 by full scan");
    out.require(g.k() <= g.n() - cw.distance + 1, "Singleton bound");

    std::mt19937_64 rng(2024);
    const auto t3 = FieldTower::create(2, 1, 3);
    int agree = 0, codes = 0;
    while (codes < 20) {
        const Mat m = oracle::random_mat(t3->big_ptr(), 2, 3, rng);
        if (rank(m) != 2)
            continue;
        const RankMetricCode c(t3, m);
        if (!c.nondegenerate())
            continue;
        ++codes;
        const auto a = min_rank_distance(c, DistanceMethod::codeword);
        const auto h = min_rank_distance(c, DistanceMethod::hyperplane);
        agree += a.distance == h.distance;
    }
    out.require(agree == 20, "codeword and hyperplane distances agree");
    out.detail << "d=" << cw.distance << " over " << cw.scanned << " codewords; " << agree << "/20 random codes agree";
}

void enumeration(Outcome& out)
{
    int pairs = 0;
    for (std::uint64_t q : {2u, 3u}) {
        const auto f = std::make_shared<const Field>(Field::prime(static_cast<std::uint32_t>(q)));
        for (std::size_t n = 0; n <= 6; ++n)
            for (std::size_t d = 0; d <= n; ++d) {
                std::uint64_t walked = 0;
                for (SubspaceEnumerator it(f, n, d); it.valid(); it.advance())
                    ++walked;
                out.require(walked == oracle::gaussian(q, n, d),
                            "[" + std::to_string(n) + "," + std::to_string(d) + "]_" + std::to_string(q));
                ++pairs;
            }
    }
    out.require(oracle::gaussian(2, 3, 2) == 7 && oracle::gaussian(2, 4, 2) == 35, "reference values");
    out.detail << pairs << " (q, N, d) triples";
}

}  // namespace

int main()
{
    run(1, "pair boundary at m = 3 / m = 4", kUnderASecond, boundary);
    run(2, "coprime pseudoregulus sums are evasive", kSeconds, coprime_construction);
    run(3, "triple equivalence on U_{1,2}+U_{1,3}", kUnderAMinute, triple_equivalence);
    run(4, "cyclic flats of uniform and summed", kSeconds, cyclic_flats);
    run(5, "rank axioms of direct sums on F_2^4", kSeconds, axioms);
    run(6, "necessary bound vs exhaustive refutation", kUnderAMinute, fast_reject);
    run(7, "polynomial and modular pair witnesses", kSeconds, rank_one_witnesses);
    run(8, "randomized search q = 2, m = 7, (3,3)", kMinutes, random_search);
    run(9, "MRD sanity and distance methods", kSeconds, mrd);
    run(10, "enumeration counts", kSeconds, enumeration);
    std::printf("%s: %d failing\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
