#include <algorithm>
#include <map>

#include "qmr/certificate.hpp"
#include "qmr/errors.hpp"

namespace qmr {

namespace {

template <class T>
T get_or(const Json& in, const char* key, T fallback)
{
    return in.contains(key) && !in.at(key).is_null() ? in.at(key).get<T>() : fallback;
}

template <class T>
T require(const Json& in, const char* key)
{
    if (!in.contains(key) || in.at(key).is_null())
        throw InvalidInput(std::string("missing input '") + key + "'");
    return in.at(key).get<T>();
}

TowerPtr tower_from_inputs(const Json& in)
{
    if (in.contains("field") && in.at("field").is_object())
        return FieldTower::create(field_spec_from_json(in.at("field")));
    const auto m = get_or<std::uint32_t>(in, "m", 1);
    if (in.contains("q") && !in.at("q").is_null())
        return tower_for(in.at("q").get<std::uint64_t>(), m);
    if (in.contains("p") && !in.at("p").is_null())
        return FieldTower::create(in.at("p").get<std::uint32_t>(), get_or<std::uint32_t>(in, "h", 1), m);
    throw InvalidInput("field parameters missing: give q (or p and h) and m");
}

std::vector<BlockSpec> blocks_from_json(const Json& j)
{
    std::vector<BlockSpec> out;
    for (const auto& b : j)
        out.push_back({b.at("n").get<std::size_t>(), b.at("k").get<std::size_t>(), b.at("m").get<std::uint32_t>()});
    return out;
}

Json blocks_to_json(const std::vector<BlockSpec>& specs)
{
    Json out = Json::array();
    for (const auto& s : specs)
        out.push_back(Json{{"n", s.n}, {"k", s.k}, {"m", s.m}});
    return out;
}

/// A constructed system, from a descriptor {type: ..., ...}.
struct Built {
    TowerPtr tower;
    std::vector<QSystem> blocks;
    std::vector<std::size_t> kvec;
    std::optional<FieldPair> pair;
    Json extra = Json::object();

    QSystem system() const { return direct_sum_system(blocks); }
};

Built build(const Json& c)
{
    const std::string type = require<std::string>(c, "type");
    Built out;
    if (type == "pseudoregulus_sum") {
        auto sum = coprime_pseudoregulus_sum(require<std::uint64_t>(c, "q"), blocks_from_json(c.at("blocks")));
        out.tower = sum.tower;
        out.blocks = sum.blocks;
        out.kvec = sum.kvec;
        return out;
    }
    if (type == "polynomial_pair") {
        out.tower = tower_for(require<std::uint64_t>(c, "q"), require<std::uint32_t>(c, "m"));
        out.pair = polynomial_pair(*out.tower, require<std::size_t>(c, "n1"), require<std::size_t>(c, "n2"));
    } else if (type == "subfield_xi_pair") {
        out.tower = tower_for(require<std::uint64_t>(c, "q"), require<std::uint32_t>(c, "m"));
        const Elt xi = c.contains("xi") ? Elt{c.at("xi").get<Code>()} : out.tower->primitive_generator();
        if (!out.tower->big().contains(xi))
            throw InvalidInput("ξ is not an element of F_{q^m}");
        out.pair = subfield_xi_pair(*out.tower, require<std::uint32_t>(c, "r"), xi);
        out.extra["xi"] = xi.code;
    } else if (type == "modular_pair") {
        auto mp = modular_pair(require<std::uint32_t>(c, "p"), get_or<std::uint32_t>(c, "h", 1),
                               require<std::uint32_t>(c, "r"), require<std::size_t>(c, "n1"),
                               require<std::size_t>(c, "n2"));
        out.tower = mp.tower;
        out.pair = mp.pair;
        out.extra = Json{{"xi", mp.xi.code},
                         {"xi_trials", mp.xi_trials},
                         {"dim_F_n1", mp.dim_f1},
                         {"dim_F_n2", mp.dim_f2},
                         {"dim_F_n1+n2-1", mp.dim_fl}};
    } else if (type == "pair") {
        out.tower = FieldTower::create(field_spec_from_json(c.at("field")));
        out.pair = FieldPair{subspace_from_json(out.tower->small_ptr(), c.at("a")),
                             subspace_from_json(out.tower->small_ptr(), c.at("b"))};
    } else {
        throw InvalidInput("unknown construction type '" + type + "'");
    }
    out.blocks = {make_system(out.tower, 1, out.pair->a), make_system(out.tower, 1, out.pair->b)};
    out.kvec = {1, 1};
    return out;
}


Json construction_result(const Built& b)
{
    Json j{{"field", to_json(b.tower->spec())}, {"kvec", b.kvec}};
    Json nvec = Json::array(), blocks = Json::array();
    for (const auto& s : b.blocks) {
        nvec.push_back(s.n());
        blocks.push_back(to_json(s.space));
    }
    j["nvec"] = nvec;
    j["blocks"] = blocks;
    j["system"] = to_json(b.system().space);
    if (b.pair)
        j["pair"] = Json{{"a", to_json(b.pair->a)}, {"b", to_json(b.pair->b)}};
    for (const auto& [key, value] : b.extra.items())
        j[key] = value;
    return j;
}

FieldPtr small_field(std::uint64_t q)
{
    return tower_for(q, 1)->small_ptr();
}

OraclePtr oracle_from_json(const Json& o)
{
    const std::string kind = require<std::string>(o, "kind");
    if (kind == "uniform")
        return uniform_oracle(small_field(require<std::uint64_t>(o, "q")), require<std::size_t>(o, "k"),
                              require<std::size_t>(o, "n"));
    if (kind == "direct_sum") {
        const FieldPtr fq = small_field(require<std::uint64_t>(o, "q"));
        std::vector<OraclePtr> parts;
        for (const auto& s : o.at("summands"))
            parts.push_back(uniform_oracle(fq, s.at("k").get<std::size_t>(), s.at("n").get<std::size_t>()));
        if (parts.size() == 1)
            return parts.front();
        return direct_sum_oracle(parts);
    }
    if (kind == "system") {
        const Built b = build(o.at("construction"));
        const QSystem s = b.system();
        return pullback_oracle(span_rank_oracle(b.tower, s.k), s.space.basis());
    }
    throw InvalidInput("unknown oracle kind '" + kind + "'");
}

Json job_field(const Json& in)
{
    const TowerPtr t = tower_from_inputs(in);
    Json divisors = Json::array();
    for (std::uint32_t r = 1; r <= t->m(); ++r)
        if (t->m() % r == 0)
            divisors.push_back(r);
    return Json{{"field", to_json(t->spec())},
                {"q", t->q()},
                {"order", t->big().order()},
                {"gamma", t->primitive_generator().code},
                {"subfield_degrees", divisors},
                {"describe", t->big().describe()}};
}

Json job_rank(const Json& in)
{
    const OraclePtr o = oracle_from_json(in.at("oracle"));
    const auto vectors = in.value("vectors", std::vector<std::vector<Code>>{});
    Mat rows(o->field(), 0, o->ground_dim());
    for (const auto& v : vectors) {
        if (v.size() != o->ground_dim())
            throw InvalidInput("vector length does not match the ground space F_q^" + std::to_string(o->ground_dim()));
        std::vector<Elt> e;
        for (Code c : v) {
            if (!o->field()->contains(Elt{c}))
                throw InvalidInput("entry " + std::to_string(c) + " is not an element of F_q");
            e.push_back(Elt{c});
        }
        rows.append_row(e);
    }
    const Subspace v = rows.empty() ? Subspace::zero(o->field(), o->ground_dim()) : Subspace::span(rows);
    return Json{{"oracle", o->describe()}, {"subspace", to_json(v)}, {"dim", v.dim()}, {"rank", o->rank(v)}};
}

Json job_cyclic_flats(const Json& in)
{
    const OraclePtr o = oracle_from_json(in.at("oracle"));
    const auto fam = derived_families(*o, get_or<std::uint64_t>(in, "budget", 1u << 14));
    Json flats = Json::array();
    for (const auto& c : fam.cyclic_flats)
        flats.push_back(Json{{"rank", c.rank}, {"flat", to_json(c.flat)}});
    return Json{{"oracle", o->describe()},
                {"lattice", fam.lattice.size()},
                {"independent", fam.independents.size()},
                {"circuits", fam.circuits.size()},
                {"flats", fam.flats.size()},
                {"open", fam.opens.size()},
                {"cyclic_flats", flats}};
}

Json job_axioms(const Json& in)
{
    const OraclePtr o = oracle_from_json(in.at("oracle"));
    Json j;
    if (get_or<std::string>(in, "mode", "exhaustive") == "random")
        j = to_json(check_axioms_sampled(*o, get_or<std::uint64_t>(in, "seed", 1),
                                         get_or<std::uint64_t>(in, "samples", 10000)));
    else
        j = to_json(check_axioms(*o, get_or<std::uint64_t>(in, "budget", 1u << 14)));
    j["oracle"] = o->describe();
    return j;
}

Json job_evasive(const Json& in, const JobOptions& opts)
{
    const Built b = build(in.at("construction"));
    const std::string family = get_or<std::string>(in, "family", "lambda_k");
    EvasiveReport r;
    if (family == "sidon") {
        if (!b.pair)
            throw InvalidInput("the Sidon check needs a rank-one pair construction");
        const std::string method = get_or<std::string>(in, "method", "automatic");
        const SidonMethod sm = method == "ratio"         ? SidonMethod::ratio
                               : method == "lambda-scan" ? SidonMethod::lambda_scan
                                                         : SidonMethod::automatic;
        r = sidon_pair_check(*b.tower, b.pair->a, b.pair->b, sm, opts.workers);
    } else {
        const QSystem s = b.system();
        std::optional<LambdaFamily> fam;
        if (family == "lambda")
            fam.emplace(lambda_family(b.tower, s.k, get_or<std::size_t>(in, "h", 1)));
        else if (family == "lambda_k")
            fam.emplace(lambda_hk_family(b.tower, b.kvec, get_or<std::size_t>(in, "h", s.k - 1)));
        else
            throw InvalidInput("unknown family '" + family + "'");
        const std::size_t bound = get_or<std::size_t>(in, "bound", fam->h());
        if (get_or<std::string>(in, "mode", "exhaustive") == "random") {
            r = is_evasive_sampled(s, *fam, bound, get_or<std::uint64_t>(in, "seed", 1),
                                   get_or<std::uint64_t>(in, "samples", 1000));
        } else {
            ScanOptions so;
            so.workers = opts.workers;
            so.budget = get_or<std::uint64_t>(in, "budget", so.budget);
            r = is_evasive(s, *fam, bound, so);
        }
    }
    Json j = to_json(r);
    j["field"] = to_json(b.tower->spec());
    return j;
}

Json job_verify(const Json& in, const JobOptions& opts)
{
    const Built b = build(in.at("construction"));
    VerifyOptions vo;
    vo.scan.workers = opts.workers;
    vo.scan.budget = get_or<std::uint64_t>(in, "budget", vo.scan.budget);
    auto v = verify_uniform_sum_representation(b.blocks, vo);
    v.construction = in.at("construction").at("type").get<std::string>();
    return to_json(v);
}

Json job_search(const Json& in, const JobOptions& opts)
{
    const TowerPtr t = tower_from_inputs(in);
    const auto n1 = require<std::size_t>(in, "n1");
    const auto n2 = require<std::size_t>(in, "n2");
    if (get_or<std::string>(in, "mode", "exhaustive") == "random") {
        const auto res = randomized_pair_search(t, n1, n2, get_or<std::uint64_t>(in, "seed", 1),
                                                get_or<std::uint64_t>(in, "trials", 100000));
        Json j = to_json(res.verdict);
        j["trials"] = res.trials;
        j["transcript"] = res.transcript;
        return j;
    }
    PairSearchOptions po;
    po.workers = opts.workers;
    po.budget = get_or<std::uint64_t>(in, "budget", po.budget);
    po.reduce_orbits = get_or<bool>(in, "reduce", true);
    return to_json(exhaustive_pair_search(t, n1, n2, po));
}

Json job_dispatch(const Json& in)
{
    DispatchOptions d;
    d.build_witnesses = get_or<bool>(in, "build", true);
    return to_json(dispatch_theorem_summary(require<std::uint64_t>(in, "q"), require<std::size_t>(in, "n1"),
                                            require<std::size_t>(in, "n2"), require<std::uint32_t>(in, "m"), d));
}

// ---- reproduce bundles ---------------------------------------------------------------

struct Bundle {
    const char* name;
    const char* alias;
    const char* summary;
};

// The aliases are the artifact names the command line contract fixes.
constexpr Bundle kBundles[] = {
    {"boundary-m4", "example-1.12", "U_{1,2}(2)+U_{1,2}(2) over F_{2^m}: refuted at m=3, witnessed at m=4"},
    {"coprime-sum", "theorem-3.1", "pseudoregulus blocks over coprime subfields, verified"},
    {"necessary-bound", "corollary-4.2-reject", "m >= 2 max n_i against exhaustive refutation"},
    {"random-q2m7", "remark-magma-q2m7", "randomized search for heights (3,3) over F_{2^7}"},
    {"modular-pair", "corollary-4.9", "kernel-based pair over F_{2^8}, heights (3,2)"},
};

Json reproduce(const Json& in, const JobOptions& opts)
{
    const std::string name = resolve_reproduce_name(require<std::string>(in, "name"));
    if (name.empty())
        throw InvalidInput("unknown reproduce target '" + in.at("name").get<std::string>() + "'");
    Json out{{"name", name}};

    if (name == "boundary-m4") {
        const Json m3 = job_search(Json{{"q", 2}, {"m", 3}, {"n1", 2}, {"n2", 2}, {"reduce", false}}, opts);
        const Json m4 = job_search(Json{{"q", 2}, {"m", 4}, {"n1", 2}, {"n2", 2}}, opts);
        out["m3"] = m3;
        out["m4"] = m4;
        out["iff_holds"] = m3["status"] == "refuted_exhaustively" && m4["status"] == "representable_with_witness";
    } else if (name == "coprime-sum") {
        Json c{{"type", "pseudoregulus_sum"}, {"q", get_or<std::uint64_t>(in, "q", 2)}};
        c["blocks"] = in.contains("blocks") ? in.at("blocks") : blocks_to_json({{2, 1, 2}, {3, 1, 3}});
        out["verdict"] = job_verify(Json{{"construction", c}}, opts);
    } else if (name == "necessary-bound") {
        // Rejected exactly for m < 2 max(7, 6) = 14; m = 14 is the first
        // extension degree the bound lets through.
        Json rejects = Json::array();
        bool boundary_exact = true;
        for (std::uint32_t m = 1; m <= 14; ++m) {
            const Json d = job_dispatch(Json{{"q", 2}, {"n1", 7}, {"n2", 6}, {"m", m}, {"build", false}});
            boundary_exact = boundary_exact && ((d["status"] == "necessary_condition_violated") == (m < 14));
            rejects.push_back(Json{{"m", m}, {"status", d["status"]}});
        }
        Json agreement = Json::array();
        bool consistent = true;
        for (std::size_t n1 = 2; n1 <= 3; ++n1)
            for (std::size_t n2 = 2; n2 <= 3; ++n2)
                for (std::uint32_t m = std::max(n1, n2); m <= 4; ++m) {
                    const bool violated =
                        necessary_condition_rank1({n1, n2}, m).result == NecessaryCheck::Result::violation;
                    const Json s = job_search(Json{{"q", 2}, {"m", m}, {"n1", n1}, {"n2", n2}}, opts);
                    const bool refuted = s["status"] == "refuted_exhaustively";
                    consistent = consistent && (!violated || refuted);
                    agreement.push_back(Json{{"n1", n1},
                                             {"n2", n2},
                                             {"m", m},
                                             {"necessary_violated", violated},
                                             {"search", s["status"]},
                                             {"pairs_checked", s["pairs_checked"]}});
                }
        out["m_7_6_rejections"] = rejects;
        out["boundary_exact"] = boundary_exact;
        out["agreement"] = agreement;
        out["consistent"] = consistent;
    } else if (name == "random-q2m7") {
        out["search"] = job_search(Json{{"q", 2},
                                        {"m", 7},
                                        {"n1", 3},
                                        {"n2", 3},
                                        {"mode", "random"},
                                        {"seed", get_or<std::uint64_t>(in, "seed", 7)},
                                        {"trials", get_or<std::uint64_t>(in, "trials", 100000)}},
                                   opts);
    } else if (name == "modular-pair") {
        const Built b = build(Json{{"type", "modular_pair"}, {"p", 2}, {"h", 1}, {"r", 3}, {"n1", 3}, {"n2", 2}});
        RepresentationVerdict v;
        v.tower = b.tower;
        v.q = b.tower->q();
        v.m = b.tower->m();
        v.kvec = {1, 1};
        v.nvec = {b.pair->a.dim(), b.pair->b.dim()};
        v.construction = "modular_pair";
        v.witness_blocks = {b.pair->a, b.pair->b};
        v.evidence = certify_pair(b.tower, *b.pair);
        const bool ok = std::all_of(v.evidence.begin(), v.evidence.end(), [](const auto& e) { return e.verdict; });
        v.status = ok ? RepStatus::representable_with_witness : RepStatus::unknown;
        out["construction"] = construction_result(b);
        out["verdict"] = to_json(v);
    }
    return out;
}

}  // namespace

std::vector<std::string> reproduce_names()
{
    std::vector<std::string> out;
    for (const auto& b : kBundles)
        out.emplace_back(b.name);
    return out;
}

std::string resolve_reproduce_name(const std::string& name)
{
    for (const auto& b : kBundles)
        if (name == b.name || name == b.alias)
            return b.name;
    return {};
}

Json run_job(const std::string& command, const Json& inputs, const JobOptions& opts)
{
    if (command == "field")
        return job_field(inputs);
    if (command == "construct")
        return construction_result(build(inputs.at("construction")));
    if (command == "rank")
        return job_rank(inputs);
    if (command == "cyclic-flats")
        return job_cyclic_flats(inputs);
    if (command == "axioms")
        return job_axioms(inputs);
    if (command == "evasive")
        return job_evasive(inputs, opts);
    if (command == "verify")
        return job_verify(inputs, opts);
    if (command == "search")
        return job_search(inputs, opts);
    if (command == "dispatch")
        return job_dispatch(inputs);
    if (command == "reproduce")
        return reproduce(inputs, opts);
    throw InvalidInput("unknown command '" + command + "'");
}

}  // namespace qmr
