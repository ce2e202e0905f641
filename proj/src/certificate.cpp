#include "qmr/certificate.hpp"

#include "qmr/errors.hpp"

namespace qmr {

// ---- conversions ------------------------------------------------------------------

Json to_json(const FieldSpec& spec)
{
    return Json{{"p", spec.p}, {"h", spec.h}, {"m", spec.m}, {"modulus", spec.modulus}};
}

FieldSpec field_spec_from_json(const Json& j)
{
    FieldSpec spec;
    spec.p = j.at("p").get<std::uint32_t>();
    spec.h = j.at("h").get<std::uint32_t>();
    spec.m = j.at("m").get<std::uint32_t>();
    if (j.contains("modulus"))
        spec.modulus = j.at("modulus").get<std::vector<std::uint32_t>>();
    return spec;
}

Json to_json(const Mat& m)
{
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Elt e : m.row(r))
            row.push_back(e.code);
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat mat_from_json(FieldPtr field, const Json& j)
{
    if (!j.is_array())
        throw InvalidInput("matrix must be an array of rows");
    const std::size_t cols = j.empty() ? 0 : j.at(0).size();
    Mat out(field, 0, cols);
    for (const auto& row : j) {
        if (row.size() != cols)
            throw InvalidInput("matrix rows have different lengths");
        std::vector<Elt> values;
        for (const auto& v : row) {
            const Elt e{v.get<Code>()};
            if (!field->contains(e))
                throw InvalidInput("matrix entry " + std::to_string(e.code) + " is not a field element");
            values.push_back(e);
        }
        out.append_row(values);
    }
    return out;
}

Json to_json(const Subspace& s)
{
    return Json{{"ambient", s.ambient()}, {"dim", s.dim()}, {"basis", to_json(s.basis())}};
}

Subspace subspace_from_json(FieldPtr field, const Json& j)
{
    const std::size_t ambient = j.at("ambient").get<std::size_t>();
    const Json& basis = j.at("basis");
    if (basis.empty())
        return Subspace::zero(field, ambient);
    Mat m = mat_from_json(field, basis);
    if (m.cols() != ambient)
        throw InvalidInput("basis rows do not match the ambient dimension");
    Subspace s = Subspace::span(m);
    if (j.contains("dim") && j.at("dim").get<std::size_t>() != s.dim())
        throw InvalidInput("recorded dimension does not match the basis");
    return s;
}

Json to_json(const FamilyDescriptor& d)
{
    Json j{{"kind", to_string(d.kind)}, {"k", d.k}, {"h", d.h}};
    if (!d.kvec.empty())
        j["kvec"] = d.kvec;
    return j;
}

Json to_json(const EvasiveReport& r)
{
    Json j{{"verdict", r.verdict},
           {"family", to_json(r.family)},
           {"bound", r.bound},
           {"scanned", r.scanned},
           {"max_weight_seen", r.max_weight_seen},
           {"exhaustive", r.exhaustive},
           {"method", r.method}};
    if (r.witness) {
        j["witness"] = Json{{"index", r.witness->index},
                            {"weight", r.witness->weight},
                            {"annihilator", to_json(r.witness->annihilator)},
                            {"member", to_json(r.witness->member)}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json to_json(const CascadeReport& r)
{
    Json levels = Json::array();
    for (const auto& l : r.levels)
        levels.push_back(to_json(l));
    Json j{{"holds", r.holds}, {"levels", levels}};
    j["failing_level"] = r.failing_level ? Json(*r.failing_level) : Json(nullptr);
    return j;
}

Json to_json(const TripleCheck& t)
{
    Json j{{"ran", t.ran},
           {"cond1", t.cond1},
           {"cond2", t.cond2},
           {"cond3", t.cond3},
           {"agree", t.agree},
           {"subspaces_checked", t.subspaces_checked}};
    j["cond1_witness"] = t.cond1_witness ? to_json(*t.cond1_witness) : Json(nullptr);
    j["cond2_witness"] = t.cond2_witness ? to_json(*t.cond2_witness) : Json(nullptr);
    return j;
}

Json to_json(const RepresentationVerdict& v)
{
    Json j{{"status", to_string(v.status)}};
    j["field"] = v.tower ? to_json(v.tower->spec()) : Json(nullptr);
    j["q"] = v.q;
    j["m"] = v.m;
    j["kvec"] = v.kvec;
    j["nvec"] = v.nvec;
    j["construction"] = v.construction;
    Json blocks = Json::array();
    for (const auto& b : v.witness_blocks)
        blocks.push_back(to_json(b));
    j["witness_blocks"] = blocks;
    Json evidence = Json::array();
    for (const auto& e : v.evidence)
        evidence.push_back(to_json(e));
    j["evidence"] = evidence;
    j["triple"] = v.triple ? to_json(*v.triple) : Json(nullptr);
    j["cascade"] = v.cascade ? to_json(*v.cascade) : Json(nullptr);
    j["pairs_checked"] = v.pairs_checked;
    j["pairs_covered"] = v.pairs_covered;
    j["note"] = v.note;
    return j;
}

Json to_json(const DispatchResult& d)
{
    Json j{{"status", to_string(d.status)}, {"q", d.q}, {"m", d.m}, {"n1", d.n1}, {"n2", d.n2}};
    j["field"] = d.tower ? to_json(d.tower->spec()) : Json(nullptr);
    Json clauses = Json::array();
    for (const auto& c : d.clauses) {
        Json cj{{"clause", c.clause}, {"detail", c.detail}, {"built", c.built}};
        cj["witness"] = c.witness ? Json{{"a", to_json(c.witness->a)}, {"b", to_json(c.witness->b)}} : Json(nullptr);
        cj["xi"] = c.xi ? Json(c.xi->code) : Json(nullptr);
        cj["evidence"] = c.evidence ? to_json(*c.evidence) : Json(nullptr);
        clauses.push_back(std::move(cj));
    }
    j["clauses"] = clauses;
    j["note"] = d.note;
    return j;
}

Json to_json(const DistanceReport& d)
{
    Json w = Json::array();
    for (Elt e : d.witness)
        w.push_back(e.code);
    return Json{{"distance", d.distance},
                {"method", to_string(d.method)},
                {"witness", w},
                {"witness_weight", d.witness_weight},
                {"scanned", d.scanned}};
}

Json to_json(const AxiomReport& a)
{
    Json j{{"pass", a.pass},
           {"axiom", a.axiom},
           {"detail", a.detail},
           {"subspaces_checked", a.subspaces_checked},
           {"pairs_checked", a.pairs_checked},
           {"exhaustive", a.exhaustive}};
    j["a"] = a.a ? to_json(*a.a) : Json(nullptr);
    j["b"] = a.b ? to_json(*a.b) : Json(nullptr);
    return j;
}

// ---- certificates --------------------------------------------------------------------

Json make_certificate(const std::string& command, const Json& inputs, const Json& result,
                      const std::vector<std::string>& argv, double seconds)
{
    return Json{{"format", "qmrep-certificate"},
                {"version", kCertificateVersion},
                {"command", command},
                {"argv", argv},
                {"inputs", inputs},
                {"result", result},
                {"timing", Json{{"seconds", seconds}}}};
}

namespace {

void collect_witnesses(const Json& j, std::vector<const Json*>& out)
{
    if (j.is_object()) {
        if (j.contains("status") && j["status"] == "representable_with_witness" && j.contains("witness_blocks") &&
            !j["witness_blocks"].empty())
            out.push_back(&j);
        for (const auto& [key, value] : j.items())
            collect_witnesses(value, out);
    } else if (j.is_array()) {
        for (const auto& v : j)
            collect_witnesses(v, out);
    }
}

}  // namespace

CertificateCheck recheck_witness(const Json& verdict)
{
    CertificateCheck out;
    const TowerPtr tower = FieldTower::create(field_spec_from_json(verdict.at("field")));
    const auto kvec = verdict.at("kvec").get<std::vector<std::size_t>>();
    std::vector<Subspace> spaces;
    for (const auto& b : verdict.at("witness_blocks"))
        spaces.push_back(subspace_from_json(tower->small_ptr(), b));
    if (spaces.size() != kvec.size())
        throw InvalidInput("witness has " + std::to_string(spaces.size()) + " blocks for " +
                           std::to_string(kvec.size()) + " block sizes");

    if (kvec == std::vector<std::size_t>{1, 1}) {
        const FieldPair pair{spaces[0], spaces[1]};
        const auto scan = sidon_pair_check(*tower, pair.a, pair.b, SidonMethod::lambda_scan);
        const auto ratio = sidon_pair_check(*tower, pair.a, pair.b, SidonMethod::ratio);
        out.pass = scan.verdict && ratio.verdict;
        out.messages.push_back(std::string("pair witness: lambda scan ") + (scan.verdict ? "passes" : "fails") +
                               ", ratio count " + (ratio.verdict ? "passes" : "fails"));
        const auto family = lambda_hk_family(tower, {1, 1}, 1);
        if (family.raw_count() <= (std::uint64_t{1} << 20)) {
            const auto direct = is_evasive(pair_system(tower, pair.a, pair.b), family, 1);
            out.pass = out.pass && direct.verdict;
            out.messages.push_back(std::string("pair witness: direct Λ scan ") + (direct.verdict ? "passes" : "fails"));
        }
        return out;
    }

    std::vector<QSystem> blocks;
    for (std::size_t i = 0; i < spaces.size(); ++i)
        blocks.push_back(make_system(tower, kvec[i], spaces[i]));
    const auto v = verify_uniform_sum_representation(blocks);
    out.pass = v.status == RepStatus::representable_with_witness;
    out.messages.push_back("block witness: " + to_string(v.status));
    return out;
}

CertificateCheck verify_certificate(const Json& cert, const JobOptions& opts)
{
    CertificateCheck out;
    if (cert.value("format", "") != "qmrep-certificate")
        throw InvalidInput("not a certificate");
    if (cert.value("version", 0) != kCertificateVersion)
        throw InvalidInput("unsupported certificate version " + std::to_string(cert.value("version", 0)));
    const std::string command = cert.at("command").get<std::string>();
    const Json replay = run_job(command, cert.at("inputs"), opts);
    const bool same = replay == cert.at("result");
    out.messages.push_back(same ? "replay: result identical" : "replay: result differs");
    out.pass = same;

    std::vector<const Json*> witnesses;
    collect_witnesses(cert.at("result"), witnesses);
    for (const Json* w : witnesses) {
        const auto sub = recheck_witness(*w);
        out.pass = out.pass && sub.pass;
        out.messages.insert(out.messages.end(), sub.messages.begin(), sub.messages.end());
    }
    return out;
}

}  // namespace qmr
