// qmr: command line front end. Every verdict-producing command builds a job
// (command + JSON inputs), runs it, prints a summary and optionally writes a
// certificate that `qmr verify-cert` can replay.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qmr/certificate.hpp"
#include "qmr/errors.hpp"

namespace {

using qmr::Json;

constexpr int kExitVerdict = 0;
constexpr int kExitFailure = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep))
        if (!item.empty())
            out.push_back(item);
    return out;
}

std::uint64_t parse_uint(const std::string& s, const std::string& what)
{
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty() || s[0] == '-')
        throw qmr::InvalidInput("cannot read '" + s + "' in " + what);
    return v;
}

/// "n1:k1:m1,n2:k2:m2" (the m part may be absent).
Json parse_blocks(const std::string& text)
{
    Json out = Json::array();
    for (const auto& item : split(text, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() < 2 || parts.size() > 3)
            throw qmr::InvalidInput("block '" + item + "' is not of the form n:k:m");
        Json b{{"n", parse_uint(parts[0], "--blocks")}, {"k", parse_uint(parts[1], "--blocks")}};
        if (parts.size() == 3)
            b["m"] = parse_uint(parts[2], "--blocks");
        out.push_back(b);
    }
    if (out.empty())
        throw qmr::InvalidInput("--blocks is empty");
    return out;
}

/// "1,0,1;0,1,1".
Json parse_vectors(const std::string& text)
{
    Json out = Json::array();
    for (const auto& row : split(text, ';')) {
        Json r = Json::array();
        for (const auto& x : split(row, ','))
            r.push_back(parse_uint(x, "--vectors"));
        out.push_back(r);
    }
    return out;
}

struct FieldFlags {
    std::optional<std::uint64_t> q, p, h, m;

    void add(CLI::App* app)
    {
        app->add_option("--q", q, "size of the base field F_q");
        app->add_option("--p", p, "characteristic (with --h instead of --q)");
        app->add_option("--h", h, "q = p^h");
        app->add_option("--m", m, "extension degree of F_{q^m} over F_q");
    }

    void into(Json& j) const
    {
        if (q)
            j["q"] = *q;
        if (p)
            j["p"] = *p;
        if (h)
            j["h"] = *h;
        if (m)
            j["m"] = *m;
    }

    std::uint64_t q_value() const
    {
        if (q)
            return *q;
        if (p) {
            std::uint64_t v = 1;
            for (std::uint64_t i = 0; i < h.value_or(1); ++i)
                v *= *p;
            return v;
        }
        throw qmr::InvalidInput("give --q (or --p and --h)");
    }
};

struct ConstructionFlags {
    std::string type = "pseudoregulus_sum";
    std::string blocks;
    std::optional<std::uint64_t> n1, n2, r, xi;

    void add(CLI::App* app)
    {
        app->add_option("--type", type, "pseudoregulus_sum | polynomial_pair | subfield_xi_pair | modular_pair")
            ->capture_default_str();
        app->add_option("--blocks", blocks, "n1:k1:m1,n2:k2:m2,... for pseudoregulus_sum");
        app->add_option("--n1", n1, "dimension of the first pair member");
        app->add_option("--n2", n2, "dimension of the second pair member");
        app->add_option("--r", r, "subfield degree (subfield_xi_pair) or m = p^r (modular_pair)");
        app->add_option("--xi", xi, "code of ξ for subfield_xi_pair");
    }

    Json build(const FieldFlags& f) const
    {
        Json c{{"type", type}};
        if (type == "pseudoregulus_sum") {
            if (blocks.empty())
                throw qmr::InvalidInput("pseudoregulus_sum needs --blocks");
            c["q"] = f.q_value();
            c["blocks"] = parse_blocks(blocks);
        } else if (type == "modular_pair") {
            if (!f.p)
                throw qmr::InvalidInput("modular_pair needs --p (and --h)");
            c["p"] = *f.p;
            c["h"] = f.h.value_or(1);
        } else {
            c["q"] = f.q_value();
            if (!f.m)
                throw qmr::InvalidInput(type + " needs --m");
            c["m"] = *f.m;
        }
        if (n1)
            c["n1"] = *n1;
        if (n2)
            c["n2"] = *n2;
        if (r)
            c["r"] = *r;
        if (xi)
            c["xi"] = *xi;
        return c;
    }
};

struct OracleFlags {
    std::string kind = "uniform";
    std::optional<std::uint64_t> k, n;
    std::string summands;

    void add(CLI::App* app)
    {
        app->add_option("--oracle", kind, "uniform | direct-sum | system")->capture_default_str();
        app->add_option("--k", k, "rank of U_{k,n}(q)");
        app->add_option("--n", n, "ground dimension of U_{k,n}(q)");
        app->add_option("--summands", summands, "n1:k1,n2:k2,... for direct-sum");
    }

    Json build(const FieldFlags& f, const ConstructionFlags& c) const
    {
        if (kind == "uniform") {
            if (!k || !n)
                throw qmr::InvalidInput("uniform oracle needs --k and --n");
            return Json{{"kind", "uniform"}, {"q", f.q_value()}, {"k", *k}, {"n", *n}};
        }
        if (kind == "direct-sum") {
            if (summands.empty())
                throw qmr::InvalidInput("direct-sum oracle needs --summands");
            return Json{{"kind", "direct_sum"}, {"q", f.q_value()}, {"summands", parse_blocks(summands)}};
        }
        if (kind == "system")
            return Json{{"kind", "system"}, {"construction", c.build(f)}};
        throw qmr::InvalidInput("unknown oracle '" + kind + "'");
    }
};

void print_json_summary(const Json& j, int indent, std::ostream& out)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto& [key, value] : j.items()) {
        if (key == "basis" || key == "annihilator" || key == "modulus")
            continue;
        if (value.is_object()) {
            out << pad << key << ":\n";
            print_json_summary(value, indent + 2, out);
        } else if (value.is_array()) {
            const bool scalars = std::all_of(value.begin(), value.end(), [](const Json& v) { return v.is_primitive(); });
            if (scalars && value.size() <= 16)
                out << pad << key << ": " << value.dump() << "\n";
            else if (value.size() <= 16 && !scalars) {
                out << pad << key << ": [" << value.size() << "]\n";
                for (std::size_t i = 0; i < value.size(); ++i) {
                    out << pad << "  - #" << i << "\n";
                    if (value[i].is_object())
                        print_json_summary(value[i], indent + 4, out);
                }
            } else {
                out << pad << key << ": [" << value.size() << " entries]\n";
            }
        } else if (!value.is_null()) {
            out << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
    }
}

int run(const std::string& command, const Json& inputs, const std::string& json_path, unsigned workers,
        const std::vector<std::string>& argv)
{
    const auto start = std::chrono::steady_clock::now();
    const Json result = qmr::run_job(command, inputs, qmr::JobOptions{workers});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "== " << command << "\n";
    print_json_summary(result, 0, std::cout);
    if (!json_path.empty()) {
        std::ofstream f(json_path);
        if (!f)
            throw qmr::InvalidInput("cannot write " + json_path);
        f << qmr::make_certificate(command, inputs, result, argv, seconds).dump(2) << "\n";
        std::cout << "certificate written to " << json_path << "\n";
    }
    return kExitVerdict;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"q-matroids, evasive q-systems and direct sums of uniform q-matroids"};
    // --h is the exponent in q = p^h, so help is long-form only.
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);
    unsigned workers = 1;
    std::string json_path;
    app.add_option("--workers", workers, "worker threads for partitioned scans")->capture_default_str();
    app.add_option("--json", json_path, "write a certificate to this file");

    FieldFlags field;
    ConstructionFlags construction;
    OracleFlags oracle;
    std::uint64_t seed = 1, budget = std::uint64_t{1} << 24, samples = 1000, trials = 100000;
    bool exhaustive = false, random = false, no_reduce = false, no_witness = false;
    std::optional<std::uint64_t> h_level, bound;
    std::string family = "lambda_k", method = "automatic", vectors, cert_path, name;

    auto* c_field = app.add_subcommand("field", "describe the field tower F_p ⊆ F_q ⊆ F_{q^m}");
    field.add(c_field);

    auto* c_construct = app.add_subcommand("construct", "build a q-system or rank-one pair");
    field.add(c_construct);
    construction.add(c_construct);

    auto* c_rank = app.add_subcommand("rank", "rank of a subspace under a q-matroid");
    field.add(c_rank);
    oracle.add(c_rank);
    construction.add(c_rank);
    c_rank->add_option("--vectors", vectors, "spanning vectors over F_q, e.g. 1,0,1;0,1,1");

    auto* c_flats = app.add_subcommand("cyclic-flats", "cyclic flats and derived families of a q-matroid");
    field.add(c_flats);
    oracle.add(c_flats);
    construction.add(c_flats);
    c_flats->add_option("--budget", budget, "largest subspace lattice to enumerate");

    auto* c_axioms = app.add_subcommand("axioms", "check the rank axioms");
    field.add(c_axioms);
    oracle.add(c_axioms);
    construction.add(c_axioms);

    auto* c_evasive = app.add_subcommand("evasive", "evasiveness of a constructed system");
    field.add(c_evasive);
    construction.add(c_evasive);
    c_evasive->add_option("--family", family, "lambda | lambda_k | sidon")->capture_default_str();
    c_evasive->add_option("--level", h_level, "F_{q^m}-dimension h of the family members");
    c_evasive->add_option("--bound", bound, "weight bound r (default h)");
    c_evasive->add_option("--method", method, "Sidon method: automatic | lambda-scan | ratio");

    auto* c_verify = app.add_subcommand("verify", "does the system represent the direct sum of uniform q-matroids");
    field.add(c_verify);
    construction.add(c_verify);

    auto* c_search = app.add_subcommand("search", "search rank-one pairs (A, B) for U_{1,n1} + U_{1,n2}");
    field.add(c_search);
    c_search->add_option("--n1", construction.n1, "dim A");
    c_search->add_option("--n2", construction.n2, "dim B");
    c_search->add_option("--trials", trials, "random trials")->capture_default_str();
    c_search->add_flag("--no-reduce", no_reduce, "do not reduce A up to scaling");

    auto* c_dispatch = app.add_subcommand("dispatch", "which sufficient conditions apply to U_{1,n1} + U_{1,n2}");
    field.add(c_dispatch);
    c_dispatch->add_option("--n1", construction.n1, "first height")->required();
    c_dispatch->add_option("--n2", construction.n2, "second height")->required();
    c_dispatch->add_flag("--no-witness", no_witness, "do not build witnesses");

    auto* c_cert = app.add_subcommand("verify-cert", "replay a certificate");
    c_cert->add_option("file", cert_path, "certificate JSON")->required();

    auto* c_repro = app.add_subcommand("reproduce", "run a named bundle");
    c_repro->add_option("name", name, "bundle name")->required();
    c_repro->add_option("--q", field.q, "base field for coprime-sum");
    c_repro->add_option("--blocks", construction.blocks, "blocks for coprime-sum");
    c_repro->add_option("--trials", trials, "trials for random-q2m7");

    for (auto* c : {c_axioms, c_evasive, c_search}) {
        c->add_option("--seed", seed, "random seed")->capture_default_str();
        auto* ex = c->add_flag("--exhaustive", exhaustive, "full scan (default)");
        auto* rn = c->add_flag("--random", random, "sampled or randomized mode");
        ex->excludes(rn);
    }
    for (auto* c : {c_axioms, c_evasive})
        c->add_option("--samples", samples, "samples in --random mode")->capture_default_str();
    for (auto* c : {c_evasive, c_verify, c_search, c_axioms})
        c->add_option("--budget", budget, "workload budget")->capture_default_str();
    c_repro->add_option("--seed", seed, "seed for random-q2m7");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadInput;
    }

    const std::vector<std::string> args(argv, argv + argc);
    try {
        Json in = Json::object();
        if (c_field->parsed()) {
            field.into(in);
            return run("field", in, json_path, workers, args);
        }
        if (c_construct->parsed()) {
            in["construction"] = construction.build(field);
            return run("construct", in, json_path, workers, args);
        }
        if (c_rank->parsed()) {
            in["oracle"] = oracle.build(field, construction);
            in["vectors"] = parse_vectors(vectors);
            return run("rank", in, json_path, workers, args);
        }
        if (c_flats->parsed()) {
            in["oracle"] = oracle.build(field, construction);
            in["budget"] = budget;
            return run("cyclic-flats", in, json_path, workers, args);
        }
        if (c_axioms->parsed()) {
            in["oracle"] = oracle.build(field, construction);
            in["mode"] = random ? "random" : "exhaustive";
            in["seed"] = seed;
            in["samples"] = samples;
            in["budget"] = budget;
            return run("axioms", in, json_path, workers, args);
        }
        if (c_evasive->parsed()) {
            in["construction"] = construction.build(field);
            in["family"] = family;
            in["method"] = method;
            if (h_level)
                in["h"] = *h_level;
            if (bound)
                in["bound"] = *bound;
            in["mode"] = random ? "random" : "exhaustive";
            in["seed"] = seed;
            in["samples"] = samples;
            in["budget"] = budget;
            return run("evasive", in, json_path, workers, args);
        }
        if (c_verify->parsed()) {
            in["construction"] = construction.build(field);
            in["budget"] = budget;
            return run("verify", in, json_path, workers, args);
        }
        if (c_search->parsed()) {
            if (!construction.n1 || !construction.n2)
                throw qmr::InvalidInput("search needs --n1 and --n2");
            field.into(in);
            in["n1"] = *construction.n1;
            in["n2"] = *construction.n2;
            in["mode"] = random ? "random" : "exhaustive";
            in["seed"] = seed;
            in["trials"] = trials;
            in["budget"] = budget;
            in["reduce"] = !no_reduce;
            return run("search", in, json_path, workers, args);
        }
        if (c_dispatch->parsed()) {
            if (!field.m)
                throw qmr::InvalidInput("dispatch needs --m");
            in["q"] = field.q_value();
            in["m"] = *field.m;
            in["n1"] = *construction.n1;
            in["n2"] = *construction.n2;
            in["build"] = !no_witness;
            return run("dispatch", in, json_path, workers, args);
        }
        if (c_repro->parsed()) {
            const std::string resolved = qmr::resolve_reproduce_name(name);
            if (resolved.empty()) {
                std::string names;
                for (const auto& n : qmr::reproduce_names())
                    names += " " + n;
                throw qmr::InvalidInput("unknown bundle '" + name + "'; known:" + names);
            }
            in["name"] = resolved;
            if (field.q)
                in["q"] = *field.q;
            if (!construction.blocks.empty())
                in["blocks"] = parse_blocks(construction.blocks);
            if (resolved == "random-q2m7") {
                in["seed"] = seed;
                in["trials"] = trials;
            }
            return run("reproduce", in, json_path, workers, args);
        }
        if (c_cert->parsed()) {
            std::ifstream f(cert_path);
            if (!f)
                throw qmr::InvalidInput("cannot read " + cert_path);
            Json cert;
            try {
                cert = Json::parse(f);
            } catch (const Json::parse_error& e) {
                throw qmr::InvalidInput(std::string("certificate is not valid JSON: ") + e.what());
            }
            const auto check = qmr::verify_certificate(cert, qmr::JobOptions{workers});
            for (const auto& m : check.messages)
                std::cout << m << "\n";
            std::cout << "certificate: " << (check.pass ? "pass" : "FAIL") << "\n";
            return check.pass ? kExitVerdict : kExitFailure;
        }
    } catch (const qmr::InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const Json::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const qmr::BudgetExceeded& e) {
        std::cerr << "budget refused: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
