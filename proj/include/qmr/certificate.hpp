#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmr/codes.hpp"
#include "qmr/evasive.hpp"
#include "qmr/qmatroid.hpp"
#include "qmr/verify.hpp"

namespace qmr {

using Json = nlohmann::ordered_json;

inline constexpr int kCertificateVersion = 1;

// ---- conversions ------------------------------------------------------------------

Json to_json(const FieldSpec& spec);
FieldSpec field_spec_from_json(const Json& j);

/// Entries as integer codes, row by row.
Json to_json(const Mat& m);
Mat mat_from_json(FieldPtr field, const Json& j);

Json to_json(const Subspace& s);
/// Rebuilds through Subspace::span, so a tampered basis is re-canonicalized.
Subspace subspace_from_json(FieldPtr field, const Json& j);

Json to_json(const FamilyDescriptor& d);
Json to_json(const EvasiveReport& r);
Json to_json(const CascadeReport& r);
Json to_json(const TripleCheck& t);
Json to_json(const RepresentationVerdict& v);
Json to_json(const DispatchResult& d);
Json to_json(const DistanceReport& d);
Json to_json(const AxiomReport& a);

// ---- jobs ----------------------------------------------------------------------------
// A job is a command name plus a JSON object of inputs. Every CLI command that
// computes a verdict goes through run_job, so a certificate can be replayed
// from its inputs alone.

struct JobOptions {
    unsigned workers = 1;
};

/// Commands: field, construct, rank, cyclic-flats, axioms, evasive, verify,
/// search, dispatch, reproduce.
Json run_job(const std::string& command, const Json& inputs, const JobOptions& opts = {});

/// Canonical names of the reproduce bundles, and the name a user-supplied
/// name or alias resolves to (empty if unknown).
std::vector<std::string> reproduce_names();
std::string resolve_reproduce_name(const std::string& name);

// ---- certificates --------------------------------------------------------------------

Json make_certificate(const std::string& command, const Json& inputs, const Json& result,
                      const std::vector<std::string>& argv, double seconds);

struct CertificateCheck {
    bool pass = false;
    std::vector<std::string> messages;
};

/// Replays the job from the certificate's inputs and compares results (timing
/// excluded); then re-checks every positive witness from its serialized
/// subspaces alone.
CertificateCheck verify_certificate(const Json& cert, const JobOptions& opts = {});

/// Re-checks one serialized verdict's witness without rerunning its search.
CertificateCheck recheck_witness(const Json& verdict);

}  // namespace qmr
