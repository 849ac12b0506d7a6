#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "capdigits/capset.hpp"
#include "capdigits/cone.hpp"
#include "capdigits/equivalence.hpp"
#include "capdigits/progressions.hpp"
#include "capdigits/reducibility.hpp"
#include "capdigits/search.hpp"

namespace capdigits {

using Json = nlohmann::json;

// Objects serialize with sorted keys (nlohmann's default std::map) and
// arbitrary-precision numbers as decimal strings.

Json to_json(const Progression& v);
Json to_json(const ProgressionTable& t);
Json to_json(const ConstraintSystem& s);
Json to_json(const EquationClassPartition& part);
Json to_json(const DigitTrace& t);
Json to_json(const MatrixTrace& t);
Json to_json(const ConeCertificate& c);
Json to_json(const SizeEstimate& e);
Json to_json(const BoundTableRow& r);
Json to_json(const Classification& c);

/// Self-contained certificate for one representative: enough to rebuild the
/// constraint system and re-check every attached proof.
Json representative_certificate(const DigitSetPair& pair, const RepresentativeVerdict& rep);
/// A whole pair verdict: header plus one representative certificate each.
Json to_json(const PairVerdict& v);

Progression progression_from_json(const Json& j);
DigitTrace digit_trace_from_json(const Json& j);
MatrixTrace matrix_trace_from_json(const Json& j);
ConeCertificate cone_certificate_from_json(const Json& j);
PairVerdict pair_verdict_from_json(const Json& j);

struct CertificateCheck {
  bool ok = false;
  std::string message;
};

/// Verifies either a single representative certificate or a pair bundle.
/// Malformed documents fail with a message instead of throwing.
CertificateCheck verify_certificate_document(const Json& doc);

/// Compact dump with sorted keys; byte-stable for equal values.
std::string canonical_dump(const Json& j);

std::string sha256_hex(std::string_view data);

/// Writes `doc` to dir/<sha256>.json unless present and returns the hash.
std::string store_content_addressed(const std::filesystem::path& dir, const Json& doc);

/// JSON-lines report: a summary line, then one line per admissible entry and
/// per refutation, each naming its certificate by hash in `cert_dir`.
void write_search_report(std::ostream& os, const SearchReport& r, const std::filesystem::path& cert_dir);

}  // namespace capdigits
