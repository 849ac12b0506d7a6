#include "capdigits/serialize.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <ostream>
#include <set>
#include <stdexcept>

namespace capdigits {

namespace {

const char* position_pair_name(PositionPair pp) { return pp == PositionPair::FirstSecond ? "1-2" : "1-3"; }

const char* verdict_name(Verdict v) { return v == Verdict::ReducedToEmpty ? "reduced-to-empty" : "stuck"; }

Verdict verdict_from(const std::string& s) {
  if (s == "reduced-to-empty") return Verdict::ReducedToEmpty;
  if (s == "stuck") return Verdict::Stuck;
  throw std::runtime_error("unknown verdict '" + s + "'");
}

Method method_from(const std::string& s) {
  if (s == "digit") return Method::Digit;
  if (s == "matrix") return Method::Matrix;
  if (s == "cone") return Method::Cone;
  throw std::runtime_error("unknown method '" + s + "'");
}

Json progressions_json(std::span<const Progression> rows) {
  Json out = Json::array();
  for (const auto& v : rows) out.push_back(to_json(v));
  return out;
}

std::vector<Progression> progressions_from(const Json& j) {
  std::vector<Progression> out;
  for (const auto& v : j) out.push_back(progression_from_json(v));
  return out;
}

}  // namespace

Json to_json(const Progression& v) { return Json::array({v.x, v.y, v.z}); }

Progression progression_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw std::runtime_error("a progression is a 3-element array");
  return {j.at(0).get<int>(), j.at(1).get<int>(), j.at(2).get<int>()};
}

Json to_json(const ProgressionTable& t) {
  return Json{{"p", t.equation.p},
              {"b", t.equation.b},
              {"c", t.equation.c},
              {"digits", t.pair.digits()},
              {"fixed", t.pair.fixed()},
              {"progressions", progressions_json(t.rows)}};
}

Json to_json(const ConstraintSystem& s) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < s.rows(); ++r) {
    const auto row = s.matrix.row(r);
    rows.push_back(std::vector<int>(row.begin(), row.end()));
  }
  Json labels = Json::array();
  for (const auto& l : s.row_labels) labels.push_back(Json{{"positions", position_pair_name(l.positions)}, {"digit", l.digit}});
  return Json{{"matrix", rows}, {"row_labels", labels}, {"column_labels", progressions_json(s.column_labels)}};
}

Json to_json(const EquationClassPartition& part) {
  Json classes = Json::array();
  for (const auto& cls : part.classes) {
    classes.push_back(Json{{"representative", cls.representative}, {"members", cls.members}});
  }
  return Json{{"p", part.p.value()}, {"classes", classes}};
}

Json to_json(const DigitTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    steps.push_back(Json{{"position", s.position}, {"digit", s.digit}, {"removed", progressions_json(s.removed)}});
  }
  return Json{{"steps", steps}, {"remaining", progressions_json(t.remaining)}, {"verdict", verdict_name(t.verdict)}};
}

DigitTrace digit_trace_from_json(const Json& j) {
  DigitTrace t;
  for (const auto& s : j.at("steps")) {
    t.steps.push_back({s.at("position").get<int>(), s.at("digit").get<int>(), progressions_from(s.at("removed"))});
  }
  t.remaining = progressions_from(j.at("remaining"));
  t.verdict = verdict_from(j.at("verdict").get<std::string>());
  return t;
}

Json to_json(const MatrixTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) steps.push_back(Json{{"round", s.round}, {"row", s.row}, {"columns", s.columns}});
  return Json{{"steps", steps}, {"remaining_columns", t.remaining_columns}, {"verdict", verdict_name(t.verdict)}};
}

MatrixTrace matrix_trace_from_json(const Json& j) {
  MatrixTrace t;
  for (const auto& s : j.at("steps")) {
    t.steps.push_back({s.at("round").get<std::size_t>(), s.at("row").get<std::size_t>(),
                       s.at("columns").get<std::vector<std::size_t>>()});
  }
  t.remaining_columns = j.at("remaining_columns").get<std::vector<std::size_t>>();
  t.verdict = verdict_from(j.at("verdict").get<std::string>());
  return t;
}

Json to_json(const ConeCertificate& c) {
  if (c.kind == ConeKind::Trivial) {
    Json dual = Json::array();
    for (const auto& v : c.dual) dual.push_back(v.get_str());
    return Json{{"kind", "trivial"}, {"dual", dual}};
  }
  Json witness = Json::array();
  for (const auto& v : c.witness) witness.push_back(v.get_str());
  return Json{{"kind", "nontrivial"}, {"witness", witness}};
}

ConeCertificate cone_certificate_from_json(const Json& j) {
  ConeCertificate c;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "trivial") {
    c.kind = ConeKind::Trivial;
    for (const auto& v : j.at("dual")) {
      Rational q;
      if (q.set_str(v.get<std::string>(), 10) != 0) throw std::runtime_error("bad rational in dual vector");
      q.canonicalize();
      c.dual.push_back(q);
    }
  } else if (kind == "nontrivial") {
    c.kind = ConeKind::Nontrivial;
    for (const auto& v : j.at("witness")) {
      Integer z;
      if (z.set_str(v.get<std::string>(), 10) != 0) throw std::runtime_error("bad integer in witness");
      c.witness.push_back(z);
    }
  } else {
    throw std::runtime_error("unknown certificate kind '" + kind + "'");
  }
  return c;
}

Json to_json(const SizeEstimate& e) {
  return Json{{"exact_count", e.exact_count.get_str()}, {"delta", e.delta}, {"c", e.c}, {"digits", e.digits}};
}

Json to_json(const BoundTableRow& r) {
  return Json{{"p", r.p},
              {"bose_bound", r.bose_bound},
              {"edel_bound", r.edel_bound},
              {"new_bound", r.new_bound},
              {"mu", r.mu},
              {"improvement_percent", r.improvement_percent}};
}

Json to_json(const Classification& c) {
  Json classes = Json::array();
  for (const auto& cls : c.classes) {
    classes.push_back(Json{{"id", cls.id},
                           {"canonical", cls.canonical},
                           {"members", cls.members},
                           {"fingerprint", Json{{"multiset", cls.fingerprint.multiset}, {"cycle", cls.fingerprint.cycle}}}});
  }
  return Json{{"classes", classes}, {"fingerprint_collisions", c.fingerprint_collisions}};
}

Json representative_certificate(const DigitSetPair& pair, const RepresentativeVerdict& rep) {
  Json j{{"format", "capdigits-certificate"},
         {"version", 1},
         {"p", pair.modulus()},
         {"digits", pair.digits()},
         {"fixed", pair.fixed()},
         {"b", rep.b},
         {"trivial", rep.trivial},
         {"method", to_string(rep.method)}};
  if (rep.digit) j["digit_trace"] = to_json(*rep.digit);
  if (rep.matrix) j["matrix_trace"] = to_json(*rep.matrix);
  if (rep.cone) j["cone"] = to_json(*rep.cone);
  return j;
}

Json to_json(const PairVerdict& v) {
  Json reps = Json::array();
  for (const auto& rep : v.representatives) reps.push_back(representative_certificate(v.pair, rep));
  return Json{{"format", "capdigits-bundle"},
              {"version", 1},
              {"p", v.pair.modulus()},
              {"digits", v.pair.digits()},
              {"fixed", v.pair.fixed()},
              {"admissible", v.admissible},
              {"representatives", reps}};
}

namespace {

RepresentativeVerdict representative_from_json(const Json& j) {
  RepresentativeVerdict rep;
  rep.b = j.at("b").get<int>();
  rep.trivial = j.at("trivial").get<bool>();
  rep.method = method_from(j.at("method").get<std::string>());
  if (j.contains("digit_trace")) rep.digit = digit_trace_from_json(j.at("digit_trace"));
  if (j.contains("matrix_trace")) rep.matrix = matrix_trace_from_json(j.at("matrix_trace"));
  if (j.contains("cone")) rep.cone = cone_certificate_from_json(j.at("cone"));
  return rep;
}

DigitSetPair pair_from_json(const Json& j) {
  return DigitSetPair(Prime(j.at("p").get<int>()), j.at("digits").get<DigitSet>(), j.at("fixed").get<DigitSet>());
}

}  // namespace

PairVerdict pair_verdict_from_json(const Json& j) {
  PairVerdict v{pair_from_json(j), j.at("admissible").get<bool>(), {}};
  for (const auto& rep : j.at("representatives")) v.representatives.push_back(representative_from_json(rep));
  return v;
}

CertificateCheck verify_certificate_document(const Json& doc) {
  try {
    const auto format = doc.at("format").get<std::string>();
    if (format == "capdigits-bundle") {
      const auto verdict = pair_verdict_from_json(doc);
      if (!verify_pair_verdict(verdict)) return {false, "bundle does not verify"};
      return {true, verdict.admissible ? "admissible: every representative certified"
                                       : "inadmissible: nontrivial cone witness verified"};
    }
    if (format == "capdigits-certificate") {
      const auto pair = pair_from_json(doc);
      const auto rep = representative_from_json(doc);
      if (!verify_representative(pair, rep)) return {false, "representative certificate does not verify"};
      return {true, rep.trivial ? "representative b = " + std::to_string(rep.b) + " certified trivial"
                                : "representative b = " + std::to_string(rep.b) + " has a verified nonzero witness"};
    }
    return {false, "unknown certificate format '" + format + "'"};
  } catch (const std::exception& e) {
    return {false, std::string("malformed certificate: ") + e.what()};
  }
}

std::string canonical_dump(const Json& j) { return j.dump(); }

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

std::string store_content_addressed(const std::filesystem::path& dir, const Json& doc) {
  const auto text = canonical_dump(doc);
  const auto hash = sha256_hex(text);
  std::filesystem::create_directories(dir);
  const auto path = dir / (hash + ".json");
  if (!std::filesystem::exists(path)) {
    const auto tmp = dir / (hash + ".json.tmp");
    {
      std::ofstream out(tmp, std::ios::binary);
      out << text << '\n';
      if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  }
  return hash;
}

void write_search_report(std::ostream& os, const SearchReport& r, const std::filesystem::path& cert_dir) {
  const Json summary{{"type", "summary"},
                     {"p", r.p},
                     {"max_size", r.max_size},
                     {"candidates_examined", r.candidates_examined},
                     {"maximality", r.maximality == Maximality::Proven ? "proven" : "not-attempted"},
                     {"budget_exhausted", r.budget_exhausted},
                     {"admissible_reported", r.admissible.size()},
                     {"refutations", r.refutations.size()}};
  os << canonical_dump(summary) << '\n';
  for (const auto& e : r.admissible) {
    Json methods = Json::array();
    for (const auto& rep : e.verdict.representatives) methods.push_back(Json{{"b", rep.b}, {"method", to_string(rep.method)}});
    os << canonical_dump(Json{{"type", "admissible"},
                              {"digits", e.digits},
                              {"minimal_fixed", e.minimal_fixed},
                              {"methods", methods},
                              {"certificate", store_content_addressed(cert_dir, to_json(e.verdict))}})
       << '\n';
  }
  for (const auto& ref : r.refutations) {
    const DigitSetPair pair = DigitSetPair::all_fixed(Prime(r.p), ref.digits);
    RepresentativeVerdict rep{ref.b, false, Method::Cone, std::nullopt, std::nullopt, ref.witness};
    os << canonical_dump(Json{{"type", "refutation"},
                              {"digits", ref.digits},
                              {"b", ref.b},
                              {"certificate", store_content_addressed(cert_dir, representative_certificate(pair, rep))}})
       << '\n';
  }
}

}  // namespace capdigits
