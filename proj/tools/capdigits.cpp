#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "capdigits/capset.hpp"
#include "capdigits/equivalence.hpp"
#include "capdigits/progressions.hpp"
#include "capdigits/reducibility.hpp"
#include "capdigits/search.hpp"
#include "capdigits/serialize.hpp"

namespace fs = std::filesystem;
using namespace capdigits;

namespace {

enum Exit : int { kOk = 0, kNegative = 1, kUsage = 2, kBudget = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "text";
  std::string out;
  unsigned workers = 1;

  bool json() const { return format == "json"; }

  fs::path out_dir() const {
    if (!out.empty()) return out;
    if (const char* env = std::getenv("CAPDIGITS_OUT"); env && *env) return env;
    return "capdigits-out";
  }
};

DigitSet parse_digits(const std::string& text, int p) {
  DigitSet out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw UsageError("malformed digit '" + token + "' in '" + text + "'");
    }
    if (used != token.size()) throw UsageError("malformed digit '" + token + "' in '" + text + "'");
    if (value < 0 || value >= p) {
      throw UsageError("digit " + std::to_string(value) + " is not in Z_" + std::to_string(p));
    }
    out.push_back(value);
  }
  std::ranges::sort(out);
  if (std::ranges::adjacent_find(out) != out.end()) throw UsageError("repeated digit in '" + text + "'");
  return out;
}

Prime parse_prime(int p) {
  try {
    return Prime(p);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

DigitSetPair parse_pair(Prime p, const std::string& digits, const std::string& fixed) {
  auto d = parse_digits(digits, p.value());
  auto f = fixed.empty() ? d : parse_digits(fixed, p.value());
  try {
    return DigitSetPair(p, std::move(d), std::move(f));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string method_label(const RepresentativeVerdict& rep) {
  if (rep.method != Method::Cone) return to_string(rep.method) + " reduction";
  return rep.trivial ? "cone (trivial)" : "cone (nonzero witness)";
}

// ---- progressions

int cmd_progressions(const Common& common, int p_value, const std::string& digits, const std::string& fixed, int b) {
  const Prime p = parse_prime(p_value);
  const auto pair = parse_pair(p, digits, fixed);
  if (b < 1 || b > p.value() - 2) throw UsageError("b must lie in [1, " + std::to_string(p.value() - 2) + "]");
  const auto table = enumerate_progressions(pair, make_line_equation(p, b));
  if (common.json()) {
    print_json(to_json(table));
    return kOk;
  }
  std::cout << "Case " << describe(table.equation) << " (b = " << b << "), " << table.rows.size()
            << " non-trivial progressions:\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    std::cout << (i ? "," : "") << (i && i % 8 == 0 ? "\n" : "") << to_string(table.rows[i]);
  }
  std::cout << (table.rows.empty() ? "(none)" : ".") << '\n';
  return kOk;
}

// ---- classes

int cmd_classes(const Common& common, int p_value) {
  const Prime p = parse_prime(p_value);
  const auto part = equation_classes(p);
  if (common.json()) {
    print_json(to_json(part));
    return kOk;
  }
  for (const auto& cls : part.classes) {
    std::cout << "class of b = " << cls.representative << ":";
    for (const int b : cls.members) std::cout << "  " << describe(make_line_equation(p, b));
    std::cout << '\n';
  }
  return kOk;
}

// ---- check

int cmd_check(const Common& common, int p_value, const std::string& digits, const std::string& fixed, bool explain) {
  const Prime p = parse_prime(p_value);
  const auto pair = parse_pair(p, digits, fixed);
  const auto verdict = check_pair(pair);
  const auto dir = common.out_dir();
  const auto bundle = to_json(verdict);
  const auto hash = store_content_addressed(dir / "certs", bundle);

  Json summary{{"p", p.value()},
               {"digits", pair.digits()},
               {"fixed", pair.fixed()},
               {"admissible", verdict.admissible},
               {"bundle", (dir / "certs" / (hash + ".json")).string()}};
  Json methods = Json::array();
  for (const auto& rep : verdict.representatives) {
    methods.push_back({{"b", rep.b}, {"method", to_string(rep.method)}, {"trivial", rep.trivial}});
  }
  summary["representatives"] = methods;

  if (!verdict.admissible) {
    const auto& rep = *std::ranges::find_if(verdict.representatives, [](const auto& r) { return !r.trivial; });
    const auto table = enumerate_progressions(pair, make_line_equation(p, rep.b));
    const auto points = witness_points(table, rep.cone->witness);
    const auto path = dir / ("witness-" + hash.substr(0, 16) + ".txt");
    std::ofstream out(path);
    write_points(out, points);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    summary["witness_points"] = path.string();
    summary["witness_b"] = rep.b;
  }

  if (common.json()) {
    print_json(summary);
  } else {
    std::cout << "D = " << format_digits(pair.digits()) << ", D' = " << format_digits(pair.fixed()) << " mod "
              << p.value() << '\n';
    for (const auto& rep : verdict.representatives) {
      std::cout << "  " << describe(make_line_equation(p, rep.b)) << " (b = " << rep.b << "): " << method_label(rep)
                << '\n';
      if (explain) {
        const auto table = enumerate_progressions(pair, make_line_equation(p, rep.b));
        if (rep.method == Method::Digit) std::cout << render_digit_trace(table, *rep.digit);
        if (rep.method == Method::Matrix) std::cout << render_matrix_trace(*rep.matrix);
      }
    }
    std::cout << (verdict.admissible ? "admissible" : "inadmissible") << "; certificates: "
              << summary["bundle"].get<std::string>() << '\n';
    if (!verdict.admissible) {
      std::cout << "three collinear points of S(D, D', n): " << summary["witness_points"].get<std::string>() << '\n';
    }
  }
  return verdict.admissible ? kOk : kNegative;
}

// ---- search

struct SearchArgs {
  int p = 0;
  int start_size = 0;
  double max_seconds = 0;
  std::size_t max_candidates = 0;
  bool all = false;
  bool no_minimize = false;
  bool fresh = false;
};

int cmd_search(const Common& common, const SearchArgs& args) {
  const Prime p = parse_prime(args.p);
  const auto dir = common.out_dir();
  fs::create_directories(dir);
  const auto stem = "search-p" + std::to_string(p.value());
  const auto checkpoint = dir / (stem + ".checkpoint.jsonl");
  const auto report_path = dir / (stem + ".jsonl");
  if (args.fresh) fs::remove(checkpoint);

  SearchOptions options;
  if (args.start_size) {
    if (args.start_size < 2 || args.start_size > p.value() - 1) {
      throw UsageError("--start-size must lie in [2, " + std::to_string(p.value() - 1) + "]");
    }
    options.start_size = args.start_size;
  }
  options.max_seconds = args.max_seconds;
  options.max_candidates = args.max_candidates;
  options.workers = common.workers;
  options.checkpoint = checkpoint;
  options.minimize_fixed = !args.no_minimize;
  options.max_reported = args.all ? 0 : 1;

  const auto report = max_admissible_size(p, options);
  {
    std::ofstream out(report_path, std::ios::binary);
    write_search_report(out, report, dir / "certs");
    if (!out) throw std::runtime_error("cannot write " + report_path.string());
  }

  const bool proven = report.maximality == Maximality::Proven;
  if (common.json()) {
    print_json({{"p", report.p},
                {"max_size", report.max_size},
                {"maximality", proven ? "proven" : "not-attempted"},
                {"candidates_examined", report.candidates_examined},
                {"budget_exhausted", report.budget_exhausted},
                {"report", report_path.string()},
                {"checkpoint", checkpoint.string()}});
  } else {
    std::cout << "p = " << report.p << ": ";
    if (report.max_size >= 2) {
      std::cout << "max admissible |D| " << (proven ? "= " : ">= ") << report.max_size;
    } else {
      std::cout << "no admissible set found";
    }
    std::cout << " (" << report.candidates_examined << " candidates examined";
    if (proven) std::cout << ", " << report.refutations.size() << " refutations of size " << report.max_size + 1;
    std::cout << ")\n";
    for (const auto& e : report.admissible) {
      std::cout << "  D = " << format_digits(e.digits) << ", minimal D' = " << format_digits(e.minimal_fixed) << '\n';
    }
    if (report.budget_exhausted) std::cout << "budget exhausted; rerun to resume from " << checkpoint.string() << '\n';
    std::cout << "report: " << report_path.string() << '\n';
  }
  return report.budget_exhausted ? kBudget : kOk;
}

// ---- verify

int cmd_verify(const Common& common, int p_value, const std::string& points_file, const std::string& digits,
               const std::string& fixed, std::size_t n) {
  std::optional<PointSet> loaded;
  if (!points_file.empty()) {
    if (p_value < 2 || p_value > 255 || !is_prime(p_value)) throw UsageError("-p must be a prime below 256");
    std::ifstream in(points_file);
    if (!in) throw std::runtime_error("cannot open " + points_file);
    loaded = read_points(in, p_value);
  } else {
    if (digits.empty() || n == 0) throw UsageError("verify needs --points, or -D with -n");
    const auto pair = parse_pair(parse_prime(p_value), digits, fixed);
    try {
      loaded = build_cap(pair, n).points;
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  const PointSet& points = *loaded;
  const auto violation = verify_cap(points, common.workers);
  auto coords = [&](std::size_t i) {
    const auto pt = points[i];
    return std::vector<int>(pt.begin(), pt.end());
  };
  if (common.json()) {
    Json j{{"points", points.size()}, {"dimension", points.dimension()}, {"ok", !violation}};
    if (violation) j["violation"] = {coords(violation->first), coords(violation->second), coords(violation->third)};
    print_json(j);
  } else if (!violation) {
    std::cout << "ok: " << points.size() << " points, no three collinear\n";
  } else {
    std::cout << "violation: collinear points #" << violation->first << ", #" << violation->second << ", #"
              << violation->third << '\n';
    for (const auto i : {violation->first, violation->second, violation->third}) {
      std::cout << "  " << format_digits(coords(i)) << '\n';
    }
  }
  return violation ? kNegative : kOk;
}

// ---- table

int cmd_table(const Common& common, const std::vector<int>& primes, const std::vector<std::string>& best,
              int solve_up_to) {
  std::map<int, int> given;
  for (const auto& entry : best) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw UsageError("--best expects p=size, got '" + entry + "'");
    try {
      given[std::stoi(entry.substr(0, eq))] = std::stoi(entry.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--best expects p=size, got '" + entry + "'");
    }
  }
  Json rows = Json::array();
  std::ostringstream text;
  text << std::fixed;
  text << std::setw(4) << "p" << std::setw(12) << "p^(2/3)" << std::setw(12) << "edel" << std::setw(6) << "new"
       << std::setw(12) << "improve %" << std::setw(10) << "mu" << '\n';
  for (const int p : primes) {
    const Prime prime = parse_prime(p);
    int size = 0;
    bool proven = false;
    if (const auto it = given.find(p); it != given.end()) {
      size = it->second;
    } else if (p <= solve_up_to) {
      SearchOptions options;
      options.workers = common.workers;
      options.minimize_fixed = false;
      const auto report = max_admissible_size(prime, options);
      size = report.max_size;
      proven = report.maximality == Maximality::Proven;
    }
    const auto row = bound_table(p, size > 0 ? size : 1);
    Json j = to_json(row);
    if (size == 0) {
      j["new_bound"] = nullptr;
      j["mu"] = nullptr;
      j["improvement_percent"] = nullptr;
    }
    j["new_bound_proven_maximal"] = proven;
    rows.push_back(j);

    text << std::setw(4) << p << std::setprecision(5) << std::setw(12) << truncate_decimals(row.bose_bound, 5)
         << std::setw(12) << truncate_decimals(row.edel_bound, 5);
    if (size == 0) {
      text << std::setw(6) << "-" << '\n';
      continue;
    }
    const std::string ge = proven ? "" : ">=";
    text << std::setw(6) << (ge + std::to_string(size));
    if (row.improvement_percent > 0) {
      std::ostringstream pct;
      pct << std::fixed << std::setprecision(4) << truncate_decimals(row.improvement_percent, 4);
      text << std::setw(12) << (ge + pct.str());
    } else {
      text << std::setw(12) << "";
    }
    std::ostringstream mu;
    mu << std::fixed << std::setprecision(5) << truncate_decimals(row.mu, 5);
    text << std::setw(10) << (ge + mu.str()) << '\n';
  }
  if (common.json()) {
    print_json(rows);
  } else {
    std::cout << text.str();
  }
  return kOk;
}

// ---- classify

int cmd_classify(const Common& common, int p_value, const std::string& sets_file, const std::vector<std::string>& sets) {
  const Prime p = parse_prime(p_value);
  std::vector<DigitSet> input;
  for (const auto& s : sets) input.push_back(parse_digits(s, p.value()));
  if (!sets_file.empty()) {
    std::ifstream in(sets_file);
    if (!in) throw std::runtime_error("cannot open " + sets_file);
    std::string line;
    while (std::getline(in, line)) {
      std::ranges::replace(line, ' ', ',');
      while (!line.empty() && line.back() == ',') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      input.push_back(parse_digits(line, p.value()));
    }
  }
  if (input.empty()) throw UsageError("classify needs --set or --sets");
  const auto result = classify(input, p);
  if (common.json()) {
    print_json(to_json(result));
  } else {
    for (const auto& cls : result.classes) {
      std::cout << "class " << cls.id << " (canonical " << format_digits(cls.canonical) << ", gaps ";
      std::cout << format_digits(cls.fingerprint.multiset) << "):";
      for (const auto& m : cls.members) std::cout << ' ' << format_digits(m);
      std::cout << '\n';
    }
    if (result.fingerprint_collisions) {
      std::cout << result.fingerprint_collisions << " pair(s) share a fingerprint but are not equivalent\n";
    }
  }
  return kOk;
}

// ---- cert-verify

int cmd_cert_verify(const Common& common, const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(file + ": " + e.what());
  }
  const auto check = verify_certificate_document(doc);
  if (common.json()) {
    print_json({{"ok", check.ok}, {"message", check.message}});
  } else {
    std::cout << (check.ok ? "ok: " : "fail: ") << check.message << '\n';
  }
  return check.ok ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Digit-set caps in AG(n, p): admissibility certificates, searches and cap verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", common.out, "Output directory (default: $CAPDIGITS_OUT or ./capdigits-out)");
  app.add_option("--workers", common.workers, "Worker threads")->check(CLI::Range(1u, 1024u));

  int p = 0;
  std::string digits;
  std::string fixed;

  auto* progressions = app.add_subcommand("progressions", "List the non-trivial progressions P_b(D)");
  int b = 0;
  progressions->add_option("-p", p, "Prime modulus")->required();
  progressions->add_option("-D,--digits", digits, "Digit set, comma separated")->required();
  progressions->add_option("--Dprime,--fixed", fixed, "Fixed digits (default: all)");
  progressions->add_option("-b", b, "Coefficient b of x + b y + c z = 0")->required();

  auto* classes = app.add_subcommand("classes", "Equation classes of b under the mirror and swap moves");
  classes->add_option("-p", p, "Prime modulus")->required();

  auto* check = app.add_subcommand("check", "Decide admissibility of (D, D') and write certificates");
  bool explain = false;
  check->add_option("-p", p, "Prime modulus")->required();
  check->add_option("-D,--digits", digits, "Digit set, comma separated")->required();
  check->add_option("--Dprime,--fixed", fixed, "Fixed digits (default: all)");
  check->add_flag("--explain", explain, "Narrate each reduction");

  auto* search = app.add_subcommand("search", "Find the largest admissible digit set size");
  SearchArgs sargs;
  search->add_option("-p", sargs.p, "Prime modulus")->required();
  search->add_option("--start-size", sargs.start_size, "First size to examine");
  search->add_option("--max-seconds", sargs.max_seconds, "Wall-clock budget (0: unlimited)")->check(CLI::NonNegativeNumber);
  search->add_option("--max-candidates", sargs.max_candidates, "Fresh candidate checks allowed (0: unlimited)");
  search->add_flag("--all", sargs.all, "Report every admissible set of the maximum size");
  search->add_flag("--no-minimize", sargs.no_minimize, "Skip minimizing the fixed digits");
  search->add_flag("--fresh", sargs.fresh, "Discard an existing checkpoint");

  auto* verify = app.add_subcommand("verify", "Check that a point set has no three collinear points");
  std::string points_file;
  std::size_t n = 0;
  verify->add_option("-p", p, "Prime modulus")->required();
  verify->add_option("--points", points_file, "Point file: one point per line");
  verify->add_option("-D,--digits", digits, "Build S(D, D', n) instead");
  verify->add_option("--Dprime,--fixed", fixed, "Fixed digits (default: all)");
  verify->add_option("-n", n, "Dimension (a multiple of |D|)");

  auto* table = app.add_subcommand("table", "Bound comparison rows");
  std::vector<int> primes;
  std::vector<std::string> best;
  int solve_up_to = 13;
  table->add_option("-p", primes, "Primes")->required()->delimiter(',');
  table->add_option("--best", best, "Known admissible size, p=size (repeatable)");
  table->add_option("--solve-up-to", solve_up_to, "Search the new column for primes up to this bound");

  auto* cls = app.add_subcommand("classify", "Group digit sets into affine equivalence classes");
  std::string sets_file;
  std::vector<std::string> sets;
  cls->add_option("-p", p, "Prime modulus")->required();
  cls->add_option("--sets", sets_file, "File with one digit set per line");
  cls->add_option("--set", sets, "Digit set (repeatable)");

  auto* cert = app.add_subcommand("cert-verify", "Re-check a certificate or certificate bundle");
  std::string cert_file;
  cert->add_option("file", cert_file, "Certificate JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*progressions) return cmd_progressions(common, p, digits, fixed, b);
    if (*classes) return cmd_classes(common, p);
    if (*check) return cmd_check(common, p, digits, fixed, explain);
    if (*search) return cmd_search(common, sargs);
    if (*verify) return cmd_verify(common, p, points_file, digits, fixed, n);
    if (*table) return cmd_table(common, primes, best, solve_up_to);
    if (*cls) return cmd_classify(common, p, sets_file, sets);
    if (*cert) return cmd_cert_verify(common, cert_file);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
