#include "capdigits/search.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <stdexcept>
#include <thread>

#include "capdigits/serialize.hpp"

namespace capdigits {

namespace {

// Advances `idx` (ascending, values < n) to the next k-combination.
bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[i] == n - k + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

void check_size(Prime p, int size) {
  if (size < 2 || size > p.value()) {
    throw std::invalid_argument("candidate size must lie in [2, " + std::to_string(p.value()) + "]");
  }
}

}  // namespace

void for_each_candidate(Prime p, int size, const std::function<bool(const DigitSet&)>& visit) {
  check_size(p, size);
  const int rest = size - 2;
  const int pool = p.value() - 2;  // digits 2..p-1
  std::vector<int> idx(rest);
  for (int i = 0; i < rest; ++i) idx[i] = i;
  DigitSet d(size);
  d[0] = 0;
  d[1] = 1;
  do {
    for (int i = 0; i < rest; ++i) d[i + 2] = idx[i] + 2;
    if (!visit(d)) return;
  } while (rest > 0 && next_combination(idx, pool));
}

std::vector<DigitSet> candidates(Prime p, int size, bool dedup) {
  std::vector<DigitSet> out;
  for_each_candidate(p, size, [&](const DigitSet& d) {
    if (!dedup || is_normal_form(d, p)) out.push_back(d);
    return true;
  });
  return out;
}

PairVerdict check_pair(const DigitSetPair& pair, const CheckOptions& options) {
  PairVerdict verdict{pair, true, {}};
  for (const int b : equation_classes(pair.prime()).representatives()) {
    const auto table = enumerate_progressions(pair, make_line_equation(pair.prime(), b));
    const auto system = build_constraint_system(table);
    RepresentativeVerdict rep;
    rep.b = b;
    rep.digit = digit_reduce(table);
    bool reduced = false;
    if (rep.digit->verdict == Verdict::ReducedToEmpty) {
      rep.method = Method::Digit;
      reduced = true;
    } else {
      rep.matrix = matrix_reduce(system);
      if (rep.matrix->verdict == Verdict::ReducedToEmpty) {
        rep.method = Method::Matrix;
        reduced = true;
      }
    }
    if (!reduced || options.always_cone) rep.cone = cone_trivial(system);
    if (reduced) {
      if (rep.cone && rep.cone->kind != ConeKind::Trivial) {
        throw std::logic_error("reduction and cone test disagree for " + format_digits(pair.digits()) +
                               " at b = " + std::to_string(b));
      }
      rep.trivial = true;
    } else {
      rep.method = Method::Cone;
      rep.trivial = rep.cone->kind == ConeKind::Trivial;
    }
    verdict.admissible = verdict.admissible && rep.trivial;
    verdict.representatives.push_back(std::move(rep));
    if (!verdict.admissible && options.stop_at_refutation) break;
  }
  return verdict;
}

bool verify_representative(const DigitSetPair& pair, const RepresentativeVerdict& rep) {
  if (rep.b < 1 || rep.b > pair.modulus() - 2) return false;
  const auto table = enumerate_progressions(pair, make_line_equation(pair.prime(), rep.b));
  const auto system = build_constraint_system(table);
  if (rep.digit && !replay_digit_trace(table, *rep.digit)) return false;
  if (rep.matrix && !replay_matrix_trace(system, *rep.matrix)) return false;
  if (rep.cone) {
    if (rep.cone->dual.size() != (rep.cone->kind == ConeKind::Trivial ? system.rows() : 0)) return false;
    if (rep.cone->witness.size() != (rep.cone->kind == ConeKind::Nontrivial ? system.cols() : 0)) return false;
    if (!verify_certificate(system, *rep.cone)) return false;
    if ((rep.cone->kind == ConeKind::Trivial) != rep.trivial) return false;
  }
  switch (rep.method) {
    case Method::Digit:
      return rep.trivial && rep.digit && rep.digit->verdict == Verdict::ReducedToEmpty;
    case Method::Matrix:
      return rep.trivial && rep.matrix && rep.matrix->verdict == Verdict::ReducedToEmpty;
    case Method::Cone:
      return rep.cone.has_value();
  }
  return false;
}

bool verify_pair_verdict(const PairVerdict& verdict) {
  const auto reps = equation_classes(verdict.pair.prime()).representatives();
  std::vector<int> seen;
  bool all_trivial = true;
  for (const auto& rep : verdict.representatives) {
    if (std::find(reps.begin(), reps.end(), rep.b) == reps.end()) return false;
    if (!seen.empty() && rep.b <= seen.back()) return false;
    seen.push_back(rep.b);
    if (!verify_representative(verdict.pair, rep)) return false;
    all_trivial = all_trivial && rep.trivial;
  }
  if (verdict.admissible) return all_trivial && seen == reps;
  return !all_trivial;
}

namespace {

DigitSet minimize_unchecked(const DigitSet& digits, Prime p) {
  const int n = static_cast<int>(digits.size());
  for (int k = 1; k < n; ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    do {
      DigitSet fixed(k);
      for (int i = 0; i < k; ++i) fixed[i] = digits[idx[i]];
      if (is_admissible(DigitSetPair(p, digits, fixed))) return fixed;
    } while (next_combination(idx, n));
  }
  return digits;
}

}  // namespace

DigitSet minimize_fixed_digits(const DigitSet& digits, Prime p) {
  const auto all = DigitSetPair::all_fixed(p, digits);
  if (!is_admissible(all)) {
    throw std::invalid_argument(format_digits(all.digits()) + " is not admissible even with every digit fixed");
  }
  return minimize_unchecked(all.digits(), p);
}

namespace {

// Outcome of examining one candidate with D' = D.
struct Outcome {
  bool admissible = false;
  std::optional<AdmissibleEntry> entry;
  std::optional<Refutation> refutation;
};

Outcome examine(const DigitSet& digits, Prime p, bool minimize) {
  const auto pair = DigitSetPair::all_fixed(p, digits);
  const auto quick = check_pair(pair, {.stop_at_refutation = true, .always_cone = false});
  Outcome out;
  if (!quick.admissible) {
    const auto& rep = quick.representatives.back();
    out.refutation = Refutation{digits, rep.b, *rep.cone};
    return out;
  }
  out.admissible = true;
  auto fixed = minimize ? minimize_unchecked(digits, p) : digits;
  auto verdict = check_pair(DigitSetPair(p, digits, fixed));
  out.entry = AdmissibleEntry{digits, std::move(fixed), std::move(verdict)};
  return out;
}

class Checkpoint {
 public:
  Checkpoint(std::filesystem::path path, Prime p) : path_(std::move(path)), p_(p) {
    if (path_.empty()) return;
    cert_dir_ = path_.parent_path() / "certs";
    if (std::filesystem::exists(path_)) load();
    out_.open(path_, std::ios::app);
    if (!out_) throw std::runtime_error("cannot open checkpoint " + path_.string());
  }

  const Outcome* find(const DigitSet& d) const {
    const auto it = known_.find(d);
    return it == known_.end() ? nullptr : &it->second;
  }

  void record(const DigitSet& d, const Outcome& o) {
    if (path_.empty() || known_.contains(d)) return;
    Json line{{"p", p_.value()}, {"digits", d}, {"admissible", o.admissible}};
    if (o.entry) {
      line["minimal_fixed"] = o.entry->minimal_fixed;
      line["certificate"] = store_content_addressed(cert_dir_, to_json(o.entry->verdict));
    } else {
      const RepresentativeVerdict rep{o.refutation->b, false, Method::Cone, std::nullopt, std::nullopt,
                                      o.refutation->witness};
      line["b"] = o.refutation->b;
      line["certificate"] =
          store_content_addressed(cert_dir_, representative_certificate(DigitSetPair::all_fixed(p_, d), rep));
    }
    out_ << canonical_dump(line) << '\n';
    out_.flush();
    known_.emplace(d, o);
  }

 private:
  Json load_cert(const std::string& hash) const {
    std::ifstream in(cert_dir_ / (hash + ".json"));
    if (!in) throw std::runtime_error("checkpoint references missing certificate " + hash);
    return Json::parse(in);
  }

  void load() {
    std::ifstream in(path_);
    std::string text;
    while (std::getline(in, text)) {
      if (text.empty()) continue;
      Json line;
      try {
        line = Json::parse(text);
      } catch (const Json::parse_error&) {
        continue;  // torn final line from an interrupted run
      }
      if (line.at("p").get<int>() != p_.value()) {
        throw std::runtime_error("checkpoint " + path_.string() + " belongs to a different prime");
      }
      const auto digits = line.at("digits").get<DigitSet>();
      const auto cert = load_cert(line.at("certificate").get<std::string>());
      Outcome o;
      o.admissible = line.at("admissible").get<bool>();
      if (o.admissible) {
        auto verdict = pair_verdict_from_json(cert);
        o.entry = AdmissibleEntry{digits, line.at("minimal_fixed").get<DigitSet>(), std::move(verdict)};
      } else {
        o.refutation = Refutation{digits, line.at("b").get<int>(), cone_certificate_from_json(cert.at("cone"))};
      }
      known_.emplace(digits, std::move(o));
    }
  }

  std::filesystem::path path_;
  std::filesystem::path cert_dir_;
  Prime p_;
  std::ofstream out_;
  std::map<DigitSet, Outcome> known_;
};

struct SizeResult {
  std::vector<AdmissibleEntry> admissible;
  std::vector<Refutation> refutations;
  bool complete = true;  // false when the budget cut the scan short
};

class Sweeper {
 public:
  Sweeper(Prime p, const SearchOptions& options)
      : p_(p), options_(options), checkpoint_(options.checkpoint, p),
        start_(std::chrono::steady_clock::now()) {}

  std::size_t examined() const { return examined_; }
  bool exhausted() const { return exhausted_; }

  SizeResult scan(int size) {
    SizeResult result;
    const auto list = candidates(p_, size, true);
    const std::size_t chunk = std::max<std::size_t>(1, 8 * workers());
    std::size_t pos = 0;
    while (pos < list.size()) {
      if (out_of_budget()) {
        exhausted_ = true;
        result.complete = false;
        return result;
      }
      // Gather the next stretch, capping fresh work at the remaining budget.
      std::vector<std::size_t> fresh;
      std::size_t end = pos;
      while (end < list.size() && fresh.size() < chunk) {
        if (!checkpoint_.find(list[end])) {
          if (options_.max_candidates && fresh_ + fresh.size() >= options_.max_candidates) break;
          fresh.push_back(end);
        }
        ++end;
      }
      if (end == pos) {
        exhausted_ = true;
        result.complete = false;
        return result;
      }
      std::vector<Outcome> computed(fresh.size());
      run_parallel(fresh.size(), [&](std::size_t i) { computed[i] = examine(list[fresh[i]], p_, options_.minimize_fixed); });

      std::size_t next_fresh = 0;
      for (std::size_t i = pos; i < end; ++i) {
        const Outcome* o = checkpoint_.find(list[i]);
        if (!o) {
          checkpoint_.record(list[i], computed[next_fresh]);
          o = &computed[next_fresh];
          ++next_fresh;
          ++fresh_;
        }
        ++examined_;
        if (o->admissible) {
          result.admissible.push_back(*o->entry);
          if (options_.max_reported && result.admissible.size() >= options_.max_reported) return result;
        } else {
          result.refutations.push_back(*o->refutation);
        }
      }
      pos = end;
    }
    return result;
  }

 private:
  unsigned workers() const { return std::max(1u, options_.workers); }

  bool out_of_budget() const {
    if (options_.max_candidates && fresh_ >= options_.max_candidates) return true;
    if (options_.max_seconds > 0) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
      if (elapsed.count() >= options_.max_seconds) return true;
    }
    return false;
  }

  template <class F>
  void run_parallel(std::size_t n, F&& f) {
    const unsigned t = std::min<std::size_t>(workers(), n);
    if (t <= 1) {
      for (std::size_t i = 0; i < n; ++i) f(i);
      return;
    }
    std::vector<std::exception_ptr> errors(t);
    {
      std::vector<std::jthread> pool;
      for (unsigned id = 0; id < t; ++id) {
        pool.emplace_back([&, id] {
          try {
            for (std::size_t i = id; i < n; i += t) f(i);
          } catch (...) {
            errors[id] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  Prime p_;
  SearchOptions options_;
  Checkpoint checkpoint_;
  std::chrono::steady_clock::time_point start_;
  std::size_t examined_ = 0;
  std::size_t fresh_ = 0;
  bool exhausted_ = false;
};

}  // namespace

SearchReport max_admissible_size(Prime p, const SearchOptions& options) {
  const int start = options.start_size.value_or(2);
  check_size(p, start);
  Sweeper sweeper(p, options);
  SearchReport report;
  report.p = p.value();

  auto finish = [&](SizeResult&& refuted) {
    report.maximality = Maximality::Proven;
    report.refutations = std::move(refuted.refutations);
  };

  int size = start;
  auto first = sweeper.scan(size);
  if (!first.complete) {
    report.budget_exhausted = true;
  } else if (first.admissible.empty()) {
    // Descend until something admissible turns up.
    SizeResult refuted = std::move(first);
    while (--size >= 2) {
      auto r = sweeper.scan(size);
      if (!r.complete) {
        report.budget_exhausted = true;
        break;
      }
      if (!r.admissible.empty()) {
        report.max_size = size;
        report.admissible = std::move(r.admissible);
        finish(std::move(refuted));
        break;
      }
      refuted = std::move(r);
    }
    if (size < 2) {
      report.max_size = 1;
      finish(std::move(refuted));
    }
  } else {
    report.max_size = size;
    report.admissible = std::move(first.admissible);
    while (true) {
      if (++size > p.value()) {
        report.maximality = Maximality::Proven;
        break;
      }
      auto r = sweeper.scan(size);
      if (!r.complete) {
        report.budget_exhausted = true;
        break;
      }
      if (r.admissible.empty()) {
        finish(std::move(r));
        break;
      }
      report.max_size = size;
      report.admissible = std::move(r.admissible);
    }
  }
  report.candidates_examined = sweeper.examined();
  return report;
}

}  // namespace capdigits
