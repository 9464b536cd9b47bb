#pragma once

// End-to-end driver: field-data verification, p-adic lower bound, constants,
// Matveev bound, lattice reduction, direct search, verdict, and reports.

#include <gmpxx.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <future>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cyclodio/ball.hpp"
#include "cyclodio/cases.hpp"
#include "cyclodio/error.hpp"
#include "cyclodio/matveev.hpp"
#include "cyclodio/numberfield.hpp"
#include "cyclodio/padic.hpp"
#include "cyclodio/realalg.hpp"
#include "cyclodio/reduction.hpp"

namespace cyclodio {

enum class Stage { Verify, PAdic, Constants, Matveev, Reduction, Search };

inline const char* stage_name(Stage s) {
  switch (s) {
    case Stage::Verify: return "verify";
    case Stage::PAdic: return "padic";
    case Stage::Constants: return "constants";
    case Stage::Matveev: return "matveev";
    case Stage::Reduction: return "reduction";
    case Stage::Search: return "direct_search";
  }
  return "?";
}

struct SolveOptions {
  std::size_t depth = 502;
  mpfr_prec_t precision_bits = kPrecisionFloor;
  long search_max = 500;
  std::optional<mpz_class> K;
  ChoiceMode choices = ChoiceMode::All;
  Stage stop_after = Stage::Search;
};

struct Solution {
  long n = 0;
  mpz_class x;
  friend bool operator==(const Solution& a, const Solution& b) { return a.n == b.n && a.x == b.x; }
};

inline const char* kVerdictNone = "no solutions";
inline const char* kVerdictFound = "solutions found";
inline const char* kVerdictInconclusive = "inconclusive";
inline const char* kVerdictPartial = "partial";

struct SolveReport {
  std::string case_id;
  SolveOptions options;
  std::optional<VerificationReport> verification;
  std::optional<LowerBoundResult> lower;
  std::optional<ConstantSet> constants;
  mpfr_prec_t constants_precision = 0;
  std::optional<mpq_class> c9;
  std::optional<mpz_class> N;
  std::optional<ReductionTrace> trace;
  std::optional<mpz_class> N_final;
  long search_limit = 0;
  std::optional<std::vector<Solution>> solutions;
  std::string verdict = kVerdictInconclusive;
  std::optional<std::string> failed_stage;
  std::string failure;
  std::vector<std::pair<std::string, double>> timings_ms;
};

/// All (n, x) with 1 <= n <= n_max and f(x) = 2 p^n. Since f is monic of
/// degree d, |x| lies within one of floor((2 p^n)^(1/d)) once |x| > 3, and
/// both signs of that window are tested.
inline std::vector<Solution> direct_search(const CaseConfig& cfg, long n_max) {
  std::vector<Solution> out;
  if (n_max < 1) return out;
  const int d = cfg.f.degree();
  if (d < 1) throw DomainError("direct_search: f must have positive degree");
  mpz_class t = 2;
  for (long n = 1; n <= n_max; ++n) {
    t *= cfg.p;
    mpz_class x0;
    mpz_root(x0.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(d));
    std::set<mpz_class> cand;
    for (long e = -1; e <= 1; ++e) {
      cand.insert(x0 + e);
      cand.insert(-x0 + e);
    }
    for (long s = -3; s <= 3; ++s) cand.insert(mpz_class(s));
    for (const auto& x : cand)
      if (poly_eval(cfg.f, x) == t) out.push_back({n, x});
  }
  return out;
}

namespace detail {

template <typename F>
bool run_stage(SolveReport& rep, Stage s, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  try {
    body();
  } catch (const std::exception& e) {
    rep.failed_stage = stage_name(s);
    rep.failure = e.what();
    ok = false;
  }
  const auto t1 = std::chrono::steady_clock::now();
  rep.timings_ms.emplace_back(stage_name(s), std::chrono::duration<double, std::milli>(t1 - t0).count());
  return ok;
}

}  // namespace detail

inline SolveReport solve_case(const CaseConfig& cfg, const SolveOptions& opt = {}) {
  SolveReport rep;
  rep.case_id = cfg.id;
  rep.options = opt;
  auto stop_here = [&](Stage s) {
    if (opt.stop_after == s) {
      rep.verdict = kVerdictPartial;
      return true;
    }
    return false;
  };

  if (!detail::run_stage(rep, Stage::Verify, [&] {
        rep.verification = verify_case_data(cfg);
        if (!rep.verification->passed()) {
          std::string why;
          for (const auto& f : rep.verification->failures()) why += (why.empty() ? "" : "; ") + f;
          throw ArithmeticError("field data failed verification: " + why);
        }
      }))
    return rep;
  if (stop_here(Stage::Verify)) return rep;

  if (!detail::run_stage(rep, Stage::PAdic, [&] { rep.lower = combined_lower_bound(cfg, opt.depth); })) return rep;
  if (stop_here(Stage::PAdic)) return rep;

  std::optional<ConjugateData> conj;
  if (!detail::run_stage(rep, Stage::Constants, [&] {
        mpfr_prec_t prec = std::max(opt.precision_bits, kPrecisionFloor);
        for (int attempt = 0;; ++attempt, prec *= 2) {
          try {
            conj = conjugate_data(cfg.f, prec);
            rep.constants = compute_constants(cfg, *conj, rep.lower->bound);
            rep.constants_precision = prec;
            return;
          } catch (const PrecisionError&) {
            if (attempt >= 3) throw;
          }
        }
      }))
    return rep;
  if (stop_here(Stage::Constants)) return rep;

  if (!detail::run_stage(rep, Stage::Matveev, [&] {
        BoundInput in = BoundInput::from(*rep.constants);
        rep.c9 = matveev_c9(in);
        rep.N = absolute_bound(in, *rep.c9);
      }))
    return rep;
  if (stop_here(Stage::Matveev)) return rep;

  if (!detail::run_stage(rep, Stage::Reduction, [&] {
        ReductionOptions ro;
        ro.K = opt.K;
        ro.choices = opt.choices;
        ro.target_floor = rep.lower->bound;
        rep.trace = reduction_loop(cfg, *conj, *rep.constants, *rep.N, ro);
        if (!rep.trace->succeeded) throw PrecisionError("reduction failed: " + rep.trace->failure);
        rep.N_final = rep.trace->final_bound;
      }))
    return rep;
  if (stop_here(Stage::Reduction)) return rep;

  if (!detail::run_stage(rep, Stage::Search, [&] {
        rep.search_limit = std::max(opt.search_max, rep.N_final->fits_slong_p() ? rep.N_final->get_si() : opt.search_max);
        rep.solutions = direct_search(cfg, rep.search_limit);
      }))
    return rep;

  if (!rep.solutions->empty()) {
    rep.verdict = kVerdictFound;
  } else if (*rep.N_final < rep.lower->bound && rep.search_limit >= opt.search_max && mpz_class(rep.search_limit) >= *rep.N_final) {
    rep.verdict = kVerdictNone;
  } else {
    rep.verdict = kVerdictInconclusive;
    rep.failure = "reduced bound " + rep.N_final->get_str() + " is not below the p-adic lower bound " + std::to_string(rep.lower->bound);
  }
  return rep;
}

/// Runs several cases, concurrently when `parallel` is set.
inline std::vector<SolveReport> solve_all(const std::vector<CaseConfig>& cfgs, const SolveOptions& opt, bool parallel) {
  std::vector<SolveReport> out;
  if (!parallel) {
    for (const auto& c : cfgs) out.push_back(solve_case(c, opt));
    return out;
  }
  std::vector<std::future<SolveReport>> jobs;
  for (const auto& c : cfgs) jobs.push_back(std::async(std::launch::async, [&c, &opt] { return solve_case(c, opt); }));
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

// ---------------------------------------------------------------------------
// Reports

namespace detail {

inline std::string radius_string(const Ball& b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", b.rad_d());
  return buf;
}

inline ordered_json ball_json(const Ball& b) {
  const int digits = std::min(b.certified_digits(), 30);
  return ordered_json{{"value", b.mid_string(std::max(digits, 1))}, {"radius", radius_string(b)}, {"certified_digits", digits}};
}

/// Exact 4-significant-digit constant.
inline std::string c4(const mpq_class& q) { return format_sig(q, kConstantDigits); }

inline std::string k_string(const mpz_class& K) {
  const std::string s = K.get_str();
  if (s.size() > 1 && s[0] == '1' && s.find_first_not_of('0', 1) == std::string::npos) return "10^" + std::to_string(s.size() - 1);
  return s;
}

inline std::string rat_string(const mpq_class& q, int digits) {
  if (q == 0) return "0";
  return Ball(q, 256).mid_string(digits);
}

inline ordered_json outcome_json(const ReductionOutcome& o) {
  ordered_json j;
  j["conjugates"] = o.problem.conjugates;
  j["K"] = k_string(o.problem.K);
  j["rho"] = rat_string(o.problem.rho, 3);
  j["c1_norm"] = ball_json(o.c1_norm);
  j["s_last_distance"] = rat_string(o.s_last_dist, 10);
  j["distance_lower_bound"] = ball_json(o.distance);
  j["c"] = o.c ? ball_json(*o.c) : ordered_json(nullptr);
  j["bound"] = o.bound ? ordered_json(o.bound->get_str()) : ordered_json(nullptr);
  ordered_json basis = ordered_json::array();
  for (const auto& row : o.lll.basis) {
    ordered_json r = ordered_json::array();
    for (const auto& v : row) r.push_back(v.get_str());
    basis.push_back(std::move(r));
  }
  j["reduced_basis"] = std::move(basis);
  return j;
}

}  // namespace detail

inline ordered_json report_json(const SolveReport& rep, bool include_timings = true) {
  using namespace detail;
  ordered_json j;
  j["case"] = rep.case_id;
  j["verdict"] = rep.verdict;
  j["failed_stage"] = rep.failed_stage ? ordered_json(*rep.failed_stage) : ordered_json(nullptr);
  j["failure"] = rep.failure.empty() ? ordered_json(nullptr) : ordered_json(rep.failure);
  j["settings"] = {{"depth", rep.options.depth},
                   {"precision_bits", rep.options.precision_bits},
                   {"search_max", rep.options.search_max},
                   {"K", rep.options.K ? ordered_json(k_string(*rep.options.K)) : ordered_json("default")},
                   {"conjugate_choices", rep.options.choices == ChoiceMode::All ? "all" : "preferred"}};

  if (rep.verification) {
    const auto& v = *rep.verification;
    ordered_json checks = ordered_json::array();
    for (const auto& c : v.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["verification"] = {{"passed", v.passed()}, {"discriminant", v.discriminant.get_str()}, {"checks", checks}, {"trusted", v.trusted}};
  }
  if (rep.lower) {
    ordered_json roots = ordered_json::array();
    for (std::size_t i = 0; i < rep.lower->roots.size(); ++i) {
      const auto& r = rep.lower->roots[i];
      std::vector<long> prefix(r.digits.begin(), r.digits.begin() + static_cast<long>(std::min<std::size_t>(r.depth(), 30)));
      roots.push_back({{"residue", r.digits[0]}, {"digits_prefix", prefix}, {"digits_computed", r.depth()}, {"bound", rep.lower->per_root_bounds[i]}});
    }
    j["padic"] = {{"roots", roots}, {"n_lower", rep.lower->bound}};
  }
  if (rep.constants) {
    const auto& c = *rep.constants;
    ordered_json derivs = ordered_json::array();
    for (const auto& q : c.derivative_bounds) derivs.push_back(c4(q));
    ordered_json A = ordered_json::array();
    for (const auto& q : c.A) A.push_back(c4(q));
    ordered_json heights = ordered_json::array();
    for (const auto& h : c.heights)
      heights.push_back({{"eta", h.label}, {"a0", h.data.a0.get_str()}, {"d_height", ball_json(h.data.d_height)}, {"max_abs_log", ball_json(h.data.max_log)}});
    j["constants"] = {{"precision_bits", rep.constants_precision},
                      {"n_lower", c.n_lower},
                      {"root_shift", c4(c.root_shift)},
                      {"C1", c4(c.C1)}, {"C2", c4(c.C2)}, {"C3", c4(c.C3)}, {"C4", c4(c.C4)},
                      {"C5", c4(c.C5)}, {"C6", c4(c.C6)}, {"C7", c4(c.C7)}, {"C8", c4(c.C8)},
                      {"derivative_bounds", derivs},
                      {"delta_range", {c4(c.delta_min), c4(c.delta_max)}},
                      {"gamma_range", {c4(c.gamma_min), c4(c.gamma_max)}},
                      {"regulator", ball_json(c.regulator)},
                      {"regulator_doubled_log", ball_json(regulator_doubled_log(c.regulator, static_cast<std::size_t>(c.r - 2)))},
                      {"R2", c4(c.R2)},
                      {"cramer_rows", c.cramer_rows},
                      {"A", A},
                      {"heights", heights}};
  }
  if (rep.c9) j["matveev"] = {{"C9", c4(*rep.c9)}, {"N", rep.N->get_str()}};
  if (rep.trace) {
    ordered_json rounds = ordered_json::array();
    for (const auto& r : rep.trace->rounds) {
      ordered_json cases = ordered_json::array();
      for (const auto& cr : r.cases) {
        ordered_json cj{{"case", cr.case_label},
                        {"bound", cr.bound ? ordered_json(cr.bound->get_str()) : ordered_json(nullptr)},
                        {"K", cr.bound ? ordered_json(k_string(cr.K)) : ordered_json(nullptr)},
                        {"lattices_tried", cr.tried.size()}};
        cj["best"] = cr.best ? outcome_json(cr.tried[*cr.best]) : ordered_json(nullptr);
        cases.push_back(std::move(cj));
      }
      rounds.push_back({{"round", r.round},
                        {"N_in", r.N_in.get_str()},
                        {"K", k_string(r.K)},
                        {"bound", r.bound ? ordered_json(r.bound->get_str()) : ordered_json(nullptr)},
                        {"cases", cases}});
    }
    j["reduction"] = {{"rounds", rounds}, {"final_bound", rep.trace->final_bound.get_str()}};
  }
  if (rep.solutions) {
    ordered_json sols = ordered_json::array();
    for (const auto& s : *rep.solutions) sols.push_back({{"n", s.n}, {"x", s.x.get_str()}});
    j["direct_search"] = {{"n_max", rep.search_limit}, {"solutions", sols}};
  }
  if (include_timings) {
    ordered_json t = ordered_json::object();
    for (const auto& [name, ms] : rep.timings_ms) t[name] = ms;
    j["timings_ms"] = t;
  }
  return j;
}

inline std::string report_text(const SolveReport& rep) {
  using namespace detail;
  std::ostringstream os;
  os << "case " << rep.case_id << "\n";
  if (rep.verification) {
    os << "  verification: " << (rep.verification->passed() ? "passed" : "FAILED") << ", disc = " << rep.verification->discriminant << "\n";
    for (const auto& c : rep.verification->checks) os << "    [" << (c.passed ? "ok" : "FAIL") << "] " << c.name << ": " << c.detail << "\n";
  }
  if (rep.lower) {
    os << "  p-adic roots:";
    for (std::size_t i = 0; i < rep.lower->roots.size(); ++i)
      os << " " << rep.lower->roots[i].digits[0] << " (n >= " << rep.lower->per_root_bounds[i] << ")";
    os << "\n  lower bound: n >= " << rep.lower->bound << "\n";
  }
  if (rep.constants) {
    const auto& c = *rep.constants;
    os << "  C1..C8: " << c4(c.C1) << " " << c4(c.C2) << " " << c4(c.C3) << " " << c4(c.C4) << " " << c4(c.C5) << " " << c4(c.C6) << " "
       << c4(c.C7) << " " << c4(c.C8) << "\n  A:";
    for (const auto& a : c.A) os << " " << c4(a);
    os << "\n  regulator: " << c.regulator.mid_string(6) << "\n";
  }
  if (rep.c9) os << "  Matveev: C9 = " << c4(*rep.c9) << ", n < N = " << rep.N->get_str() << "\n";
  if (rep.trace) {
    for (const auto& r : rep.trace->rounds) {
      os << "  reduction round " << r.round << " (N = " << r.N_in.get_str() << ", K = " << k_string(r.K) << "):";
      os << " bound " << (r.bound ? r.bound->get_str() : std::string("none")) << "\n";
      for (const auto& cr : r.cases)
        os << "    " << cr.case_label << ": " << (cr.bound ? "n <= " + cr.bound->get_str() + " at K = " + k_string(cr.K) : std::string("no certified c")) << "\n";
    }
    os << "  final bound: n <= " << rep.trace->final_bound.get_str() << "\n";
  }
  if (rep.solutions) {
    os << "  direct search to n = " << rep.search_limit << ": " << rep.solutions->size() << " solution(s)";
    for (const auto& s : *rep.solutions) os << " (n=" << s.n << ", x=" << s.x.get_str() << ")";
    os << "\n";
  }
  if (rep.failed_stage) os << "  failed stage: " << *rep.failed_stage << ": " << rep.failure << "\n";
  os << "verdict: " << rep.verdict << "\n";
  return os.str();
}

/// Serializes a report; format is "json" or "text".
inline std::string emit_report(const SolveReport& rep, const std::string& format) {
  if (format == "json") return report_json(rep).dump(2) + "\n";
  if (format == "text") return report_text(rep);
  throw ConfigError("unknown report format '" + format + "' (expected json or text)");
}

}  // namespace cyclodio
