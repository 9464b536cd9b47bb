// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Reference values below are the published figures.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "property_checks.hpp"

using namespace cyclodio;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> problems;
  long checks = 0;

  Criterion(int i, std::string t, std::vector<std::string> p = {}, long n = 0)
      : id(i), title(std::move(t)), problems(std::move(p)), checks(n) {}

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) problems.push_back(what);
  }
  template <class A, class B>
  void equal(const A& got, const B& want, const std::string& what) {
    std::ostringstream os;
    os << what << ": got " << got << ", expected " << want;
    expect(got == want, os.str());
  }
};

// First three significant digits, truncated.
long sig3(double x) {
  if (x == 0) return 0;
  const double e = std::floor(std::log10(std::fabs(x)));
  return static_cast<long>(std::floor(std::fabs(x) / std::pow(10.0, e - 2) + 1e-9));
}

void within(Criterion& c, double got, double want, double rel, const std::string& what) {
  std::ostringstream os;
  os << what << ": got " << got << ", expected " << want << " within " << rel * 100 << "%";
  c.expect(std::fabs(got / want - 1.0) <= rel, os.str());
}

void three_digits(Criterion& c, double got, double want, const std::string& what) {
  std::ostringstream os;
  os << what << ": got " << got << ", expected " << want << " to 3 significant digits";
  c.expect(sig3(got) == sig3(want) && std::floor(std::log10(got)) == std::floor(std::log10(want)), os.str());
}

std::string c4(const mpq_class& q) { return format_sig(q, kConstantDigits); }

std::string s4(const Ball& b) {
  // Four significant digits of a certified value, truncated.
  return format_sig(round_sig(b, 4, Round::Down), 4);
}

long depth_for(const std::string& id) { return static_cast<long>(props::scan_depth(id)); }

SolveReport run_case(const std::string& id, ChoiceMode mode) {
  SolveOptions opt;
  opt.depth = static_cast<std::size_t>(depth_for(id));
  opt.choices = mode;
  return solve_case(builtin_case(id), opt);
}

Criterion field_data() {
  Criterion c{1, "field data (discriminants, norms, decomposition of 2, regulators)"};
  const std::map<std::string, std::string> disc{{"15-41", "682862912"}, {"15-5581", "682862912"}, {"10-271", "1396"}};
  const std::map<std::string, std::vector<std::string>> norms{
      {"15-41", {"41", "194754273881"}}, {"15-5581", {"5581", "5581", "31147561", "970170556248721"}}, {"10-271", {"271", "19902511"}}};
  for (const auto& id : builtin_case_ids()) {
    const CaseConfig cfg = builtin_case(id);
    const VerificationReport v = verify_case_data(cfg);
    c.expect(v.passed(), id + ": verification checks pass");
    c.equal(v.discriminant.get_str(), disc.at(id), id + " discriminant");
    const auto& want = norms.at(id);
    c.expect(v.gamma_norms.size() == want.size(), id + ": gamma count");
    for (std::size_t i = 0; i < std::min(want.size(), v.gamma_norms.size()); ++i)
      c.equal(v.gamma_norms[i].get_str(), want[i], id + " N(gamma_" + std::to_string(i + 1) + ")");
    c.expect(multiply_witness(cfg.two_decomposition, cfg.f) == FieldElement::integer(2), id + ": decomposition of 2");
  }
  const CaseConfig c15 = builtin_case("15-41"), c10 = builtin_case("10-271");
  c.equal(s4(regulator(c15.units, conjugate_data(c15.f))), std::string("4.221"), "regulator K_15");
  c.equal(s4(regulator(c10.units, conjugate_data(c10.f))), std::string("1.184"), "regulator K_10");
  return c;
}

Criterion padic() {
  Criterion c{2, "p-adic digits and lower bounds 415 / 4015 / 239"};
  struct Ref {
    std::string id;
    long r0;
    std::vector<long> digits;
  };
  const std::vector<Ref> refs{
      {"15-41", 8, {8, 18, 3, 17, 9, 14, 12, 38, 31, 35, 19, 25, 19, 38, 25, 24, 1, 18, 25, 10, 14, 29, 31, 18, 36, 2, 24}},
      {"15-5581", 257, {257, 64, 5438, 1453, 629, 833, 3090, 5096, 4809, 1493, 4462, 1922, 4807, 782, 3819, 2190, 99, 2554, 3603, 4471, 1034, 1407, 3688}},
      {"15-5581", 4477, {4477, 3993, 3590, 3157, 3667, 3404, 2233, 3440, 3784, 2333, 900, 2522, 184, 1707, 5103, 2005, 5325, 1780, 4765, 2645, 3577}},
      // 26 digits are requested; 25 are printed, so the comparison covers those.
      {"10-271", 241, {241, 8, 147, 250, 135, 263, 1, 126, 89, 262, 149, 20, 147, 78, 220, 219, 176, 148, 206, 255, 38, 115, 186, 178, 235}}};
  for (const auto& r : refs) {
    const CaseConfig cfg = builtin_case(r.id);
    const std::size_t want_len = r.id == "10-271" ? 26 : r.digits.size();
    const PAdicRoot root = hensel_lift(cfg.f, cfg.p, r.r0, want_len);
    c.equal(root.depth(), want_len, r.id + " root " + std::to_string(r.r0) + " digit count");
    const std::vector<long> prefix(root.digits.begin(), root.digits.begin() + static_cast<long>(r.digits.size()));
    c.expect(prefix == r.digits, r.id + " root " + std::to_string(r.r0) + ": digit prefix differs");
  }
  const std::map<std::string, long> bounds{{"15-41", 415}, {"15-5581", 4015}, {"10-271", 239}};
  for (const auto& [id, want] : bounds)
    c.equal(combined_lower_bound(builtin_case(id), props::scan_depth(id)).bound, want, id + " lower bound");
  return c;
}

Criterion constants(const std::map<std::string, SolveReport>& reps) {
  Criterion c{3, "constants C1..C8, derivative bounds, ranges, A_j, R2"};
  struct Ref {
    std::vector<std::string> C;  // C1..C8
    std::vector<std::string> derivs;
    std::vector<std::string> ranges;  // delta min/max, gamma min/max
    std::vector<std::string> A;
  };
  const std::vector<std::string> d15{"16.40", "56.37", "109.6", "126.7", "90.07", "39.00", "9.489"};
  const std::map<std::string, Ref> refs{
      {"15-41", {{"1.090", "9.490", "8.706", "1.091", "1.213", "1.392", "2.369", "2.718"}, d15, {"0.2714", "2.124", "0.5676", "5.349"},
                 {"25.02", "47.80", "4.371", "4.247", "2.976"}}},
      {"15-5581", {{"1.090", "9.490", "8.706", "1.091", "0.6584", "1.392", "1.286", "2.718"}, d15, {"0.2714", "2.124", "1.522", "5.531"},
                   {"25.02", "74.22", "4.371", "4.247", "2.976"}}},
      {"10-271", {{"1.189", "5.022", "4.223", "1.190", "0.5884", "0.4126", "0.4970", "0.3485"}, {"6.977", "9.261", "5.021"},
                  {"0.7877", "1.796", "2.253", "7.307"}, {"3.988", "21.52", "2.634"}}}};
  // Leading coefficients a0 of the minimal polynomials of eta_1 (per delta) and eta_2.
  const std::map<std::string, std::vector<std::string>> a0{
      {"15-41", {"128", "16", "194754273881"}}, {"15-5581", {"128", "16", "168649150369459365307223461", "168649150369459365307223461"}}, {"10-271", {"8", "2", "19902511"}}};
  for (const auto& [id, ref] : refs) {
    const auto it = reps.find(id);
    if (it == reps.end() || !it->second.constants) {
      c.expect(false, id + ": constants not computed");
      continue;
    }
    const ConstantSet& cs = *it->second.constants;
    const std::vector<mpq_class> C{cs.C1, cs.C2, cs.C3, cs.C4, cs.C5, cs.C6, cs.C7, cs.C8};
    for (std::size_t i = 0; i < 8; ++i) c.equal(c4(C[i]), ref.C[i], id + " C" + std::to_string(i + 1));
    c.expect(cs.derivative_bounds.size() == ref.derivs.size(), id + ": derivative table size");
    for (std::size_t i = 0; i < std::min(ref.derivs.size(), cs.derivative_bounds.size()); ++i)
      c.equal(c4(cs.derivative_bounds[i]), ref.derivs[i], id + " |f^(" + std::to_string(i + 1) + ")|/i!");
    const std::vector<mpq_class> rg{cs.delta_min, cs.delta_max, cs.gamma_min, cs.gamma_max};
    const char* rn[] = {"min|delta|", "max|delta|", "min|gamma|", "max|gamma|"};
    for (std::size_t i = 0; i < 4; ++i) c.equal(c4(rg[i]), ref.ranges[i], id + " " + rn[i]);
    c.expect(cs.A.size() == ref.A.size(), id + ": A count");
    for (std::size_t i = 0; i < std::min(ref.A.size(), cs.A.size()); ++i) c.equal(c4(cs.A[i]), ref.A[i], id + " A" + std::to_string(i + 1));
    const auto& want_a0 = a0.at(id);
    for (std::size_t i = 0; i < want_a0.size() && i < cs.heights.size(); ++i)
      c.equal(cs.heights[i].data.a0.get_str(), want_a0[i], id + " a0(" + cs.heights[i].label + ")");
    for (std::size_t i = want_a0.size(); i < cs.heights.size(); ++i)
      c.equal(cs.heights[i].data.a0.get_str(), std::string("1"), id + " a0(" + cs.heights[i].label + ")");
    if (cs.r == 5) within(c, cs.R2.get_d(), 2.746, 0.01, id + " R2");
  }
  return c;
}

Criterion matveev(const std::map<std::string, SolveReport>& reps) {
  Criterion c{4, "Matveev constant C9 and absolute bound N"};
  const std::map<std::string, std::pair<std::string, double>> refs{
      {"15-41", {"1.465e+25", 2.163e27}}, {"15-5581", {"2.275e+25", 1.424e27}}, {"10-271", {"1.160e+18", 3.970e19}}};
  for (const auto& [id, ref] : refs) {
    const auto& rep = reps.at(id);
    if (!rep.c9 || !rep.N) {
      c.expect(false, id + ": Matveev stage did not run");
      continue;
    }
    c.equal(c4(*rep.c9), ref.first, id + " C9");
    within(c, rep.N->get_d(), ref.second, 0.01, id + " N");
  }
  return c;
}

Criterion reduction15() {
  Criterion c{5, "reduction for m = 15 at the published K and conjugate choices"};
  struct Ref {
    double c1, s, D, cval;
  };
  // Order: exponent cases as enumerated (gamma outer, delta inner).
  const std::map<std::string, std::vector<Ref>> refs{
      {"15-41", {{1.148e30, 0.2505, 1.017e29, 0.0650}, {1.148e30, 0.0809, 3.286e28, 0.0125}}},
      {"15-5581",
       {{1.123e30, 0.4489, 1.784e29, 0.1119}, {1.123e30, 0.3512, 1.395e29, 0.0867}, {6.875e29, 0.3849, 9.357e28, 0.0568},
        {6.875e29, 0.4225, 1.027e29, 0.0628}}}};
  const std::map<std::string, long> final_bound{{"15-41", 59}, {"15-5581", 23}};
  for (const auto& [id, ref] : refs) {
    const CaseConfig cfg = builtin_case(id);
    const ConjugateData conj = conjugate_data(cfg.f);
    const ConstantSet cs = compute_constants(cfg, conj, combined_lower_bound(cfg, props::scan_depth(id)).bound);
    const BoundInput in = BoundInput::from(cs);
    const mpz_class N = absolute_bound(in, matveev_c9(in));
    const auto cases = enumerate_exponent_cases(cfg);
    c.expect(cases.size() == ref.size(), id + ": exponent case count");
    mpz_class worst = 0;
    for (std::size_t i = 0; i < std::min(cases.size(), ref.size()); ++i) {
      const auto& ec = cases[i];
      const std::string tag = id + " " + ec.label();
      ReductionOutcome o = reduce_lattice(build_lattice(cfg, ec, conj, cfg.default_K, cfg.gammas[ec.gamma_index].conjugates));
      const auto b = reduce_bound(o, N, cs);
      three_digits(c, o.c1_norm.mid_d(), ref[i].c1, tag + " |c1|");
      three_digits(c, o.s_last_dist.get_d(), ref[i].s, tag + " ||s||");
      three_digits(c, o.distance.mid_d(), ref[i].D, tag + " distance bound");
      if (!o.c || !b) {
        c.expect(false, tag + ": c not certified positive");
        continue;
      }
      within(c, o.c->mid_d(), ref[i].cval, 0.10, tag + " c");
      if (*b > worst) worst = *b;
    }
    c.equal(worst.get_si(), final_bound.at(id), id + " N1");
  }
  return c;
}

Criterion reduction271(const std::map<std::string, SolveReport>& reps) {
  Criterion c{6, "reduction for p = 271 with certified c, bound <= 60 and < 239"};
  const auto& rep = reps.at("10-271");
  c.expect(rep.trace.has_value() && rep.trace->succeeded, "10-271: reduction succeeded");
  if (rep.trace && !rep.trace->rounds.empty()) {
    for (const auto& cr : rep.trace->rounds.front().cases) {
      c.expect(cr.bound.has_value() && cr.best.has_value(), "10-271 " + cr.case_label + ": bound certified");
      if (cr.best) {
        const auto& o = cr.tried[*cr.best];
        c.expect(o.c && o.c->is_positive(), "10-271 " + cr.case_label + ": c certified positive");
      }
    }
  }
  if (rep.N_final) {
    c.expect(*rep.N_final <= 60, "10-271: final bound " + rep.N_final->get_str() + " <= 60");
    c.expect(*rep.N_final < 239, "10-271: final bound " + rep.N_final->get_str() + " < 239");
  } else {
    c.expect(false, "10-271: no final bound");
  }
  return c;
}

Criterion end_to_end(const std::map<std::string, SolveReport>& reps) {
  Criterion c{7, "end-to-end verdict \"no solutions\" for all three cases"};
  for (const auto& id : builtin_case_ids()) {
    const auto& rep = reps.at(id);
    c.equal(rep.verdict, std::string(kVerdictNone), id + " verdict (" + rep.failure + ")");
    c.expect(rep.N_final && rep.lower && *rep.N_final < rep.lower->bound, id + ": N_final < n_lower");
    c.expect(rep.solutions && rep.solutions->empty(), id + ": direct search empty");
    c.expect(rep.search_limit >= 500, id + ": direct search reaches n = 500");
  }
  return c;
}

Criterion properties() {
  Criterion c{8, "property suites (Hensel, LLL, distance lemma, norms)"};
  const props::PropertyResult rs[] = {props::hensel_consistency(), props::lll_conditions(), props::lemma_vs_exhaustive(),
                                      props::norm_properties()};
  for (const auto& r : rs) {
    c.expect(r.ok(), r.name + ": " + std::to_string(r.violations) + " violations in " + std::to_string(r.cases) + " cases" +
                         (r.first_violation.empty() ? "" : " (" + r.first_violation + ")"));
  }
  c.expect(rs[2].cases >= 100, "distance lemma: at least 100 lattices");
  c.expect(rs[3].cases >= 100, "norms: at least 100 elements");
  return c;
}

}  // namespace

int main() {
  std::map<std::string, SolveReport> reps;
  for (const auto& id : builtin_case_ids()) reps.emplace(id, run_case(id, ChoiceMode::All));

  std::vector<Criterion> all;
  auto guarded = [&](int id, const std::string& title, auto fn) {
    try {
      all.push_back(fn());
    } catch (const std::exception& e) {
      all.push_back(Criterion{id, title, {std::string("exception: ") + e.what()}, 1});
    }
  };
  guarded(1, "field data", field_data);
  guarded(2, "p-adic stage", padic);
  guarded(3, "constants", [&] { return constants(reps); });
  guarded(4, "Matveev stage", [&] { return matveev(reps); });
  guarded(5, "reduction m = 15", reduction15);
  guarded(6, "reduction p = 271", [&] { return reduction271(reps); });
  guarded(7, "end-to-end", [&] { return end_to_end(reps); });
  guarded(8, "properties", properties);

  int failed = 0;
  for (const auto& c : all) {
    const bool ok = c.problems.empty();
    failed += ok ? 0 : 1;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << c.checks << " checks)\n";
    for (const auto& p : c.problems) std::cout << "    " << p << "\n";
  }
  return failed == 0 ? 0 : 1;
}
