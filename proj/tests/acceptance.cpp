// Acceptance harness: runs the twelve headline checks end to end, prints one
// PASS/FAIL line per criterion, and exits nonzero if any of them fail.  All
// tolerances are pinned here as constants next to the check they gate.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "conelab/gamma_laguerre.hpp"
#include "conelab/operator_algebra.hpp"
#include "conelab/partitions.hpp"
#include "conelab/quadrature.hpp"
#include "conelab/random.hpp"
#include "conelab/spherical.hpp"
#include "conelab/suites.hpp"
#include "json.hpp"

using namespace conelab;
using nlohmann::json;

namespace {

// Per-rank signature-norm cutoffs for the symbolic recursion sweep.
constexpr uint32_t kRecursionMaxNorm[4] = {0, 4, 4, 3};
constexpr double kRecursionBudgetSeconds = 300.0;

constexpr double kOracleSigmas = 4.0;       // Monte-Carlo bracket width
constexpr double kOracleEps = 1e-12;        // roundoff guard, zero-variance cases
constexpr uint64_t kOracleSamples = 1000000;
constexpr double kGammaRelTol = 1e-6;       // quadrature vs product formula
constexpr double kLaplaceRelTol1 = 1e-6;    // analytic transform path
constexpr double kLaplaceRelTol2 = 1e-5;    // quadrature transform path
constexpr double kIntertwineRelTol = 1e-4;  // tube-side comparison
constexpr double kOrthoRelTol = 1e-8;       // cross term vs product of norms
constexpr double kReproduceRelTol = 1e-4;   // point-evaluation pairing

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

Signature zero_sig(uint32_t n) { return Signature(std::vector<uint32_t>(n, 0)); }

// PsiTable is not movable (internal mutex); keep the three ranks by value.
struct Tables {
  PsiTable r1{1}, r2{2}, r3{3};
  PsiTable& operator[](size_t i) { return i == 0 ? r1 : i == 1 ? r2 : r3; }
};

double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

// Strictly diagonally dominant rational symmetric matrix: a random symmetric
// draw shifted by (max absolute row sum) + 1 on the diagonal.
std::vector<std::vector<Rational>> random_pd_rational(uint32_t n, RandomStream& rng) {
  RMat s = random_sym_rational(n, rng);
  Rational shift(1);
  for (uint32_t i = 0; i < n; ++i) {
    Rational row(0);
    for (uint32_t j = 0; j < n; ++j) {
      Rational v = s[i][j];
      if (v < Rational(0)) v = -v;
      row += v;
    }
    if (shift < row + Rational(1)) shift = row + Rational(1);
  }
  for (uint32_t i = 0; i < n; ++i) s[i][i] += shift;
  return s;
}

// Closed form of the weighted Laplace transform of ell_m at scalar points.
cplx laplace_closed(uint32_t n, double nu, const Signature& m, cplx s) {
  std::vector<double> a;
  for (uint32_t j = 0; j < n; ++j) a.push_back(nu + m.parts()[j]);
  return gamma_omega(n, a) * std::pow(1.0 + s, -double(n) * nu) *
         std::pow((s - 1.0) / (s + 1.0), double(m.norm()));
}

CMat scalar_matrix(uint32_t n, cplx s) {
  CMat z(n, std::vector<cplx>(n, cplx(0.0)));
  for (uint32_t i = 0; i < n; ++i) z[i][i] = s;
  return z;
}

// --- criterion 1: radial eigen-relation, symbolic parameter -----------------

void criterion_1(Tables& tables) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  uint64_t cases = 0;
  for (uint32_t n = 1; n <= 3; ++n) {
    PsiTable& table = tables[n - 1];
    for (const Signature& m : signatures_up_to(n, kRecursionMaxNorm[n])) {
      ExpansionReport r = verify_recursion(table, 1, m);
      const NuRat expect = NuRat(NuPoly::linear(
          Rational(static_cast<long>(n)), Rational(2L * m.norm())));
      ok = ok && r.pass && r.residual_zero && r.eigenvalue == expect;
      ++cases;
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok = ok && secs < kRecursionBudgetSeconds;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "eigen-relation exact for %llu cases, symbolic parameter (%.1fs)",
                static_cast<unsigned long long>(cases), secs);
  report(1, ok, buf);
}

// --- criterion 2: ladder relations and coefficient-form consistency ---------

void criterion_2(Tables& tables) {
  bool ok = true;
  std::set<std::string> forms;  // non-"both" matched forms seen
  for (uint32_t n = 1; n <= 3; ++n) {
    PsiTable& table = tables[n - 1];
    for (const Signature& m : signatures_up_to(n, kRecursionMaxNorm[n])) {
      // Relation 3: raising coefficients are exactly 2 c_m(j).
      ExpansionReport r3 = verify_recursion(table, 3, m);
      ok = ok && r3.pass && r3.residual_zero && r3.support_ok && r3.coeffs_ok;
      std::map<std::string, NuRat> expect;
      for (uint32_t j = 1; j <= n; ++j)
        if (m.can_add(j))
          expect.emplace(m.add_e(j).to_string(),
                         NuRat(NuPoly(Rational(2) * c_coeff(m, j))));
      ok = ok && r3.coefficients.size() == expect.size();
      for (const CoeffRecord& c : r3.coefficients) {
        auto it = expect.find(c.target.to_string());
        ok = ok && it != expect.end() && c.value == it->second;
      }
      // Relation 2: support is exactly the valid lowerings, and every case
      // matches one of the two candidate coefficient forms.
      ExpansionReport r2 = verify_recursion(table, 2, m);
      ok = ok && r2.pass && r2.residual_zero && r2.support_ok && r2.coeffs_ok;
      std::set<std::string> valid;
      for (uint32_t j = 1; j <= n; ++j)
        if (m.can_sub(j)) valid.insert(m.sub_e(j).to_string());
      for (const CoeffRecord& c : r2.coefficients)
        ok = ok && valid.count(c.target.to_string()) == 1;
      ok = ok && r2.matched_form != MatchedForm::neither;
      if (r2.matched_form != MatchedForm::both)
        forms.insert(matched_form_name(r2.matched_form));
    }
  }
  ok = ok && forms.size() <= 1;
  // The resolution is recorded in the verification report.
  std::string recorded = "(none)";
  for (uint32_t n = 1; n <= 3; ++n) {
    SuiteReport rep = suite_recursion(n, std::nullopt, kRecursionMaxNorm[n], 1);
    ok = ok && rep.pass;
    const json doc = json::parse(rep.json);
    ok = ok && doc.at("summary").at("matched_form_consistent").get<bool>();
    const std::string f = doc.at("summary").at("matched_form").get<std::string>();
    if (f != "both") {
      if (!forms.empty()) ok = ok && forms.count(f) == 1;
      recorded = f;
    }
  }
  report(2, ok,
         "ladder coefficients exact, lowering support exact, coefficient form '" +
             recorded + "' consistent across all cases");
}

// --- criterion 3: rank-one reduction, exact and numeric ---------------------

void criterion_3() {
  SuiteReport rep = suite_classical(6, Rational::parse("5/2"));
  bool ok = rep.pass && rep.failed == 0;
  const json doc = json::parse(rep.json);
  for (const json& c : doc.at("cases")) ok = ok && c.at("pass").get<bool>();
  report(3, ok,
         "rank-one relations and transform rules, degrees <= 6, exact and "
         "numeric (1e-6)");
}

// --- criterion 4: spherical polynomials vs Haar Monte-Carlo oracle ----------

void criterion_4(Tables& tables) {
  bool ok = true;
  double max_abs_z = 0.0;
  uint64_t case_id = 0;
  for (uint32_t n : {2u, 3u}) {
    PsiTable& table = tables[n - 1];
    RandomStream rng(42, "acceptance-oracle", n);
    for (int pt = 0; pt < 5; ++pt) {
      const auto x = random_pd_rational(n, rng);
      for (const Signature& m : signatures_up_to(n, 3)) {
        const SphericalPoly& sp = table.get(m);
        OracleResult r =
            haar_average_oracle(sp, x, kOracleSamples, 42, ++case_id, 8);
        const double allow = kOracleSigmas * r.stderr_est +
                             kOracleEps * std::max(1.0, std::fabs(r.exact));
        ok = ok && std::fabs(r.estimate - r.exact) <= allow;
        if (r.stderr_est > 0.0) max_abs_z = std::max(max_abs_z, std::fabs(r.zscore));
      }
    }
  }
  // Exact closed form at rank 2: psi_(2,0) = 3/8 m[2] + 1/4 m[1,1].
  const SymFunc& sym = tables[1].get(Signature::parse("2,0")).sym;
  ok = ok && sym.monomial().size() == 2 &&
       sym.mono_coeff({2}) == Rational::parse("3/8") &&
       sym.mono_coeff({1, 1}) == Rational::parse("1/4");
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "Haar oracle brackets exact values within %.0f sigma "
                "(max |z| = %.2f), closed form at (2,0) exact",
                kOracleSigmas, max_abs_z);
  report(4, ok, buf);
}

// --- criterion 5: cone Gamma integrals vs the product formula ---------------

void criterion_5(Tables& tables) {
  bool ok = true;
  double worst = 0.0;
  PsiTable& table = tables[1];
  for (const char* ms : {"0,0", "1,0", "2,1"}) {
    const Signature m = Signature::parse(ms);
    const SphericalPoly& sp = table.get(m);
    for (double nu : {2.5, 3.0}) {
      std::vector<double> a;
      for (uint32_t j = 0; j < 2; ++j) a.push_back(nu + m.parts()[j]);
      const double got = cone_integral_invariant(2, sp.sym, nu, 1.0, 48);
      const double want = gamma_omega(2, a);
      const double rel = std::fabs(got - want) / std::fabs(want);
      worst = std::max(worst, rel);
      ok = ok && rel <= kGammaRelTol;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "weighted integrals match the Gamma product formula "
                "(worst rel err %.2e, tol %.0e)",
                worst, kGammaRelTol);
  report(5, ok, buf);
}

// --- criterion 6: Laplace transform closed form ------------------------------

void criterion_6(Tables& tables) {
  const Rational nu_rat = Rational::parse("5/2");
  const double nu = 2.5;
  bool ok = true;
  double worst = 0.0;
  for (uint32_t n : {1u, 2u}) {
    PsiTable& table = tables[n - 1];
    const double tol = (n == 1) ? kLaplaceRelTol1 : kLaplaceRelTol2;
    for (const Signature& m : signatures_up_to(n, 2)) {
      NuExpPoly ell = ell_fn(table, m);
      ExpPoly f(ell.c, ell.p.substitute_nu(nu_rat));
      for (double s : {1.5, 2.0, 3.0}) {
        LaplaceResult r =
            laplace_transform_num(n, nu, f, scalar_matrix(n, cplx(s)), 48);
        const double rel = rel_err(r.value, laplace_closed(n, nu, m, cplx(s)));
        worst = std::max(worst, rel);
        ok = ok && rel <= tol;
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "transform matches closed form at s in {1.5,2,3}, |m| <= 2 "
                "(worst rel err %.2e)",
                worst);
  report(6, ok, buf);
}

// --- criterion 7: transform intertwining -------------------------------------

void criterion_7() {
  SuiteReport rep = suite_intertwine(2, Rational(3), Signature::parse("1,0"),
                                     "all", 42, 48);
  bool ok = rep.pass;
  double worst = 0.0;
  const json doc = json::parse(rep.json);
  size_t cases = 0;
  for (const json& c : doc.at("cases")) {
    ++cases;
    const double maxrel = c.at("max_rel_error").get<double>();
    worst = std::max(worst, maxrel);
    ok = ok && c.at("pass").get<bool>() && maxrel <= kIntertwineRelTol;
    ok = ok && c.at("points").size() == 3;
  }
  ok = ok && cases == 3;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "operator action commutes with the transform at 3 tube points "
                "(worst rel err %.2e, tol %.0e)",
                worst, kIntertwineRelTol);
  report(7, ok, buf);
}

// --- criterion 8: annihilation of the ground state ---------------------------

void criterion_8(Tables& tables) {
  bool ok = true;
  const NuRat nu = NuRat::nu();
  for (uint32_t n = 1; n <= 3; ++n) {
    NuExpPoly f0 = ell_fn(tables[n - 1], zero_sig(n));
    RandomStream rng(42, "acceptance-annihilate", n);
    for (int k = 0; k < 5; ++k) {
      const RMat a = random_sym_rational(n, rng);
      NuExpPoly out = lambda_apply(LieElement::p_plus(a), f0, nu);
      ok = ok && out.is_zero();
    }
  }
  report(8, ok,
         "raising-type operator annihilates the ground state exactly, "
         "5 random symmetric directions per rank");
}

// --- criterion 9: commutators realized exactly -------------------------------

void criterion_9(Tables& tables) {
  bool ok = true;
  const NuRat nu = NuRat::nu();
  for (uint32_t n = 1; n <= 3; ++n) {
    PsiTable& table = tables[n - 1];
    const Sl2Triple t = Sl2Triple::make(n);
    const std::pair<const LieElement*, const LieElement*> pairs[] = {
        {&t.z, &t.x}, {&t.z, &t.y}, {&t.x, &t.y}};
    for (const Signature& m : signatures_up_to(n, 2)) {
      NuExpPoly f = ell_fn(table, m);
      for (const auto& [X, Y] : pairs) {
        NuExpPoly lhs1 = lambda_apply(*X, lambda_apply(*Y, f, nu), nu);
        NuExpPoly lhs2 = lambda_apply(*Y, lambda_apply(*X, f, nu), nu);
        NuExpPoly rhs = lambda_apply(lie_bracket(*X, *Y), f, nu);
        EntryPolyT<NuRat> diff = lhs1.p;
        diff -= lhs2.p;
        diff -= rhs.p;
        ok = ok && diff.is_zero();
      }
    }
  }
  report(9, ok,
         "commutator identity exact on |m| <= 2 for all pairs of the "
         "standard triple, ranks 1..3, symbolic parameter");
}

// --- criterion 10: orthogonality in the weighted space ------------------------

void criterion_10(Tables& tables) {
  const double nu = 3.0;
  const Rational nu_rat(3);
  bool ok = true;
  double worst_ratio = 0.0;
  for (uint32_t n : {1u, 2u}) {
    PsiTable& table = tables[n - 1];
    const std::vector<Signature> sigs = signatures_up_to(n, 2);
    std::vector<EntryPoly> polys;
    for (const Signature& m : sigs) {
      NuExpPoly ell = ell_fn(table, m);
      polys.push_back(ell.p.substitute_nu(nu_rat));
    }
    auto pairing = [&](size_t i, size_t j) {
      auto g = [&](const std::vector<double>& l) {
        std::vector<std::vector<double>> x(n, std::vector<double>(n, 0.0));
        for (uint32_t t = 0; t < n; ++t) x[t][t] = l[t];
        return polys[i].eval(x) * polys[j].eval(x);
      };
      // ell_m ell_m' = e^{-2 tr x} times the polynomial product.
      return cone_integral_blackbox(n, g, nu, 2.0, 48);
    };
    std::vector<double> norms(sigs.size());
    for (size_t i = 0; i < sigs.size(); ++i) {
      norms[i] = pairing(i, i);
      ok = ok && norms[i] > 0.0;
    }
    for (size_t i = 0; i < sigs.size(); ++i)
      for (size_t j = i + 1; j < sigs.size(); ++j) {
        const double cross = std::fabs(pairing(i, j));
        const double ratio = cross / std::sqrt(norms[i] * norms[j]);
        worst_ratio = std::max(worst_ratio, ratio);
        ok = ok && ratio <= kOrthoRelTol;
      }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "cross pairings vanish to %.0e of the norm product "
                "(worst %.2e), ranks 1..2",
                kOrthoRelTol, worst_ratio);
  report(10, ok, buf);
}

// --- criterion 11: reproducing kernel at rank 1 -------------------------------

void criterion_11(Tables& tables) {
  const double nu = 4.0;
  PsiTable& table = tables[0];
  bool ok = true;
  double worst = 0.0;
  const SphericalPoly* ps[] = {&table.get(Signature::parse("0")),
                               &table.get(Signature::parse("1"))};
  for (double w : {1.5, 2.0}) {
    auto Kw = [nu, w](cplx z) {
      return kernel_eval(1, nu, CMat{{z}}, CMat{{cplx(w)}});
    };
    for (const SphericalPoly* p : ps) {
      auto F = [p, nu](cplx z) { return q_fn_eval(*p, nu, CMat{{z}}); };
      TubeInner r = tube_inner_product_num(nu, F, Kw, 48);
      const cplx want = F(cplx(w));
      const double rel = std::abs(r.value - want) / std::abs(want);
      worst = std::max(worst, rel);
      ok = ok && rel <= kReproduceRelTol;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "pairing against the kernel reproduces point values "
                "(worst rel err %.2e, tol %.0e)",
                worst, kReproduceRelTol);
  report(11, ok, buf);
}

// --- criterion 12: deterministic reports --------------------------------------

void criterion_12() {
  SuiteReport one = suite_all(42, 1);
  SuiteReport eight = suite_all(42, 8);
  const bool ok = one.pass && eight.pass && one.json == eight.json;
  report(12, ok, "verification bundle byte-identical at 1 and 8 threads");
}

}  // namespace

int main() {
  Tables tables;

  criterion_1(tables);
  criterion_2(tables);
  criterion_3();
  criterion_4(tables);
  criterion_5(tables);
  criterion_6(tables);
  criterion_7();
  criterion_8(tables);
  criterion_9(tables);
  criterion_10(tables);
  criterion_11(tables);
  criterion_12();

  if (g_failures == 0) {
    std::printf("all 12 criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
