#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "conelab/cone.hpp"
#include "conelab/gamma_laguerre.hpp"
#include "conelab/operator_algebra.hpp"
#include "conelab/quadrature.hpp"
#include "conelab/spherical.hpp"
#include "conelab/suites.hpp"
#include "conelab/version.hpp"

namespace {

using conelab::CMat;
using conelab::cplx;
using conelab::Rational;
using conelab::Signature;
using nlohmann::json;

// Exact dyadic conversion so float inputs round-trip into the rational layer.
Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("matrix entry not finite");
  int exp = 0;
  const double mant = std::frexp(v, &exp);
  const long long scaled = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r(static_cast<long>(scaled));
  Rational two(2);
  for (int i = 0; i < std::abs(exp); ++i)
    r = exp > 0 ? r * two : r / two;
  return r;
}

Rational rational_from_json(const json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number_float()) return rational_from_double(v.get<double>());
  throw std::invalid_argument("expected a number or a rational string");
}

std::vector<std::vector<Rational>> parse_rational_matrix(const std::string& text,
                                                         uint32_t n) {
  json doc = json::parse(text);
  if (!doc.is_array() || doc.size() != n)
    throw std::invalid_argument("matrix must be an n x n JSON array");
  std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n));
  for (uint32_t i = 0; i < n; ++i) {
    if (!doc[i].is_array() || doc[i].size() != n)
      throw std::invalid_argument("matrix must be an n x n JSON array");
    for (uint32_t j = 0; j < n; ++j) out[i][j] = rational_from_json(doc[i][j]);
  }
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      if (!(out[i][j] == out[j][i]))
        throw std::invalid_argument("matrix must be symmetric");
  return out;
}

cplx complex_from_json(const json& v) {
  if (v.is_array()) {
    if (v.size() != 2) throw std::invalid_argument("complex entry must be [re, im]");
    return {rational_from_json(v[0]).to_double(), rational_from_json(v[1]).to_double()};
  }
  return {rational_from_json(v).to_double(), 0.0};
}

CMat parse_complex_matrix(const std::string& text, uint32_t n) {
  json doc = json::parse(text);
  if (!doc.is_array() || doc.size() != n)
    throw std::invalid_argument("matrix must be an n x n JSON array");
  CMat out(n, std::vector<cplx>(n));
  for (uint32_t i = 0; i < n; ++i) {
    if (!doc[i].is_array() || doc[i].size() != n)
      throw std::invalid_argument("matrix must be an n x n JSON array");
    for (uint32_t j = 0; j < n; ++j) out[i][j] = complex_from_json(doc[i][j]);
  }
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      if (std::abs(out[i][j] - out[j][i]) > 0.0)
        throw std::invalid_argument("matrix must be symmetric");
  return out;
}

std::optional<Rational> parse_nu(const std::string& s) {
  if (s == "sym") return std::nullopt;
  return Rational::parse(s);
}

Signature parse_signature_for(const std::string& s, uint32_t n) {
  Signature m = Signature::parse(s);
  if (m.n() != n)
    throw std::invalid_argument("signature length must equal --n");
  return m;
}

Signature default_signature(uint32_t n) {
  std::vector<uint32_t> v(n, 0);
  v[0] = 1;
  return Signature(std::move(v));
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw std::invalid_argument("empty entry in list");
    out.push_back(std::stod(tok));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

int emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open output file " << out_path << "\n";
    return 2;
  }
  f << content;
  return f.good() ? 0 : 1;
}

std::string fmt(double v) { return json(v).dump(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(conelab::kToolName) +
               " - exact and numeric special functions on the positive "
               "definite cone"};
  app.set_version_flag("--version",
                       std::string(conelab::kToolName) + " " + conelab::kToolVersion);
  app.require_subcommand(1);

  // ---- tables ---------------------------------------------------------------
  auto* tables = app.add_subcommand(
      "tables", "Print spherical polynomials, binomial tables, Laguerre "
                "polynomials, and ladder coefficients");
  uint32_t t_n = 2;
  int t_max = 2;
  std::string t_out;
  tables->add_option("--n", t_n, "matrix size")->required();
  tables->add_option("--max-norm", t_max, "largest signature norm");
  tables->add_option("--out", t_out, "output file (default stdout)");

  // ---- psi ------------------------------------------------------------------
  auto* psi = app.add_subcommand("psi", "Print one spherical polynomial");
  uint32_t p_n = 2;
  std::string p_m, p_basis = "monomial", p_out;
  psi->add_option("--n", p_n, "matrix size")->required();
  psi->add_option("--m", p_m, "signature, e.g. 2,0")->required();
  psi->add_option("--basis", p_basis, "monomial|powersum|entry")
      ->check(CLI::IsMember({"monomial", "powersum", "entry"}));
  psi->add_option("--out", p_out, "output file (default stdout)");

  // ---- psi-oracle -----------------------------------------------------------
  auto* oracle = app.add_subcommand(
      "psi-oracle", "Monte-Carlo average of the defining rotation integral "
                    "against the exact polynomial");
  uint32_t o_n = 2, o_threads = 1;
  std::string o_m, o_x, o_out;
  uint64_t o_samples = 1000000, o_seed = 42;
  oracle->add_option("--n", o_n, "matrix size")->required();
  oracle->add_option("--m", o_m, "signature")->required();
  oracle->add_option("--x", o_x, "symmetric matrix, JSON rows")->required();
  oracle->add_option("--samples", o_samples, "sample count");
  oracle->add_option("--seed", o_seed, "random seed");
  oracle->add_option("--threads", o_threads, "worker threads");
  oracle->add_option("--out", o_out, "output file (default stdout)");

  // ---- laguerre ---------------------------------------------------------------
  auto* lag = app.add_subcommand("laguerre", "Print one Laguerre function");
  uint32_t l_n = 2;
  std::string l_m, l_nu = "sym", l_out;
  lag->add_option("--n", l_n, "matrix size")->required();
  lag->add_option("--m", l_m, "signature")->required();
  lag->add_option("--nu", l_nu, "rational parameter or 'sym'");
  lag->add_option("--out", l_out, "output file (default stdout)");

  // ---- qfn --------------------------------------------------------------------
  auto* qfn = app.add_subcommand("qfn", "Evaluate a tube-domain basis function");
  uint32_t q_n = 2;
  std::string q_m, q_nu, q_z, q_out;
  qfn->add_option("--n", q_n, "matrix size")->required();
  qfn->add_option("--m", q_m, "signature")->required();
  qfn->add_option("--nu", q_nu, "rational parameter")->required();
  qfn->add_option("--z", q_z, "complex symmetric matrix, JSON rows, complex as [re, im]")
      ->required();
  qfn->add_option("--out", q_out, "output file (default stdout)");

  // ---- apply ------------------------------------------------------------------
  auto* apply = app.add_subcommand(
      "apply", "Apply a relation operator (1 eigen, 2 lowering, 3 raising) to "
               "a Laguerre function");
  int a_op = 1;
  uint32_t a_n = 2;
  std::string a_m, a_nu = "sym", a_out;
  apply->add_option("--op", a_op, "relation operator index")
      ->check(CLI::Range(1, 3))
      ->required();
  apply->add_option("--n", a_n, "matrix size")->required();
  apply->add_option("--m", a_m, "signature")->required();
  apply->add_option("--nu", a_nu, "rational parameter or 'sym'");
  apply->add_option("--out", a_out, "output file (default stdout)");

  // ---- verify -----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->require_subcommand(1);

  auto* vrec = verify->add_subcommand("recursion", "ladder/eigen expansions");
  uint32_t vr_n = 2, vr_threads = 1;
  int vr_max = 2;
  std::string vr_nu = "sym", vr_out;
  vrec->add_option("--n", vr_n, "matrix size")->required();
  vrec->add_option("--nu", vr_nu, "rational parameter or 'sym'");
  vrec->add_option("--max-norm", vr_max, "largest signature norm");
  vrec->add_option("--threads", vr_threads, "worker threads");
  vrec->add_option("--out", vr_out, "report file (default stdout)");

  auto* vlap = verify->add_subcommand("laplace", "transform closed form");
  uint32_t vl_n = 2, vl_nodes = 48;
  std::string vl_nu, vl_m, vl_s = "1.5,2,3", vl_out;
  vlap->add_option("--n", vl_n, "matrix size")->required();
  vlap->add_option("--nu", vl_nu, "rational parameter")->required();
  vlap->add_option("--m", vl_m, "signature (default 1,0,...)");
  vlap->add_option("--s", vl_s, "comma list of scalar points");
  vlap->add_option("--nodes", vl_nodes, "quadrature nodes");
  vlap->add_option("--out", vl_out, "report file (default stdout)");

  auto* vint = verify->add_subcommand("intertwine", "transform intertwining");
  uint32_t vi_n = 2, vi_nodes = 48;
  std::string vi_nu, vi_m, vi_case = "all", vi_out;
  uint64_t vi_seed = 42;
  vint->add_option("--n", vi_n, "matrix size")->required();
  vint->add_option("--nu", vi_nu, "rational parameter")->required();
  vint->add_option("--m", vi_m, "signature (default 1,0,...)");
  vint->add_option("--case", vi_case, "kC|pPlus|pMinus|all")
      ->check(CLI::IsMember({"kC", "pPlus", "pMinus", "all"}));
  vint->add_option("--seed", vi_seed, "random seed");
  vint->add_option("--nodes", vi_nodes, "quadrature nodes");
  vint->add_option("--out", vi_out, "report file (default stdout)");

  auto* vcls = verify->add_subcommand("classical", "rank-one reductions");
  uint32_t vc_max = 6;
  std::string vc_nu = "5/2", vc_out;
  vcls->add_option("--max-degree", vc_max, "largest degree");
  vcls->add_option("--nu", vc_nu, "rational parameter for numeric checks");
  vcls->add_option("--out", vc_out, "report file (default stdout)");

  auto* vall = verify->add_subcommand("all", "cross-module bundle");
  uint64_t va_seed = 42;
  uint32_t va_threads = 1;
  std::string va_out;
  vall->add_option("--seed", va_seed, "random seed");
  vall->add_option("--threads", va_threads, "worker threads");
  vall->add_option("--out", va_out, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (tables->parsed()) {
      conelab::PsiTable table(t_n);
      std::vector<Signature> sigs = conelab::signatures_up_to(t_n, t_max);
      std::string text;
      for (const Signature& m : sigs)
        text += "psi " + m.to_string() + ": " +
                table.get(m).sym.to_string('m') + "\n";
      for (const Signature& m : sigs) {
        conelab::BinomialTable bt = conelab::binomial_coeffs(table, m);
        text += "binomial " + m.to_string() + ":";
        for (const auto& [sig, value] : bt.coeff)
          text += " [" + sig.to_string() + "]=" + value.to_string();
        text += "\n";
      }
      for (const Signature& m : sigs)
        text += "laguerre " + m.to_string() + ": " +
                conelab::laguerre_sym(table, m).to_string('m') + "\n";
      for (const Signature& m : sigs) {
        text += "c " + m.to_string() + ":";
        for (uint32_t j = 1; j <= t_n; ++j)
          text += " j=" + std::to_string(j) + "->" +
                  conelab::c_coeff(m, j).to_string();
        text += "\n";
      }
      return emit(text, t_out);
    }

    if (psi->parsed()) {
      Signature m = parse_signature_for(p_m, p_n);
      conelab::PsiTable table(p_n);
      const conelab::SphericalPoly& sp = table.get(m);
      std::string text;
      if (p_basis == "monomial") text = sp.sym.to_string('m');
      else if (p_basis == "powersum") text = sp.sym.to_string('p');
      else text = sp.entry.to_string();
      return emit(text + "\n", p_out);
    }

    if (oracle->parsed()) {
      Signature m = parse_signature_for(o_m, o_n);
      auto x = parse_rational_matrix(o_x, o_n);
      conelab::PsiTable table(o_n);
      const conelab::SphericalPoly& sp = table.get(m);
      conelab::OracleResult r =
          conelab::haar_average_oracle(sp, x, o_samples, o_seed, 0, o_threads);
      const Rational exact_rat = sp.entry.eval(x);
      std::string text = "estimate " + fmt(r.estimate) + "\n" +
                         "stderr " + fmt(r.stderr_est) + "\n" +
                         "exact " + exact_rat.to_string() + " (" +
                         fmt(r.exact) + ")\n" +
                         "zscore " + fmt(r.zscore) + "\n";
      return emit(text, o_out);
    }

    if (lag->parsed()) {
      Signature m = parse_signature_for(l_m, l_n);
      conelab::PsiTable table(l_n);
      conelab::NuExpPoly ell = conelab::ell_fn(table, m);
      std::optional<Rational> nu = parse_nu(l_nu);
      std::string text =
          nu ? conelab::ExpPoly(ell.c, ell.p.substitute_nu(*nu)).to_string()
             : ell.to_string();
      return emit(text + "\n", l_out);
    }

    if (qfn->parsed()) {
      Signature m = parse_signature_for(q_m, q_n);
      Rational nu = Rational::parse(q_nu);
      CMat z = parse_complex_matrix(q_z, q_n);
      conelab::PsiTable table(q_n);
      cplx v = conelab::q_fn_eval(table.get(m), nu.to_double(), z);
      return emit(json::array({v.real(), v.imag()}).dump() + "\n", q_out);
    }

    if (apply->parsed()) {
      Signature m = parse_signature_for(a_m, a_n);
      conelab::PsiTable table(a_n);
      conelab::NuExpPoly ell = conelab::ell_fn(table, m);
      std::optional<Rational> nu = parse_nu(a_nu);
      conelab::LieElement op = conelab::recursion_operator(a_op, a_n);
      std::string text;
      if (nu) {
        conelab::ExpPoly f(ell.c, ell.p.substitute_nu(*nu));
        conelab::ExpPoly g = conelab::lambda_apply(op, f, *nu);
        text = "input: " + f.to_string() + "\noutput: " + g.to_string() + "\n";
      } else {
        conelab::NuExpPoly g =
            conelab::lambda_apply(op, ell, conelab::NuRat::nu());
        text = "input: " + ell.to_string() + "\noutput: " + g.to_string() + "\n";
      }
      return emit(text, a_out);
    }

    conelab::SuiteReport report;
    std::string out_path;
    if (vrec->parsed()) {
      report = conelab::suite_recursion(vr_n, parse_nu(vr_nu), vr_max, vr_threads);
      out_path = vr_out;
    } else if (vlap->parsed()) {
      Signature m = vl_m.empty() ? default_signature(vl_n)
                                 : parse_signature_for(vl_m, vl_n);
      report = conelab::suite_laplace(vl_n, Rational::parse(vl_nu), m,
                                      parse_double_list(vl_s), vl_nodes);
      out_path = vl_out;
    } else if (vint->parsed()) {
      Signature m = vi_m.empty() ? default_signature(vi_n)
                                 : parse_signature_for(vi_m, vi_n);
      report = conelab::suite_intertwine(vi_n, Rational::parse(vi_nu), m,
                                         vi_case, vi_seed, vi_nodes);
      out_path = vi_out;
    } else if (vcls->parsed()) {
      report = conelab::suite_classical(vc_max, Rational::parse(vc_nu));
      out_path = vc_out;
    } else if (vall->parsed()) {
      report = conelab::suite_all(va_seed, va_threads);
      out_path = va_out;
    } else {
      std::cerr << "error: no subcommand selected\n";
      return 2;
    }
    const int rc = emit(report.json, out_path);
    if (rc != 0) return rc;
    if (!out_path.empty())
      std::cerr << (report.pass ? "PASS" : "FAIL") << " (" << report.failed
                << "/" << report.total << " failed), report written to "
                << out_path << "\n";
    return report.pass ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
