#include "conelab/spherical.hpp"

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "conelab/linalg.hpp"
#include "conelab/random.hpp"

namespace conelab {

namespace {

ExpandedSym<Rational> exp_sub(ExpandedSym<Rational> a, const ExpandedSym<Rational>& b) {
  for (const auto& [e, c] : b) exp_add_term(a, e, -c);
  return a;
}

}  // namespace

SymFunc radial_apply(const SymFunc& f) {
  uint32_t n = f.n();
  ExpandedSym<Rational> src = f.expanded(), out;
  for (uint32_t i = 0; i < n; ++i) {
    ExpandedSym<Rational> d2 =
        exp_mul_power(exp_derivative(exp_derivative(src, i), i), i, 2);
    for (const auto& [e, c] : d2) exp_add_term(out, e, c);
  }
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = i + 1; j < n; ++j) {
      ExpandedSym<Rational> diff =
          exp_sub(exp_mul_power(exp_derivative(src, i), i, 2),
                  exp_mul_power(exp_derivative(src, j), j, 2));
      ExpandedSym<Rational> q = exp_divide_lambda_diff(std::move(diff), i, j);
      for (const auto& [e, c] : q) exp_add_term(out, e, c);
    }
  return SymFunc::from_expanded(n, out);
}

PsiTable::PsiTable(uint32_t n) : n_(n) {
  if (n < 1 || n > 6) throw std::invalid_argument("PsiTable: rank out of range");
  if (const char* dir = std::getenv("CONELAB_CACHE_DIR"); dir && *dir) {
    cache_dir_ = dir;
    std::error_code ec;
    std::filesystem::create_directories(cache_dir_, ec);  // best effort
  }
}

const SphericalPoly& PsiTable::get(const Signature& m) {
  if (m.n() != n_) throw std::invalid_argument("PsiTable: signature length");
  std::lock_guard<std::mutex> lock(mu_);
  auto it = table_.find(m);
  if (it != table_.end()) return it->second;
  if (auto cached = load_cached(m)) {
    return table_.emplace(m, std::move(*cached)).first->second;
  }
  SphericalPoly p = construct(m);
  store_cached(p);
  return table_.emplace(m, std::move(p)).first->second;
}

void PsiTable::ensure_norm(uint32_t max_norm) {
  for (const Signature& s : signatures_up_to(n_, static_cast<int>(max_norm))) get(s);
}

SphericalPoly PsiTable::construct(const Signature& m) {
  uint32_t k = m.norm();
  if (k > kPsiDegreeBound)
    throw std::domain_error("spherical construction: degree exceeds bound " +
                            std::to_string(kPsiDegreeBound));
  Partition top = m.partition();

  // Dominance-lower candidates, listed in a linear extension of dominance
  // (degree-equal lex descending), so the target signature comes first.
  std::vector<Partition> cand;
  for (const Partition& p : partitions_max_parts(k, n_))
    if (dominated_by(p, top)) cand.push_back(p);
  std::sort(cand.begin(), cand.end(), PartGreater());
  if (cand.empty() || cand.front() != top)
    throw std::logic_error("spherical construction: candidate order broken");

  std::set<Partition> cand_set(cand.begin(), cand.end());
  std::map<Partition, size_t> index;
  for (size_t t = 0; t < cand.size(); ++t) index[cand[t]] = t;

  // Row t: the radial operator applied to m_{cand[t]}, in the monomial basis.
  std::vector<SymFunc::Map> rows(cand.size());
  std::vector<Rational> diag(cand.size());
  for (size_t t = 0; t < cand.size(); ++t) {
    SymFunc::Map one;
    one[cand[t]] = Rational(1);
    SymFunc img = radial_apply(SymFunc::from_monomial(n_, std::move(one)));
    for (const auto& [p, c] : img.monomial())
      if (!cand_set.count(p))
        throw std::logic_error("spherical construction: image escapes dominance order");
    rows[t] = img.monomial();
    auto dit = rows[t].find(cand[t]);
    diag[t] = dit == rows[t].end() ? Rational(0) : dit->second;
  }

  // Eigenvector with leading coefficient 1: back-substitution against the
  // top eigenvalue, strictly triangular because the operator only lowers
  // dominance.
  std::vector<Rational> coef(cand.size());
  coef[0] = Rational(1);
  for (size_t t = 1; t < cand.size(); ++t) {
    Rational num(0);
    for (size_t s = 0; s < t; ++s) {
      auto it = rows[s].find(cand[t]);
      if (it != rows[s].end()) num += coef[s] * it->second;
    }
    Rational denom = diag[0] - diag[t];
    if (denom.is_zero()) {
      if (!num.is_zero())
        throw std::logic_error("spherical construction: eigenvalue collision");
      coef[t] = Rational(0);
    } else {
      coef[t] = num / denom;
    }
  }

  // Normalize to value 1 at the identity: m_kappa(e) counts the distinct
  // permutations of kappa.
  Rational at_e(0);
  for (size_t t = 0; t < cand.size(); ++t)
    at_e += coef[t] * Rational(static_cast<long>(distinct_permutations(cand[t], n_).size()));
  if (at_e.is_zero())
    throw std::logic_error("spherical construction: vanishing at the identity");

  SymFunc::Map mono;
  for (size_t t = 0; t < cand.size(); ++t) {
    Rational c = coef[t] / at_e;
    if (!c.is_zero()) mono[cand[t]] = c;
  }

  SphericalPoly out;
  out.m = m;
  out.sym = SymFunc::from_monomial(n_, std::move(mono)).with_powersum();
  out.entry = powersum_lift(out.sym);
  out.rho = diag[0];
  return out;
}

namespace {

std::string cache_file_name(uint32_t n, const Signature& m) {
  std::string sig = m.to_string();
  for (char& c : sig)
    if (c == ',') c = '-';
  return "psi_n" + std::to_string(n) + "_m" + sig + ".txt";
}

Partition parse_partition_token(const std::string& tok) {
  // tok is "m[2,1]" or "m[]"
  if (tok.size() < 3 || tok[0] != 'm' || tok[1] != '[' || tok.back() != ']')
    throw std::runtime_error("psi cache: bad monomial token '" + tok + "'");
  std::string inner = tok.substr(2, tok.size() - 3);
  Partition p;
  if (inner.empty()) return p;
  size_t pos = 0;
  while (pos <= inner.size()) {
    size_t comma = inner.find(',', pos);
    std::string part = inner.substr(pos, comma == std::string::npos ? comma : comma - pos);
    p.push_back(static_cast<uint32_t>(std::stoul(part)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return p;
}

SymFunc parse_mono_line(uint32_t n, const std::string& s) {
  if (s == "0") return SymFunc::zero(n);
  SymFunc::Map mono;
  size_t pos = 0;
  int sign = 1;
  if (!s.empty() && s[0] == '-') {
    sign = -1;
    pos = 1;
  }
  while (pos < s.size()) {
    size_t plus = s.find(" + ", pos);
    size_t minus = s.find(" - ", pos);
    size_t end = std::min(plus, minus);
    std::string term = s.substr(pos, end == std::string::npos ? end : end - pos);
    size_t star = term.find('*');
    Rational c = star == std::string::npos ? Rational(1)
                                           : Rational::parse(term.substr(0, star));
    Partition p = parse_partition_token(
        star == std::string::npos ? term : term.substr(star + 1));
    mono[p] = sign > 0 ? c : -c;
    if (end == std::string::npos) break;
    sign = end == minus ? -1 : 1;
    pos = end + 3;
  }
  return SymFunc::from_monomial(n, std::move(mono));
}

}  // namespace

std::optional<SphericalPoly> PsiTable::load_cached(const Signature& m) const {
  if (cache_dir_.empty() || m.norm() == 0) return std::nullopt;
  std::ifstream in(std::filesystem::path(cache_dir_) / cache_file_name(n_, m));
  if (!in) return std::nullopt;
  try {
    std::string tag, line;
    uint32_t version = 0, n_file = 0;
    in >> tag >> version;
    if (tag != "conelab-psi" || version != 1) return std::nullopt;
    in >> tag >> n_file;
    if (tag != "n" || n_file != n_) return std::nullopt;
    std::string sig;
    in >> tag >> sig;
    if (tag != "m" || Signature::parse(sig) != m) return std::nullopt;
    std::string rho_s;
    in >> tag >> rho_s;
    if (tag != "rho") return std::nullopt;
    in >> tag;
    if (tag != "mono") return std::nullopt;
    std::getline(in, line);
    if (!line.empty() && line[0] == ' ') line = line.substr(1);
    SphericalPoly p;
    p.m = m;
    p.sym = parse_mono_line(n_, line).with_powersum();
    p.entry = powersum_lift(p.sym);
    p.rho = Rational::parse(rho_s);
    return p;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable cache entry: rebuild
  }
}

void PsiTable::store_cached(const SphericalPoly& p) const {
  if (cache_dir_.empty() || p.m.norm() == 0) return;
  std::filesystem::path final_path =
      std::filesystem::path(cache_dir_) / cache_file_name(n_, p.m);
  std::filesystem::path tmp_path = final_path;
  tmp_path += ".tmp" + std::to_string(static_cast<unsigned long>(::getpid()));
  {
    std::ofstream out(tmp_path);
    if (!out) return;
    out << "conelab-psi 1\n";
    out << "n " << n_ << "\n";
    out << "m " << p.m.to_string() << "\n";
    out << "rho " << p.rho.to_string() << "\n";
    out << "mono " << p.sym.to_string('m') << "\n";
    if (!out) return;
  }
  std::error_code ec;
  std::filesystem::rename(tmp_path, final_path, ec);
  if (ec) std::filesystem::remove(tmp_path, ec);
}

OracleResult haar_average_oracle(const SphericalPoly& psi,
                                 const std::vector<std::vector<Rational>>& x,
                                 uint64_t samples, uint64_t seed,
                                 uint64_t case_id, uint32_t threads) {
  uint32_t n = psi.m.n();
  if (x.size() != n) throw std::invalid_argument("haar_average_oracle: size");
  if (samples == 0) throw std::invalid_argument("haar_average_oracle: no samples");

  Rational exact_q = psi.entry.eval<Rational>(x);
  double exact = exact_q.to_double();
  DMat xd = dmat_from_rational(x);
  EntryPoly dp = delta_power(n, psi.m);
  std::vector<uint32_t> delta(n);
  for (uint32_t j = 1; j <= n; ++j)
    delta[j - 1] = psi.m[j] - (j < n ? psi.m[j + 1] : 0);

  constexpr uint64_t kBatch = 16384;
  uint64_t nb = (samples + kBatch - 1) / kBatch;
  std::vector<double> bsum(nb, 0.0), bsq(nb, 0.0);

  RandomStream base(seed, "psi-oracle", case_id);
  auto run_batch = [&](uint64_t b) {
    RandomStream rng = base.substream(b);
    uint64_t lo = b * kBatch, hi = std::min(samples, lo + kBatch);
    double s = 0.0, s2 = 0.0;
    for (uint64_t t = lo; t < hi; ++t) {
      DMat l = sample_haar_so(n, rng);
      DMat y = dmat_mul(dmat_mul(l, xd), dmat_transpose(l));
      for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j) {
          double avg = 0.5 * (y[i][j] + y[j][i]);
          y[i][j] = y[j][i] = avg;
        }
      std::vector<double> minors = leading_minors(y);
      double v;
      bool pos = true;
      for (double mk : minors) pos = pos && mk > 0.0;
      if (pos) {
        v = 1.0;
        for (uint32_t kk = 0; kk < n; ++kk)
          for (uint32_t t2 = 0; t2 < delta[kk]; ++t2) v *= minors[kk];
      } else {
        v = dp.eval<double>(y);
      }
      s += v;
      s2 += v * v;
    }
    bsum[b] = s;
    bsq[b] = s2;
  };

  uint32_t nthreads = std::max<uint32_t>(1, threads);
  if (nthreads == 1 || nb == 1) {
    for (uint64_t b = 0; b < nb; ++b) run_batch(b);
  } else {
    std::atomic<uint64_t> next{0};
    std::vector<std::thread> pool;
    for (uint32_t t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        for (uint64_t b = next.fetch_add(1); b < nb; b = next.fetch_add(1)) run_batch(b);
      });
    for (auto& th : pool) th.join();
  }

  double total = 0.0, total_sq = 0.0;
  for (uint64_t b = 0; b < nb; ++b) {
    total += bsum[b];
    total_sq += bsq[b];
  }
  double nd = static_cast<double>(samples);
  OracleResult r;
  r.samples = samples;
  r.estimate = total / nd;
  double var = samples > 1 ? (total_sq - total * total / nd) / (nd - 1.0) : 0.0;
  r.stderr_est = var > 0.0 ? std::sqrt(var / nd) : 0.0;
  r.exact = exact;
  r.zscore = r.stderr_est > 0.0 ? (r.estimate - exact) / r.stderr_est : 0.0;
  return r;
}

BinomialTable binomial_coeffs(PsiTable& table, const Signature& m) {
  uint32_t n = table.n(), k = m.norm();
  SymFunc shifted = table.get(m).sym.var_shifted(Rational(1));

  BinomialTable out;
  out.m = m;
  for (const Signature& sig : signatures_up_to(n, static_cast<int>(k)))
    out.coeff[sig] = Rational(0);

  for (uint32_t g = 0; g <= k; ++g) {
    std::vector<Signature> sigs;
    for (const auto& [sig, c] : out.coeff)
      if (sig.norm() == g) sigs.push_back(sig);
    std::vector<Partition> basis = partitions_max_parts(g, n);
    std::vector<std::vector<Rational>> a(basis.size(),
                                         std::vector<Rational>(sigs.size(), Rational(0)));
    std::vector<Rational> b(basis.size(), Rational(0));
    for (size_t col = 0; col < sigs.size(); ++col) {
      const SymFunc& psi = table.get(sigs[col]).sym;
      for (size_t row = 0; row < basis.size(); ++row)
        a[row][col] = psi.mono_coeff(basis[row]);
    }
    for (size_t row = 0; row < basis.size(); ++row)
      b[row] = shifted.mono_coeff(basis[row]);
    std::vector<Rational> sol = linear_solve(a, b);
    for (size_t col = 0; col < sigs.size(); ++col) out.coeff[sigs[col]] = sol[col];
  }
  return out;
}

}  // namespace conelab
