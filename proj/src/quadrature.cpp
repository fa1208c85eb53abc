#include "conelab/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "conelab/cone.hpp"
#include "conelab/gamma_laguerre.hpp"
#include "conelab/random.hpp"

namespace conelab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Nodes/weights from the symmetric tridiagonal recurrence matrix: nodes are
// its eigenvalues, weights mu0 times the squared first eigenvector entries.
GaussRule golub_welsch(const std::vector<double>& diag,
                       const std::vector<double>& off, double mu0) {
  const size_t k = diag.size();
  DMat jm(k, std::vector<double>(k, 0.0));
  for (size_t i = 0; i < k; ++i) {
    jm[i][i] = diag[i];
    if (i + 1 < k) {
      jm[i][i + 1] = off[i];
      jm[i + 1][i] = off[i];
    }
  }
  EigenSym es = jacobi_eigen_sym(jm);
  std::vector<size_t> order(k);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return es.values[a] < es.values[b]; });
  GaussRule rule;
  rule.nodes.reserve(k);
  rule.weights.reserve(k);
  for (size_t idx : order) {
    const double v0 = es.vectors[0][idx];
    rule.nodes.push_back(es.values[idx]);
    rule.weights.push_back(mu0 * v0 * v0);
  }
  return rule;
}

cplx cpow_real(cplx base, double p) { return std::exp(p * std::log(base)); }

double pow_u(double x, uint32_t e) {
  double r = 1.0;
  while (e) {
    if (e & 1u) r *= x;
    x *= x;
    e >>= 1u;
  }
  return r;
}

// prod_{i<j} (l_i - l_j) as an expanded (antisymmetric) polynomial.
ExpandedSym<Rational> vandermonde_expanded(uint32_t n) {
  ExpandedSym<Rational> acc;
  std::vector<uint32_t> zero(n, 0);
  exp_add_term(acc, zero, Rational(1));
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = i + 1; j < n; ++j) {
      ExpandedSym<Rational> fac;
      std::vector<uint32_t> ei(n, 0), ej(n, 0);
      ei[i] = 1;
      ej[j] = 1;
      exp_add_term(fac, ei, Rational(1));
      exp_add_term(fac, ej, Rational(-1));
      acc = exp_mul(acc, fac);
    }
  }
  return acc;
}

double ordered_moment_rule(uint32_t n, const std::vector<uint32_t>& e, double alpha,
                           double rate, const GaussRule& s2_rule,
                           const GaussRule& s3_rule) {
  if (rate <= 0.0) throw std::invalid_argument("ordered_moment: rate must be positive");
  if (n == 1) {
    const double a = e[0] + alpha;
    return std::exp(std::lgamma(a + 1.0) - (a + 1.0) * std::log(rate));
  }
  if (n == 2) {
    const double bigk = e[0] + e[1] + 2.0 * alpha + 2.0;
    const double pref = std::exp(std::lgamma(bigk) - bigk * std::log(rate));
    double acc = 0.0;
    for (size_t i = 0; i < s2_rule.nodes.size(); ++i) {
      const double s = s2_rule.nodes[i];
      acc += s2_rule.weights[i] * pow_u(s, e[1]) * std::pow(1.0 + s, -bigk);
    }
    return pref * acc;
  }
  if (n == 3) {
    const double bigk = e[0] + e[1] + e[2] + 3.0 * alpha + 3.0;
    const double pref = std::exp(std::lgamma(bigk) - bigk * std::log(rate));
    double acc = 0.0;
    for (size_t i = 0; i < s2_rule.nodes.size(); ++i) {
      const double s2 = s2_rule.nodes[i];
      double inner = 0.0;
      for (size_t j = 0; j < s3_rule.nodes.size(); ++j) {
        const double s3 = s3_rule.nodes[j];
        inner += s3_rule.weights[j] * pow_u(s3, e[2]) *
                 std::pow(1.0 + s2 + s2 * s3, -bigk);
      }
      acc += s2_rule.weights[i] * pow_u(s2, e[1] + e[2]) * inner;
    }
    return pref * acc;
  }
  throw std::invalid_argument("ordered_moment: rank must be 1, 2, or 3");
}

cplx ordered_moment_n2_rule(uint32_t e1, uint32_t e2, double alpha, cplx rate1,
                            cplx rate2, const GaussRule& s_rule) {
  if (rate1.real() <= 0.0 || (rate1 + rate2).real() <= 0.0)
    throw std::invalid_argument("ordered_moment_n2: rates must have positive real part");
  const double bigk = e1 + e2 + 2.0 * alpha + 2.0;
  const double lg = std::lgamma(bigk);
  cplx acc{0.0};
  for (size_t i = 0; i < s_rule.nodes.size(); ++i) {
    const double s = s_rule.nodes[i];
    acc += s_rule.weights[i] * pow_u(s, e2) * cpow_real(rate1 + rate2 * s, -bigk);
  }
  return std::exp(lg) * acc;
}

// Gaussian reference over ordered eigenvalues: int_{l1>...>ln} V(l) e^{-|l|^2/2} dl,
// evaluated by node-count-controlled quadrature so doubling gives a residual.
double gaussian_eigen_side(uint32_t n, uint32_t nodes) {
  if (n == 1) {
    GaussRule h = gauss_hermite(nodes);
    double acc = 0.0;
    for (double w : h.weights) acc += w;
    return std::sqrt(2.0) * acc;  // l = sqrt(2) x
  }
  if (n == 2) {
    // l = u +- v, v > 0: integral 2 * int e^{-u^2} du * int 2v e^{-v^2} dv
    // with t = v^2 turning the v part into a plain exponential moment.
    GaussRule h = gauss_hermite(nodes);
    GaussRule g = gauss_laguerre(nodes, 0.0);
    double hu = 0.0, gv = 0.0;
    for (double w : h.weights) hu += w;
    for (double w : g.weights) gv += w;
    return 2.0 * hu * gv;
  }
  if (n == 3) {
    // Center of mass separates; the orthogonal plane in polar coordinates has
    // an exact radial Gamma moment and a smooth angular factor on (pi/6, pi/2).
    GaussRule leg = gauss_legendre(nodes, kPi / 6.0, kPi / 2.0);
    double ang = 0.0;
    for (size_t i = 0; i < leg.nodes.size(); ++i) {
      const double c = std::cos(leg.nodes[i]);
      const double s = std::sin(leg.nodes[i]);
      ang += leg.weights[i] * std::sqrt(2.0) * c * (1.5 * s * s - 0.5 * c * c);
    }
    return 3.0 * kPi * ang;
  }
  throw std::invalid_argument("calibrate_cn: rank must be 1, 2, or 3");
}

struct BatchStat {
  double s_re = 0.0, s_im = 0.0, q_re = 0.0, q_im = 0.0;
  uint64_t count = 0;
};

}  // namespace

GaussRule gauss_laguerre(uint32_t k, double alpha) {
  if (k == 0) throw std::invalid_argument("gauss_laguerre: need at least one node");
  if (alpha <= -1.0) throw std::invalid_argument("gauss_laguerre: alpha must exceed -1");
  std::vector<double> diag(k), off(k > 1 ? k - 1 : 0);
  for (uint32_t i = 0; i < k; ++i) diag[i] = 2.0 * i + alpha + 1.0;
  for (uint32_t i = 1; i < k; ++i) off[i - 1] = std::sqrt(i * (i + alpha));
  return golub_welsch(diag, off, std::tgamma(alpha + 1.0));
}

GaussRule gauss_legendre(uint32_t k, double a, double b) {
  if (k == 0) throw std::invalid_argument("gauss_legendre: need at least one node");
  std::vector<double> diag(k, 0.0), off(k > 1 ? k - 1 : 0);
  for (uint32_t i = 1; i < k; ++i)
    off[i - 1] = i / std::sqrt(4.0 * i * i - 1.0);
  GaussRule base = golub_welsch(diag, off, 2.0);
  GaussRule rule;
  rule.nodes.reserve(k);
  rule.weights.reserve(k);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (uint32_t i = 0; i < k; ++i) {
    rule.nodes.push_back(mid + half * base.nodes[i]);
    rule.weights.push_back(half * base.weights[i]);
  }
  return rule;
}

GaussRule gauss_jacobi01(uint32_t k, double alpha, double beta) {
  if (k == 0) throw std::invalid_argument("gauss_jacobi01: need at least one node");
  if (alpha <= -1.0 || beta <= -1.0)
    throw std::invalid_argument("gauss_jacobi01: exponents must exceed -1");
  // Weight (1-x)^aj (1+x)^bj on [-1,1] with aj = beta, bj = alpha, then
  // s = (1+x)/2 carries it to s^alpha (1-s)^beta on [0,1].
  const double aj = beta, bj = alpha;
  std::vector<double> diag(k), off(k > 1 ? k - 1 : 0);
  diag[0] = (bj - aj) / (aj + bj + 2.0);
  for (uint32_t i = 1; i < k; ++i) {
    const double t = 2.0 * i + aj + bj;
    diag[i] = (bj * bj - aj * aj) / (t * (t + 2.0));
    off[i - 1] = std::sqrt(4.0 * i * (i + aj) * (i + bj) * (i + aj + bj) /
                           (t * t * (t + 1.0) * (t - 1.0)));
  }
  const double mu0 = std::exp((aj + bj + 1.0) * std::log(2.0) +
                              std::lgamma(aj + 1.0) + std::lgamma(bj + 1.0) -
                              std::lgamma(aj + bj + 2.0));
  GaussRule base = golub_welsch(diag, off, mu0);
  GaussRule rule;
  rule.nodes.reserve(k);
  rule.weights.reserve(k);
  const double scale = std::exp(-(alpha + beta + 1.0) * std::log(2.0));
  for (uint32_t i = 0; i < k; ++i) {
    rule.nodes.push_back(0.5 * (1.0 + base.nodes[i]));
    rule.weights.push_back(scale * base.weights[i]);
  }
  return rule;
}

GaussRule gauss_hermite(uint32_t k) {
  if (k == 0) throw std::invalid_argument("gauss_hermite: need at least one node");
  std::vector<double> diag(k, 0.0), off(k > 1 ? k - 1 : 0);
  for (uint32_t i = 1; i < k; ++i) off[i - 1] = std::sqrt(0.5 * i);
  return golub_welsch(diag, off, std::sqrt(kPi));
}

Calibration calibrate_cn(uint32_t n, uint32_t nodes) {
  // Reference Gaussian integral of exp(-tr(x^2)/2) in the Euclidean volume of
  // the trace form (off-diagonal coordinates carry length sqrt(2)), matching
  // the normalization under which the cone Gamma function factorizes as
  // (2 pi)^{n(n-1)/4} prod_j Gamma(a_j - (j-1)/2).
  const double dim = 0.5 * n * (n + 1.0);
  const double entry_side = std::pow(2.0 * kPi, 0.5 * dim);
  const double coarse = gaussian_eigen_side(n, nodes);
  const double fine = gaussian_eigen_side(n, 2 * nodes);
  Calibration cal;
  cal.nodes = nodes;
  cal.residual = std::abs(coarse - fine) / std::abs(fine);
  cal.c = entry_side / fine;
  if (cal.residual > 1e-8)
    throw std::runtime_error("calibrate_cn: quadrature residual above gate");
  return cal;
}

double ordered_moment(uint32_t n, const std::vector<uint32_t>& e, double alpha,
                      double rate, uint32_t nodes) {
  if (e.size() != n) throw std::invalid_argument("ordered_moment: exponent count");
  GaussRule s2, s3;
  if (n == 2) s2 = gauss_jacobi01(nodes, alpha, 0.0);
  if (n == 3) {
    s2 = gauss_jacobi01(nodes, 2.0 * alpha + 1.0, 0.0);
    s3 = gauss_jacobi01(nodes, alpha, 0.0);
  }
  return ordered_moment_rule(n, e, alpha, rate, s2, s3);
}

cplx ordered_moment_n2(uint32_t e1, uint32_t e2, double alpha, cplx rate1,
                       cplx rate2, uint32_t nodes) {
  GaussRule s = gauss_jacobi01(nodes, alpha, 0.0);
  return ordered_moment_n2_rule(e1, e2, alpha, rate1, rate2, s);
}

double cone_integral_invariant(uint32_t n, const SymFunc& g, double nu, double rate,
                               uint32_t nodes) {
  if (n < 1 || n > 3)
    throw std::invalid_argument("cone_integral_invariant: rank must be 1, 2, or 3");
  const double alpha = nu - 0.5 * (n + 1.0);
  if (alpha <= -1.0)
    throw std::invalid_argument("cone_integral_invariant: nu too small");
  const Calibration cal = calibrate_cn(n, std::max<uint32_t>(nodes, 16));
  ExpandedSym<Rational> h = g.expanded();
  if (n > 1) h = exp_mul(h, vandermonde_expanded(n));
  GaussRule s2, s3;
  if (n == 2) s2 = gauss_jacobi01(nodes, alpha, 0.0);
  if (n == 3) {
    s2 = gauss_jacobi01(nodes, 2.0 * alpha + 1.0, 0.0);
    s3 = gauss_jacobi01(nodes, alpha, 0.0);
  }
  double acc = 0.0;
  for (const auto& [expv, coeff] : h) {
    acc += coeff.to_double() * ordered_moment_rule(n, expv, alpha, rate, s2, s3);
  }
  return cal.c * acc;
}

double cone_integral_blackbox(uint32_t n,
                              const std::function<double(const std::vector<double>&)>& g,
                              double nu, double rate, uint32_t nodes) {
  if (n < 1 || n > 3)
    throw std::invalid_argument("cone_integral_blackbox: rank must be 1, 2, or 3");
  const double alpha = nu - 0.5 * (n + 1.0);
  if (alpha <= -1.0)
    throw std::invalid_argument("cone_integral_blackbox: nu too small");
  if (rate <= 0.0)
    throw std::invalid_argument("cone_integral_blackbox: rate must be positive");
  const Calibration cal = calibrate_cn(n, std::max<uint32_t>(nodes, 16));
  double acc = 0.0;
  if (n == 1) {
    GaussRule t = gauss_laguerre(nodes, alpha);
    for (size_t i = 0; i < t.nodes.size(); ++i)
      acc += t.weights[i] * g({t.nodes[i] / rate});
    acc *= std::pow(rate, -(alpha + 1.0));
  } else if (n == 2) {
    // l1 = r, l2 = s r; radial direction by generalized Gauss-Laguerre after
    // normalizing the decay rate to 1.
    GaussRule t = gauss_laguerre(nodes, 2.0 * alpha + 2.0);
    GaussRule s = gauss_jacobi01(nodes, alpha, 0.0);
    for (size_t i = 0; i < s.nodes.size(); ++i) {
      const double sv = s.nodes[i];
      const double rscale = rate * (1.0 + sv);
      const double pref = (1.0 - sv) * std::pow(rscale, -(2.0 * alpha + 3.0));
      double inner = 0.0;
      for (size_t j = 0; j < t.nodes.size(); ++j) {
        const double r = t.nodes[j] / rscale;
        inner += t.weights[j] * g({r, sv * r});
      }
      acc += s.weights[i] * pref * inner;
    }
  } else {
    // l1 = r, l2 = s2 r, l3 = s2 s3 r.
    GaussRule t = gauss_laguerre(nodes, 3.0 * alpha + 5.0);
    GaussRule s2 = gauss_jacobi01(nodes, 2.0 * alpha + 2.0, 1.0);
    GaussRule s3 = gauss_jacobi01(nodes, alpha, 1.0);
    for (size_t i = 0; i < s2.nodes.size(); ++i) {
      const double a2 = s2.nodes[i];
      for (size_t j = 0; j < s3.nodes.size(); ++j) {
        const double a3 = s3.nodes[j];
        const double rscale = rate * (1.0 + a2 + a2 * a3);
        const double pref =
            (1.0 - a2 * a3) * std::pow(rscale, -(3.0 * alpha + 6.0));
        double inner = 0.0;
        for (size_t kk = 0; kk < t.nodes.size(); ++kk) {
          const double r = t.nodes[kk] / rscale;
          inner += t.weights[kk] * g({r, a2 * r, a2 * a3 * r});
        }
        acc += s2.weights[i] * s3.weights[j] * pref * inner;
      }
    }
  }
  return cal.c * acc;
}

LaplaceResult laplace_transform_num(uint32_t n, double nu, const ExpPoly& f,
                                    const CMat& z, uint32_t nodes,
                                    uint64_t samples, uint64_t seed,
                                    uint64_t case_id, uint32_t threads) {
  if (z.size() != n)
    throw std::invalid_argument("laplace_transform_num: point size mismatch");
  const double cshift = f.c.to_double();
  LaplaceResult result;
  if (n == 1) {
    // Exact Gamma moments of the single variable.
    const cplx rate = z[0][0] + cshift;
    if (rate.real() <= 0.0)
      throw std::invalid_argument("laplace_transform_num: rate not in the cone");
    cplx acc{0.0};
    for (const auto& [expv, coeff] : f.p.terms()) {
      const uint32_t k = expv.empty() ? 0u : expv[0];
      acc += coeff.to_double() * std::exp(std::lgamma(k + nu)) *
             cpow_real(rate, -(k + nu));
    }
    result.value = acc;
    return result;
  }
  if (n == 2) {
    // Spectral coordinates x = k(theta) diag(l) k(theta)^T, theta in [0,pi):
    // periodic trapezoid in theta, exact radial moments with the two
    // theta-dependent complex rates in the ordered eigenvalue pair.
    const double alpha = nu - 1.5;
    const uint32_t ntheta = std::max<uint32_t>(nodes, 16);
    GaussRule s_rule = gauss_jacobi01(nodes, alpha, 0.0);
    cplx acc{0.0};
    for (uint32_t ti = 0; ti < ntheta; ++ti) {
      const double theta = kPi * ti / ntheta;
      const double c = std::cos(theta), s = std::sin(theta);
      const cplx g1 = z[0][0] * c * c + 2.0 * z[0][1] * c * s + z[1][1] * s * s;
      const cplx g2 = z[0][0] * s * s - 2.0 * z[0][1] * c * s + z[1][1] * c * c;
      const cplx rate1 = g1 + cshift, rate2 = g2 + cshift;
      // Entries as linear forms in (l1, l2): x11, x12, x22.
      const double sub[3][2] = {{c * c, s * s}, {c * s, -c * s}, {s * s, c * c}};
      std::map<std::pair<uint32_t, uint32_t>, cplx> poly;
      for (const auto& [expv, coeff] : f.p.terms()) {
        std::map<std::pair<uint32_t, uint32_t>, double> term;
        term[{0, 0}] = coeff.to_double();
        for (size_t v = 0; v < expv.size(); ++v) {
          for (uint32_t rep = 0; rep < expv[v]; ++rep) {
            std::map<std::pair<uint32_t, uint32_t>, double> next;
            for (const auto& [de, dc] : term) {
              next[{de.first + 1, de.second}] += dc * sub[v][0];
              next[{de.first, de.second + 1}] += dc * sub[v][1];
            }
            term = std::move(next);
          }
        }
        for (const auto& [de, dc] : term) poly[de] += dc;
      }
      cplx slice{0.0};
      for (const auto& [de, dc] : poly) {
        slice += dc * (ordered_moment_n2_rule(de.first + 1, de.second, alpha,
                                              rate1, rate2, s_rule) -
                       ordered_moment_n2_rule(de.first, de.second + 1, alpha,
                                              rate1, rate2, s_rule));
      }
      acc += (kPi / ntheta) * slice;
    }
    // Spectral coordinates carry the plain eigenvalue Jacobian; the trace-form
    // Euclidean volume adds 2^{n(n-1)/4} (= sqrt(2) for n = 2).
    result.value = std::sqrt(2.0) * acc;
    return result;
  }
  if (n == 3) {
    // Importance sampling with the cone reference density: the integral is
    // Gamma_Omega(nu) times the mean of e^{-tr(w X)} p(X) with
    // w = z + (c - 1) id under the reference law.
    if (samples == 0) samples = 200000;
    if (threads == 0) threads = 1;
    CMat w = z;
    for (uint32_t i = 0; i < n; ++i) w[i][i] += (cshift - 1.0);
    constexpr uint64_t kBatch = 16384;
    const uint64_t nbatches = (samples + kBatch - 1) / kBatch;
    RandomStream base(seed, "laplace-mc", case_id);
    std::vector<BatchStat> stats(nbatches);
    std::atomic<uint64_t> next{0};
    auto worker = [&]() {
      for (;;) {
        const uint64_t b = next.fetch_add(1);
        if (b >= nbatches) return;
        RandomStream rng = base.substream(b);
        const uint64_t lo = b * kBatch;
        const uint64_t hi = std::min(samples, lo + kBatch);
        BatchStat st;
        for (uint64_t i = lo; i < hi; ++i) {
          DMat x = sample_cone_density(n, nu, rng);
          cplx tr{0.0};
          for (uint32_t r = 0; r < n; ++r)
            for (uint32_t cc = 0; cc < n; ++cc) tr += w[r][cc] * x[cc][r];
          const cplx val = std::exp(-tr) * f.p.eval<double>(x);
          st.s_re += val.real();
          st.s_im += val.imag();
          st.q_re += val.real() * val.real();
          st.q_im += val.imag() * val.imag();
          ++st.count;
        }
        stats[b] = st;
      }
    };
    std::vector<std::thread> pool;
    for (uint32_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    BatchStat tot;
    for (const auto& st : stats) {
      tot.s_re += st.s_re;
      tot.s_im += st.s_im;
      tot.q_re += st.q_re;
      tot.q_im += st.q_im;
      tot.count += st.count;
    }
    const double num = static_cast<double>(tot.count);
    const cplx mean{tot.s_re / num, tot.s_im / num};
    const double var_re =
        std::max(0.0, (tot.q_re - tot.s_re * tot.s_re / num) / (num - 1.0));
    const double var_im =
        std::max(0.0, (tot.q_im - tot.s_im * tot.s_im / num) / (num - 1.0));
    const double scale = gamma_omega_scalar(n, nu);
    result.value = scale * mean;
    result.stderr_est = scale * std::sqrt((var_re + var_im) / num);
    return result;
  }
  throw std::invalid_argument("laplace_transform_num: rank must be 1, 2, or 3");
}

TubeInner tube_inner_product_num(double nu, const std::function<cplx(cplx)>& F,
                                 const std::function<cplx(cplx)>& G,
                                 uint32_t nodes) {
  if (nu <= 2.0)
    throw std::invalid_argument("tube_inner_product_num: nu must exceed 2");
  const double alpha_nu =
      std::pow(2.0, nu) / (4.0 * kPi * std::tgamma(nu - 1.0));
  // Inner pairing over one x panel list / y panel list.
  auto integrate = [&](const std::vector<double>& xcuts,
                       const std::vector<double>& ycuts) {
    std::vector<std::pair<double, double>> xq;  // (node, weight incl. x^{nu-2})
    GaussRule head = gauss_jacobi01(nodes, nu - 2.0, 0.0);
    for (size_t i = 0; i < head.nodes.size(); ++i)
      xq.emplace_back(head.nodes[i], head.weights[i]);
    for (size_t p = 0; p + 1 < xcuts.size(); ++p) {
      GaussRule leg = gauss_legendre(nodes, xcuts[p], xcuts[p + 1]);
      for (size_t i = 0; i < leg.nodes.size(); ++i)
        xq.emplace_back(leg.nodes[i],
                        leg.weights[i] * std::pow(leg.nodes[i], nu - 2.0));
    }
    std::vector<std::pair<double, double>> yq;  // positive half; mirrored below
    for (size_t p = 0; p + 1 < ycuts.size(); ++p) {
      GaussRule leg = gauss_legendre(nodes, ycuts[p], ycuts[p + 1]);
      for (size_t i = 0; i < leg.nodes.size(); ++i)
        yq.emplace_back(leg.nodes[i], leg.weights[i]);
    }
    cplx acc{0.0};
    for (const auto& [x, wx] : xq) {
      for (const auto& [y, wy] : yq) {
        const cplx zp{x, y}, zm{x, -y};
        acc += wx * wy * (F(zp) * std::conj(G(zp)) + F(zm) * std::conj(G(zm)));
      }
    }
    return alpha_nu * acc;
  };
  const std::vector<double> x1{1.0, 4.0, 16.0, 64.0, 256.0};
  const std::vector<double> y1{0.0, 1.0, 4.0, 16.0, 64.0, 256.0};
  std::vector<double> x2 = x1, y2 = y1;
  x2.push_back(512.0);
  y2.push_back(512.0);
  const cplx coarse = integrate(x1, y1);
  const cplx fine = integrate(x2, y2);
  TubeInner out;
  out.value = fine;
  out.truncation = std::abs(fine - coarse) / std::max(std::abs(fine), 1e-300);
  return out;
}

IntertwineResult intertwining_check(uint32_t n, const Rational& nu,
                                    const LieElement& X, const ExpPoly& f,
                                    const std::vector<CMat>& points,
                                    uint32_t nodes) {
  const double nud = nu.to_double();
  ExpPoly lf = lambda_apply<Rational>(X, f, nu);
  IntertwineResult out;
  for (const CMat& z : points) {
    const cplx lhs = laplace_transform_num(n, nud, lf, z, nodes).value;
    auto handle = [&](const CMat& zz) {
      return laplace_transform_num(n, nud, f, zz, nodes).value;
    };
    const cplx rhs = pi_apply_numeric(X, handle, z, nud);
    const double denom = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
    const double rel = std::abs(lhs - rhs) / denom;
    out.lhs.push_back(lhs);
    out.rhs.push_back(rhs);
    out.per_point.push_back(rel);
    out.max_rel = std::max(out.max_rel, rel);
  }
  return out;
}

}  // namespace conelab
