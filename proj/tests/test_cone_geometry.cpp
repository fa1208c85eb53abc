#include "doctest.h"

#include <cmath>

#include "conelab/cone.hpp"
#include "conelab/linalg.hpp"
#include "conelab/random.hpp"

using namespace conelab;

namespace {

DMat rational_to_dmat(const std::vector<std::vector<Rational>>& a) {
  DMat out(a.size(), std::vector<double>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) out[i][j] = a[i][j].to_double();
  return out;
}

}  // namespace

TEST_CASE("principal minors of a 3x3 symmetric polynomial matrix") {
  // Evaluate the exact minor polynomials at a fixed rational point and
  // compare against direct determinants.
  std::vector<std::vector<Rational>> x{
      {Rational(4), Rational(1), Rational(1, 2)},
      {Rational(1), Rational(3), Rational(-1)},
      {Rational(1, 2), Rational(-1), Rational(5)}};
  CHECK(principal_minor(3, 1).eval(x).to_string() == "4");
  CHECK(principal_minor(3, 2).eval(x).to_string() == "11");
  // det = 4(15-1) - 1(5+1/2) + 1/2(-1-3/2) = 56 - 11/2 - 5/4 = 197/4.
  CHECK(principal_minor(3, 3).eval(x).to_string() == "197/4");
}

TEST_CASE("signature powers of minors match pointwise products") {
  Signature m = Signature::parse("3,1,0");
  std::vector<std::vector<Rational>> x{
      {Rational(2), Rational(1), Rational(0)},
      {Rational(1), Rational(2), Rational(1)},
      {Rational(0), Rational(1), Rational(2)}};
  // delta_m = d1^{m1-m2} d2^{m2-m3} d3^{m3}.
  Rational expect = principal_minor(3, 1).eval(x).pow(2) *
                    principal_minor(3, 2).eval(x);
  CHECK(delta_power(3, m).eval(x) == expect);

  DMat xd = rational_to_dmat(x);
  double num = delta_power_eval(xd, {3.0, 1.0, 0.0});
  CHECK(num == doctest::Approx(expect.to_double()).epsilon(1e-12));
}

TEST_CASE("spectral decomposition reconstructs and orders eigenvalues") {
  DMat x{{5, 2, 0}, {2, 4, 1}, {0, 1, 3}};
  EigenSym es = spectral(x);
  REQUIRE(es.values.size() == 3);
  CHECK(es.values[0] >= es.values[1]);
  CHECK(es.values[1] >= es.values[2]);
  // Reconstruct sum_k v_k lambda_k v_k^T.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k)
        acc += es.vectors[i][k] * es.values[k] * es.vectors[j][k];
      CHECK(acc == doctest::Approx(x[i][j]).epsilon(1e-10));
    }
}

TEST_CASE("rotation sampler produces orthogonal matrices with det 1") {
  RandomStream rng(7, "test-haar", 0);
  for (int rep = 0; rep < 5; ++rep) {
    DMat k = sample_haar_so(3, rng);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double dot = 0.0;
        for (int t = 0; t < 3; ++t) dot += k[t][i] * k[t][j];
        CHECK(dot == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
      }
    double det = k[0][0] * (k[1][1] * k[2][2] - k[1][2] * k[2][1]) -
                 k[0][1] * (k[1][0] * k[2][2] - k[1][2] * k[2][0]) +
                 k[0][2] * (k[1][0] * k[2][1] - k[1][1] * k[2][0]);
    CHECK(det == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("rotation sampler is balanced between column sign choices") {
  // Mean of k[0][0] over many draws should vanish by symmetry.
  RandomStream rng(11, "test-haar", 1);
  double acc = 0.0;
  const int reps = 4000;
  for (int rep = 0; rep < reps; ++rep) acc += sample_haar_so(2, rng)[0][0];
  CHECK(std::abs(acc / reps) < 0.05);
}

TEST_CASE("cone density sampler stays in the cone and has Gamma moments") {
  // For n = 1 the reference density is Gamma(nu): mean nu, variance nu.
  RandomStream rng(3, "test-cone", 0);
  const double nu = 2.5;
  double s1 = 0.0, s2 = 0.0;
  const int reps = 20000;
  for (int rep = 0; rep < reps; ++rep) {
    DMat x = sample_cone_density(1, nu, rng);
    s1 += x[0][0];
    s2 += x[0][0] * x[0][0];
  }
  const double mean = s1 / reps;
  const double var = s2 / reps - mean * mean;
  CHECK(mean == doctest::Approx(nu).epsilon(0.03));
  CHECK(var == doctest::Approx(nu).epsilon(0.08));

  // n = 3: positive definiteness via leading minors, and E[tr x] = n nu.
  double tr_acc = 0.0;
  for (int rep = 0; rep < 4000; ++rep) {
    DMat x = sample_cone_density(3, 3.0, rng);
    EigenSym es = spectral(x);
    CHECK(es.values[2] > 0.0);
    tr_acc += x[0][0] + x[1][1] + x[2][2];
  }
  CHECK(tr_acc / 4000 == doctest::Approx(9.0).epsilon(0.05));
}

TEST_CASE("stream splitting is deterministic and order independent") {
  RandomStream a(42, "purpose", 5);
  RandomStream b(42, "purpose", 5);
  CHECK(a.next_u64() == b.next_u64());

  // Substreams do not depend on how much of the parent was consumed.
  RandomStream p1(9, "s", 0);
  RandomStream p2(9, "s", 0);
  (void)p2.next_u64();
  RandomStream c1 = p1.substream(3);
  RandomStream c2 = p2.substream(3);
  CHECK(c1.next_u64() == c2.next_u64());

  // Different purposes decorrelate.
  RandomStream d1(9, "s", 0);
  RandomStream d2(9, "t", 0);
  CHECK(d1.next_u64() != d2.next_u64());
}
