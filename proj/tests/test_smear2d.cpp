#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>
#include <random>

#include "opvd/smear2d.hpp"

using namespace opvd::smear2d;
using opvd::testfn::BumpProfile;
using opvd::testfn::ProfileShape;
constexpr double kPi = std::numbers::pi;

namespace {

struct Setup {
  Grid2 g;
  PoissonSolver solver;
  explicit Setup(int n) : g(n, 1.0 / n), solver(g) {}
};

SpinorField random_spinor(const Grid2& g, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpinorField psi(g.sites());
  for (auto& s : psi)
    for (auto& c : s) c = {gauss(rng), gauss(rng)};
  return psi;
}

GaugeField random_gauge(const Grid2& g, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  GaugeField A;
  A.a.resize(g.sites());
  for (auto& v : A.a) {
    v[0] = gauss(rng);
    v[1] = gauss(rng);
  }
  return A;
}

ScalarField mode_field(const Grid2& g, int m0, int m1, double amp,
                       double phase = 0.0) {
  ScalarField f(g.sites());
  for (int i0 = 0; i0 < g.n; ++i0)
    for (int i1 = 0; i1 < g.n; ++i1)
      f[i0 * g.n + i1] =
          amp * std::cos(2.0 * kPi * (m0 * i0 + m1 * i1) / g.n + phase);
  return f;
}

}  // namespace

TEST_CASE("grid construction and minimal-image distances") {
  CHECK_THROWS_AS(Grid2(7, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(Grid2(12, 0.1), std::invalid_argument);
  const Grid2 g(16, 0.25);
  CHECK(g.sites() == 256);
  // wrap-around distance
  CHECK(g.delta(g.idx(15, 0), g.idx(0, 0), 0) == doctest::Approx(-0.25));
  CHECK(g.distance(g.idx(0, 0), g.idx(8, 0)) == doctest::Approx(2.0));
}

TEST_CASE("kernel solves the discrete Poisson equation exactly") {
  const Setup s(32);
  const int x = s.g.idx(3, 7), y = s.g.idx(20, 15);
  const GaugeKernel k = s.solver.kernel(x, y);

  const double source_scale = 1.0 / (s.g.a * s.g.a);
  double worst = 0.0, mean = 0.0;
  for (int z = 0; z < s.g.sites(); ++z) {
    double expect = 0.0;
    if (z == x) expect = source_scale;
    if (z == y) expect = -source_scale;
    worst = std::max(worst, std::fabs(laplacian(s.g, k.c, z) - expect));
    mean += k.c[z];
  }
  CHECK(worst <= 1e-12 * source_scale);   // residual of the spectral solve
  CHECK(std::fabs(mean) < 1e-9);          // zero-mode convention
}

TEST_CASE("kernel is antisymmetric under x <-> y and zero for x = y") {
  const Setup s(16);
  const int x = s.g.idx(2, 5), y = s.g.idx(9, 12);
  const GaugeKernel kxy = s.solver.kernel(x, y);
  const GaugeKernel kyx = s.solver.kernel(y, x);
  double worst = 0.0;
  for (int z = 0; z < s.g.sites(); ++z)
    worst = std::max(worst, std::fabs(kxy.c[z] + kyx.c[z]));
  CHECK(worst < 1e-13 / (s.g.a * s.g.a));

  const GaugeKernel kxx = s.solver.kernel(x, x);
  for (int z = 0; z < s.g.sites(); ++z) CHECK(kxx.c[z] == 0.0);
}

TEST_CASE("generic solve rejects sources with a zero-mode component") {
  const Setup s(16);
  ScalarField rhs(s.g.sites(), 1.0);
  CHECK_THROWS_AS(s.solver.solve(rhs), std::invalid_argument);
}

TEST_CASE("generic solve inverts the discrete Laplacian") {
  const Setup s(32);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ScalarField rhs(s.g.sites());
  double mean = 0.0;
  for (auto& v : rhs) mean += (v = gauss(rng));
  mean /= s.g.sites();
  for (auto& v : rhs) v -= mean;  // project out the zero mode

  const ScalarField u = s.solver.solve(rhs);
  double worst = 0.0, usum = 0.0;
  for (int z = 0; z < s.g.sites(); ++z) {
    worst = std::max(worst, std::fabs(laplacian(s.g, u, z) - rhs[z]));
    usum += u[z];
  }
  CHECK(worst < 1e-9);         // residual at solver scale (1/a^2 ~ 1e3)
  CHECK(std::fabs(usum) < 1e-10);
}

TEST_CASE("smearing with A = 0 is a plain convolution") {
  const Setup s(32);
  std::mt19937_64 rng(1);
  const SpinorField psi = random_spinor(s.g, rng);
  GaugeField A;
  A.a.assign(s.g.sites(), {0.0, 0.0});
  const BumpProfile rho(ProfileShape::Bump, 0.15);
  const int x = s.g.idx(10, 20);

  const Spinor got = smear(s.g, s.solver, psi, A, rho, 1.0, x);
  Spinor expect{};
  for (int y = 0; y < s.g.sites(); ++y) {
    const double r = s.g.distance(y, x);
    if (r >= rho.radius()) continue;
    const double w = rho(r) * s.g.a * s.g.a;
    expect[0] += w * psi[y][0];
    expect[1] += w * psi[y][1];
  }
  CHECK(std::abs(got[0] - expect[0]) < 1e-14);
  CHECK(std::abs(got[1] - expect[1]) < 1e-14);
}

TEST_CASE("single-site source with flat profile reduces to one phase factor") {
  const Setup s(32);
  const int x = s.g.idx(8, 8), y0 = s.g.idx(10, 9);
  SpinorField psi(s.g.sites(), Spinor{0.0, 0.0});
  psi[y0] = {std::complex<double>(0.3, -1.1), std::complex<double>(2.0, 0.4)};
  std::mt19937_64 rng(2);
  const GaugeField A = random_gauge(s.g, rng);
  // flat-top of radius 0.25 is identically 1 within distance 0.125
  const BumpProfile rho(ProfileShape::FlatTop, 0.25);
  REQUIRE(s.g.distance(y0, x) < 0.125);

  const Spinor got = smear(s.g, s.solver, psi, A, rho, 1.3, x);
  // expected: a^2 exp(i e P(x,y0)) psi(y0)
  const GaugeKernel k = s.solver.kernel(x, y0);
  double pairing = 0.0;
  for (int z = 0; z < s.g.sites(); ++z)
    pairing += grad_fwd(s.g, k.c, z, 0) * A.a[z][0] +
               grad_fwd(s.g, k.c, z, 1) * A.a[z][1];
  pairing *= s.g.a * s.g.a;
  const std::complex<double> phase =
      std::exp(std::complex<double>(0.0, 1.3 * pairing));
  CHECK(std::abs(got[0] - s.g.a * s.g.a * phase * psi[y0][0]) < 1e-15);
  CHECK(std::abs(got[1] - s.g.a * s.g.a * phase * psi[y0][1]) < 1e-15);
}

TEST_CASE("pure-gauge potential telescopes to a boundary phase difference") {
  const Setup s(32);
  const ScalarField lambda = mode_field(s.g, 1, 2, 0.8, 0.3);
  GaugeField A;
  A.a.resize(s.g.sites());
  for (int z = 0; z < s.g.sites(); ++z) {
    A.a[z][0] = grad_fwd(s.g, lambda, z, 0);
    A.a[z][1] = grad_fwd(s.g, lambda, z, 1);
  }
  // P(x,y) for pure gauge A = grad Lambda is Lambda(y) - Lambda(x)
  const int x = s.g.idx(5, 6), y = s.g.idx(12, 3);
  const GaugeKernel k = s.solver.kernel(x, y);
  double pairing = 0.0;
  for (int z = 0; z < s.g.sites(); ++z)
    pairing += grad_fwd(s.g, k.c, z, 0) * A.a[z][0] +
               grad_fwd(s.g, k.c, z, 1) * A.a[z][1];
  pairing *= s.g.a * s.g.a;
  CHECK(pairing == doctest::Approx(lambda[y] - lambda[x]).epsilon(1e-10));
}

TEST_CASE("radius preconditions") {
  const Setup s(16);
  std::mt19937_64 rng(3);
  const SpinorField psi = random_spinor(s.g, rng);
  const GaugeField A = random_gauge(s.g, rng);
  const BumpProfile too_small(ProfileShape::Bump, 0.5 * s.g.a);
  const BumpProfile too_big(ProfileShape::Bump, 0.5);
  CHECK_THROWS_AS(smear(s.g, s.solver, psi, A, too_small, 1.0, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(smear(s.g, s.solver, psi, A, too_big, 1.0, 0),
                  std::invalid_argument);
}

TEST_CASE("gauge transform basics") {
  const Setup s(16);
  std::mt19937_64 rng(4);
  SpinorField psi = random_spinor(s.g, rng);
  GaugeField A = random_gauge(s.g, rng);
  const SpinorField psi0 = psi;
  const GaugeField A0 = A;

  // constant Lambda: A unchanged, psi picks up a global phase
  ScalarField lam_const(s.g.sites(), 0.7);
  gauge_transform(s.g, psi, A, lam_const, 2.0);
  for (int z = 0; z < s.g.sites(); ++z) {
    CHECK(A.a[z][0] == doctest::Approx(A0.a[z][0]));
    CHECK(A.a[z][1] == doctest::Approx(A0.a[z][1]));
    const std::complex<double> ph = std::exp(std::complex<double>(0.0, -1.4));
    CHECK(std::abs(psi[z][0] - ph * psi0[z][0]) < 1e-15);
  }

  // Lambda then -Lambda is the identity
  const ScalarField lam = mode_field(s.g, 2, 1, 0.5);
  ScalarField lam_neg(lam.size());
  for (std::size_t i = 0; i < lam.size(); ++i) lam_neg[i] = -lam[i];
  psi = psi0;
  A = A0;
  gauge_transform(s.g, psi, A, lam, 1.1);
  gauge_transform(s.g, psi, A, lam_neg, 1.1);
  double worst = 0.0;
  for (int z = 0; z < s.g.sites(); ++z) {
    worst = std::max(worst, std::abs(psi[z][0] - psi0[z][0]));
    worst = std::max(worst, std::fabs(A.a[z][0] - A0.a[z][0]));
  }
  CHECK(worst < 1e-14);

  // a generic gauge transform breaks the Lorenz condition
  ScalarField phi = mode_field(s.g, 1, 3, 1.0);
  GaugeField At = transverse_gauge(s.g, phi);
  CHECK(divergence_max(s.g, At) < 1e-11);
  SpinorField tmp = random_spinor(s.g, rng);
  gauge_transform(s.g, tmp, At, mode_field(s.g, 2, 2, 0.8, 0.1), 1.0);
  CHECK(divergence_max(s.g, At) > 1.0);
}

TEST_CASE("exact gauge covariance of the smeared field") {
  const Setup s(64);
  const BumpProfile rho(ProfileShape::Bump, 0.2);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    const SpinorField psi = random_spinor(s.g, rng);
    const GaugeField A = random_gauge(s.g, rng);
    ScalarField lam = mode_field(s.g, 1 + trial, 2, 0.6, 0.2 * trial);
    const int x = s.g.idx(11 + trial, 40 - trial);
    const double defect =
        covariance_check(s.g, s.solver, psi, A, lam, rho, 1.2, x);
    CHECK(defect <= 1e-10);

    // zero gauge function: zero defect
    ScalarField zero(s.g.sites(), 0.0);
    CHECK(covariance_check(s.g, s.solver, psi, A, zero, rho, 1.2, x) < 1e-15);

    // negative control: mismatched gradient conventions must fail
    const double bad = covariance_check_mismatched(s.g, s.solver, psi, A, lam,
                                                   rho, 1.2, x);
    CHECK(bad > 1e-4);
  }
}

TEST_CASE("gauge covariance also holds on the coarse n = 16 grid") {
  const Setup s(16);
  const BumpProfile rho(ProfileShape::Bump, 4.0 / 16);  // n*a/4
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const SpinorField psi = random_spinor(s.g, rng);
    const GaugeField A = random_gauge(s.g, rng);
    const ScalarField lam = mode_field(s.g, 1, 1 + trial % 3, 0.8, 0.1 * trial);
    const int x = trial * 23 % s.g.sites();
    CHECK(covariance_check(s.g, s.solver, psi, A, lam, rho, 0.7, x) <= 1e-10);
  }
}

TEST_CASE("solve_kernel free function matches the solver method") {
  const Setup s(16);
  const GaugeKernel a = solve_kernel(s.solver, 3, 200);
  const GaugeKernel b = s.solver.kernel(3, 200);
  CHECK(a.c == b.c);
  CHECK(a.x_site == 3);
  CHECK(a.y_site == 200);
}

TEST_CASE("smearing is linear in the spinor field") {
  const Setup s(32);
  std::mt19937_64 rng(8);
  const SpinorField psi1 = random_spinor(s.g, rng);
  const SpinorField psi2 = random_spinor(s.g, rng);
  const GaugeField A = random_gauge(s.g, rng);
  const BumpProfile rho(ProfileShape::Bump, 0.2);
  const int x = s.g.idx(4, 4);

  SpinorField combo(s.g.sites());
  for (int z = 0; z < s.g.sites(); ++z) {
    combo[z][0] = 0.3 * psi1[z][0] + 1.7 * psi2[z][0];
    combo[z][1] = 0.3 * psi1[z][1] + 1.7 * psi2[z][1];
  }
  const Spinor a = smear(s.g, s.solver, psi1, A, rho, 0.9, x);
  const Spinor b = smear(s.g, s.solver, psi2, A, rho, 0.9, x);
  const Spinor c = smear(s.g, s.solver, combo, A, rho, 0.9, x);
  CHECK(std::abs(c[0] - (0.3 * a[0] + 1.7 * b[0])) < 1e-12);
  CHECK(std::abs(c[1] - (0.3 * a[1] + 1.7 * b[1])) < 1e-12);
}

TEST_CASE("locality: sites outside the support radius cannot matter") {
  const Setup s(32);
  std::mt19937_64 rng(9);
  SpinorField psi = random_spinor(s.g, rng);
  const GaugeField A = random_gauge(s.g, rng);
  const BumpProfile rho(ProfileShape::Bump, 0.15);
  const int x = s.g.idx(16, 16);

  const Spinor before = smear(s.g, s.solver, psi, A, rho, 1.0, x);
  // mutate every site outside the ball
  for (int y = 0; y < s.g.sites(); ++y)
    if (s.g.distance(y, x) >= rho.radius()) psi[y] = {1e6, -1e6};
  const Spinor after = smear(s.g, s.solver, psi, A, rho, 1.0, x);
  CHECK(std::memcmp(&before, &after, sizeof before) == 0);  // bitwise equal
}

TEST_CASE("bosonization: constant phi reduces both routes to convolution") {
  const Setup s(32);
  std::mt19937_64 rng(10);
  const SpinorField psi = random_spinor(s.g, rng);
  const ScalarField phi(s.g.sites(), 1.234);
  const BumpProfile rho(ProfileShape::Bump, 0.2);
  const auto res =
      bosonization_check(s.g, s.solver, phi, psi, rho, 1.0, s.g.idx(7, 9));
  CHECK(res.defect < 1e-13);
}

TEST_CASE("bosonization reduction for single-mode phi") {
  const Setup s(64);
  std::mt19937_64 rng(11);
  const SpinorField psi = random_spinor(s.g, rng);
  const ScalarField phi = mode_field(s.g, 3, 1, 1.0);
  const BumpProfile rho(ProfileShape::Bump, 0.2);
  const auto res =
      bosonization_check(s.g, s.solver, phi, psi, rho, 1.1, s.g.idx(20, 41));
  CHECK(res.defect <= 1e-10);
  CHECK(res.sign_s == -1);

  // negative control: flipped duality sign is O(1) wrong
  const auto bad = bosonization_check(s.g, s.solver, phi, psi, rho, 1.1,
                                      s.g.idx(20, 41), +1);
  CHECK(bad.defect > 1e-3);
}

TEST_CASE("transverse gauge satisfies the Lorenz condition to rounding") {
  const Setup s(64);
  const ScalarField phi = mode_field(s.g, 5, 2, 2.0, 0.7);
  const GaugeField A = transverse_gauge(s.g, phi);
  CHECK(divergence_max(s.g, A) <= 1e-12 / s.g.a);
}
