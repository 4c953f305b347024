#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "opvd/testfn.hpp"

using namespace opvd::testfn;

TEST_CASE("profile values at the center, boundary and beyond") {
  for (auto shape : {ProfileShape::Bump, ProfileShape::FlatTop}) {
    const BumpProfile f(shape, 2.0, 0.5);
    CHECK(f(0.5) == 1.0);          // exactly 1 at the center
    CHECK(f(2.5) == 0.0);          // exactly 0 at the boundary
    CHECK(f(-1.5) == 0.0);
    CHECK(f(17.0) == 0.0);         // and beyond, no denormal tail
    CHECK(f(0.9) > 0.0);
  }
}

TEST_CASE("exponential bump at half radius equals exp(1 - 4/3)") {
  const BumpProfile f(ProfileShape::Bump, 1.0);
  CHECK(f(0.5) == doctest::Approx(std::exp(1.0 - 4.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("flat-top is identically 1 on the inner half") {
  const BumpProfile f(ProfileShape::FlatTop, 1.0);
  for (double x : {0.0, 0.1, 0.25, 0.49, -0.5})
    CHECK(f(x) == 1.0);
  for (int k = 1; k <= 4; ++k)
    CHECK(f.derivative(0.3, k) == 0.0);  // flat region: all derivatives 0
}

TEST_CASE("first derivative vanishes at the center of a symmetric bump") {
  const BumpProfile f(ProfileShape::Bump, 1.5, -0.25);
  CHECK(f.derivative(-0.25, 1) == 0.0);
}

TEST_CASE("closed-form derivative matches a central finite difference") {
  const BumpProfile f(ProfileShape::Bump, 1.0);
  const double x = 0.5, h = 1e-6;
  const double fd = (f(x + h) - f(x - h)) / (2.0 * h);
  CHECK(f.derivative(x, 1) == doctest::Approx(fd).epsilon(1e-7));

  const BumpProfile g(ProfileShape::FlatTop, 1.0);
  const double y = 0.8;
  const double fd2 = (g(y + h) - 2.0 * g(y) + g(y - h)) / (h * h);
  CHECK(g.derivative(y, 2) == doctest::Approx(fd2).epsilon(1e-4));
}

TEST_CASE("derivatives up to order 4 are continuous across the support edge") {
  for (auto shape : {ProfileShape::Bump, ProfileShape::FlatTop}) {
    const BumpProfile f(shape, 1.0);
    for (int k = 0; k <= 4; ++k) {
      const double inside = f.derivative(1.0 - 1e-4, k);
      CHECK(std::fabs(inside - 0.0) < 1e-8);  // outside value is exactly 0
    }
  }
}

TEST_CASE("derivative order above 4 is rejected") {
  const BumpProfile f(ProfileShape::Bump, 1.0);
  CHECK_THROWS_AS(f.derivative(0.3, 5), std::out_of_range);
}

TEST_CASE("partition of unity sums to 1") {
  const PartitionOfUnity pou(0.0, 5.0, 0.6, 0.5);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = ux(rng);
    CHECK(pou.sum(x) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("partition sum is 1 independently of spacing and member count") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ux(-1.0, 3.0);
  for (double spacing : {0.15, 0.4, 0.75})
    for (auto shape : {ProfileShape::Bump, ProfileShape::FlatTop}) {
      const PartitionOfUnity pou(-1.0, 3.0, spacing, 0.5, shape);
      for (int i = 0; i < 200; ++i)
        CHECK(pou.sum(ux(rng)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("partition with non-overlapping members is rejected") {
  CHECK_THROWS_WITH_AS(PartitionOfUnity(0.0, 5.0, 1.1, 0.5),
                       "coverage gap", std::invalid_argument);
}

TEST_CASE("two-member overlap: both weights in (0,1), summing to 1") {
  const PartitionOfUnity pou(0.0, 1.0, 0.8, 0.5);
  // find the two members bracketing x = 0.4
  const double x = 0.4;
  double sum = 0.0;
  int active = 0;
  for (std::size_t i = 0; i < pou.size(); ++i) {
    const double v = pou.member(i, x);
    sum += v;
    if (v > 0.0) {
      ++active;
      CHECK(v > 0.0);
      CHECK(v < 1.0);
    }
  }
  CHECK(active == 2);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("momentum profile: rho(0) = 1 exactly and support scaling") {
  for (auto shape : {ProfileShape::Bump, ProfileShape::FlatTop}) {
    const MomentumProfile p(shape, 3.0);
    CHECK(p(0.0) == 1.0);
    CHECK(p(0.0) * p(0.0) == 1.0);       // rho^2(0) = 1
    CHECK(p(9.5) == 0.0);                 // beyond Lambda^2 support
    CHECK_THROWS_AS(p(-1.0), std::domain_error);

    // doubling Lambda quarters the effective argument
    const MomentumProfile p2(shape, 6.0);
    for (double psq : {0.5, 2.0, 8.0})
      CHECK(momentum_scale(p2, psq) ==
            doctest::Approx(momentum_scale(p, psq / 4.0)).epsilon(1e-15));
  }
}

TEST_CASE("taylor weight validation") {
  // flat-top: all derivatives vanish at 0, any order is fine
  CHECK_NOTHROW(TaylorWeight(BumpProfile(ProfileShape::FlatTop, 1.0), 4));
  // even bump: order 1 is fine, order 2 fails (w''(0) = -2)
  CHECK_NOTHROW(TaylorWeight(BumpProfile(ProfileShape::Bump, 1.0), 1));
  CHECK_THROWS_AS(TaylorWeight(BumpProfile(ProfileShape::Bump, 1.0), 2),
                  std::invalid_argument);
  // off-center profile is not 1 at the origin
  CHECK_THROWS_AS(TaylorWeight(BumpProfile(ProfileShape::Bump, 1.0, 0.3), 0),
                  std::invalid_argument);
}

TEST_CASE("jet_subtract: order 0 kills the value at 0") {
  const BumpProfile f(ProfileShape::Bump, 1.0, 0.2);
  const TaylorWeight w(BumpProfile(ProfileShape::FlatTop, 1.0), 0);
  const auto r = jet_subtract([f](double x) { return f.jet(x); }, w);
  CHECK(r(0.0) == 0.0);
}

TEST_CASE("jet_subtract leaves functions with vanishing jet untouched") {
  // f(x) = x^3 * bump(x) has f(0) = f'(0) = f''(0) = 0
  const BumpProfile b(ProfileShape::Bump, 1.0);
  const JetFn f = [b](double x) {
    const Jet xv = Jet::variable(x);
    return xv * xv * xv * b.jet(x);
  };
  const TaylorWeight w(BumpProfile(ProfileShape::FlatTop, 1.0), 2);
  const auto r = jet_subtract(f, w);
  for (double x : {-0.7, -0.2, 0.1, 0.4, 0.9})
    CHECK(r(x) == doctest::Approx(f(x).value()).epsilon(1e-12));
}

TEST_CASE("jet_subtract: order 1 on cos(x) bump(x) vanishes to second order") {
  const BumpProfile b(ProfileShape::Bump, 1.0);
  const JetFn f = [b](double x) { return cos(Jet::variable(x)) * b.jet(x); };
  const TaylorWeight w(BumpProfile(ProfileShape::Bump, 1.0), 1);
  const auto r = jet_subtract(f, w);
  for (double x : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6})
    CHECK(std::fabs(r(x)) / (x * x) < 5.0);  // bounded ratio as x -> 0
}

TEST_CASE("jet_subtract removes derivatives at 0 up to the weight order") {
  const BumpProfile b(ProfileShape::Bump, 1.3, 0.1);
  const JetFn f = [b](double x) { return cos(Jet::variable(x)) * b.jet(x); };
  for (int order = 0; order <= 4; ++order) {
    const TaylorWeight w(BumpProfile(ProfileShape::FlatTop, 1.0), order);
    // derivatives of f - w*poly at 0, by jet arithmetic
    const Jet f0 = f(0.0);
    Jet poly{};
    for (int k = 0; k <= order; ++k) poly.c[k] = f0.c[k];
    const Jet r0 = f0 - w.jet(0.0) * poly;
    for (int k = 0; k <= order; ++k)
      CHECK(std::fabs(r0.derivative(k)) < 1e-9);
  }
}

TEST_CASE("jet arithmetic: exp and trig recurrences against closed forms") {
  const Jet x = Jet::variable(0.7);
  const Jet e = exp(x * x);
  // d/dx exp(x^2) = 2x exp(x^2); second: (2 + 4x^2) exp(x^2)
  CHECK(e.derivative(1) ==
        doctest::Approx(2 * 0.7 * std::exp(0.49)).epsilon(1e-14));
  CHECK(e.derivative(2) ==
        doctest::Approx((2 + 4 * 0.49) * std::exp(0.49)).epsilon(1e-14));

  const Jet s = sin(x), c = cos(x);
  CHECK(s.derivative(1) == doctest::Approx(std::cos(0.7)).epsilon(1e-14));
  CHECK(c.derivative(3) == doctest::Approx(std::sin(0.7)).epsilon(1e-14));
}
