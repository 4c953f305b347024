#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "opvd/distext.hpp"
#include "opvd/quadrature.hpp"
#include "opvd/testfn.hpp"

using namespace opvd;
using testfn::BumpProfile;
using testfn::Jet;
using testfn::JetFn;
using testfn::ProfileShape;
using testfn::TaylorWeight;

namespace {

JetFn profile_fn(const BumpProfile& f) {
  return [f](double x) { return f.jet(x); };
}

// Independent oracle: same subtracted integrand, fixed composite rule.
double composite_oracle(const JetFn& f, const TaylorWeight& w, int k,
                        double support, int panels = 6000) {
  const Jet f0 = f(0.0);
  auto integrand = [&](double x) {
    double poly = 0.0;
    for (int j = w.order(); j >= 0; --j) poly = poly * x + f0.c[j];
    return (f(x).value() - w(x) * poly) / std::pow(x, k);
  };
  return quad::composite_gauss(integrand, -support, 0.0, panels) +
         quad::composite_gauss(integrand, 0.0, support, panels);
}

}  // namespace

TEST_CASE("singular order bookkeeping") {
  CHECK(distext::PowerSingularity(1).singular_order() == 0);
  CHECK(distext::PowerSingularity(3).singular_order() == 2);
  CHECK_THROWS_AS(distext::PowerSingularity(0), std::invalid_argument);
}

TEST_CASE("k=2 with a test function vanishing near 0 needs no subtraction") {
  // even function supported away from the origin
  const BumpProfile right(ProfileShape::Bump, 0.5, 1.5);
  const BumpProfile left(ProfileShape::Bump, 0.5, -1.5);
  const JetFn f = [right, left](double x) {
    return right.jet(x) + left.jet(x);
  };
  const TaylorWeight w(BumpProfile(ProfileShape::FlatTop, 1.0), 1);
  const auto res =
      distext::pair_finite_part(distext::PowerSingularity(2), f, 2.5, w);

  // plain integral of f/x^2 (integrand zero near 0)
  auto plain = [&](double x) {
    const double v = f(x).value();
    return v == 0.0 ? 0.0 : v / (x * x);
  };
  const double direct = quad::integrate(plain, -2.5, 2.5).value;
  CHECK(res.value == doctest::Approx(direct).epsilon(1e-9));
}

TEST_CASE("k=1 on an even bump equals the symmetric principal value (zero)") {
  const BumpProfile b(ProfileShape::Bump, 1.0);
  const TaylorWeight w(BumpProfile(ProfileShape::Bump, 1.0), 0);
  const auto res =
      distext::pair_finite_part(distext::PowerSingularity(1), profile_fn(b),
                                1.5, w);
  // PV oracle: Int_0^inf (f(x) - f(-x))/x dx = 0 for even f
  CHECK(std::fabs(res.value) < 1e-9);
}

TEST_CASE("k=1 principal-value oracle for an asymmetric function") {
  const BumpProfile b(ProfileShape::Bump, 1.0, 0.3);
  const JetFn f = profile_fn(b);
  const TaylorWeight w(BumpProfile(ProfileShape::FlatTop, 2.0), 0);
  const auto res =
      distext::pair_finite_part(distext::PowerSingularity(1), f, 2.0, w);

  // PV Int f/x dx = Int_0^inf (f(x)-f(-x))/x dx for even weight subtraction
  // (the weight term integrates to zero by symmetry)
  auto pv = [&](double x) { return (f(x).value() - f(-x).value()) / x; };
  const double oracle = quad::integrate(pv, 1e-12, 2.0).value;
  CHECK(res.value == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("k=2 dual-quadrature oracle") {
  const BumpProfile b(ProfileShape::Bump, 1.0);
  const JetFn f = profile_fn(b);
  const TaylorWeight w(BumpProfile(ProfileShape::FlatTop, 1.0), 1);
  const auto res =
      distext::pair_finite_part(distext::PowerSingularity(2), f, 1.5, w);
  const double oracle = composite_oracle(f, w, 2, 1.5);
  CHECK(res.value == doctest::Approx(oracle).epsilon(1e-7));
  CHECK(res.subtraction_order_used == 1);
  CHECK(res.quadrature_error <= 1e-10);  // the requested default tolerance
}

TEST_CASE("insufficient subtraction order is detected as divergence") {
  const BumpProfile b(ProfileShape::Bump, 1.0, 0.2);  // f(0) != 0
  const TaylorWeight w(BumpProfile(ProfileShape::FlatTop, 1.0), 0);
  quad::Options opt;
  opt.max_panels = 3000;
  CHECK_THROWS_AS(distext::pair_finite_part(distext::PowerSingularity(2),
                                            profile_fn(b), 1.5, w, opt),
                  quad::QuadratureError);
}

TEST_CASE("pairing is linear in the test function") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uc(-1.5, 1.5);
  const BumpProfile f1(ProfileShape::Bump, 1.2, 0.1);
  const BumpProfile f2(ProfileShape::FlatTop, 0.9, -0.2);
  const TaylorWeight w(BumpProfile(ProfileShape::FlatTop, 1.0), 1);
  const distext::PowerSingularity s(2);

  for (int trial = 0; trial < 5; ++trial) {
    const double alpha = uc(rng), beta = uc(rng);
    const JetFn combo = [&, alpha, beta](double x) {
      return f1.jet(x) * alpha + f2.jet(x) * beta;
    };
    const double v_combo =
        distext::pair_finite_part(s, combo, 2.0, w).value;
    const double v1 = distext::pair_finite_part(s, profile_fn(f1), 2.0, w).value;
    const double v2 = distext::pair_finite_part(s, profile_fn(f2), 2.0, w).value;
    CHECK(v_combo == doctest::Approx(alpha * v1 + beta * v2).epsilon(1e-9));
  }
}

TEST_CASE("weight independence up to the computable local difference") {
  // For omega = 1 and weights w1, w2 (both 1 at 0, even), the pairings
  // differ by Int x^-2 (w2-w1)(x) (f(0) + x f'(0)) dx.
  const BumpProfile fb(ProfileShape::Bump, 1.0, 0.15);
  const JetFn f = profile_fn(fb);
  const TaylorWeight w1(BumpProfile(ProfileShape::Bump, 1.0), 1);
  const TaylorWeight w2(BumpProfile(ProfileShape::FlatTop, 1.0), 1);
  const distext::PowerSingularity s(2);

  const double v1 = distext::pair_finite_part(s, f, 2.0, w1).value;
  const double v2 = distext::pair_finite_part(s, f, 2.0, w2).value;

  const Jet f0 = f(0.0);
  auto diff_int = [&](double x) {
    return (w2.profile()(x) - w1.profile()(x)) * (f0.c[0] + x * f0.c[1]) /
           (x * x);
  };
  const double cut[] = {0.0};
  const double local = quad::integrate(diff_int, -2.0, 2.0, cut).value;
  CHECK(v1 - v2 == doctest::Approx(local).epsilon(1e-7));
}

TEST_CASE("result is weight independent for jets vanishing to the order") {
  // f with zero first-order jet at 0: pairing independent of the weight
  const BumpProfile b(ProfileShape::Bump, 1.0);
  const JetFn f = [b](double x) {
    const Jet xv = Jet::variable(x);
    return xv * xv * b.jet(x);
  };
  const TaylorWeight w1(BumpProfile(ProfileShape::Bump, 0.7), 1);
  const TaylorWeight w2(BumpProfile(ProfileShape::FlatTop, 1.3), 1);
  const distext::PowerSingularity s(2);
  const double v1 = distext::pair_finite_part(s, f, 1.5, w1).value;
  const double v2 = distext::pair_finite_part(s, f, 1.5, w2).value;
  CHECK(v1 == doctest::Approx(v2).epsilon(1e-9));
}

TEST_CASE("bphz demo: subtracted column converges to log(mu^2/m^2)/2") {
  const double cutoffs[] = {1e2, 1e4, 1e6};
  const auto rows = distext::bphz_demo(1.0, 2.0, cutoffs);
  REQUIRE(rows.size() == 3);

  // raw column grows like log L (closed form: log(1+L^2)/2)
  for (const auto& r : rows)
    CHECK(r.raw ==
          doctest::Approx(0.5 * std::log(1.0 + r.cutoff * r.cutoff))
              .epsilon(1e-10));

  // raw I(2L) - I(L) -> log 2
  const double two_cut[] = {2e6};
  const auto row2 = distext::bphz_demo(1.0, 2.0, two_cut);
  CHECK(row2[0].raw - rows[2].raw == doctest::Approx(std::log(2.0)).epsilon(1e-6));

  // subtracted: within 1e-6 of log(4)/2 at L = 1e6
  CHECK(std::fabs(rows[2].subtracted - 0.5 * std::log(4.0)) < 1e-6);
}

TEST_CASE("bphz demo: equal masses give exactly zero subtraction") {
  const double cutoffs[] = {1e3, 1e5};
  const auto rows = distext::bphz_demo(1.5, 1.5, cutoffs);
  for (const auto& r : rows) CHECK(std::fabs(r.subtracted) < 1e-12);
}
