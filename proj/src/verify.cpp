#include "opvd/verify.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "opvd/anomaly.hpp"
#include "opvd/causal2d.hpp"
#include "opvd/clifford.hpp"
#include "opvd/distext.hpp"
#include "opvd/quadrature.hpp"
#include "opvd/smear2d.hpp"
#include "opvd/testfn.hpp"

namespace opvd::verify {

namespace {

constexpr double kPi = std::numbers::pi;

struct Meas {
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------- 1
Meas check_schwinger_mass() {
  const std::complex<double> target{0.0, 1.0 / kPi};
  // extrapolation of the closed form is inside boson_mass_squared; also
  // check the raw deviation at small mass ratio
  const double msq = causal2d::boson_mass_squared(1.0);
  const double dev_mass = std::fabs(msq - 1.0 / kPi);
  const double dev_raw = std::abs(causal2d::rhat_closed(1.0, 1e-8) - target);
  Meas m;
  m.measured = std::max(dev_mass, dev_raw);
  m.threshold = 1e-4;
  m.pass = m.measured <= m.threshold;
  m.detail = "mass^2=" + fmt(msq) + " vs 1/pi=" + fmt(1.0 / kPi);
  return m;
}

// ---------------------------------------------------------------- 2
Meas check_dispersion_consistency() {
  double worst = 0.0;
  double worst_x = 0.0;
  for (int j = 0; j < 20; ++j) {
    const double x = std::exp(std::log(1e-6) +
                              j / 19.0 * (std::log(0.24) - std::log(1e-6)));
    const std::complex<double> closed = causal2d::rhat_closed(1.0, x);
    const std::complex<double> quadv = causal2d::rhat_quadrature(1.0, x).value;
    const double rel = std::abs(quadv - closed) / std::abs(closed);
    if (rel > worst) {
      worst = rel;
      worst_x = x;
    }
  }
  Meas m;
  m.measured = worst;
  m.threshold = 1e-6;
  m.pass = worst <= m.threshold;
  m.detail = "worst at msq/ksq=" + fmt(worst_x);
  return m;
}

// ---------------------------------------------------------------- 3
Meas check_transversality(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x72616e64756c6cULL);
  std::uniform_real_distribution<double> um(0.05, 1.0);
  std::uniform_real_distribution<double> uk(0.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double mval = um(rng);
    const double k1 = uk(rng);
    // pick k0 so that k^2 > 4 m^2 with margin
    const double ksq = 4.0 * mval * mval * (1.1 + 3.0 * um(rng));
    const causal2d::Momentum2 k{std::sqrt(ksq + k1 * k1), k1};
    const auto pi = causal2d::polarization(k, {mval, 1.0 + um(rng)});
    worst = std::max(worst, causal2d::longitudinal_defect(pi));
  }
  Meas m;
  m.measured = worst;
  m.threshold = 1e-10;
  m.pass = worst <= m.threshold;
  m.detail = "100 random above-threshold momenta";
  return m;
}

// ---------------------------------------------------------------- 4
Meas check_oracle_equivalence() {
  const double xs[5] = {0.01, 0.05, 0.10, 0.15, 0.20};
  const double boosts[5] = {0.0, 0.3, 0.6, 0.2, 0.45};
  double worst = 0.0;
  std::string detail;
  for (int i = 0; i < 5; ++i) {
    const double msq = xs[i];
    const double k1 = boosts[i];
    const causal2d::Momentum2 k{std::sqrt(1.0 + k1 * k1), k1};
    const double expected =
        (4.0 * msq / 1.0) / std::sqrt(1.0 - 4.0 * msq);  // k^2 dhat, k^2 = 1

    const double w0 = 0.01;
    double c[3];
    for (int j = 0; j < 3; ++j) {
      const auto p = causal2d::phat_oracle(k, std::sqrt(msq), w0 / (1 << j));
      c[j] = causal2d::phat_transverse_coefficient(p);
    }
    // Richardson with measured order
    const double num = c[0] - c[1], den = c[1] - c[2];
    double extrap = c[2];
    if (den != 0.0 && num / den > 1.2) {
      const double rate = num / den;
      extrap = c[2] + (c[2] - c[1]) / (rate - 1.0);
    }
    const double rel = std::fabs(extrap - expected) / std::fabs(expected);
    worst = std::max(worst, rel);
  }
  Meas m;
  m.measured = worst;
  m.threshold = 1e-3;
  m.pass = worst <= m.threshold;
  m.detail = "5 kinematic points, delta-width extrapolated";
  return m;
}

// ---------------------------------------------------------------- 5
Meas check_gauge_violation_contrast() {
  const double mval = 0.4, kk = 1.0;
  double min_naive = 1e300;
  for (double ratio : {10.0, 100.0, 1000.0}) {
    const auto t = causal2d::naive_cutoff_polarization(kk, 0.0, mval, ratio * kk);
    double contr[2];
    for (int nu = 0; nu < 2; ++nu) contr[nu] = kk * t(0, nu);
    const double defect =
        std::hypot(contr[0], contr[1]) / (kk * t.frobenius());
    min_naive = std::min(min_naive, defect);
  }
  // causal side at a representative above-threshold momentum
  const causal2d::Momentum2 k{1.5, 0.4};
  const double causal =
      causal2d::longitudinal_defect(causal2d::polarization(k, {mval, 1.0}));

  Meas m;
  m.measured = min_naive;
  m.threshold = 0.10;
  m.pass = min_naive >= 0.10 && causal <= 1e-10;
  m.detail = "naive defect >= " + fmt(min_naive) + ", causal defect " +
             fmt(causal) + " <= 1e-10";
  return m;
}

// ---------------------------------------------------------------- 6
Meas check_anomaly_coefficient_4d(std::uint64_t seed) {
  const double target = 1.0 / (16.0 * kPi * kPi);
  double worst_rel = 0.0;
  for (auto shape : {testfn::ProfileShape::Bump, testfn::ProfileShape::FlatTop})
    for (double lambda : {0.5, 1.0, 2.0}) {
      const anomaly::RegulatorProfile r(shape, lambda);
      const double v = anomaly::radial_integral_4d(r);
      worst_rel = std::max(worst_rel, std::fabs(v - target) / target);
    }

  // trace proportionality across random field strengths
  std::mt19937_64 rng(seed ^ 0x616e6f6d616c79ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const clifford::LeviCivita eps{4, +1};
  double cmin = 1e300, cmax = -1e300;
  int used = 0;
  for (int i = 0; i < 20; ++i) {
    anomaly::FieldStrength f(4);
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) f.set(a, b, gauss(rng));
    const double dual = anomaly::dual_contraction_4d(f, eps);
    if (std::fabs(dual) < 1e-3) continue;  // ratio ill-conditioned near zero
    const double ratio = anomaly::trace_factor_4d(f) / dual;
    cmin = std::min(cmin, ratio);
    cmax = std::max(cmax, ratio);
    ++used;
  }
  const double spread = used > 0 ? cmax - cmin : 1e300;

  Meas m;
  m.measured = std::max(worst_rel, spread);
  m.threshold = 1e-8;
  m.pass = worst_rel <= 1e-8 && spread <= 1e-12;
  m.detail = "radial rel err " + fmt(worst_rel) + ", trace-constant spread " +
             fmt(spread) + " over " + std::to_string(used) + " F samples";
  return m;
}

// ---------------------------------------------------------------- 7
Meas check_anomaly_2d() {
  const double target = -1.0 / (4.0 * kPi);
  double vals[2];
  int i = 0;
  for (auto shape : {testfn::ProfileShape::Bump, testfn::ProfileShape::FlatTop})
    vals[i++] = anomaly::radial_integral_2d(anomaly::RegulatorProfile(shape, 1.0));
  const double cross = std::fabs(vals[0] - vals[1]);
  const double dev =
      std::max(std::fabs(vals[0] - target), std::fabs(vals[1] - target)) /
      std::fabs(target);
  Meas m;
  m.measured = std::max(cross, dev);
  m.threshold = 1e-8;
  m.pass = cross <= 1e-10 && dev <= 1e-8;
  m.detail = "profiles agree to " + fmt(cross) + ", -1/(4pi) rel err " + fmt(dev);
  return m;
}

// shared random-field helpers ------------------------------------

smear2d::ScalarField smooth_random_scalar(const smear2d::Grid2& g,
                                          std::mt19937_64& rng, int max_mode,
                                          double amp) {
  std::uniform_real_distribution<double> uphase(0.0, 2.0 * kPi);
  std::normal_distribution<double> gauss(0.0, amp);
  smear2d::ScalarField f(g.sites(), 0.0);
  for (int m0 = -max_mode; m0 <= max_mode; ++m0)
    for (int m1 = -max_mode; m1 <= max_mode; ++m1) {
      if (m0 == 0 && m1 == 0) continue;
      const double c = gauss(rng), ph = uphase(rng);
      for (int i0 = 0; i0 < g.n; ++i0)
        for (int i1 = 0; i1 < g.n; ++i1)
          f[i0 * g.n + i1] +=
              c * std::cos(2.0 * kPi * (m0 * i0 + m1 * i1) / g.n + ph);
    }
  return f;
}

smear2d::SpinorField random_spinor(const smear2d::Grid2& g,
                                   std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  smear2d::SpinorField psi(g.sites());
  for (auto& s : psi)
    for (auto& c : s) c = {gauss(rng), gauss(rng)};
  return psi;
}

smear2d::GaugeField random_gauge(const smear2d::Grid2& g,
                                 std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  smear2d::GaugeField A;
  A.a.resize(g.sites());
  for (auto& v : A.a) {
    v[0] = gauss(rng);
    v[1] = gauss(rng);
  }
  return A;
}

// ---------------------------------------------------------------- 8
Meas check_smear_covariance(std::uint64_t seed) {
  const smear2d::Grid2 g(64, 1.0 / 64);
  const smear2d::PoissonSolver solver(g);
  const testfn::BumpProfile rho(testfn::ProfileShape::Bump, 0.2);
  std::mt19937_64 rng(seed ^ 0x636f766172ULL);
  std::uniform_int_distribution<int> usite(0, g.sites() - 1);
  std::uniform_real_distribution<double> ucoup(0.5, 2.0);

  double worst = 0.0, worst_ctrl = 1e300;
  for (int trial = 0; trial < 50; ++trial) {
    const auto psi = random_spinor(g, rng);
    const auto A = random_gauge(g, rng);
    const auto lambda = smooth_random_scalar(g, rng, 2, 0.5);
    const double e = ucoup(rng);
    const int x = usite(rng);
    worst = std::max(worst, smear2d::covariance_check(g, solver, psi, A,
                                                      lambda, rho, e, x));
    if (trial < 5) {
      worst_ctrl = std::min(
          worst_ctrl, smear2d::covariance_check_mismatched(
                          g, solver, psi, A, lambda, rho, e, x));
    }
  }
  Meas m;
  m.measured = worst;
  m.threshold = 1e-10;
  m.pass = worst <= 1e-10 && worst_ctrl > 1e-4;
  m.detail = "50 triples at n=64; mismatched control " + fmt(worst_ctrl) +
             " > 1e-4";
  return m;
}

// ---------------------------------------------------------------- 9
Meas check_bosonization() {
  const smear2d::Grid2 g(64, 1.0 / 64);
  const smear2d::PoissonSolver solver(g);
  const testfn::BumpProfile rho(testfn::ProfileShape::Bump, 0.2);
  std::mt19937_64 rng(12345);
  const auto psi = random_spinor(g, rng);

  smear2d::ScalarField phi(g.sites());
  for (int i0 = 0; i0 < g.n; ++i0)
    for (int i1 = 0; i1 < g.n; ++i1)
      phi[i0 * g.n + i1] = std::cos(2.0 * kPi * (3 * i0 + 1 * i1) / g.n);

  const auto res =
      smear2d::bosonization_check(g, solver, phi, psi, rho, 1.3, g.idx(20, 41));
  Meas m;
  m.measured = res.defect;
  m.threshold = 1e-10;
  m.pass = res.defect <= m.threshold;
  m.detail = "single-mode phi (3,1) at n=64, duality sign s=" +
             std::to_string(res.sign_s);
  return m;
}

// ---------------------------------------------------------------- 10
Meas check_clifford_identities(std::uint64_t seed) {
  using namespace clifford;
  double worst = 0.0;
  for (int dim : {2, 4})
    for (auto rep : {Representation::Dirac, Representation::Chiral}) {
      const MetricSignature sig = MetricSignature::minkowski(dim);
      const DiracMatrix id = DiracMatrix::identity(dim);
      // Clifford relation, exact
      for (int mu = 0; mu < dim; ++mu)
        for (int nu = 0; nu < dim; ++nu) {
          const DiracMatrix gm = gamma(sig, mu, rep), gn = gamma(sig, nu, rep);
          worst = std::max(
              worst,
              (gm * gn + gn * gm - id * Complex(2.0 * sig.g(mu, nu))).max_abs());
        }
      // gamma5 properties
      const DiracMatrix g5 = gamma5(sig, rep);
      worst = std::max(worst, (g5 * g5 - id).max_abs());
      worst = std::max(worst, (g5 - g5.adjoint()).max_abs());
      for (int mu = 0; mu < dim; ++mu) {
        const DiracMatrix gm = gamma(sig, mu, rep);
        worst = std::max(worst, (g5 * gm + gm * g5).max_abs());
      }
      // projectors
      const DiracMatrix pp = chiral_projector(sig, +1, rep);
      const DiracMatrix pm = chiral_projector(sig, -1, rep);
      worst = std::max(worst, (pp * pp - pp).max_abs());
      worst = std::max(worst, (pm * pm - pm).max_abs());
      worst = std::max(worst, (pp * pm).max_abs());
      worst = std::max(worst, (pp + pm - id).max_abs());
      // footnote identity: equal-chirality commutators vanish
      worst = std::max(worst, chirality_commutator_check(sig, +1, +1, rep));
      worst = std::max(worst, chirality_commutator_check(sig, -1, -1, rep));
    }

  // trace cyclicity on random matrices
  std::mt19937_64 rng(seed ^ 0x747261636543ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = trial % 2 == 0 ? 2 : 4;
    DiracMatrix a(dim), b(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        a.at(i, j) = {gauss(rng), gauss(rng)};
        b.at(i, j) = {gauss(rng), gauss(rng)};
      }
    const DiracMatrix prods[2] = {a * b, b * a};
    worst = std::max(worst, std::abs(prods[0].trace() - prods[1].trace()));
  }

  // D=4: tr[g5 sigma^{mn} sigma^{rs}] proportional to eps^{mnrs}
  {
    const MetricSignature sig = MetricSignature::minkowski(4);
    const LeviCivita eps{4, +1};
    const DiracMatrix g5 = gamma5(sig);
    double cref = 0.0;
    bool have_ref = false;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            const Complex tr =
                (g5 * sigma(sig, a, b) * sigma(sig, c, d)).trace();
            const double e4 = eps.eps4(a, b, c, d);
            if (e4 == 0.0) {
              // overlapping pairs collapse to <= 2 gammas; trace vanishes
              worst = std::max(worst, std::abs(tr));
              continue;
            }
            const double ratio = tr.imag() / e4;
            worst = std::max(worst, std::abs(tr.real()));
            if (!have_ref) {
              cref = ratio;
              have_ref = true;
            } else {
              worst = std::max(worst, std::fabs(ratio - cref));
            }
          }
  }

  // D=2 duality identity
  const DualityResult dual = duality_identity_2d(LeviCivita{2, +1});
  worst = std::max(worst, dual.defect);

  Meas m;
  m.measured = worst;
  m.threshold = 1e-13;
  m.pass = worst <= m.threshold;
  m.detail = "both dimensions, both representations; duality sign s=" +
             std::to_string(dual.sign);
  return m;
}

// ---------------------------------------------------------------- 11
Meas check_finite_part(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x66696e69746570ULL);
  std::uniform_real_distribution<double> urad(0.8, 2.0);
  std::uniform_real_distribution<double> ucen(-0.3, 0.3);

  const testfn::TaylorWeight w1(
      testfn::BumpProfile(testfn::ProfileShape::FlatTop, 1.0), 1);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const testfn::BumpProfile f(
        trial % 2 == 0 ? testfn::ProfileShape::Bump
                       : testfn::ProfileShape::FlatTop,
        urad(rng), ucen(rng));
    const testfn::JetFn fj = [f](double x) { return f.jet(x); };
    const double support = std::fabs(f.center()) + f.radius() + 0.5;
    for (int k : {1, 2}) {
      const distext::PowerSingularity s(k);
      const auto res = distext::pair_finite_part(s, fj, support, w1);
      // independent oracle: same integrand through the fixed composite rule
      const testfn::Jet f0 = fj(0.0);
      auto oracle_int = [&](double x) {
        double poly = 0.0;
        for (int j = w1.order(); j >= 0; --j) poly = poly * x + f0.c[j];
        return (fj(x).value() - w1(x) * poly) / std::pow(x, k);
      };
      const double oracle =
          quad::composite_gauss(oracle_int, -support, 0.0, 6000) +
          quad::composite_gauss(oracle_int, 0.0, support, 6000);
      worst = std::max(worst, std::fabs(res.value - oracle));
    }
  }

  // BPHZ demonstrator
  const double cuts[] = {1e6};
  const auto rows = distext::bphz_demo(1.0, 2.0, cuts);
  const double bphz_dev =
      std::fabs(rows[0].subtracted - 0.5 * std::log(4.0));

  Meas m;
  m.measured = std::max(worst, bphz_dev);
  m.threshold = 1e-6;
  m.pass = worst <= 1e-7 && bphz_dev <= 1e-6;
  m.detail = "dual-quadrature worst " + fmt(worst) + ", BPHZ dev " +
             fmt(bphz_dev);
  return m;
}

using CheckFn = std::function<Meas(std::uint64_t)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> reg = {
      {"schwinger-mass", [](std::uint64_t) { return check_schwinger_mass(); }},
      {"dispersion-consistency",
       [](std::uint64_t) { return check_dispersion_consistency(); }},
      {"transversality", [](std::uint64_t s) { return check_transversality(s); }},
      {"oracle-equivalence",
       [](std::uint64_t) { return check_oracle_equivalence(); }},
      {"gauge-violation-contrast",
       [](std::uint64_t) { return check_gauge_violation_contrast(); }},
      {"anomaly-coefficient-4d",
       [](std::uint64_t s) { return check_anomaly_coefficient_4d(s); }},
      {"anomaly-2d-regulator-independence",
       [](std::uint64_t) { return check_anomaly_2d(); }},
      {"smear-covariance",
       [](std::uint64_t s) { return check_smear_covariance(s); }},
      {"bosonization", [](std::uint64_t) { return check_bosonization(); }},
      {"clifford-identities",
       [](std::uint64_t s) { return check_clifford_identities(s); }},
      {"finite-part-engine",
       [](std::uint64_t s) { return check_finite_part(s); }},
  };
  return reg;
}

}  // namespace

std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& [n, f] : registry()) names.push_back(n);
  return names;
}

CheckResult run_check(const std::string& name, std::uint64_t seed) {
  for (const auto& [n, f] : registry()) {
    if (n != name) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Meas m;
    try {
      m = f(seed);
    } catch (const std::exception& ex) {
      m.pass = false;
      m.detail = std::string("exception: ") + ex.what();
      m.measured = std::nan("");
    }
    const auto t1 = std::chrono::steady_clock::now();
    return {name, m.pass, m.measured, m.threshold, m.detail,
            std::chrono::duration<double>(t1 - t0).count()};
  }
  throw std::invalid_argument("unknown check: " + name);
}

std::vector<CheckResult> run_suite(const std::string& suite,
                                   std::uint64_t seed) {
  std::vector<CheckResult> out;
  if (suite == "all") {
    for (const auto& name : check_names()) out.push_back(run_check(name, seed));
    return out;
  }
  out.push_back(run_check(suite, seed));
  return out;
}

}  // namespace opvd::verify
