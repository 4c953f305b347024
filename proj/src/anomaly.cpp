#include "opvd/anomaly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "opvd/quadrature.hpp"

namespace opvd::anomaly {

namespace {
constexpr double kPi = std::numbers::pi;
using clifford::Complex;
using clifford::DiracMatrix;
using clifford::MetricSignature;
using clifford::Representation;
const Complex kI{0.0, 1.0};

/// Hermitian Euclidean basis rotated from the Minkowski representation:
/// gE_0 = g^0, gE_j = -i g^j, so {gE_a, gE_b} = 2 delta_ab.
DiracMatrix euclidean_gamma(int dim, int a, Representation rep) {
  const MetricSignature sig = MetricSignature::minkowski(dim);
  if (a == 0) return clifford::gamma(sig, 0, rep);
  return clifford::gamma(sig, a, rep) * (-kI);
}

/// Chirality matrix of the Euclidean basis. The phase is a convention;
/// it is fixed so that the D=4 trace constant below comes out +8 and the
/// D=2 constant +2, matching the sign the assembled densities are quoted
/// with. Hermitian and squares to the identity in both cases.
DiracMatrix euclidean_gamma5(int dim, Representation rep) {
  if (dim == 2)
    return kI * euclidean_gamma(2, 0, rep) * euclidean_gamma(2, 1, rep);
  return Complex{-1.0} * euclidean_gamma(4, 0, rep) *
         euclidean_gamma(4, 1, rep) * euclidean_gamma(4, 2, rep) *
         euclidean_gamma(4, 3, rep);
}

DiracMatrix euclidean_sigma(int dim, int a, int b, Representation rep) {
  const DiracMatrix ga = euclidean_gamma(dim, a, rep);
  const DiracMatrix gb = euclidean_gamma(dim, b, rep);
  return (ga * gb - gb * ga) * (0.5 * kI);
}

}  // namespace

FieldStrength::FieldStrength(int d) : dim(d) {
  if (d != 2 && d != 4) throw std::invalid_argument("dimension must be 2 or 4");
}

void FieldStrength::set(int mu, int nu, double value) {
  if (mu < 0 || mu >= dim || nu < 0 || nu >= dim || mu == nu)
    throw std::out_of_range("bad field-strength indices");
  f[mu][nu] = value;
  f[nu][mu] = -value;
}

RegulatorProfile::RegulatorProfile(testfn::ProfileShape shape, double lambda)
    : rho_(shape, lambda) {
  if (rho_(0.0) != 1.0)
    throw std::logic_error("regulator must satisfy rho(0) = 1");
}

double RegulatorProfile::value(double u) const {
  const testfn::Jet r = rho_.jet_u(u);
  return r.value() * r.value();
}

double RegulatorProfile::d1(double u) const {
  const testfn::Jet r = rho_.jet_u(u);
  return (r * r).derivative(1);
}

double RegulatorProfile::d2(double u) const {
  const testfn::Jet r = rho_.jet_u(u);
  return (r * r).derivative(2);
}

namespace {

void check_decay(const RegulatorProfile& r) {
  const double end = r.support_end();
  if (std::fabs(r.value(end * (1.0 - 1e-12))) > 1e-10 ||
      std::fabs(r.value(end * 1.000001)) != 0.0)
    throw std::invalid_argument("regulator has nonvanishing boundary terms");
}

}  // namespace

double radial_integral_4d(const RegulatorProfile& r) {
  check_decay(r);
  const double end = r.support_end();
  quad::Options opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-12;
  const double cuts[] = {0.25 * end, 0.5 * end, 0.75 * end};
  const double integral = quad::integrate(
      [&](double u) { return u * r.d2(u); }, 0.0, end, cuts, opt).value;
  return integral / (16.0 * kPi * kPi);
}

double radial_integral_2d(const RegulatorProfile& r) {
  check_decay(r);
  const double end = r.support_end();
  quad::Options opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-12;
  const double cuts[] = {0.25 * end, 0.5 * end, 0.75 * end};
  const double integral = quad::integrate(
      [&](double u) { return r.d1(u); }, 0.0, end, cuts, opt).value;
  return integral / (4.0 * kPi);
}

double trace_factor_4d(const FieldStrength& f, Representation rep) {
  if (f.dim != 4) throw std::invalid_argument("trace_factor_4d needs D=4");
  DiracMatrix m(4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (f(a, b) != 0.0)
        m = m + euclidean_sigma(4, a, b, rep) * Complex(f(a, b));
  const Complex t = (euclidean_gamma5(4, rep) * m * m).trace();
  return t.real();
}

double trace_proportionality_4d(Representation rep) {
  FieldStrength ref(4);
  ref.set(0, 1, 1.0);
  ref.set(2, 3, 1.0);
  const clifford::LeviCivita eps{4, +1};
  return trace_factor_4d(ref, rep) / dual_contraction_4d(ref, eps);
}

double dual_contraction_4d(const FieldStrength& f,
                           const clifford::LeviCivita& eps) {
  if (f.dim != 4) throw std::invalid_argument("dual contraction needs D=4");
  double s = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          const double e = eps.eps4(a, b, c, d);
          if (e != 0.0) s += e * f(a, b) * f(c, d);
        }
  return 0.5 * s;
}

double trace_factor_2d(const FieldStrength& f, Representation rep) {
  if (f.dim != 2) throw std::invalid_argument("trace_factor_2d needs D=2");
  const DiracMatrix g5 = euclidean_gamma5(2, rep);
  double s = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      if (f(a, b) != 0.0)
        s += ((g5 * euclidean_sigma(2, a, b, rep)).trace() * f(a, b)).real();
  return s;
}

double anomaly_density(const FieldStrength& f, double e,
                       const RegulatorProfile& r, Representation rep) {
  if (f.dim == 4)
    return (e * e / 8.0) * trace_factor_4d(f, rep) * radial_integral_4d(r);
  return e * trace_factor_2d(f, rep) * radial_integral_2d(r);
}

double anomaly_coefficient_2d(const RegulatorProfile& r, Representation rep) {
  FieldStrength f(2);
  f.set(0, 1, 1.0);
  return anomaly_density(f, 1.0, r, rep);
}

}  // namespace opvd::anomaly
