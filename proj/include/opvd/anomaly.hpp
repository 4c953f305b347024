#pragma once

#include "opvd/clifford.hpp"
#include "opvd/testfn.hpp"

namespace opvd::anomaly {

/// Antisymmetric field-strength tensor in D = 2 or 4.
struct FieldStrength {
  int dim;
  double f[4][4]{};

  explicit FieldStrength(int d);
  void set(int mu, int nu, double value);  // also sets the mirror entry
  double operator()(int mu, int nu) const { return f[mu][nu]; }
};

/// Radial regulator f(u) = rho^2(u), u = y^2 >= 0, with f(0) = 1 and
/// compact support. Derivatives are closed-form through the jet engine.
class RegulatorProfile {
 public:
  RegulatorProfile(testfn::ProfileShape shape, double lambda);

  double value(double u) const;
  double d1(double u) const;
  double d2(double u) const;
  double support_end() const { return rho_.support_end(); }
  const testfn::MomentumProfile& rho() const { return rho_; }

 private:
  testfn::MomentumProfile rho_;
};

/// Int d^4y/(2pi)^4 f''(y^2) = (pi^2/(2pi)^4) Int_0^inf u f''(u) du,
/// computed by quadrature. Integration by parts gives f(0)/(16 pi^2) =
/// 1/(16 pi^2) for any admissible profile; the quadrature must reproduce
/// that, which is the regulator-independence statement.
double radial_integral_4d(const RegulatorProfile& r);

/// Int d^2y/(2pi)^2 f'(y^2) = (pi/(2pi)^2) Int_0^inf f'(u) du = -1/(4 pi).
double radial_integral_2d(const RegulatorProfile& r);

/// tr[g5 (sigma^{mn} F_mn)^2] evaluated in the hermitian Euclidean basis
/// rotated from the chosen Minkowski representation (gE_0 = g^0,
/// gE_j = -i g^j, g5E fixed so the trace constant is +8): the value equals
/// 8 * (*F.F) with *F.F = (1/2) eps^{abcd} F_ab F_cd. D = 4 only.
double trace_factor_4d(const FieldStrength& f,
                       clifford::Representation rep =
                           clifford::Representation::Dirac);

/// Measured proportionality constant tr[g5 (sigma F)^2] / (*F.F).
double trace_proportionality_4d(clifford::Representation rep =
                                    clifford::Representation::Dirac);

/// (1/2) eps^{abcd} F_ab F_cd, the dual contraction.
double dual_contraction_4d(const FieldStrength& f, const clifford::LeviCivita& eps);

/// sum_{mn} tr[g5 sigma^{mn}] F_mn in the D=2 Euclidean basis (= 4 F_01).
double trace_factor_2d(const FieldStrength& f,
                       clifford::Representation rep =
                           clifford::Representation::Dirac);

/// Assembled anomaly density.
///   D=4: (e^2/8) * trace_factor_4d * radial_integral_4d
///        = (e^2/(16 pi^2)) * (*F.F).
///   D=2: e * trace_factor_2d * radial_integral_2d = -(e/pi) F_01.
/// The D=2 coefficient is computed, not asserted; see
/// anomaly_coefficient_2d for the published value.
double anomaly_density(const FieldStrength& f, double e,
                       const RegulatorProfile& r,
                       clifford::Representation rep =
                           clifford::Representation::Dirac);

/// The module's computed D=2 coefficient: density / (e F_01) for constant
/// F_01 (equals -1/pi with this module's conventions).
double anomaly_coefficient_2d(const RegulatorProfile& r,
                              clifford::Representation rep =
                                  clifford::Representation::Dirac);

}  // namespace opvd::anomaly
