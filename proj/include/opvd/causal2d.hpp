#pragma once

#include <complex>

#include "opvd/quadrature.hpp"

namespace opvd::causal2d {

/// 2D Minkowski momentum, metric (+,-).
struct Momentum2 {
  double k0;
  double k1;
  double ksq() const { return k0 * k0 - k1 * k1; }
};

struct ModelParams {
  double m;  // fermion mass, >= 0
  double e;  // coupling, > 0
};

struct Tensor2 {
  double v[2][2]{};
  double& operator()(int mu, int nu) { return v[mu][nu]; }
  double operator()(int mu, int nu) const { return v[mu][nu]; }
  double frobenius() const;
};

struct Tensor2c {
  std::complex<double> v[2][2]{};
  std::complex<double>& operator()(int mu, int nu) { return v[mu][nu]; }
  std::complex<double> operator()(int mu, int nu) const { return v[mu][nu]; }
  double frobenius() const;
};

/// Spectral density of the causal pair bubble above threshold:
///   dhat(k) = (4m^2/k^4) (1 - 4m^2/k^2)^(-1/2) Theta(k^2-4m^2) sign(k0),
/// zero below threshold. The threshold itself is rejected (the inverse
/// square root is integrable only under a quadrature variable change).
/// The m^2 -> 0 limit is the distribution 2 delta(k^2) sign(k0), which has
/// no pointwise evaluation; all numerics here keep m > 0 and reach the
/// massless limit by extrapolation.
double dhat(const Momentum2& k, double m);

struct PVSplit {
  double principal_value;  // real PV integral, multiplied by i/(2pi) in value
  double pole_residue;     // pi * F(1), the t=1 pole contribution
};

struct DispersionResult {
  std::complex<double> value;
  double quadrature_error;
  PVSplit pv_split;
};

/// Once-subtracted dispersion integral
///   rhat = (i/2pi) Int dt  dhat(tk)(tk)^2 / ((t - i eps)(1 - t + i eps)).
/// The support restriction is |t| >= 2m/sqrt(k^2); the pole at t = 1 is
/// handled as PV plus the i*pi residue term, the t = 0 pole lies outside
/// the support. The inverse-square-root endpoint is absorbed by the
/// substitution t = t0 cosh u. Requires ksq > 4 msq and msq > 0.
DispersionResult rhat_quadrature(double ksq, double msq);

/// Closed form of the dispersion integral for k^2 > 4m^2, k0 > 0:
///   rhat = (i m^2/pi) [ 1/m^2 + (2/k^2) (1-4m^2/k^2)^(-1/2) log(...) ]
/// where the logarithm's argument (sqrt+1)/(sqrt-1) is negative on the
/// physical sheet; the branch log|.| - i*pi is the one produced by the
/// defining PV + residue prescription above (checked against it to
/// quadrature accuracy). At msq = 0 the subtraction term alone survives
/// and the value is exactly i/pi.
std::complex<double> rhat_closed(double ksq, double msq);

/// Analytic continuation of the causal answer to Euclidean (spacelike)
/// momenta: the transverse coefficient (1/pi)[1 - (2m^2/(k_E^2 b)) log((b+1)/(b-1))],
/// b = sqrt(1 + 4m^2/k_E^2). Tends to 1/pi as m -> 0 and to 0 as m -> inf.
double pi_transverse_euclidean(double ksq_e, double msq);

struct PhatResult {
  Tensor2 tensor;
  double quadrature_error;
};

/// Brute-force evaluation of the causal pair integral
///   Phat_mn(k) = -2 Int d^2p delta(p^2-m^2) delta(k^2-2k.p)
///                Theta(p0) Theta(k0-p0)
///                [p_m k_n + p_n k_m - 2 p_m p_n - (k^2/2) g_mn]
/// with each delta replaced by a normalized Gaussian of width delta_width.
/// Theta factors stay sharp. Converges to the closed-form tensor
/// (g_mn - k_m k_n / k^2) k^2 dhat(k) as delta_width -> 0 (for k0 > 0).
PhatResult phat_oracle(const Momentum2& k, double m, double delta_width);

/// g^{mn} Phat_mn, the scalar coefficient on the transverse projector
/// (whose metric trace is 1 in two dimensions).
double phat_transverse_coefficient(const PhatResult& p);

struct PolarizationTensor {
  Tensor2c components;
  Momentum2 k;
  ModelParams params;
};

/// Causal polarization tensor Pi_mn = e^2 (g_mn - k_m k_n/k^2) rhat(k),
/// transverse by construction. Requires k^2 != 0.
PolarizationTensor polarization(const Momentum2& k, const ModelParams& p);

/// max_nu |k^mu Pi_mu nu| / ||Pi||, the longitudinal defect.
double longitudinal_defect(const PolarizationTensor& pi);

/// One-loop Euclidean vacuum polarization with standard propagators and a
/// sharp radial cutoff |p| <= cutoff (e^2 stripped, no causal subtraction).
/// The angular integral is done in closed form, the radial one adaptively.
/// Violates transversality: k^mu Pi_mn tends to -k_nu/(2 pi) as the cutoff
/// grows, while the k-dependent transverse part reproduces the continued
/// causal answer.
Tensor2 naive_cutoff_polarization(double ke0, double ke1, double m,
                                  double cutoff);

/// Dynamically generated boson mass squared, e^2/pi, obtained by
/// extrapolating rhat_closed to m^2/k^2 -> 0 with the x(a log x + b)
/// error model.
double boson_mass_squared(double e);

}  // namespace opvd::causal2d
