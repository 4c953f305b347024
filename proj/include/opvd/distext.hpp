#pragma once

#include <span>
#include <vector>

#include "opvd/quadrature.hpp"
#include "opvd/testfn.hpp"

namespace opvd::distext {

/// The distribution x^(-k) on the line, k >= 1. Pairing against a test
/// function needs the first omega = k-1 Taylor orders removed at 0.
struct PowerSingularity {
  int exponent;  // k >= 1

  explicit PowerSingularity(int k);
  int singular_order() const { return exponent - 1; }
};

struct PairingResult {
  double value;
  double quadrature_error;
  int subtraction_order_used;
};

/// Finite-part pairing <x^(-k), f> = Int x^(-k) [f(x) - w(x) jet_w f(x)] dx
/// over [-support, support], with x = 0 always a panel boundary. The
/// subtracted integrand is integrable by construction when
/// w.order() >= singular_order; an insufficient order shows up as
/// divergence of the adaptive refinement and raises QuadratureError.
PairingResult pair_finite_part(const PowerSingularity& s,
                               const testfn::JetFn& f, double support,
                               const testfn::TaylorWeight& w,
                               const quad::Options& opt = {});

struct BphzRow {
  double cutoff;
  double raw;         // I(L) = Int_0^L k dk/(k^2+m^2), log divergent
  double subtracted;  // once-subtracted at scale mu, converges to log(mu^2/m^2)/2
};

/// Momentum-space subtraction demonstrator on the log-divergent model
/// integral: the raw column grows like log L, the subtracted column
/// converges as L -> infinity.
std::vector<BphzRow> bphz_demo(double m, double mu,
                               std::span<const double> cutoffs);

}  // namespace opvd::distext
