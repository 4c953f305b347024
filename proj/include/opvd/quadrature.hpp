#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace opvd::quad {

/// Thrown when adaptive refinement fails to reach the requested tolerance
/// (typically a non-integrable singularity in the integrand).
class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_panels = 20000;
  bool throw_on_failure = true;
};

struct Result {
  double value = 0.0;
  double error = 0.0;   // accumulated Gauss/Kronrod error estimate
  int panels = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod (7,15) integration of f over [a, b].
/// Panels with the largest error estimate are bisected first; the final
/// sum is accumulated in panel order, so results are deterministic.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt = {});

/// Same, but with interior breakpoints forced to be panel boundaries
/// (useful for kinks, poles handled by subtraction, or known peaks).
/// `pts` must lie inside (a, b); it need not be sorted.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> pts, const Options& opt = {});

/// Fixed composite Gauss-Legendre rule (10 nodes per panel, `panels`
/// uniform panels). No adaptivity and no error estimate: this is the
/// independent cross-check path, kept deliberately different from the
/// adaptive engine.
double composite_gauss(const std::function<double(double)>& f, double a,
                       double b, int panels);

}  // namespace opvd::quad
