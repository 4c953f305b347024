#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "opvd/testfn.hpp"

namespace opvd::smear2d {

using Complex = std::complex<double>;
using Spinor = std::array<Complex, 2>;

/// Periodic n x n grid, n a power of two, spacing a (box length n*a).
/// Direction 0 is the row index, direction 1 the column index.
struct Grid2 {
  int n;
  double a;

  Grid2(int n_, double a_);
  int sites() const { return n * n; }
  int idx(int i0, int i1) const { return wrap(i0) * n + wrap(i1); }
  int wrap(int i) const {
    int r = i % n;
    return r < 0 ? r + n : r;
  }
  /// Minimal-image displacement (in physical units) of site s relative to
  /// site t, component mu.
  double delta(int s, int t, int mu) const;
  double distance(int s, int t) const;
};

using ScalarField = std::vector<double>;
using SpinorField = std::vector<Spinor>;

/// Real 2-vector potential per site.
struct GaugeField {
  std::vector<std::array<double, 2>> a;
};

/// Scalar kernel C_{x,y}(z) solving the discrete Poisson equation
///   (div_bwd grad_fwd C)(z) = (delta_{z,x} - delta_{z,y}) / a^2
/// with the solution's own zero mode fixed to zero. The source has zero
/// mean, so the periodic problem is well posed.
struct GaugeKernel {
  ScalarField c;
  int x_site;
  int y_site;
};

/// Spectral (FFT) Poisson solves on a fixed grid; plans are reused.
/// A solver instance owns a scratch transform buffer, so one instance is
/// not safe for concurrent use; create one per thread.
class PoissonSolver {
 public:
  explicit PoissonSolver(const Grid2& g);
  ~PoissonSolver();
  PoissonSolver(const PoissonSolver&) = delete;
  PoissonSolver& operator=(const PoissonSolver&) = delete;

  /// Solve div_bwd grad_fwd u = rhs with mean(u) = 0; rhs must have zero mean.
  ScalarField solve(const ScalarField& rhs) const;
  GaugeKernel kernel(int x, int y) const;

  const Grid2& grid() const { return g_; }

 private:
  struct Impl;
  Grid2 g_;
  std::unique_ptr<Impl> impl_;
};

/// C_{x,y} for given source and sink sites; x == y returns the trivial
/// zero kernel.
GaugeKernel solve_kernel(const PoissonSolver& solver, int x, int y);

/// Forward difference (f(z+mu) - f(z))/a.
double grad_fwd(const Grid2& g, const ScalarField& f, int site, int mu);
/// Backward difference (f(z) - f(z-mu))/a.
double grad_bwd(const Grid2& g, const ScalarField& f, int site, int mu);
/// Backward divergence of the forward gradient (the solver's Laplacian).
double laplacian(const Grid2& g, const ScalarField& f, int site);

/// Gauge-covariant smearing of the spinor field at site x:
///   Psi(x) = sum_y a^2 rho(|y-x|) exp[i e P(x,y)] psi(y),
///   P(x,y) = sum_z a^2 (grad_fwd C_{x,y})(z) . A(z).
/// Only sites with |y-x| < rho.radius contribute (compact support is
/// exact). Requires 2a <= radius <= n*a/4.
Spinor smear(const Grid2& g, const PoissonSolver& solver,
             const SpinorField& psi, const GaugeField& A,
             const testfn::BumpProfile& rho, double e, int x);

/// Same but with the kernel gradient taken backward instead of forward --
/// the deliberate convention mismatch used as a negative control. The
/// summation-by-parts identity no longer telescopes and covariance is
/// violated at O(a).
Spinor smear_mismatched(const Grid2& g, const PoissonSolver& solver,
                        const SpinorField& psi, const GaugeField& A,
                        const testfn::BumpProfile& rho, double e, int x);

/// psi -> exp(-i e Lambda) psi, A -> A + grad_fwd Lambda. The phase sign
/// is the one under which the smeared field transforms exactly like psi
/// given the +i e smearing exponent and the delta_x - delta_y kernel.
void gauge_transform(const Grid2& g, SpinorField& psi, GaugeField& A,
                     const ScalarField& lambda, double e);

/// || smear(psi', A', x) - exp(-i e Lambda(x)) smear(psi, A, x) ||.
/// Exact covariance: rounding-level for any (psi, A, Lambda).
double covariance_check(const Grid2& g, const PoissonSolver& solver,
                        const SpinorField& psi, const GaugeField& A,
                        const ScalarField& lambda,
                        const testfn::BumpProfile& rho, double e, int x);

/// Same defect computed with the mismatched-gradient smearing (must fail).
double covariance_check_mismatched(const Grid2& g, const PoissonSolver& solver,
                                   const SpinorField& psi, const GaugeField& A,
                                   const ScalarField& lambda,
                                   const testfn::BumpProfile& rho, double e,
                                   int x);

/// Transverse potential A_mu = eps_{mu nu} grad_bwd_nu phi (eps_01 = +1).
/// Backward gradients make the backward-divergence Lorenz condition exact.
GaugeField transverse_gauge(const Grid2& g, const ScalarField& phi);

/// Backward divergence of A (the Lorenz-condition residual).
double divergence_max(const Grid2& g, const GaugeField& A);

struct BosonizationResult {
  double defect;
  int sign_s;  // duality sign consumed in the kernel route
};

/// Compares two assemblies of the smeared field for transverse A built
/// from phi:
///   route A: gamma5-structure phase exp[i e g5 (phi(x) - phi(y))] with
///            pointwise phi;
///   route B: the scalar-kernel pairing contracted through the D=2
///            duality identity (never touches phi pointwise, only A and
///            the kernel).
/// The two agree to rounding when the same discrete operators are used;
/// sign_override = +-1 flips the duality sign (negative control).
BosonizationResult bosonization_check(const Grid2& g,
                                      const PoissonSolver& solver,
                                      const ScalarField& phi,
                                      const SpinorField& psi,
                                      const testfn::BumpProfile& rho, double e,
                                      int x, int sign_override = 0);

}  // namespace opvd::smear2d
