#include "opvd/smear2d.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "opvd/clifford.hpp"

namespace opvd::smear2d {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI{0.0, 1.0};
}  // namespace

Grid2::Grid2(int n_, double a_) : n(n_), a(a_) {
  if (n < 8 || (n & (n - 1)) != 0)
    throw std::invalid_argument("grid size must be a power of two, n >= 8");
  if (!(a > 0.0)) throw std::invalid_argument("spacing must be positive");
}

double Grid2::delta(int s, int t, int mu) const {
  const int cs = mu == 0 ? s / n : s % n;
  const int ct = mu == 0 ? t / n : t % n;
  int d = cs - ct;
  if (d > n / 2) d -= n;
  if (d < -n / 2) d += n;
  return d * a;
}

double Grid2::distance(int s, int t) const {
  return std::hypot(delta(s, t, 0), delta(s, t, 1));
}

struct PoissonSolver::Impl {
  fftw_complex* buf;
  fftw_plan fwd;
  fftw_plan bwd;
  std::vector<double> lambda_inv;      // 1/eigenvalue, 0 at the zero mode
  std::vector<Complex> twiddle;        // exp(-2 pi i j / n)
};

PoissonSolver::PoissonSolver(const Grid2& g) : g_(g), impl_(new Impl) {
  const int n = g.n;
  impl_->buf = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
  impl_->fwd = fftw_plan_dft_2d(n, n, impl_->buf, impl_->buf, FFTW_FORWARD,
                                FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft_2d(n, n, impl_->buf, impl_->buf, FFTW_BACKWARD,
                                FFTW_ESTIMATE);
  impl_->lambda_inv.resize(static_cast<std::size_t>(n) * n);
  for (int q0 = 0; q0 < n; ++q0)
    for (int q1 = 0; q1 < n; ++q1) {
      const double s0 = std::sin(std::numbers::pi * q0 / n);
      const double s1 = std::sin(std::numbers::pi * q1 / n);
      const double lam = -4.0 / (g.a * g.a) * (s0 * s0 + s1 * s1);
      impl_->lambda_inv[q0 * n + q1] = lam != 0.0 ? 1.0 / lam : 0.0;
    }
  impl_->twiddle.resize(n);
  for (int j = 0; j < n; ++j)
    impl_->twiddle[j] = std::polar(1.0, -kTwoPi * j / n);
}

PoissonSolver::~PoissonSolver() {
  fftw_destroy_plan(impl_->fwd);
  fftw_destroy_plan(impl_->bwd);
  fftw_free(impl_->buf);
}

ScalarField PoissonSolver::solve(const ScalarField& rhs) const {
  const int n = g_.n;
  if (static_cast<int>(rhs.size()) != n * n)
    throw std::invalid_argument("field size mismatch");
  double mean = 0.0, scale = 0.0;
  for (double v : rhs) {
    mean += v;
    scale = std::max(scale, std::fabs(v));
  }
  if (std::fabs(mean) > 1e-10 * std::max(scale, 1.0) * n * n)
    throw std::invalid_argument("periodic Poisson problem needs a zero-mean source");

  for (int i = 0; i < n * n; ++i) {
    impl_->buf[i][0] = rhs[i];
    impl_->buf[i][1] = 0.0;
  }
  fftw_execute(impl_->fwd);
  for (int i = 0; i < n * n; ++i) {
    impl_->buf[i][0] *= impl_->lambda_inv[i];
    impl_->buf[i][1] *= impl_->lambda_inv[i];
  }
  fftw_execute(impl_->bwd);
  ScalarField out(static_cast<std::size_t>(n) * n);
  const double norm = 1.0 / (static_cast<double>(n) * n);
  for (int i = 0; i < n * n; ++i) out[i] = impl_->buf[i][0] * norm;
  return out;
}

GaugeKernel PoissonSolver::kernel(int x, int y) const {
  const int n = g_.n;
  GaugeKernel k{ScalarField(static_cast<std::size_t>(n) * n, 0.0), x, y};
  if (x == y) return k;  // zero source, trivial kernel

  // Spectral source (delta_x - delta_y)/a^2 assembled directly from the
  // twiddle table; one inverse transform per kernel.
  const int x0 = x / n, x1 = x % n, y0 = y / n, y1 = y % n;
  const double src_scale = 1.0 / (g_.a * g_.a);
  for (int q0 = 0; q0 < n; ++q0)
    for (int q1 = 0; q1 < n; ++q1) {
      const Complex sx = impl_->twiddle[(q0 * x0 + q1 * x1) % n];
      const Complex sy = impl_->twiddle[(q0 * y0 + q1 * y1) % n];
      const Complex v =
          (sx - sy) * (src_scale * impl_->lambda_inv[q0 * n + q1]);
      impl_->buf[q0 * n + q1][0] = v.real();
      impl_->buf[q0 * n + q1][1] = v.imag();
    }
  fftw_execute(impl_->bwd);
  const double norm = 1.0 / (static_cast<double>(n) * n);
  for (int i = 0; i < n * n; ++i) k.c[i] = impl_->buf[i][0] * norm;
  return k;
}

GaugeKernel solve_kernel(const PoissonSolver& solver, int x, int y) {
  return solver.kernel(x, y);
}

double grad_fwd(const Grid2& g, const ScalarField& f, int site, int mu) {
  const int i0 = site / g.n, i1 = site % g.n;
  const int up = mu == 0 ? g.idx(i0 + 1, i1) : g.idx(i0, i1 + 1);
  return (f[up] - f[site]) / g.a;
}

double grad_bwd(const Grid2& g, const ScalarField& f, int site, int mu) {
  const int i0 = site / g.n, i1 = site % g.n;
  const int dn = mu == 0 ? g.idx(i0 - 1, i1) : g.idx(i0, i1 - 1);
  return (f[site] - f[dn]) / g.a;
}

double laplacian(const Grid2& g, const ScalarField& f, int site) {
  const int i0 = site / g.n, i1 = site % g.n;
  return (f[g.idx(i0 + 1, i1)] + f[g.idx(i0 - 1, i1)] + f[g.idx(i0, i1 + 1)] +
          f[g.idx(i0, i1 - 1)] - 4.0 * f[site]) /
         (g.a * g.a);
}

namespace {

void check_radius(const Grid2& g, const testfn::BumpProfile& rho) {
  if (rho.radius() < 2.0 * g.a || rho.radius() > g.n * g.a / 4.0)
    throw std::invalid_argument("smearing radius must lie in [2a, n*a/4]");
}

/// P(x,y) = sum_z a^2 (grad C)(z) . A(z), forward or backward gradient.
double kernel_pairing(const Grid2& g, const GaugeKernel& k,
                      const GaugeField& A, bool forward) {
  double s = 0.0;
  for (int z = 0; z < g.sites(); ++z) {
    const double g0 = forward ? grad_fwd(g, k.c, z, 0) : grad_bwd(g, k.c, z, 0);
    const double g1 = forward ? grad_fwd(g, k.c, z, 1) : grad_bwd(g, k.c, z, 1);
    s += g0 * A.a[z][0] + g1 * A.a[z][1];
  }
  return s * g.a * g.a;
}

Spinor smear_impl(const Grid2& g, const PoissonSolver& solver,
                  const SpinorField& psi, const GaugeField& A,
                  const testfn::BumpProfile& rho, double e, int x,
                  bool forward) {
  check_radius(g, rho);
  if (static_cast<int>(psi.size()) != g.sites() ||
      static_cast<int>(A.a.size()) != g.sites())
    throw std::invalid_argument("field size mismatch");

  Spinor out{Complex{}, Complex{}};
  const int reach = static_cast<int>(std::ceil(rho.radius() / g.a));
  const int x0 = x / g.n, x1 = x % g.n;
  for (int d0 = -reach; d0 <= reach; ++d0)
    for (int d1 = -reach; d1 <= reach; ++d1) {
      const int y = g.idx(x0 + d0, x1 + d1);
      const double r = g.distance(y, x);
      if (r >= rho.radius()) continue;  // exact compact support
      const double weight = rho(r) * g.a * g.a;
      const GaugeKernel k = solver.kernel(x, y);
      const double pairing = kernel_pairing(g, k, A, forward);
      const Complex phase = std::exp(kI * (e * pairing));
      out[0] += weight * phase * psi[y][0];
      out[1] += weight * phase * psi[y][1];
    }
  return out;
}

}  // namespace

Spinor smear(const Grid2& g, const PoissonSolver& solver,
             const SpinorField& psi, const GaugeField& A,
             const testfn::BumpProfile& rho, double e, int x) {
  return smear_impl(g, solver, psi, A, rho, e, x, true);
}

Spinor smear_mismatched(const Grid2& g, const PoissonSolver& solver,
                        const SpinorField& psi, const GaugeField& A,
                        const testfn::BumpProfile& rho, double e, int x) {
  return smear_impl(g, solver, psi, A, rho, e, x, false);
}

void gauge_transform(const Grid2& g, SpinorField& psi, GaugeField& A,
                     const ScalarField& lambda, double e) {
  if (static_cast<int>(lambda.size()) != g.sites())
    throw std::invalid_argument("field size mismatch");
  for (int z = 0; z < g.sites(); ++z) {
    const Complex ph = std::exp(-kI * (e * lambda[z]));
    psi[z][0] *= ph;
    psi[z][1] *= ph;
    A.a[z][0] += grad_fwd(g, lambda, z, 0);
    A.a[z][1] += grad_fwd(g, lambda, z, 1);
  }
}

namespace {

double covariance_defect(const Grid2& g, const PoissonSolver& solver,
                         const SpinorField& psi, const GaugeField& A,
                         const ScalarField& lambda,
                         const testfn::BumpProfile& rho, double e, int x,
                         bool forward) {
  SpinorField psi2 = psi;
  GaugeField A2 = A;
  gauge_transform(g, psi2, A2, lambda, e);
  const Spinor lhs = smear_impl(g, solver, psi2, A2, rho, e, x, forward);
  const Spinor ref = smear_impl(g, solver, psi, A, rho, e, x, forward);
  const Complex ph = std::exp(-kI * (e * lambda[x]));
  return std::sqrt(std::norm(lhs[0] - ph * ref[0]) +
                   std::norm(lhs[1] - ph * ref[1]));
}

}  // namespace

double covariance_check(const Grid2& g, const PoissonSolver& solver,
                        const SpinorField& psi, const GaugeField& A,
                        const ScalarField& lambda,
                        const testfn::BumpProfile& rho, double e, int x) {
  return covariance_defect(g, solver, psi, A, lambda, rho, e, x, true);
}

double covariance_check_mismatched(const Grid2& g, const PoissonSolver& solver,
                                   const SpinorField& psi, const GaugeField& A,
                                   const ScalarField& lambda,
                                   const testfn::BumpProfile& rho, double e,
                                   int x) {
  return covariance_defect(g, solver, psi, A, lambda, rho, e, x, false);
}

GaugeField transverse_gauge(const Grid2& g, const ScalarField& phi) {
  if (static_cast<int>(phi.size()) != g.sites())
    throw std::invalid_argument("field size mismatch");
  GaugeField A;
  A.a.resize(g.sites());
  for (int z = 0; z < g.sites(); ++z) {
    A.a[z][0] = grad_bwd(g, phi, z, 1);   // eps_{01} grad_1 phi
    A.a[z][1] = -grad_bwd(g, phi, z, 0);  // eps_{10} grad_0 phi
  }
  return A;
}

double divergence_max(const Grid2& g, const GaugeField& A) {
  double worst = 0.0;
  for (int z = 0; z < g.sites(); ++z) {
    const int i0 = z / g.n, i1 = z % g.n;
    const double div =
        (A.a[z][0] - A.a[g.idx(i0 - 1, i1)][0] + A.a[z][1] -
         A.a[g.idx(i0, i1 - 1)][1]) /
        g.a;
    worst = std::max(worst, std::fabs(div));
  }
  return worst;
}

BosonizationResult bosonization_check(const Grid2& g,
                                      const PoissonSolver& solver,
                                      const ScalarField& phi,
                                      const SpinorField& psi,
                                      const testfn::BumpProfile& rho, double e,
                                      int x, int sign_override) {
  check_radius(g, rho);
  const GaugeField A = transverse_gauge(g, phi);

  // Duality sign from the Clifford module: gamma^mu eps_{mu nu} = s g5 gamma_nu.
  const clifford::LeviCivita eps{2, +1};
  const clifford::DualityResult dual = clifford::duality_identity_2d(eps);
  const int s = sign_override != 0 ? sign_override : dual.sign;
  const clifford::DiracMatrix g5 =
      clifford::gamma5(clifford::MetricSignature::minkowski(2));

  // exp(i c g5) = cos(c) + i sin(c) g5  since g5^2 = 1.
  auto chiral_phase_apply = [&](double c, const Spinor& v) {
    const double co = std::cos(c), si = std::sin(c);
    Spinor out{};
    for (int i = 0; i < 2; ++i) {
      out[i] = co * v[i];
      for (int j = 0; j < 2; ++j) out[i] += kI * si * g5.at(i, j) * v[j];
    }
    return out;
  };

  const int reach = static_cast<int>(std::ceil(rho.radius() / g.a));
  const int x0 = x / g.n, x1 = x % g.n;
  Spinor route_a{}, route_b{};
  for (int d0 = -reach; d0 <= reach; ++d0)
    for (int d1 = -reach; d1 <= reach; ++d1) {
      const int y = g.idx(x0 + d0, x1 + d1);
      const double r = g.distance(y, x);
      if (r >= rho.radius()) continue;
      const double weight = rho(r) * g.a * g.a;

      // Route A: pointwise bosonization phase exp[i e g5 (phi(x)-phi(y))].
      {
        const Spinor t = chiral_phase_apply(e * (phi[x] - phi[y]), psi[y]);
        route_a[0] += weight * t[0];
        route_a[1] += weight * t[1];
      }

      // Route B: the kernel route. The matrix-kernel smearing exponent
      // contracts through gamma^mu eps_{mu nu} = s g5 gamma_nu into
      // s * g5 times the gradient pairing
      //   K(x,y) = sum_z a^2 (grad_fwd C)(z) . w(z),
      // where w_rho(z) = -eps_{rho mu} A_mu(z + e_rho) inverts the
      // transverse map (w = grad_fwd phi when A = eps grad_bwd phi, exactly,
      // by the shift between forward and backward differences). Summation
      // by parts against the kernel's Laplacian gives K = phi(y) - phi(x),
      // so the phase is exp[i e s g5 K] with no pointwise use of phi.
      {
        const GaugeKernel k = solver.kernel(x, y);
        double pairing = 0.0;
        for (int z = 0; z < g.sites(); ++z) {
          const int z0 = z / g.n, z1 = z % g.n;
          const double w0 = -A.a[g.idx(z0 + 1, z1)][1];  // -eps_{01} A_1(z+e0)
          const double w1 = A.a[g.idx(z0, z1 + 1)][0];   // -eps_{10} A_0(z+e1)
          pairing += grad_fwd(g, k.c, z, 0) * w0 + grad_fwd(g, k.c, z, 1) * w1;
        }
        pairing *= g.a * g.a;
        const Spinor t = chiral_phase_apply(e * s * pairing, psi[y]);
        route_b[0] += weight * t[0];
        route_b[1] += weight * t[1];
      }
    }

  const double defect = std::sqrt(std::norm(route_a[0] - route_b[0]) +
                                  std::norm(route_a[1] - route_b[1]));
  return {defect, dual.sign};
}

}  // namespace opvd::smear2d
