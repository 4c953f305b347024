#include "opvd/causal2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace opvd::causal2d {

namespace {
constexpr double kPi = std::numbers::pi;
const std::complex<double> kI{0.0, 1.0};
}  // namespace

double Tensor2::frobenius() const {
  double s = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s += v[i][j] * v[i][j];
  return std::sqrt(s);
}

double Tensor2c::frobenius() const {
  double s = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s += std::norm(v[i][j]);
  return std::sqrt(s);
}

double dhat(const Momentum2& k, double m) {
  const double ksq = k.ksq();
  const double thr = 4.0 * m * m;
  if (ksq == thr)
    throw std::domain_error("dhat is singular at the threshold k^2 = 4m^2");
  if (ksq < thr) return 0.0;
  if (k.k0 == 0.0) return 0.0;
  const double sign = k.k0 > 0.0 ? 1.0 : -1.0;
  return (thr / (ksq * ksq)) / std::sqrt(1.0 - thr / ksq) * sign;
}

DispersionResult rhat_quadrature(double ksq, double msq) {
  if (!(msq > 0.0))
    throw std::domain_error(
        "rhat_quadrature needs msq > 0 (the massless density is a pure "
        "delta distribution; take the limit by extrapolation)");
  if (!(ksq > 4.0 * msq))
    throw std::domain_error("rhat_quadrature needs k^2 > 4 m^2");

  const double c = 4.0 * msq / ksq;     // = t0^2
  const double t0 = std::sqrt(c);
  const double beta = std::sqrt(1.0 - c);
  // u1 = acosh(1/t0) via log1p, stable as t0 -> 1 near the threshold
  const double d1 = beta * beta / (t0 * (1.0 + t0));  // 1/t0 - 1
  const double u1 = std::log1p(d1 + std::sqrt(d1 * (2.0 + d1)));
  const double u2 = std::acosh(2.0 / t0);  // image of t = 2
  const double f_pole = c / beta;          // F(1) = c / sqrt(1 - t0^2)

  // After t = t0 cosh u the weight sqrt(t^2 - t0^2) cancels and the
  // positive-branch integrand is H(u)/(u1 - u) with H smooth. Using
  //   1 - t = t0 (cosh u1 - cosh u) = 2 t0 sinh((u1+u)/2) sinh((u1-u)/2)
  // the (u1 - u) factor divides out analytically, so H has no
  // cancellation even arbitrarily close to the pole:
  //   H(u) = c / (t^2 t0 sinh((u1+u)/2) * sinhc((u1-u)/2)).
  auto t_of = [t0](double u) { return t0 * std::cosh(u); };
  auto sinhc = [](double w) { return w == 0.0 ? 1.0 : std::sinh(w) / w; };
  auto h_pos = [&](double u) {
    const double t = t_of(u);
    return c / (t * t * t0 * std::sinh(0.5 * (u1 + u)) * sinhc(0.5 * (u1 - u)));
  };

  quad::Options opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-11;

  double err = 0.0;

  // A: t in [t0, 2], pole subtracted, u1 forced to a panel boundary.
  auto sub_pos = [&](double u) {
    if (u == u1) return 0.0;  // removable point, never hit by GK nodes
    return (h_pos(u) - f_pole) / (u1 - u);
  };
  const double cutA[] = {u1};
  const quad::Result ra = quad::integrate(sub_pos, 0.0, u2, cutA, opt);
  err += ra.error;
  // PV of f_pole/(u1-u) over [0, u2]
  const double pv_log = f_pole * std::log(u1 / (u2 - u1));

  // B: t in [2, inf) via v = 1/t; integrand c v^2 /((v-1) sqrt(1-t0^2 v^2)).
  auto tail_pos = [&](double v) {
    return c * v * v / ((v - 1.0) * std::sqrt(1.0 - c * v * v));
  };
  const quad::Result rb = quad::integrate(tail_pos, 0.0, 0.5, opt);
  err += rb.error;

  // C: negative branch reflected, s in [t0, 2]: F(s)/(1+s).
  auto body_neg = [&](double u) {
    const double t = t_of(u);
    return c / (t * t * (1.0 + t));
  };
  const quad::Result rc = quad::integrate(body_neg, 0.0, u2, opt);
  err += rc.error;

  // D: s in [2, inf) via v = 1/s.
  auto tail_neg = [&](double v) {
    return c * v * v / ((1.0 + v) * std::sqrt(1.0 - c * v * v));
  };
  const quad::Result rd = quad::integrate(tail_neg, 0.0, 0.5, opt);
  err += rd.error;

  const double pv = ra.value + pv_log + rb.value + rc.value + rd.value;

  DispersionResult out;
  // (i/2pi) (PV - i pi F(1))
  out.value = std::complex<double>(0.5 * f_pole, pv / (2.0 * kPi));
  out.quadrature_error = err / (2.0 * kPi);
  out.pv_split = {pv, kPi * f_pole};
  return out;
}

std::complex<double> rhat_closed(double ksq, double msq) {
  if (msq < 0.0 || !(ksq > 4.0 * msq))
    throw std::domain_error("rhat_closed needs k^2 > 4 m^2 >= 0");
  if (msq == 0.0) return kI / kPi;  // only the subtraction term survives

  const double x = msq / ksq;
  const double beta = std::sqrt(1.0 - 4.0 * x);
  // log((1+beta)/(1-beta)) with 1-beta = 4x/(1+beta) to avoid cancellation
  const double lg = std::log((1.0 + beta) * (1.0 + beta) / (4.0 * x));
  // (i m^2/pi)[1/m^2 + (2/(k^2 beta)) (log|..| - i pi)]
  return kI / kPi * (1.0 + (2.0 * x / beta) * std::complex<double>(lg, -kPi));
}

double pi_transverse_euclidean(double ksq_e, double msq) {
  if (!(ksq_e > 0.0)) throw std::domain_error("needs spacelike k^2 > 0");
  if (msq == 0.0) return 1.0 / kPi;
  const double b = std::sqrt(1.0 + 4.0 * msq / ksq_e);
  return (1.0 - (2.0 * msq / (ksq_e * b)) * std::log((b + 1.0) / (b - 1.0))) /
         kPi;
}

namespace {

// Gaussian delta sequence, normalized to unit integral.
inline double gauss_delta(double x, double w) {
  const double z = x / w;
  return std::exp(-0.5 * z * z) / (w * std::sqrt(2.0 * kPi));
}

struct PhatGeometry {
  bool above_threshold;
  double e_plus, q_plus;    // blob centers (p0, p1)
  double e_minus, q_minus;
};

PhatGeometry phat_geometry(const Momentum2& k, double m) {
  PhatGeometry g{};
  const double ksq = k.ksq();
  g.above_threshold = ksq > 4.0 * m * m && k.k0 > 0.0;
  if (g.above_threshold) {
    const double beta = std::sqrt(1.0 - 4.0 * m * m / ksq);
    g.e_plus = 0.5 * (k.k0 + k.k1 * beta);
    g.q_plus = 0.5 * (k.k1 + k.k0 * beta);
    g.e_minus = 0.5 * (k.k0 - k.k1 * beta);
    g.q_minus = 0.5 * (k.k1 - k.k0 * beta);
  }
  return g;
}

}  // namespace

PhatResult phat_oracle(const Momentum2& k, double m, double delta_width) {
  if (!(delta_width > 0.0))
    throw std::invalid_argument("delta width must be positive");
  if (k.k0 <= 0.0) return {};  // Theta(p0)Theta(k0-p0) has empty support

  const double ksq = k.ksq();
  const double w = delta_width;
  const PhatGeometry geo = phat_geometry(k, m);

  auto integrand = [&](double p0, double p1, int mu, int nu) {
    // lower-index components, metric (+,-): the stored tensor is P_{mu nu}
    const double plo[2] = {p0, -p1};
    const double klo[2] = {k.k0, -k.k1};
    const double psq = p0 * p0 - p1 * p1;
    const double kdotp = k.k0 * p0 - k.k1 * p1;
    const double gmn = mu == nu ? (mu == 0 ? 1.0 : -1.0) : 0.0;
    const double tmn = plo[mu] * klo[nu] + plo[nu] * klo[mu] -
                       2.0 * plo[mu] * plo[nu] - 0.5 * ksq * gmn;
    return -2.0 * gauss_delta(psq - m * m, w) *
           gauss_delta(ksq - 2.0 * kdotp, w) * tmn;
  };

  quad::Options inner_opt;
  inner_opt.abs_tol = 1e-14 / w;  // peak values scale like 1/w^2
  inner_opt.rel_tol = 1e-11;
  inner_opt.max_panels = 4000;
  quad::Options outer_opt;
  // the inner adaptivity leaves ~1e-10 relative noise on the outer
  // integrand; demanding more than ~1e-8 here just chases that noise
  outer_opt.abs_tol = 1e-12 / w;
  outer_opt.rel_tol = 1e-8;
  outer_opt.max_panels = 8000;
  outer_opt.throw_on_failure = false;

  // Inner p1 integral at fixed p0: breakpoints bracket the two Gaussian
  // ridges at multiples of their local p1-widths, so the panels adjacent
  // to a ridge are comparable to its width and the nodes cannot miss it.
  auto ridge_cuts = [](std::vector<double>& cuts, double center, double width) {
    cuts.push_back(center);
    for (double f : {2.0, 6.0, 20.0}) {
      cuts.push_back(center - f * width);
      cuts.push_back(center + f * width);
    }
  };
  auto inner = [&](double p0, int mu, int nu, double& errsum) {
    const double shell = p0 * p0 - m * m;
    std::vector<double> cuts;
    double pmax = std::sqrt(std::max(shell, 0.0) + 60.0 * w) + 8.0 * w;
    if (shell > 0.0) {
      const double q = std::sqrt(shell);
      const double wq = w / std::max(2.0 * q, 0.5);
      ridge_cuts(cuts, q, wq);
      ridge_cuts(cuts, -q, wq);
    }
    if (k.k1 != 0.0) {
      const double q2 = (2.0 * k.k0 * p0 - ksq) / (2.0 * k.k1);
      const double w2 = w / (2.0 * std::fabs(k.k1));
      ridge_cuts(cuts, q2, w2);
      pmax = std::max(pmax, std::fabs(q2) + 60.0 * w2 + 8.0 * w);
    }
    auto f = [&](double p1) { return integrand(p0, p1, mu, nu); };
    const quad::Result r =
        quad::integrate(f, -pmax, pmax, cuts, inner_opt);
    errsum += r.error;
    return r.value;
  };

  PhatResult out;
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = mu; nu < 2; ++nu) {
      double inner_err = 0.0;
      auto f0 = [&](double p0) { return inner(p0, mu, nu, inner_err); };
      std::vector<double> cuts;
      if (geo.above_threshold) {
        for (double e : {geo.e_plus, geo.e_minus}) {
          cuts.push_back(e);
          for (double f : {0.5, 1.0, 3.0, 10.0, 30.0}) {
            cuts.push_back(e - f * w);
            cuts.push_back(e + f * w);
          }
        }
      }
      if (m > 0.0) cuts.push_back(m);  // mass-shell turn-on
      const quad::Result r = quad::integrate(f0, 0.0, k.k0, cuts, outer_opt);
      out.tensor(mu, nu) = r.value;
      out.tensor(nu, mu) = r.value;
      out.quadrature_error =
          std::max(out.quadrature_error, r.error + inner_err);
    }
  return out;
}

double phat_transverse_coefficient(const PhatResult& p) {
  return p.tensor(0, 0) - p.tensor(1, 1);
}

PolarizationTensor polarization(const Momentum2& k, const ModelParams& p) {
  const double ksq = k.ksq();
  if (ksq == 0.0)
    throw std::domain_error("polarization undefined at lightlike k");
  if (!(p.e > 0.0) || p.m < 0.0) throw std::invalid_argument("bad parameters");

  const std::complex<double> r = rhat_closed(ksq, p.m * p.m);
  const double kv[2] = {k.k0, k.k1};
  PolarizationTensor out{{}, k, p};
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu) {
      const double gmn = mu == nu ? (mu == 0 ? 1.0 : -1.0) : 0.0;
      // lowered components of k: k_mu = g_mumu k^mu
      const double klo_m = (mu == 0 ? 1.0 : -1.0) * kv[mu];
      const double klo_n = (nu == 0 ? 1.0 : -1.0) * kv[nu];
      out.components(mu, nu) =
          p.e * p.e * (gmn - klo_m * klo_n / ksq) * r;
    }
  return out;
}

double longitudinal_defect(const PolarizationTensor& pi) {
  const double kup[2] = {pi.k.k0, pi.k.k1};
  double worst = 0.0;
  for (int nu = 0; nu < 2; ++nu) {
    // k^mu Pi_{mu nu}: upper against lower indices, plain sum
    std::complex<double> contr =
        kup[0] * pi.components(0, nu) + kup[1] * pi.components(1, nu);
    worst = std::max(worst, std::abs(contr));
  }
  const double norm = pi.components.frobenius();
  return norm > 0.0 ? worst / norm : worst;
}

Tensor2 naive_cutoff_polarization(double ke0, double ke1, double m,
                                  double cutoff) {
  if (!(cutoff > 0.0)) throw std::invalid_argument("cutoff must be positive");
  if (!(m > 0.0)) throw std::invalid_argument("mass must be positive");
  const double kk = std::hypot(ke0, ke1);

  // Work in the frame with k along axis 0.  The angular integrals
  //   J_n = Int_0^{2pi} cos(n t)/(A + B cos t) dt = (2pi/S) q^n,
  // S = sqrt(A^2-B^2), q = (S-A)/B, are closed form, so only the radial
  // integral is numerical.
  auto radial = [&](double r, int comp) {
    const double a = r * r + kk * kk + m * m;
    const double b = 2.0 * r * kk;
    const double s = std::sqrt((a - b) * (a + b) >= 0.0
                                   ? ((r - kk) * (r - kk) + m * m) *
                                         ((r + kk) * (r + kk) + m * m)
                                   : 0.0);
    const double q = b != 0.0 ? (s - a) / b : 0.0;
    const double j0 = 2.0 * kPi / s;
    const double j1 = j0 * q;
    const double j2 = j1 * q;
    // numerators 2[r^2 cos2t + r K cos t - m^2] (00) and the sign-flipped
    // cos2t/cost combination (11); 01 vanishes by parity
    double ang;
    if (comp == 0)
      ang = 2.0 * (r * r * j2 + r * kk * j1 - m * m * j0);
    else
      ang = 2.0 * (-r * r * j2 - r * kk * j1 - m * m * j0);
    return r * ang / ((r * r + m * m) * 4.0 * kPi * kPi);
  };

  quad::Options opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-11;
  opt.max_panels = 40000;
  std::vector<double> cuts = {m, 0.5 * kk, kk, 2.0 * kk, 10.0 * (kk + m)};
  std::erase_if(cuts, [&](double x) { return !(x > 0.0 && x < cutoff); });

  const double p00 =
      quad::integrate([&](double r) { return radial(r, 0); }, 0.0, cutoff,
                      cuts, opt)
          .value;
  const double p11 =
      quad::integrate([&](double r) { return radial(r, 1); }, 0.0, cutoff,
                      cuts, opt)
          .value;

  if (kk == 0.0) {
    Tensor2 t;
    t(0, 0) = p00;
    t(1, 1) = p11;
    return t;
  }
  // rotate back: axis 0 -> k direction
  const double c = ke0 / kk, s = ke1 / kk;
  Tensor2 t;
  t(0, 0) = c * c * p00 + s * s * p11;
  t(1, 1) = s * s * p00 + c * c * p11;
  t(0, 1) = t(1, 0) = c * s * (p00 - p11);
  return t;
}

double boson_mass_squared(double e) {
  if (!(e > 0.0)) throw std::invalid_argument("coupling must be positive");
  // rhat(x) = L + x (a log x + b) + O(x^2 log x); three points pin L.
  const double xs[3] = {1e-6, 5e-7, 2.5e-7};
  std::complex<double> r[3];
  for (int i = 0; i < 3; ++i) r[i] = rhat_closed(1.0, xs[i]);

  // Solve the 3x3 system for the constant term by Cramer's rule.
  double a[3][3];
  for (int i = 0; i < 3; ++i) {
    a[i][0] = 1.0;
    a[i][1] = xs[i] * std::log(xs[i]);
    a[i][2] = xs[i];
  }
  auto det3 = [](const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double d = det3(a);
  std::complex<double> limit{};
  {
    double re[3][3], im[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        re[i][j] = a[i][j];
        im[i][j] = a[i][j];
      }
    for (int i = 0; i < 3; ++i) {
      re[i][0] = r[i].real();
      im[i][0] = r[i].imag();
    }
    limit = {det3(re) / d, det3(im) / d};
  }
  return e * e * limit.imag();
}

}  // namespace opvd::causal2d
