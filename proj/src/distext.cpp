#include "opvd/distext.hpp"

#include <cmath>
#include <stdexcept>

namespace opvd::distext {

PowerSingularity::PowerSingularity(int k) : exponent(k) {
  if (k < 1) throw std::invalid_argument("exponent must be >= 1");
}

PairingResult pair_finite_part(const PowerSingularity& s,
                               const testfn::JetFn& f, double support,
                               const testfn::TaylorWeight& w,
                               const quad::Options& opt) {
  if (!(support > 0.0)) throw std::invalid_argument("support must be positive");

  const int k = s.exponent;
  const testfn::Jet f0 = f(0.0);
  std::vector<double> taylor(static_cast<std::size_t>(w.order()) + 1);
  for (int j = 0; j <= w.order(); ++j) taylor[j] = f0.c[j];
  const testfn::BumpProfile weight = w.profile();

  auto integrand = [&](double x) {
    double poly = 0.0;
    for (int j = static_cast<int>(taylor.size()) - 1; j >= 0; --j)
      poly = poly * x + taylor[j];
    const double num = f(x).value() - weight(x) * poly;
    return num / std::pow(x, k);
  };

  // The singular point is a panel boundary; quadrature nodes are interior,
  // so x = 0 is never evaluated.
  const double cut[] = {0.0};
  const quad::Result r = quad::integrate(integrand, -support, support, cut, opt);
  return {r.value, r.error, w.order()};
}

std::vector<BphzRow> bphz_demo(double m, double mu,
                               std::span<const double> cutoffs) {
  if (!(m > 0.0) || !(mu > 0.0))
    throw std::invalid_argument("masses must be positive");

  std::vector<BphzRow> rows;
  rows.reserve(cutoffs.size());
  quad::Options opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-12;
  for (double L : cutoffs) {
    if (!(L > 0.0)) throw std::invalid_argument("cutoff must be positive");
    auto raw_f = [m](double q) { return q / (q * q + m * m); };
    auto sub_f = [m, mu](double q) {
      return q * (1.0 / (q * q + m * m) - 1.0 / (q * q + mu * mu));
    };
    const double pts[] = {m, mu, 10.0 * std::max(m, mu)};
    rows.push_back({L, quad::integrate(raw_f, 0.0, L, pts).value,
                    quad::integrate(sub_f, 0.0, L, pts, opt).value});
  }
  return rows;
}

}  // namespace opvd::distext
