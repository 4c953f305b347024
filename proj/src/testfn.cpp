#include "opvd/testfn.hpp"

#include <cmath>
#include <stdexcept>

namespace opvd::testfn {

namespace {
constexpr int N = kMaxJetOrder;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}
}  // namespace

double Jet::derivative(int k) const {
  if (k < 0 || k > N) throw std::out_of_range("unsupported derivative order");
  return c[k] * factorial(k);
}

Jet Jet::operator+(const Jet& o) const {
  Jet r;
  for (int k = 0; k <= N; ++k) r.c[k] = c[k] + o.c[k];
  return r;
}

Jet Jet::operator-(const Jet& o) const {
  Jet r;
  for (int k = 0; k <= N; ++k) r.c[k] = c[k] - o.c[k];
  return r;
}

Jet Jet::operator*(const Jet& o) const {
  Jet r;
  for (int k = 0; k <= N; ++k)
    for (int j = 0; j <= k; ++j) r.c[k] += c[j] * o.c[k - j];
  return r;
}

Jet Jet::operator/(const Jet& o) const {
  if (o.c[0] == 0.0) throw std::domain_error("jet division by zero value");
  Jet r;
  for (int k = 0; k <= N; ++k) {
    double s = c[k];
    for (int j = 1; j <= k; ++j) s -= o.c[j] * r.c[k - j];
    r.c[k] = s / o.c[0];
  }
  return r;
}

Jet Jet::operator*(double s) const {
  Jet r;
  for (int k = 0; k <= N; ++k) r.c[k] = c[k] * s;
  return r;
}

Jet exp(const Jet& a) {
  Jet r;
  r.c[0] = std::exp(a.c[0]);
  for (int k = 1; k <= N; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * a.c[j] * r.c[k - j];
    r.c[k] = s / k;
  }
  return r;
}

Jet sin(const Jet& a) {
  Jet s, c;
  s.c[0] = std::sin(a.c[0]);
  c.c[0] = std::cos(a.c[0]);
  for (int k = 1; k <= N; ++k) {
    double su = 0.0, cu = 0.0;
    for (int j = 1; j <= k; ++j) {
      su += j * a.c[j] * c.c[k - j];
      cu += j * a.c[j] * s.c[k - j];
    }
    s.c[k] = su / k;
    c.c[k] = -cu / k;
  }
  return s;
}

Jet cos(const Jet& a) {
  Jet s, c;
  s.c[0] = std::sin(a.c[0]);
  c.c[0] = std::cos(a.c[0]);
  for (int k = 1; k <= N; ++k) {
    double su = 0.0, cu = 0.0;
    for (int j = 1; j <= k; ++j) {
      su += j * a.c[j] * c.c[k - j];
      cu += j * a.c[j] * s.c[k - j];
    }
    s.c[k] = su / k;
    c.c[k] = -cu / k;
  }
  return c;
}

namespace {

// Smooth step: 0 for s<=0, 1 for s>=1, h(s)/(h(s)+h(1-s)) between,
// h(s) = exp(-1/s).
Jet smooth_step(const Jet& s) {
  const double v = s.value();
  // within 1e-12 of either edge the step is exactly 0 or 1 in double
  if (v <= 1e-12) return Jet::constant(0.0);
  if (v >= 1.0 - 1e-12) return Jet::constant(1.0);
  const Jet one = Jet::constant(1.0);
  const Jet hs = exp(-(one / s));
  const Jet ht = exp(-(one / (one - s)));
  return hs / (hs + ht);
}

}  // namespace

BumpProfile::BumpProfile(ProfileShape shape, double radius, double center)
    : shape_(shape), radius_(radius), center_(center) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
}

namespace {

// Unit-domain profile evaluated on a jet argument t (support |t| < 1).
Jet profile_jet(ProfileShape shape, const Jet& t) {
  const double tv = t.value();
  if (std::fabs(tv) >= 1.0) return Jet::constant(0.0);

  if (shape == ProfileShape::Bump) {
    const Jet one = Jet::constant(1.0);
    const Jet u = one - t * t;
    // exp(1 - 1/u) underflows to exactly 0 long before 1/u^k can
    // overflow in the jet recurrences
    if (u.value() < 1e-12) return Jet::constant(0.0);
    return exp(one - one / u);
  }
  // FlatTop: 1 on |t|<=1/2, step(2 - 2|t|) on the shoulders.
  if (std::fabs(tv) <= 0.5) return Jet::constant(1.0);
  Jet at = tv >= 0.0 ? t : -t;  // |t|, smooth away from t=0
  return smooth_step(Jet::constant(2.0) - at * 2.0);
}

}  // namespace

Jet BumpProfile::jet(double x) const {
  // t-jet: t = (x - center)/R, dt/dx = 1/R
  Jet t;
  t.c[0] = (x - center_) / radius_;
  t.c[1] = 1.0 / radius_;
  return profile_jet(shape_, t);
}

double BumpProfile::derivative(double x, int k) const {
  if (k < 0 || k > 4) throw std::out_of_range("unsupported derivative order");
  return jet(x).derivative(k);
}

MomentumProfile::MomentumProfile(ProfileShape shape, double lambda)
    : shape_(shape),
      lambda_(lambda),
      base_(shape, 1.0, 0.0) {
  if (!(lambda > 0.0)) throw std::invalid_argument("scale must be positive");
}

double MomentumProfile::operator()(double psq) const {
  if (psq < 0.0) throw std::domain_error("p^2 must be nonnegative");
  return base_(psq / (lambda_ * lambda_));
}

Jet MomentumProfile::jet_u(double u) const {
  if (u < 0.0) throw std::domain_error("p^2 must be nonnegative");
  const double lsq = lambda_ * lambda_;
  Jet t;
  t.c[0] = u / lsq;
  t.c[1] = 1.0 / lsq;
  return profile_jet(shape_, t);
}

double momentum_scale(const MomentumProfile& p, double psq) { return p(psq); }

PartitionOfUnity::PartitionOfUnity(double a, double b, double spacing,
                                   double radius, ProfileShape shape)
    : a_(a), b_(b) {
  if (!(spacing > 0.0) || !(radius > 0.0) || !(a < b))
    throw std::invalid_argument("bad partition parameters");
  if (spacing >= 2.0 * radius) throw std::invalid_argument("coverage gap");
  // centers extend one support radius past the interval ends
  const long k0 = static_cast<long>(std::floor((a - radius) / spacing)) - 1;
  const long k1 = static_cast<long>(std::ceil((b + radius) / spacing)) + 1;
  for (long k = k0; k <= k1; ++k)
    members_.emplace_back(shape, radius, k * spacing);
}

double PartitionOfUnity::member(std::size_t i, double x) const {
  double total = 0.0;
  for (const auto& m : members_) total += m(x);
  if (total <= 0.0) throw std::runtime_error("coverage gap");
  return members_[i](x) / total;
}

double PartitionOfUnity::sum(double x) const {
  double total = 0.0;
  for (const auto& m : members_) total += m(x);
  if (total <= 0.0) throw std::runtime_error("coverage gap");
  double s = 0.0;
  for (const auto& m : members_) s += m(x) / total;
  return s;
}

TaylorWeight::TaylorWeight(BumpProfile w, int order)
    : w_(std::move(w)), order_(order) {
  if (order < 0) throw std::invalid_argument("order must be nonnegative");
  if (order > kMaxJetOrder - 1)
    throw std::invalid_argument("order exceeds supported jet depth");
  const Jet j0 = w_.jet(0.0);
  if (j0.value() != 1.0)
    throw std::invalid_argument("weight must equal 1 at the origin");
  for (int k = 1; k <= order; ++k)
    if (std::fabs(j0.derivative(k)) > 1e-12)
      throw std::invalid_argument(
          "weight derivatives at 0 must vanish up to the subtraction order");
}

std::function<double(double)> jet_subtract(const JetFn& f,
                                           const TaylorWeight& w) {
  const Jet f0 = f(0.0);
  std::vector<double> taylor(static_cast<std::size_t>(w.order()) + 1);
  for (int k = 0; k <= w.order(); ++k) taylor[k] = f0.c[k];
  const BumpProfile weight = w.profile();
  return [f, weight, taylor](double x) {
    double poly = 0.0;
    for (int k = static_cast<int>(taylor.size()) - 1; k >= 0; --k)
      poly = poly * x + taylor[k];
    return f(x).value() - weight(x) * poly;
  };
}

}  // namespace opvd::testfn
