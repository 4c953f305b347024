#pragma once

#include <array>
#include <functional>
#include <vector>

namespace opvd::testfn {

/// Truncated Taylor series at a point: c[k] = f^(k)(x0)/k! for k <= kMaxOrder.
/// Arithmetic on jets gives closed-form derivatives of composed expressions
/// to machine precision (no finite differencing).
inline constexpr int kMaxJetOrder = 6;

struct Jet {
  std::array<double, kMaxJetOrder + 1> c{};

  static Jet variable(double x) {
    Jet j;
    j.c[0] = x;
    j.c[1] = 1.0;
    return j;
  }
  static Jet constant(double v) {
    Jet j;
    j.c[0] = v;
    return j;
  }

  double value() const { return c[0]; }
  double derivative(int k) const;  // k! * c[k]

  Jet operator+(const Jet& o) const;
  Jet operator-(const Jet& o) const;
  Jet operator*(const Jet& o) const;
  Jet operator/(const Jet& o) const;
  Jet operator*(double s) const;
  Jet operator-() const { return *this * -1.0; }
};

Jet exp(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);

/// Smooth 1D function known through its jets; the building block for
/// composed test functions (products, shifts, cosine envelopes, ...).
using JetFn = std::function<Jet(double)>;

enum class ProfileShape { Bump, FlatTop };

/// Smooth compactly supported profile on [center-R, center+R].
///   Bump:    exp[1 - 1/(1 - t^2)], t = (x-center)/R; equals 1 at the center.
///   FlatTop: identically 1 for |t| <= 1/2, glued to 0 across [1/2, 1] with
///            the two-sided exponential step h(s)/(h(s)+h(1-s)), h = exp(-1/s).
/// Values outside the support are exactly zero.
class BumpProfile {
 public:
  BumpProfile(ProfileShape shape, double radius, double center = 0.0);

  double operator()(double x) const { return jet(x).value(); }
  Jet jet(double x) const;
  /// k-th derivative by closed-form jet evaluation, k <= 4.
  double derivative(double x, int k) const;

  ProfileShape shape() const { return shape_; }
  double radius() const { return radius_; }
  double center() const { return center_; }
  double support_min() const { return center_ - radius_; }
  double support_max() const { return center_ + radius_; }

 private:
  ProfileShape shape_;
  double radius_;
  double center_;
};

/// Radial momentum-space regulator rho(p^2) = base(p^2 / Lambda^2) with
/// rho(0) = 1 and compact support in p^2.
class MomentumProfile {
 public:
  MomentumProfile(ProfileShape shape, double lambda);

  double operator()(double psq) const;
  /// Jet with respect to u = p^2 (chain rule through u/Lambda^2).
  Jet jet_u(double u) const;

  double lambda() const { return lambda_; }
  ProfileShape shape() const { return shape_; }
  /// Support in u = p^2 ends at lambda^2.
  double support_end() const { return lambda_ * lambda_; }

 private:
  ProfileShape shape_;
  double lambda_;
  BumpProfile base_;
};

double momentum_scale(const MomentumProfile& p, double psq);

/// Family of normalized bumps f_i(x)/sum_j f_j(x) on a lattice of centers
/// covering [a, b]; the members sum to 1 identically on the interval.
class PartitionOfUnity {
 public:
  /// Throws std::invalid_argument("coverage gap") when neighboring supports
  /// do not overlap (spacing >= 2*radius).
  PartitionOfUnity(double a, double b, double spacing, double radius,
                   ProfileShape shape = ProfileShape::Bump);

  std::size_t size() const { return members_.size(); }
  double member(std::size_t i, double x) const;  // normalized member value
  double sum(double x) const;                    // sum of normalized members
  const BumpProfile& raw_member(std::size_t i) const { return members_[i]; }

 private:
  std::vector<BumpProfile> members_;
  double a_, b_;
};

/// Subtraction weight w with w(0) = 1 and w^(k)(0) = 0 for 1 <= k <= order,
/// the condition for the weighted jet subtraction to remove the full jet.
/// A FlatTop profile satisfies this at every order; the exponential bump
/// only up to order 1 (it is even). Construction validates the condition.
class TaylorWeight {
 public:
  TaylorWeight(BumpProfile w, int order);

  double operator()(double x) const { return w_(x); }
  Jet jet(double x) const { return w_.jet(x); }
  int order() const { return order_; }
  const BumpProfile& profile() const { return w_; }

 private:
  BumpProfile w_;
  int order_;
};

/// x -> f(x) - w(x) * sum_{k<=order} x^k f^(k)(0)/k!.
/// The result vanishes at 0 to the weight's order.
std::function<double(double)> jet_subtract(const JetFn& f,
                                           const TaylorWeight& w);

}  // namespace opvd::testfn
