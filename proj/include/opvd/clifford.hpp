#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace opvd::clifford {

using Complex = std::complex<double>;

/// Minkowski metric, mostly-minus convention: g = diag(+1, -1, ...).
struct MetricSignature {
  int dimension;            // 2 or 4
  std::array<int, 4> diag;  // first entry +1, remaining -1

  static MetricSignature minkowski(int dim);
  double g(int mu, int nu) const { return mu == nu ? diag[mu] : 0.0; }
};

/// Totally antisymmetric symbol with upper indices; `convention` is the
/// value of eps^{01} (D=2) or eps^{0123} (D=4).
struct LeviCivita {
  int dim;
  int convention = +1;

  double eps2(int mu, int nu) const;
  double eps4(int mu, int nu, int rho, int sigma) const;
};

/// Dense complex dim x dim matrix over the spinor space (dim = 2 or 4).
/// Entries of the generator matrices are dyadic rationals, so products and
/// sums of generators evaluate exactly in double precision; algebraic
/// identities can be checked with exact comparisons.
class DiracMatrix {
 public:
  explicit DiracMatrix(int dim);
  static DiracMatrix identity(int dim);
  static DiracMatrix zero(int dim) { return DiracMatrix(dim); }

  int dim() const { return dim_; }
  Complex& at(int i, int j) { return m_[i * dim_ + j]; }
  const Complex& at(int i, int j) const { return m_[i * dim_ + j]; }

  DiracMatrix operator+(const DiracMatrix& o) const;
  DiracMatrix operator-(const DiracMatrix& o) const;
  DiracMatrix operator*(const DiracMatrix& o) const;
  DiracMatrix operator*(Complex s) const;
  Complex trace() const;
  DiracMatrix adjoint() const;
  double max_abs() const;  // entrywise max modulus

  bool operator==(const DiracMatrix& o) const { return m_ == o.m_ && dim_ == o.dim_; }

 private:
  int dim_;
  std::array<Complex, 16> m_{};  // row-major, dim_^2 entries used
};

inline DiracMatrix operator*(Complex s, const DiracMatrix& m) { return m * s; }

/// Concrete representation of the gamma matrices.
///   Dirac, D=2:  g0 = sigma3, g1 = i sigma2       (g5 = g0 g1 = sigma1)
///   Chiral, D=2: g0 = sigma1, g1 = -i sigma2      (g5 = g0 g1 = sigma3)
///   Dirac, D=4:  g0 = diag(1,1,-1,-1), gj = offdiag(sigma_j, -sigma_j)
///   Chiral, D=4: g0 = offdiag(1,1), gj as in Dirac
/// In D=4, g5 = i g0 g1 g2 g3 in both representations; with these phases
/// g5 is hermitian and squares to the identity.
enum class Representation { Dirac, Chiral };

/// gamma^mu in the given representation; {g^mu, g^nu} = 2 g^{mu nu} exactly.
DiracMatrix gamma(const MetricSignature& sig, int mu,
                  Representation rep = Representation::Dirac);

DiracMatrix gamma5(const MetricSignature& sig,
                   Representation rep = Representation::Dirac);

/// sigma^{mu nu} = (i/2)[gamma^mu, gamma^nu].
DiracMatrix sigma(const MetricSignature& sig, int mu, int nu,
                  Representation rep = Representation::Dirac);

/// (1 + sign*g5)/2 with sign = +-1.
DiracMatrix chiral_projector(const MetricSignature& sig, int sign,
                             Representation rep = Representation::Dirac);

/// Trace of the ordered product; all matrices must share dim.
Complex trace_product(std::span<const DiracMatrix> ms);

/// max over (mu,nu) of the entrywise norm of
/// [gamma^mu (1 + sa*g5), gamma^nu (1 + sb*g5)].
/// Equal chiralities (sa == sb) give exactly zero.
double chirality_commutator_check(const MetricSignature& sig, int sa, int sb,
                                  Representation rep = Representation::Dirac);

struct DualityResult {
  double defect;  // max norm of gamma^mu eps_{mu nu} - s*g5*gamma_nu over nu
  int sign;       // the sign s realizing the identity
};

/// Verifies the D=2 identity gamma^mu eps_{mu nu} = s * g5 * gamma_nu
/// (indices lowered with the Minkowski metric) and reports s.
DualityResult duality_identity_2d(const LeviCivita& conv,
                                  Representation rep = Representation::Dirac);

/// Convention constant tr[g5 sigma^{01}] in D=2 (pure imaginary; 2i in the
/// Dirac representation with eps^{01} = +1).
Complex trace_gamma5_sigma01_2d(Representation rep = Representation::Dirac);

}  // namespace opvd::clifford
