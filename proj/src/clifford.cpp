#include "opvd/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opvd::clifford {

namespace {
const Complex I{0.0, 1.0};

void check_dim(int dim) {
  if (dim != 2 && dim != 4)
    throw std::invalid_argument("spinor dimension must be 2 or 4");
}

// Pauli matrices as 2x2 blocks.
constexpr int kPauliRe[4][2][2] = {{{1, 0}, {0, 1}},    // identity
                                   {{0, 1}, {1, 0}},    // sigma1
                                   {{0, 0}, {0, 0}},    // sigma2 (imag part below)
                                   {{1, 0}, {0, -1}}};  // sigma3
constexpr int kPauliIm[4][2][2] = {{{0, 0}, {0, 0}},
                                   {{0, 0}, {0, 0}},
                                   {{0, -1}, {1, 0}},
                                   {{0, 0}, {0, 0}}};

DiracMatrix pauli(int which) {
  DiracMatrix m(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m.at(i, j) = Complex(kPauliRe[which][i][j], kPauliIm[which][i][j]);
  return m;
}

// Assemble a 4x4 from 2x2 blocks [[A,B],[C,D]].
DiracMatrix blocks(const DiracMatrix& a, const DiracMatrix& b,
                   const DiracMatrix& c, const DiracMatrix& d) {
  DiracMatrix m(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      m.at(i, j) = a.at(i, j);
      m.at(i, j + 2) = b.at(i, j);
      m.at(i + 2, j) = c.at(i, j);
      m.at(i + 2, j + 2) = d.at(i, j);
    }
  return m;
}

}  // namespace

MetricSignature MetricSignature::minkowski(int dim) {
  check_dim(dim);
  MetricSignature s{dim, {1, -1, -1, -1}};
  return s;
}

double LeviCivita::eps2(int mu, int nu) const {
  if (mu == nu) return 0.0;
  return (mu == 0 ? 1.0 : -1.0) * convention;
}

double LeviCivita::eps4(int mu, int nu, int rho, int sigma) const {
  int p[4] = {mu, nu, rho, sigma};
  // sign of the permutation, 0 on repeated indices
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0.0;
      if (p[i] > p[j]) sign = -sign;
    }
  return sign * convention;
}

DiracMatrix::DiracMatrix(int dim) : dim_(dim) { check_dim(dim); }

DiracMatrix DiracMatrix::identity(int dim) {
  DiracMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

DiracMatrix DiracMatrix::operator+(const DiracMatrix& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
  DiracMatrix r(dim_);
  for (int i = 0; i < dim_ * dim_; ++i) r.m_[i] = m_[i] + o.m_[i];
  return r;
}

DiracMatrix DiracMatrix::operator-(const DiracMatrix& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
  DiracMatrix r(dim_);
  for (int i = 0; i < dim_ * dim_; ++i) r.m_[i] = m_[i] - o.m_[i];
  return r;
}

DiracMatrix DiracMatrix::operator*(const DiracMatrix& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
  DiracMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k) {
      const Complex aik = at(i, k);
      if (aik == Complex{}) continue;
      for (int j = 0; j < dim_; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  return r;
}

DiracMatrix DiracMatrix::operator*(Complex s) const {
  DiracMatrix r(dim_);
  for (int i = 0; i < dim_ * dim_; ++i) r.m_[i] = m_[i] * s;
  return r;
}

Complex DiracMatrix::trace() const {
  Complex t{};
  for (int i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

DiracMatrix DiracMatrix::adjoint() const {
  DiracMatrix r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r.at(i, j) = std::conj(at(j, i));
  return r;
}

double DiracMatrix::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < dim_ * dim_; ++i) m = std::max(m, std::abs(m_[i]));
  return m;
}

DiracMatrix gamma(const MetricSignature& sig, int mu, Representation rep) {
  check_dim(sig.dimension);
  if (mu < 0 || mu >= sig.dimension)
    throw std::out_of_range("gamma index out of range");

  if (sig.dimension == 2) {
    if (rep == Representation::Dirac)
      return mu == 0 ? pauli(3) : pauli(2) * I;   // sigma3, i sigma2
    return mu == 0 ? pauli(1) : pauli(2) * (-I);  // sigma1, -i sigma2
  }

  const DiracMatrix id2 = DiracMatrix::identity(2);
  const DiracMatrix z2(2);
  if (mu == 0) {
    if (rep == Representation::Dirac)
      return blocks(id2, z2, z2, id2 * Complex{-1.0});
    return blocks(z2, id2, id2, z2);
  }
  const DiracMatrix s = pauli(mu);
  return blocks(z2, s, s * Complex{-1.0}, z2);
}

DiracMatrix gamma5(const MetricSignature& sig, Representation rep) {
  if (sig.dimension == 2)
    return gamma(sig, 0, rep) * gamma(sig, 1, rep);
  return I * gamma(sig, 0, rep) * gamma(sig, 1, rep) * gamma(sig, 2, rep) *
         gamma(sig, 3, rep);
}

DiracMatrix sigma(const MetricSignature& sig, int mu, int nu,
                  Representation rep) {
  const DiracMatrix gm = gamma(sig, mu, rep);
  const DiracMatrix gn = gamma(sig, nu, rep);
  return (gm * gn - gn * gm) * (0.5 * I);
}

DiracMatrix chiral_projector(const MetricSignature& sig, int sign,
                             Representation rep) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("projector sign must be +-1");
  const DiracMatrix id = DiracMatrix::identity(sig.dimension);
  return (id + gamma5(sig, rep) * Complex(sign)) * Complex(0.5);
}

Complex trace_product(std::span<const DiracMatrix> ms) {
  if (ms.empty()) throw std::invalid_argument("empty matrix product");
  DiracMatrix p = ms[0];
  for (std::size_t i = 1; i < ms.size(); ++i) p = p * ms[i];
  return p.trace();
}

double chirality_commutator_check(const MetricSignature& sig, int sa, int sb,
                                  Representation rep) {
  const DiracMatrix id = DiracMatrix::identity(sig.dimension);
  const DiracMatrix g5 = gamma5(sig, rep);
  const DiracMatrix pa = id + g5 * Complex(sa);
  const DiracMatrix pb = id + g5 * Complex(sb);
  double worst = 0.0;
  for (int mu = 0; mu < sig.dimension; ++mu)
    for (int nu = 0; nu < sig.dimension; ++nu) {
      const DiracMatrix x = gamma(sig, mu, rep) * pa;
      const DiracMatrix y = gamma(sig, nu, rep) * pb;
      worst = std::max(worst, (x * y - y * x).max_abs());
    }
  return worst;
}

DualityResult duality_identity_2d(const LeviCivita& conv, Representation rep) {
  if (conv.dim != 2)
    throw std::invalid_argument("duality identity is specific to D=2");
  const MetricSignature sig = MetricSignature::minkowski(2);
  const DiracMatrix g5 = gamma5(sig, rep);

  auto defect_for = [&](int s) {
    double worst = 0.0;
    for (int nu = 0; nu < 2; ++nu) {
      DiracMatrix lhs(2);
      for (int mu = 0; mu < 2; ++mu) {
        // eps_{mu nu} = g_mumu g_nunu eps^{mu nu}
        const double eps_low =
            sig.diag[mu] * sig.diag[nu] * conv.eps2(mu, nu);
        if (eps_low != 0.0) lhs = lhs + gamma(sig, mu, rep) * Complex(eps_low);
      }
      const DiracMatrix rhs =
          g5 * gamma(sig, nu, rep) * Complex(s * sig.diag[nu]);
      // rhs is s * g5 * gamma_nu with the index lowered
      worst = std::max(worst, (lhs - rhs).max_abs());
    }
    return worst;
  };

  const double dplus = defect_for(+1);
  const double dminus = defect_for(-1);
  if (dplus <= dminus) return {dplus, +1};
  return {dminus, -1};
}

Complex trace_gamma5_sigma01_2d(Representation rep) {
  const MetricSignature sig = MetricSignature::minkowski(2);
  return (gamma5(sig, rep) * sigma(sig, 0, 1, rep)).trace();
}

}  // namespace opvd::clifford
