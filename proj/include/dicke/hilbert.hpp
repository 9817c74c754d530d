// Copyright 2026 The dicke-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DICKE_HILBERT_HPP
#define DICKE_HILBERT_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

/// Truncated qubit-boson Hilbert spaces and the dense operator algebra used
/// by every other part of the simulator.
///
/// Basis ordering is fixed: qubit subsystems first with qubit 0 as the
/// slowest index, the bosonic Fock factor last (fastest). Each qubit uses the
/// basis {|e>, |g>} so that sigma_z = diag(+1, -1); a qubit bit value of 0
/// therefore means "excited". The global index of (qubit bits q, Fock level k)
/// is q * (n_max + 1) + k, with qubit 0 stored in the most significant bit.
namespace dicke {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr Index kDefaultDimCap = 4096;

class SpaceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitian : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Raised when an integration or propagation produces an unusable state.
/// `segment()` is the schedule segment index, or -1 when not applicable.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, long segment = -1)
      : std::runtime_error(segment >= 0 ? what + " (segment " + std::to_string(segment) + ")"
                                        : what),
        segment_(segment) {}

  long segment() const noexcept { return segment_; }

 private:
  long segment_;
};

class HilbertSpace {
 public:
  struct BasisLabel {
    std::uint32_t qubits = 0;  // qubit 0 in the most significant of n_qubits bits
    int fock = 0;

    bool operator==(const BasisLabel&) const = default;
  };

  /// Prefer build_space(), which also enforces the dimension cap.
  HilbertSpace(int n_qubits, int fock_cutoff) : n_qubits_(n_qubits), fock_cutoff_(fock_cutoff) {
    if (n_qubits < 1 || n_qubits > 24) {
      throw std::invalid_argument("n_qubits must be in [1, 24], got " + std::to_string(n_qubits));
    }
    if (fock_cutoff < 0) {
      throw std::invalid_argument("fock_cutoff must be >= 0, got " + std::to_string(fock_cutoff));
    }
  }

  int n_qubits() const noexcept { return n_qubits_; }
  int fock_cutoff() const noexcept { return fock_cutoff_; }
  Index fock_dim() const noexcept { return fock_cutoff_ + 1; }
  Index qubit_dim() const noexcept { return Index{1} << n_qubits_; }
  Index dim() const noexcept { return qubit_dim() * fock_dim(); }

  BasisLabel decompose(Index k) const {
    if (k < 0 || k >= dim()) throw std::out_of_range("basis index out of range");
    return {static_cast<std::uint32_t>(k / fock_dim()), static_cast<int>(k % fock_dim())};
  }

  Index compose(BasisLabel label) const {
    if (label.qubits >= static_cast<std::uint64_t>(qubit_dim()) || label.fock < 0 ||
        label.fock > fock_cutoff_) {
      throw std::out_of_range("basis label out of range");
    }
    return static_cast<Index>(label.qubits) * fock_dim() + label.fock;
  }

  /// True when qubit i is in |e> for the given bitstring.
  bool qubit_excited(std::uint32_t qubits, int i) const {
    return ((qubits >> (n_qubits_ - 1 - i)) & 1U) == 0U;
  }

  bool operator==(const HilbertSpace&) const = default;

 private:
  int n_qubits_;
  int fock_cutoff_;
};

inline HilbertSpace build_space(int n_qubits, int fock_cutoff, Index dim_cap = kDefaultDimCap) {
  if (n_qubits < 1) throw std::invalid_argument("n_qubits must be >= 1");
  if (fock_cutoff < 0) throw std::invalid_argument("fock_cutoff must be >= 0");
  // Compute in floating point so absurd requests do not overflow.
  const double dim = std::ldexp(1.0, n_qubits) * (fock_cutoff + 1.0);
  if (dim > static_cast<double>(dim_cap)) {
    const double mib = dim * dim * sizeof(cplx) / (1024.0 * 1024.0);
    throw DimensionCapExceeded("Hilbert space dimension " + std::to_string(static_cast<long long>(dim)) +
                               " exceeds cap " + std::to_string(dim_cap) + "; one dense operator needs ~" +
                               std::to_string(static_cast<long long>(std::ceil(mib))) + " MiB");
  }
  return HilbertSpace(n_qubits, fock_cutoff);
}

inline void require_same_space(const HilbertSpace& a, const HilbertSpace& b) {
  if (!(a == b)) {
    throw SpaceMismatch("operator spaces differ: (N=" + std::to_string(a.n_qubits()) +
                        ", n_max=" + std::to_string(a.fock_cutoff()) + ") vs (N=" +
                        std::to_string(b.n_qubits()) + ", n_max=" + std::to_string(b.fock_cutoff()) + ")");
  }
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// max|M - M^dagger| relative to max|M| (0 for the zero matrix).
inline double hermiticity_error(const Matrix& m) {
  const double scale = max_abs(m);
  if (scale == 0.0) return 0.0;
  return max_abs(m - m.adjoint()) / scale;
}

/// Dense complex matrix bound to the space it acts on.
class Operator {
 public:
  Operator(HilbertSpace space, Matrix matrix) : space_(space), matrix_(std::move(matrix)) {
    if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim()) {
      throw SpaceMismatch("matrix shape does not match space dimension");
    }
  }

  static Operator zero(const HilbertSpace& space) {
    return {space, Matrix::Zero(space.dim(), space.dim())};
  }
  static Operator identity(const HilbertSpace& space) {
    return {space, Matrix::Identity(space.dim(), space.dim())};
  }

  const HilbertSpace& space() const noexcept { return space_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  Index dim() const noexcept { return space_.dim(); }

  Operator adjoint() const { return {space_, matrix_.adjoint()}; }

  bool is_hermitian(double rel_tol = 1e-12) const { return hermiticity_error(matrix_) <= rel_tol; }

  /// Throws NotHermitian unless max|M - M^dagger| <= rel_tol * max|M|.
  const Operator& assert_hermitian(const char* what = "operator", double rel_tol = 1e-12) const {
    const double err = hermiticity_error(matrix_);
    if (err > rel_tol) {
      throw NotHermitian(std::string(what) + " is not Hermitian (relative error " + std::to_string(err) + ")");
    }
    return *this;
  }

  Operator& operator+=(const Operator& o) {
    require_same_space(space_, o.space_);
    matrix_ += o.matrix_;
    return *this;
  }
  Operator& operator-=(const Operator& o) {
    require_same_space(space_, o.space_);
    matrix_ -= o.matrix_;
    return *this;
  }
  Operator& operator*=(cplx s) {
    matrix_ *= s;
    return *this;
  }

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator-(Operator a) {
    a.matrix_ = -a.matrix_;
    return a;
  }
  friend Operator operator*(const Operator& a, const Operator& b) {
    require_same_space(a.space_, b.space_);
    return {a.space_, a.matrix_ * b.matrix_};
  }
  friend Operator operator*(cplx s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, cplx s) { return a *= s; }
  friend Operator operator*(double s, Operator a) { return a *= cplx(s, 0.0); }

 private:
  HilbertSpace space_;
  Matrix matrix_;
};

/// Pure state bound to a space.
struct StateVector {
  HilbertSpace space;
  Vector amplitudes;

  static StateVector basis(const HilbertSpace& s, Index k) {
    Vector v = Vector::Zero(s.dim());
    v(k) = 1.0;
    return {s, std::move(v)};
  }
};

/// System state rho. Validity thresholds mirror the integrator's contract.
class DensityMatrix {
 public:
  DensityMatrix(HilbertSpace space, Matrix matrix) : space_(space), matrix_(std::move(matrix)) {
    if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim()) {
      throw SpaceMismatch("density matrix shape does not match space dimension");
    }
  }

  static DensityMatrix pure(const StateVector& psi) {
    if (psi.amplitudes.size() != psi.space.dim()) throw SpaceMismatch("state size does not match space");
    return {psi.space, psi.amplitudes * psi.amplitudes.adjoint()};
  }

  const HilbertSpace& space() const noexcept { return space_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  Matrix& mutable_matrix() noexcept { return matrix_; }

  cplx trace() const { return matrix_.trace(); }
  double trace_error() const { return std::abs(matrix_.trace() - 1.0); }
  double hermiticity_error() const { return max_abs(matrix_ - matrix_.adjoint()); }
  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (matrix_ + matrix_.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  /// Trace and Hermiticity checks; positivity is checked separately on demand.
  void check_valid(double trace_tol = 1e-8, double herm_tol = 1e-10) const {
    if (!matrix_.allFinite()) throw NumericalError("density matrix contains NaN or Inf");
    if (trace_error() > trace_tol) {
      throw NumericalError("density matrix trace drift " + std::to_string(trace_error()));
    }
    if (hermiticity_error() > herm_tol) {
      throw NumericalError("density matrix Hermiticity error " + std::to_string(hermiticity_error()));
    }
  }

 private:
  HilbertSpace space_;
  Matrix matrix_;
};

enum class PauliKind { x, y, z, plus, minus };
enum class BosonKind { a, adag, n };

namespace detail {

inline Eigen::Matrix2cd pauli(PauliKind kind) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (kind) {
    case PauliKind::x: m << 0, 1, 1, 0; break;
    case PauliKind::y: m << 0, -kI, kI, 0; break;
    case PauliKind::z: m << 1, 0, 0, -1; break;
    case PauliKind::plus: m << 0, 1, 0, 0; break;   // |e><g|
    case PauliKind::minus: m << 0, 0, 1, 0; break;  // |g><e|
  }
  return m;
}

inline Matrix ladder(int cutoff) {
  Matrix a = Matrix::Zero(cutoff + 1, cutoff + 1);
  for (int k = 1; k <= cutoff; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

/// Embed a 2x2 operator on qubit i. Built elementwise since the embedding is
/// a permutation-structured Kronecker product.
inline Matrix embed_qubit(const HilbertSpace& s, int i, const Eigen::Matrix2cd& op) {
  const Index d = s.dim();
  const Index fd = s.fock_dim();
  const int shift = s.n_qubits() - 1 - i;
  Matrix m = Matrix::Zero(d, d);
  for (Index q = 0; q < s.qubit_dim(); ++q) {
    const int bit = static_cast<int>((q >> shift) & 1);
    for (int nb = 0; nb < 2; ++nb) {
      const cplx v = op(nb, bit);
      if (v == cplx(0.0)) continue;
      const Index qn = (q & ~(Index{1} << shift)) | (Index{nb} << shift);
      for (Index k = 0; k < fd; ++k) m(qn * fd + k, q * fd + k) = v;
    }
  }
  return m;
}

inline Matrix embed_boson(const HilbertSpace& s, const Matrix& op) {
  const Index fd = s.fock_dim();
  Matrix m = Matrix::Zero(s.dim(), s.dim());
  for (Index q = 0; q < s.qubit_dim(); ++q) m.block(q * fd, q * fd, fd, fd) = op;
  return m;
}

}  // namespace detail

inline Operator qubit_op(const HilbertSpace& space, int i, PauliKind kind) {
  if (i < 0 || i >= space.n_qubits()) {
    throw std::out_of_range("qubit index " + std::to_string(i) + " out of range for N=" +
                            std::to_string(space.n_qubits()));
  }
  return {space, detail::embed_qubit(space, i, detail::pauli(kind))};
}

inline Operator boson_op(const HilbertSpace& space, BosonKind kind) {
  Matrix a = detail::ladder(space.fock_cutoff());
  switch (kind) {
    case BosonKind::a: break;
    case BosonKind::adag: a = a.adjoint().eval(); break;
    case BosonKind::n: a = (a.adjoint() * a).eval(); break;
  }
  return {space, detail::embed_boson(space, a)};
}

/// Sum over all qubits of the chosen single-qubit operator.
inline Operator collective_op(const HilbertSpace& space, PauliKind kind) {
  Operator sum = Operator::zero(space);
  for (int i = 0; i < space.n_qubits(); ++i) sum += qubit_op(space, i, kind);
  return sum;
}

inline Operator commutator(const Operator& a, const Operator& b) {
  require_same_space(a.space(), b.space());
  return {a.space(), a.matrix() * b.matrix() - b.matrix() * a.matrix()};
}

inline Operator anticommutator(const Operator& a, const Operator& b) {
  require_same_space(a.space(), b.space());
  return {a.space(), a.matrix() * b.matrix() + b.matrix() * a.matrix()};
}

/// Largest singular value.
inline double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

inline double spectral_norm(const Operator& a) { return spectral_norm(a.matrix()); }

/// Eigendecomposition of a Hermitian operator, reusable for exp(-iHt) at many t.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const Operator& h) : space_(h.space()) {
    h.assert_hermitian("Hamiltonian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h.matrix() + h.matrix().adjoint()));
    if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
    energies_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
  }

  Operator at(double t) const {
    const Vector phases = (-kI * t * energies_.cast<cplx>()).array().exp().matrix();
    return {space_, vectors_ * phases.asDiagonal() * vectors_.adjoint()};
  }

  const Eigen::VectorXd& energies() const noexcept { return energies_; }
  const Matrix& eigenvectors() const noexcept { return vectors_; }
  double norm() const { return energies_.cwiseAbs().maxCoeff(); }

 private:
  HilbertSpace space_;
  Eigen::VectorXd energies_;
  Matrix vectors_;
};

/// exp(-i H t) for Hermitian H via eigendecomposition.
inline Operator evolve_unitary(const Operator& h, double t) { return SpectralPropagator(h).at(t); }

/// max|U^dagger U - I|
inline double unitarity_error(const Matrix& u) {
  return max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

/// Projector onto Fock levels [0, max_level] (qubits untouched).
inline Operator fock_projector(const HilbertSpace& space, int max_level) {
  Matrix p = Matrix::Zero(space.dim(), space.dim());
  for (Index k = 0; k < space.dim(); ++k) {
    if (space.decompose(k).fock <= max_level) p(k, k) = 1.0;
  }
  return {space, std::move(p)};
}

/// P M P with P keeping Fock levels below the top `masked_levels`.
inline Matrix mask_fock_boundary(const HilbertSpace& space, const Matrix& m, int masked_levels = 2) {
  const Matrix p = fock_projector(space, space.fock_cutoff() - masked_levels).matrix();
  return p * m * p;
}

/// All qubits in |g>, boson in vacuum.
inline StateVector ground_state(const HilbertSpace& space) {
  return StateVector::basis(space, space.compose({static_cast<std::uint32_t>(space.qubit_dim() - 1), 0}));
}

}  // namespace dicke

#endif  // DICKE_HILBERT_HPP
