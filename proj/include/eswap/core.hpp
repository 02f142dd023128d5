// Dense complex linear algebra and tensor-product bookkeeping.
//
// Subsystem ordering is fixed everywhere: resonator first (when present),
// then the qubits in ascending index order. Qubit basis: index 0 is |0>
// (ground), index 1 is |1>. Multi-qubit kets are ordered with the first
// subsystem as the most significant digit.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace eswap {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr cd kI{0.0, 1.0};

// Unit helpers. Frequencies are angular (rad/s), times in seconds.
constexpr double ghz(double f) { return kTwoPi * f * 1e9; }
constexpr double mhz(double f) { return kTwoPi * f * 1e6; }
constexpr double ns(double t) { return t * 1e-9; }
constexpr double us(double t) { return t * 1e-6; }
constexpr double to_mhz(double w) { return w / (kTwoPi * 1e6); }
constexpr double to_ns(double t) { return t * 1e9; }

// Tolerances shared by every module.
inline constexpr double kHermTol = 1e-9;
inline constexpr double kPsdTol = 1e-8;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ScheduleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HilbertSpace {
  std::vector<int> dims;

  HilbertSpace() = default;
  explicit HilbertSpace(std::vector<int> d) : dims(std::move(d)) {
    for (int x : dims)
      if (x <= 0) throw std::invalid_argument("subsystem dimension must be positive");
  }
  int total() const {
    return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
  }
  int size() const { return static_cast<int>(dims.size()); }
  bool operator==(const HilbertSpace&) const = default;

  // Mixed-radix digits of a flat index.
  std::vector<int> digits(int flat) const {
    std::vector<int> out(dims.size());
    for (int k = size() - 1; k >= 0; --k) {
      out[k] = flat % dims[k];
      flat /= dims[k];
    }
    return out;
  }
  int flat(const std::vector<int>& dig) const {
    int f = 0;
    for (int k = 0; k < size(); ++k) f = f * dims[k] + dig[k];
    return f;
  }
};

struct DensityMatrix {
  HilbertSpace space;
  Mat m;

  DensityMatrix() = default;
  DensityMatrix(HilbertSpace s, Mat mat) : space(std::move(s)), m(std::move(mat)) {
    if (m.rows() != space.total() || m.cols() != space.total())
      throw std::invalid_argument("density matrix shape does not match space");
  }
  cd trace() const { return m.trace(); }
};

struct StateVector {
  HilbertSpace space;
  Vec v;

  StateVector() = default;
  StateVector(HilbertSpace s, Vec vec) : space(std::move(s)), v(std::move(vec)) {
    if (v.size() != space.total())
      throw std::invalid_argument("state vector length does not match space");
  }
  DensityMatrix projector() const { return {space, v * v.adjoint()}; }
};

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline Mat kron_all(const std::vector<Mat>& ops) {
  if (ops.empty()) return Mat::Identity(1, 1);
  Mat out = ops.front();
  for (size_t k = 1; k < ops.size(); ++k) out = kron(out, ops[k]);
  return out;
}

// op acting on subsystem k, identity elsewhere.
inline Mat embed(const Mat& op, int k, const std::vector<int>& dims) {
  std::vector<Mat> parts;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i)
    parts.push_back(i == k ? op : Mat::Identity(dims[i], dims[i]));
  return kron_all(parts);
}

inline Mat partial_trace(const Mat& rho, const std::vector<int>& dims, std::vector<int> keep) {
  const HilbertSpace sp(dims);
  if (rho.rows() != sp.total() || rho.cols() != sp.total())
    throw std::invalid_argument("partial_trace: shape mismatch");
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep is empty");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (int k : keep)
    if (k < 0 || k >= sp.size()) throw std::invalid_argument("partial_trace: invalid subsystem index");

  std::vector<int> kept_dims;
  for (int k : keep) kept_dims.push_back(dims[k]);
  const HilbertSpace out_sp(kept_dims);
  Mat out = Mat::Zero(out_sp.total(), out_sp.total());

  std::vector<char> is_kept(dims.size(), 0);
  for (int k : keep) is_kept[k] = 1;

  const int n = sp.total();
  std::vector<std::vector<int>> dig(n);
  std::vector<int> kidx(n), tidx(n);
  for (int f = 0; f < n; ++f) {
    dig[f] = sp.digits(f);
    int ki = 0, ti = 0;
    for (int s = 0; s < sp.size(); ++s) {
      if (is_kept[s]) ki = ki * dims[s] + dig[f][s];
      else ti = ti * dims[s] + dig[f][s];
    }
    kidx[f] = ki;
    tidx[f] = ti;
  }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (tidx[r] == tidx[c]) out(kidx[r], kidx[c]) += rho(r, c);
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  std::vector<int> k = keep;
  std::sort(k.begin(), k.end());
  std::vector<int> kd;
  for (int i : k) {
    if (i < 0 || i >= rho.space.size()) throw std::invalid_argument("partial_trace: invalid subsystem index");
    kd.push_back(rho.space.dims[i]);
  }
  return {HilbertSpace(kd), partial_trace(rho.m, rho.space.dims, k)};
}

inline double hermiticity_error(const Mat& a) { return (a - a.adjoint()).cwiseAbs().maxCoeff(); }

struct EigResult {
  RVec values;  // descending
  Mat vectors;  // columns
};

inline EigResult hermitian_eig(const Mat& a, double tol = kHermTol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_eig: matrix not square");
  if (a.size() > 0 && hermiticity_error(a) > tol)
    throw std::invalid_argument("hermitian_eig: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (a + a.adjoint()));
  const auto n = a.rows();
  EigResult r{RVec(n), Mat(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    r.values(i) = es.eigenvalues()(n - 1 - i);
    r.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return r;
}

// exp(-i h t) with h in rad/s.
inline Mat propagator(const Mat& h, double t) {
  const auto e = hermitian_eig(h);
  Vec ph(e.values.size());
  for (Eigen::Index i = 0; i < ph.size(); ++i) ph(i) = std::exp(-kI * e.values(i) * t);
  return e.vectors * ph.asDiagonal() * e.vectors.adjoint();
}

// Hermitian matrix function through the eigenbasis.
template <class F>
Mat hermitian_apply(const Mat& a, F f) {
  const auto e = hermitian_eig(a, 1e-6);
  Vec d(e.values.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = f(e.values(i));
  return e.vectors * d.asDiagonal() * e.vectors.adjoint();
}

inline double min_eigenvalue(const Mat& a) {
  return hermitian_eig(0.5 * (a + a.adjoint()), 1e300).values.minCoeff();
}

inline double purity(const Mat& rho) { return (rho * rho).trace().real(); }

namespace op {
inline Mat identity(int d) { return Mat::Identity(d, d); }
inline Mat sx() { Mat m(2, 2); m << 0, 1, 1, 0; return m; }
inline Mat sy() { Mat m(2, 2); m << 0, -kI, kI, 0; return m; }
inline Mat sz() { Mat m(2, 2); m << 1, 0, 0, -1; return m; }
// |0><1|: lowers an excitation.
inline Mat sminus() { Mat m = Mat::Zero(2, 2); m(0, 1) = 1; return m; }
inline Mat splus() { return sminus().adjoint(); }
inline Mat number() { Mat m = Mat::Zero(2, 2); m(1, 1) = 1; return m; }
inline Mat annihilation(int n) {
  Mat a = Mat::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}
// Pauli by index 0..3 = I, X, Y, Z.
inline Mat pauli(int k) {
  switch (k) {
    case 0: return identity(2);
    case 1: return sx();
    case 2: return sy();
    case 3: return sz();
  }
  throw std::invalid_argument("pauli index out of range");
}
}  // namespace op

inline Vec basis_ket(int dim, int index) {
  Vec v = Vec::Zero(dim);
  v(index) = 1.0;
  return v;
}

// Computational-basis ket of n qubits, bits[0] most significant.
inline Vec qubit_ket(const std::vector<int>& bits) {
  int idx = 0;
  for (int b : bits) idx = 2 * idx + (b ? 1 : 0);
  return basis_ket(1 << bits.size(), idx);
}

}  // namespace eswap
