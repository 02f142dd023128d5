// Two-qubit state and process tomography, fidelities and concurrence.
#pragma once

#include "gates.hpp"
#include "measurement.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <functional>

namespace eswap {

// Pre-rotations: 0 identity, 1 pi/2 about x, 2 pi/2 about y.
struct TomographySetting {
  int r1 = 0, r2 = 0;

  int index() const { return 3 * r1 + r2; }
  static TomographySetting from_index(int k) {
    if (k < 0 || k >= 9) throw std::out_of_range("tomography setting index must be 0..8");
    return {k / 3, k % 3};
  }
  static Mat single(int r) {
    switch (r) {
      case 0: return op::identity(2);
      case 1: return rotation(kPi / 2, 0);
      case 2: return rotation(kPi / 2, kPi / 2);
    }
    throw std::out_of_range("pre-rotation must be 0, 1 or 2");
  }
  Mat unitary() const { return kron(single(r1), single(r2)); }
};

inline constexpr int kNumSettings = 9;

inline std::array<TomographySetting, kNumSettings> all_settings() {
  std::array<TomographySetting, kNumSettings> s;
  for (int k = 0; k < kNumSettings; ++k) s[k] = TomographySetting::from_index(k);
  return s;
}

// Two-qubit Pauli products, index 4a + b for sigma_a (x) sigma_b.
inline Mat pauli2(int m) { return kron(op::pauli(m / 4), op::pauli(m % 4)); }

inline std::string pauli2_label(int m) {
  static const char* l = "IXYZ";
  return std::string{l[m / 4], l[m % 4]};
}

inline RVec setting_probabilities(const Mat& rho, const TomographySetting& s) {
  const Mat u = s.unitary();
  return (u * rho * u.adjoint()).diagonal().real();
}

inline OutcomeDistribution setting_distribution(const Mat& rho, const TomographySetting& s,
                                                std::vector<int> qubits = {0, 1}) {
  if (rho.rows() != 4 || rho.cols() != 4) throw std::invalid_argument("setting_distribution expects a 2-qubit state");
  return {std::move(qubits), setting_probabilities(rho, s)};
}

namespace detail {

// Row 4k + o: probability of outcome o in setting k per unit Pauli expectation.
inline const RMat& tomography_design() {
  static const RMat a = [] {
    RMat m(4 * kNumSettings, 16);
    for (const auto& s : all_settings()) {
      const Mat u = s.unitary();
      for (int p = 0; p < 16; ++p) {
        const RVec probs = (u * pauli2(p) * u.adjoint()).diagonal().real() / 4.0;
        for (int o = 0; o < 4; ++o) m(4 * s.index() + o, p) = probs(o);
      }
    }
    return m;
  }();
  return a;
}

}  // namespace detail

// Nearest unit-trace positive semidefinite matrix by eigenvalue water-filling.
inline Mat project_physical(const Mat& raw) {
  if (std::abs(raw.trace() - cd(1.0)) > 1e-6) throw std::invalid_argument("project_physical expects unit trace");
  if (hermiticity_error(raw) > 1e-7) throw std::invalid_argument("project_physical expects a Hermitian matrix");
  const Mat h = 0.5 * (raw + raw.adjoint());
  const auto e = hermitian_eig(h);
  RVec lam = e.values;  // descending
  const Eigen::Index n = lam.size();
  double carry = 0;
  Eigen::Index i = n - 1;
  for (; i >= 0; --i) {
    if (lam(i) + carry / static_cast<double>(i + 1) < 0) {
      carry += lam(i);
      lam(i) = 0;
    } else {
      break;
    }
  }
  for (Eigen::Index j = 0; j <= i; ++j) lam(j) += carry / static_cast<double>(i + 1);
  return e.vectors * lam.cast<cd>().asDiagonal() * e.vectors.adjoint();
}

struct Reconstruction {
  Mat raw;       // linear inversion
  Mat physical;  // after projection
};

// Least-squares inversion of 9 four-outcome distributions.
inline Reconstruction reconstruct_state_detailed(const std::vector<OutcomeDistribution>& dists) {
  if (dists.size() != kNumSettings) throw std::invalid_argument("state tomography needs 9 distributions");
  RVec b(4 * kNumSettings);
  for (int k = 0; k < kNumSettings; ++k) {
    if (dists[k].p.size() != 4) throw std::invalid_argument("tomography distributions must have 4 outcomes");
    b.segment(4 * k, 4) = dists[k].p;
  }
  const RVec c = detail::tomography_design().colPivHouseholderQr().solve(b);
  Mat raw = Mat::Zero(4, 4);
  for (int p = 0; p < 16; ++p) raw += c(p) * pauli2(p) / 4.0;
  raw = 0.5 * (raw + raw.adjoint()).eval();
  const double tr = raw.trace().real();
  if (tr > 0) raw /= tr;
  return {raw, project_physical(raw)};
}

inline DensityMatrix reconstruct_state(const std::vector<OutcomeDistribution>& dists) {
  return {HilbertSpace({2, 2}), reconstruct_state_detailed(dists).physical};
}

inline double state_fidelity(const Mat& rho, const Vec& target) {
  if (rho.rows() != target.size()) throw std::invalid_argument("state_fidelity: dimension mismatch");
  return (target.adjoint() * rho * target)(0, 0).real();
}

inline double state_fidelity(const DensityMatrix& rho, const StateVector& target) {
  if (rho.space.total() != target.space.total()) throw std::invalid_argument("state_fidelity: dimension mismatch");
  return state_fidelity(rho.m, target.v);
}

// Spin-flip concurrence via the Hermitian form sqrt(rho) rho~ sqrt(rho).
inline double concurrence(const Mat& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw std::invalid_argument("concurrence expects a 2-qubit state");
  const Mat h = 0.5 * (rho + rho.adjoint());
  const auto e = hermitian_eig(h);
  const RVec s = e.values.cwiseMax(0.0).cwiseSqrt();
  const Mat sq = e.vectors * s.cast<cd>().asDiagonal() * e.vectors.adjoint();
  const Mat yy = kron(op::sy(), op::sy());
  const Mat tilde = yy * h.conjugate() * yy;
  Mat r = sq * tilde * sq;
  r = 0.5 * (r + r.adjoint()).eval();
  const RVec l = hermitian_eig(r).values.cwiseMax(0.0).cwiseSqrt();
  return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

inline double concurrence(const DensityMatrix& rho) { return concurrence(rho.m); }

// ---- process tomography ---------------------------------------------------------

using Channel = std::function<Mat(const Mat&)>;

// chi over the Pauli products, E(rho) = sum chi_mn P_m rho P_n.
struct ChiMatrix {
  Mat chi;

  static ChiMatrix of_unitary(const Mat& u) {
    Vec c(16);
    for (int m = 0; m < 16; ++m) c(m) = (pauli2(m) * u).trace() / 4.0;
    return {c * c.adjoint()};
  }
};

// The 16 product preparations |0>, |1>, |+>, |+i> on each qubit.
inline std::vector<Mat> process_preparations() {
  const double s = 1.0 / std::sqrt(2.0);
  std::array<Vec, 4> one;
  for (auto& v : one) v = Vec::Zero(2);
  one[0](0) = 1;
  one[1](1) = 1;
  one[2] << s, s;
  one[3] << s, kI * s;
  std::vector<Mat> out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Vec v = kron(one[a], one[b]);
      out.push_back(v * v.adjoint());
    }
  return out;
}

inline ChiMatrix chi_from_outputs(const std::vector<Mat>& inputs, const std::vector<Mat>& outputs, bool physical = true) {
  if (inputs.size() != 16 || outputs.size() != 16) throw std::invalid_argument("process tomography needs 16 input/output pairs");
  // Express each matrix unit |i><k| in the span of the inputs.
  Mat basis(16, 16);
  for (int j = 0; j < 16; ++j)
    for (int e = 0; e < 16; ++e) basis(e, j) = inputs[j](e / 4, e % 4);
  const auto lu = basis.fullPivLu();
  if (lu.rank() < 16) throw std::invalid_argument("process inputs are not linearly independent");
  Mat choi = Mat::Zero(16, 16);
  for (int e = 0; e < 16; ++e) {
    Vec unit = Vec::Zero(16);
    unit(e) = 1;
    const Vec beta = lu.solve(unit);
    Mat out = Mat::Zero(4, 4);
    for (int j = 0; j < 16; ++j) out += beta(j) * outputs[j];
    Mat eik = Mat::Zero(4, 4);
    eik(e / 4, e % 4) = 1;
    choi += kron(eik, out);
  }
  Mat chi(16, 16);
  std::vector<Vec> v(16);
  for (int m = 0; m < 16; ++m) {
    v[m] = Vec::Zero(16);
    const Mat p = pauli2(m);
    for (int i = 0; i < 4; ++i) v[m] += kron(basis_ket(4, i), Vec(p.col(i)));
  }
  for (int m = 0; m < 16; ++m)
    for (int n = 0; n < 16; ++n) chi(m, n) = (v[m].adjoint() * choi * v[n])(0, 0) / 16.0;
  chi = 0.5 * (chi + chi.adjoint()).eval();
  if (physical) chi = project_physical(chi / chi.trace().real());
  return {chi};
}

inline ChiMatrix process_tomography(const Channel& channel, bool physical = true) {
  const auto inputs = process_preparations();
  std::vector<Mat> outputs;
  outputs.reserve(inputs.size());
  for (const auto& in : inputs) outputs.push_back(channel(in));
  return chi_from_outputs(inputs, outputs, physical);
}

inline double process_fidelity(const ChiMatrix& chi, const ChiMatrix& ideal) {
  return (chi.chi * ideal.chi).trace().real();
}

// ---- serialization ---------------------------------------------------------------

inline nlohmann::json complex_matrix_json(const Mat& m) {
  std::vector<std::vector<double>> re(m.rows(), std::vector<double>(m.cols())), im = re;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re[r][c] = m(r, c).real();
      im[r][c] = m(r, c).imag();
    }
  return {{"real", re}, {"imag", im}};
}

inline Mat complex_matrix_from_json(const nlohmann::json& j) {
  const auto re = j.at("real").get<std::vector<std::vector<double>>>();
  const auto im = j.at("imag").get<std::vector<std::vector<double>>>();
  if (re.size() != im.size()) throw std::invalid_argument("matrix json: real/imag shape mismatch");
  Mat m(re.size(), re.empty() ? 0 : re[0].size());
  for (size_t r = 0; r < re.size(); ++r) {
    if (re[r].size() != static_cast<size_t>(m.cols()) || im[r].size() != re[r].size())
      throw std::invalid_argument("matrix json: ragged rows");
    for (size_t c = 0; c < re[r].size(); ++c) m(r, c) = cd(re[r][c], im[r][c]);
  }
  return m;
}

inline nlohmann::json density_to_json(const DensityMatrix& rho, std::vector<std::string> basis = {}) {
  if (basis.empty())
    for (int f = 0; f < rho.space.total(); ++f) {
      std::string s;
      for (int d : rho.space.digits(f)) s += std::to_string(d);
      basis.push_back(s);
    }
  auto j = complex_matrix_json(rho.m);
  j["dims"] = rho.space.dims;
  j["basis"] = basis;
  return j;
}

inline DensityMatrix density_from_json(const nlohmann::json& j) {
  return {HilbertSpace(j.at("dims").get<std::vector<int>>()), complex_matrix_from_json(j)};
}

inline nlohmann::json chi_to_json(const ChiMatrix& c) {
  auto j = complex_matrix_json(c.chi);
  std::vector<std::string> labels;
  for (int m = 0; m < 16; ++m) labels.push_back(pauli2_label(m));
  j["dims"] = {16};
  j["basis"] = labels;
  return j;
}

inline ChiMatrix chi_from_json(const nlohmann::json& j) {
  const Mat m = complex_matrix_from_json(j);
  if (m.rows() != 16 || m.cols() != 16) throw std::invalid_argument("chi json must be 16x16");
  return {m};
}

}  // namespace eswap
