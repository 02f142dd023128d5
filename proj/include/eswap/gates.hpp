// Effective two-qubit models and ideal unitaries.
//
// Two-qubit matrices use basis (|00>, |01>, |10>, |11>) with the first
// qubit of the pair as the most significant bit.
#pragma once

#include "core.hpp"

#include <array>
#include <string>
#include <vector>

namespace eswap {

enum class BellKind { psi_plus, psi_minus, phi_plus, phi_minus };

inline std::string bell_name(BellKind k) {
  switch (k) {
    case BellKind::psi_plus: return "Psi+";
    case BellKind::psi_minus: return "Psi-";
    case BellKind::phi_plus: return "Phi+";
    case BellKind::phi_minus: return "Phi-";
  }
  return "?";
}

struct BellLabel {
  BellKind kind;
  int j, k;  // qubit indices of the pair
};

// |Psi+-> = (|10> +- i|01>)/sqrt2, |Phi+-> = (|11> +- i|00>)/sqrt2.
inline Vec bell_state(BellKind kind) {
  const double s = 1.0 / std::sqrt(2.0);
  Vec v = Vec::Zero(4);
  switch (kind) {
    case BellKind::psi_plus: v(2) = s; v(1) = kI * s; break;
    case BellKind::psi_minus: v(2) = s; v(1) = -kI * s; break;
    case BellKind::phi_plus: v(3) = s; v(0) = kI * s; break;
    case BellKind::phi_minus: v(3) = s; v(0) = -kI * s; break;
  }
  return v;
}

inline StateVector bell_state(const BellLabel& label) {
  if (label.j == label.k) throw std::invalid_argument("bell pair needs two distinct qubits");
  return {HilbertSpace({2, 2}), bell_state(label.kind)};
}

// -lambda (s+_j s-_k + h.c.) on a pair.
inline Mat xy_hamiltonian(double lambda) {
  Mat h = Mat::Zero(4, 4);
  h(1, 2) = h(2, 1) = -lambda;
  return h;
}

inline Mat xy_pair_propagator(double lambda, double t) { return propagator(xy_hamiltonian(lambda), t); }

// (I + i X(x)X)/sqrt2.
inline Mat dressed_gate_ideal_unitary() {
  const double s = 1.0 / std::sqrt(2.0);
  Mat u(4, 4);
  u << s, 0, 0, kI * s,
       0, s, kI * s, 0,
       0, kI * s, s, 0,
       kI * s, 0, 0, s;
  return u;
}

// Exchange coupling plus resonant drives on both qubits, phase inverted at
// the midpoint of a pulse of length tau.
inline Mat dressed_gate_propagator_for(double lambda, double rabi_2, double rabi_3, double phi, double tau) {
  auto h = [&](double ph) {
    Mat m = xy_hamiltonian(lambda);
    const Mat sp = op::splus();
    const Mat drive = std::exp(kI * ph) * sp + std::exp(-kI * ph) * sp.adjoint();
    m += rabi_2 * kron(drive, op::identity(2)) + rabi_3 * kron(op::identity(2), drive);
    return m;
  };
  return propagator(h(phi + kPi), tau / 2) * propagator(h(phi), tau / 2);
}

// The gate: tau = pi/(2 lambda). With apply_corrections the single-qubit
// phases exp(i pi S_z,phi / 4) are appended.
inline Mat dressed_gate_effective_propagator(double lambda, double rabi_2, double rabi_3, double phi,
                                             bool apply_corrections = false) {
  Mat u = dressed_gate_propagator_for(lambda, rabi_2, rabi_3, phi, kPi / (2 * lambda));
  if (apply_corrections) {
    // S_z,phi = (e^{i phi} s+ + h.c.)/2 on each qubit.
    const Mat sp = op::splus();
    const Mat szphi = 0.5 * (std::exp(kI * phi) * sp + std::exp(-kI * phi) * sp.adjoint());
    const Mat c = propagator(-szphi * kPi / 4, 1.0);
    u = kron(c, c) * u;
  }
  return u;
}

// Phase-insensitive overlap |tr(A^dag B)|^2 / d^2.
inline double gate_fidelity(const Mat& a, const Mat& b) {
  const double d = static_cast<double>(a.rows());
  return std::norm((a.adjoint() * b).trace()) / (d * d);
}

// Phase-sensitive comparison after removing the global phase.
inline double phase_aligned_distance(const Mat& a, const Mat& b) {
  const cd ov = (a.adjoint() * b).trace();
  const cd ph = std::abs(ov) > 0 ? ov / std::abs(ov) : cd(1.0);
  return (a * ph - b).cwiseAbs().maxCoeff();
}

// Terms of |Psi+_12>|Psi+_34> written as sum_i c_i |B_i>_23 |B'_i>_14.
struct DoubleBellTerm {
  cd coefficient;
  BellKind q23;
  BellKind q14;
};

inline std::vector<DoubleBellTerm> expand_double_bell() {
  return {{-0.5 * kI, BellKind::psi_plus, BellKind::psi_minus},
          {0.5 * kI, BellKind::psi_minus, BellKind::psi_plus},
          {0.5, BellKind::phi_plus, BellKind::phi_plus},
          {-0.5, BellKind::phi_minus, BellKind::phi_minus}};
}

// Four-qubit register helpers, order Q1 Q2 Q3 Q4 with Q1 most significant.
inline int bit_of(int index, int qubit, int n) { return (index >> (n - 1 - qubit)) & 1; }

// 4-qubit vector with pair (a0,a1) in state u and pair (b0,b1) in state v.
inline Vec place_pairs(const Vec& u, std::array<int, 2> a, const Vec& v, std::array<int, 2> b, int n = 4) {
  Vec out = Vec::Zero(1 << n);
  for (int i = 0; i < (1 << n); ++i) {
    const int ia = 2 * bit_of(i, a[0], n) + bit_of(i, a[1], n);
    const int ib = 2 * bit_of(i, b[0], n) + bit_of(i, b[1], n);
    out(i) = u(ia) * v(ib);
  }
  return out;
}

inline Vec double_bell_state() {
  return place_pairs(bell_state(BellKind::psi_plus), {0, 1}, bell_state(BellKind::psi_plus), {2, 3});
}

// Operator `op` (2^k x 2^k) acting on the listed qubits of an n-qubit register.
inline Mat embed_qubits(const Mat& op, const std::vector<int>& qubits, int n) {
  const int dim = 1 << n;
  Mat out = Mat::Zero(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      bool rest_equal = true;
      for (int q = 0; q < n && rest_equal; ++q)
        if (std::find(qubits.begin(), qubits.end(), q) == qubits.end() && bit_of(r, q, n) != bit_of(c, q, n))
          rest_equal = false;
      if (!rest_equal) continue;
      int sr = 0, sc = 0;
      for (int q : qubits) {
        sr = 2 * sr + bit_of(r, q, n);
        sc = 2 * sc + bit_of(c, q, n);
      }
      out(r, c) = op(sr, sc);
    }
  return out;
}

// Q1Q4 Bell state left behind by each Q2Q3 outcome after the gate.
inline BellKind anchor_target(int anchor) {
  static constexpr std::array<BellKind, 4> t{BellKind::phi_plus, BellKind::psi_minus, BellKind::psi_plus,
                                             BellKind::phi_minus};
  return t.at(anchor);
}

// Single-qubit rotation by angle about the axis at phase phi in the xy plane.
inline Mat rotation(double angle, double phi) {
  const Mat n = std::cos(phi) * op::sx() + std::sin(phi) * op::sy();
  return std::cos(angle / 2) * op::identity(2) - kI * std::sin(angle / 2) * n;
}

// Relaxation for time t with rate 1/t1 followed by pure dephasing with
// coherence factor exp(-t/tphi), applied to one qubit of a register.
inline Mat decay_channel(const Mat& rho, int qubit, int n, double t, double t1, double tphi) {
  const double gamma = std::isinf(t1) ? 0.0 : 1.0 - std::exp(-t / t1);
  const double lam = std::isinf(tphi) ? 1.0 : std::exp(-t / tphi);
  Mat k0 = Mat::Zero(2, 2), k1 = Mat::Zero(2, 2);
  k0(0, 0) = 1;
  k0(1, 1) = std::sqrt(1 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  const Mat a0 = embed_qubits(k0, {qubit}, n), a1 = embed_qubits(k1, {qubit}, n);
  Mat out = a0 * rho * a0.adjoint() + a1 * rho * a1.adjoint();
  const Mat z = embed_qubits(op::sz(), {qubit}, n);
  return 0.5 * (1 + lam) * out + 0.5 * (1 - lam) * z * out * z;
}

}  // namespace eswap
