// Projective readout, readout error, shot sampling and post-selection.
//
// Outcome vectors index bitstrings over the listed qubits, first qubit most
// significant.
#pragma once

#include "device.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace eswap {

struct OutcomeDistribution {
  std::vector<int> qubits;
  RVec p;

  OutcomeDistribution() = default;
  OutcomeDistribution(std::vector<int> q, RVec probs) : qubits(std::move(q)), p(std::move(probs)) {
    if (p.size() != (Eigen::Index(1) << qubits.size()))
      throw std::invalid_argument("outcome vector length must be 2^n");
  }
  double sum() const { return p.sum(); }
};

inline std::string bitstring(int index, int n) {
  std::string s(n, '0');
  for (int k = 0; k < n; ++k)
    if ((index >> (n - 1 - k)) & 1) s[k] = '1';
  return s;
}

struct ConfusionModel {
  std::vector<int> qubits;
  std::vector<std::pair<double, double>> fid;  // (f0, f1) per qubit

  static ConfusionModel from(const DeviceConfig& cfg, std::vector<int> qubits) {
    ConfusionModel m;
    for (int q : qubits) m.fid.emplace_back(cfg.qubits[q].f0, cfg.qubits[q].f1);
    m.qubits = std::move(qubits);
    return m;
  }
  static ConfusionModel perfect(std::vector<int> qubits) {
    ConfusionModel m;
    m.fid.assign(qubits.size(), {1.0, 1.0});
    m.qubits = std::move(qubits);
    return m;
  }
  // Column-stochastic map true -> reported for one qubit.
  static RMat single(double f0, double f1) {
    RMat c(2, 2);
    c << f0, 1 - f1, 1 - f0, f1;
    return c;
  }
  RMat matrix() const {
    RMat m = RMat::Identity(1, 1);
    for (auto [f0, f1] : fid) {
      const RMat c = single(f0, f1);
      RMat out(m.rows() * 2, m.cols() * 2);
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out.block(2 * i, 2 * j, 2, 2) = m(i, j) * c;
      m = out;
    }
    return m;
  }
  RMat inverse() const {
    RMat m = RMat::Identity(1, 1);
    for (auto [f0, f1] : fid) {
      if (f0 + f1 <= 1.0) throw std::domain_error("confusion matrix not invertible (f0 + f1 <= 1)");
      const RMat c = single(f0, f1).inverse();
      RMat out(m.rows() * 2, m.cols() * 2);
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out.block(2 * i, 2 * j, 2, 2) = m(i, j) * c;
      m = out;
    }
    return m;
  }
};

inline void check_same_qubits(const OutcomeDistribution& d, const ConfusionModel& m) {
  if (d.qubits != m.qubits) throw std::invalid_argument("confusion model and distribution cover different qubits");
}

// Born-rule distribution of the listed subsystems (each of dimension 2).
inline OutcomeDistribution measure_distribution(const DensityMatrix& rho, const std::vector<int>& subsystems) {
  for (int s : subsystems)
    if (s < 0 || s >= rho.space.size() || rho.space.dims[s] != 2)
      throw std::invalid_argument("measure_distribution: targets must be qubit subsystems");
  const int n = static_cast<int>(subsystems.size());
  RVec p = RVec::Zero(1 << n);
  for (int f = 0; f < rho.space.total(); ++f) {
    const auto dig = rho.space.digits(f);
    int idx = 0;
    for (int s : subsystems) idx = 2 * idx + dig[s];
    p(idx) += rho.m(f, f).real();
  }
  return {subsystems, p};
}

struct ProjectionResult {
  DensityMatrix state;  // normalized, on the unmeasured subsystems
  double probability;
};

inline ProjectionResult project_outcome(const DensityMatrix& rho, const std::vector<int>& subsystems,
                                        const std::vector<int>& bits) {
  if (bits.size() != subsystems.size()) throw std::invalid_argument("outcome length does not match targets");
  std::vector<int> rest_dims, rest;
  for (int s = 0; s < rho.space.size(); ++s)
    if (std::find(subsystems.begin(), subsystems.end(), s) == subsystems.end()) {
      rest.push_back(s);
      rest_dims.push_back(rho.space.dims[s]);
    }
  const HilbertSpace rest_sp(rest_dims);
  Mat out = Mat::Zero(rest_sp.total(), rest_sp.total());
  std::vector<int> map(rho.space.total(), -1);
  for (int f = 0; f < rho.space.total(); ++f) {
    const auto dig = rho.space.digits(f);
    bool match = true;
    for (size_t k = 0; k < subsystems.size(); ++k) match = match && dig[subsystems[k]] == bits[k];
    if (!match) continue;
    std::vector<int> rd;
    for (int s : rest) rd.push_back(dig[s]);
    map[f] = rest_sp.flat(rd);
  }
  for (int r = 0; r < rho.space.total(); ++r)
    if (map[r] >= 0)
      for (int c = 0; c < rho.space.total(); ++c)
        if (map[c] >= 0) out(map[r], map[c]) += rho.m(r, c);
  const double p = out.trace().real();
  if (p < 1e-12) throw std::domain_error("project_outcome: conditioning on a null outcome");
  return {DensityMatrix(rest_sp, out / p), p};
}

inline OutcomeDistribution apply_confusion(const OutcomeDistribution& d, const ConfusionModel& m) {
  check_same_qubits(d, m);
  return {d.qubits, m.matrix() * d.p};
}

struct CorrectedDistribution {
  OutcomeDistribution dist;  // clipped and renormalized
  RVec pre_clip;
  double clipped_mass = 0;   // total negative weight removed
};

inline CorrectedDistribution readout_correct(const OutcomeDistribution& d, const ConfusionModel& m) {
  check_same_qubits(d, m);
  CorrectedDistribution r;
  r.pre_clip = m.inverse() * d.p;
  RVec q = r.pre_clip;
  for (Eigen::Index i = 0; i < q.size(); ++i)
    if (q(i) < 0) {
      r.clipped_mass -= q(i);
      q(i) = 0;
    }
  const double s = q.sum();
  if (s > 0) q /= s;
  r.dist = OutcomeDistribution(d.qubits, q);
  return r;
}

// Multinomial sample via sequential binomials.
inline std::vector<long> sample_shots(const OutcomeDistribution& d, long n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("shot count must be positive");
  std::mt19937_64 rng(seed);
  std::vector<long> counts(d.p.size(), 0);
  long left = n;
  double mass = 1.0;
  for (Eigen::Index i = 0; i < d.p.size() && left > 0; ++i) {
    const double pi = std::max(0.0, d.p(i));
    if (i == d.p.size() - 1 || mass <= 0) {
      counts[i] = left;
      break;
    }
    const double prob = std::clamp(pi / mass, 0.0, 1.0);
    std::binomial_distribution<long> bin(left, prob);
    counts[i] = bin(rng);
    left -= counts[i];
    mass -= pi;
  }
  return counts;
}

inline OutcomeDistribution from_counts(std::vector<int> qubits, const std::vector<long>& counts) {
  RVec p(counts.size());
  long total = 0;
  for (long c : counts) total += c;
  for (size_t i = 0; i < counts.size(); ++i) p(i) = static_cast<double>(counts[i]) / static_cast<double>(total);
  return {std::move(qubits), p};
}

struct Postselected {
  OutcomeDistribution conditional;
  double probability;
};

// joint over qubits (0,1,2,3); anchor bits for (Q2,Q3); conditional over (Q1,Q4).
inline Postselected postselect(const OutcomeDistribution& joint, int anchor) {
  if (joint.qubits != std::vector<int>{0, 1, 2, 3}) throw std::invalid_argument("postselect expects Q1..Q4 outcomes");
  const int a2 = (anchor >> 1) & 1, a3 = anchor & 1;
  RVec c(4);
  for (int b1 = 0; b1 < 2; ++b1)
    for (int b4 = 0; b4 < 2; ++b4) c(2 * b1 + b4) = joint.p(8 * b1 + 4 * a2 + 2 * a3 + b4);
  const double p = c.sum();
  if (p < 1e-12) throw std::domain_error("postselect: anchor outcome never occurs");
  return {OutcomeDistribution({0, 3}, c / p), p};
}

// Count files: header `setting,outcome,count`, outcome ordered Q1 Q2 Q3 Q4.
inline void write_counts_csv(std::ostream& out, const std::vector<std::vector<long>>& counts) {
  out << "setting,outcome,count\n";
  for (size_t k = 0; k < counts.size(); ++k)
    for (size_t o = 0; o < counts[k].size(); ++o) out << k << ',' << bitstring(static_cast<int>(o), 4) << ',' << counts[k][o] << '\n';
}

inline std::vector<std::vector<long>> read_counts_csv(std::istream& in) {
  std::string line;
  std::getline(in, line);
  if (line.rfind("setting,outcome,count", 0) != 0) throw std::runtime_error("count file: bad header");
  std::vector<std::vector<long>> counts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c;
    std::getline(ss, a, ',');
    std::getline(ss, b, ',');
    std::getline(ss, c, ',');
    const size_t k = std::stoul(a);
    const size_t o = std::stoul(b, nullptr, 2);
    if (counts.size() <= k) counts.resize(k + 1, std::vector<long>(16, 0));
    counts[k].at(o) = std::stol(c);
  }
  return counts;
}

}  // namespace eswap
