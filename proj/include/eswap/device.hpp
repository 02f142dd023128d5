// Four transmon qubits (two-level) coupled to a bus resonator.
//
// Qubit indices are 0-based in code (Q1 == 0). The simulation frame rotates
// at the resonator frequency for every subsystem.
#pragma once

#include "core.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <fstream>
#include <limits>
#include <tuple>
#include <optional>
#include <sstream>
#include <utility>

namespace eswap {

inline constexpr int kNumQubits = 4;

struct QubitParams {
  double idle_frequency = 0;  // rad/s
  double t1 = 0;              // s
  double t2_star = 0;         // s
  double t_phi_dd = 0;        // s
  double g = 0;               // rad/s
  double f0 = 1;
  double f1 = 1;
};

// Direct coupling for a pair plus the numbers it is calibrated against.
struct PairCoupling {
  int j = 0, k = 0;
  double target = 0;            // effective exchange rate at the working point, rad/s
  double working_detuning = 0;  // resonator minus qubit frequency during the interaction, rad/s
  double direct = 0;            // lambda^c, rad/s
  // Assignment the target refers to. Unset: the pair at its working
  // detuning with the other qubits idle.
  std::optional<std::array<double, 4>> calibration_point;
};

enum class CouplingModel { exact, leading_order, explicit_values };

struct DeviceConfig {
  double resonator_frequency = 0;
  std::array<QubitParams, kNumQubits> qubits{};
  std::vector<PairCoupling> pairs;
  int resonator_cutoff = 3;
  double resonator_kappa = 0;
  bool protection = true;    // dephasing at t_phi_dd; otherwise derived from t2_star
  bool decoherence = true;   // false switches every collapse operator off
  CouplingModel coupling_model = CouplingModel::exact;

  double direct_coupling(int j, int k) const {
    for (const auto& p : pairs)
      if ((p.j == j && p.k == k) || (p.j == k && p.k == j)) return p.direct;
    return 0.0;
  }
  const PairCoupling& pair(int j, int k) const {
    for (const auto& p : pairs)
      if ((p.j == j && p.k == k) || (p.j == k && p.k == j)) return p;
    throw ConfigError("no coupling entry for pair Q" + std::to_string(j + 1) + "-Q" + std::to_string(k + 1));
  }
  PairCoupling& pair(int j, int k) {
    return const_cast<PairCoupling&>(std::as_const(*this).pair(j, k));
  }
  double pure_dephasing_time(int q) const {
    const auto& p = qubits[q];
    if (protection) return p.t_phi_dd;
    // Exponential rate from the Ramsey time with the T1 part removed.
    const double rate = 1.0 / p.t2_star - 0.5 / p.t1;
    return rate > 0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
  }

  void validate() const {
    if (resonator_cutoff < 2) throw ConfigError("resonator_cutoff must be >= 2");
    if (!(resonator_frequency > 0)) throw ConfigError("resonator frequency must be positive");
    if (resonator_kappa < 0) throw ConfigError("resonator kappa must be >= 0");
    for (int q = 0; q < kNumQubits; ++q) {
      const auto& p = qubits[q];
      const std::string name = "Q" + std::to_string(q + 1);
      if (!(p.t1 > 0) || !(p.t2_star > 0) || !(p.t_phi_dd > 0)) throw ConfigError(name + ": times must be > 0");
      if (!(p.g > 0)) throw ConfigError(name + ": g must be > 0");
      if (p.f0 < 0 || p.f0 > 1 || p.f1 < 0 || p.f1 > 1) throw ConfigError(name + ": readout fidelities must lie in [0,1]");
      if (!(p.idle_frequency > 0)) throw ConfigError(name + ": idle frequency must be positive");
    }
    for (size_t a = 0; a < pairs.size(); ++a) {
      const auto& p = pairs[a];
      if (p.j == p.k) throw ConfigError("direct coupling on the diagonal");
      if (p.j < 0 || p.k < 0 || p.j >= kNumQubits || p.k >= kNumQubits) throw ConfigError("coupling pair index out of range");
      for (size_t b = a + 1; b < pairs.size(); ++b)
        if ((pairs[b].j == p.j && pairs[b].k == p.k) || (pairs[b].j == p.k && pairs[b].k == p.j))
          throw ConfigError("duplicate coupling pair");
    }
  }
};

struct FrequencyAssignment {
  std::array<double, kNumQubits> f{};

  static FrequencyAssignment idle(const DeviceConfig& cfg) {
    FrequencyAssignment fa;
    for (int q = 0; q < kNumQubits; ++q) fa.f[q] = cfg.qubits[q].idle_frequency;
    return fa;
  }
  // Qubits in `qs` placed at resonator minus detuning; the rest at idle.
  static FrequencyAssignment detuned(const DeviceConfig& cfg, std::initializer_list<std::pair<int, double>> qs) {
    auto fa = idle(cfg);
    for (auto [q, d] : qs) fa.f[q] = cfg.resonator_frequency - d;
    return fa;
  }
  bool in_tuning_range() const {
    for (double x : f)
      if (x < ghz(5.0) - 1.0 || x > ghz(6.0) + 1.0) return false;
    return true;
  }
  bool operator==(const FrequencyAssignment&) const = default;
};

enum class Envelope { rectangular, gaussian };

struct DrivePulse {
  int qubit = 0;
  double rabi = 0;      // peak Omega, rad/s
  double phase = 0;     // rad
  double detuning = 0;  // carrier offset from the qubit frame, rad/s
  double start = 0;
  double duration = 0;
  Envelope envelope = Envelope::rectangular;
  double fwhm = 0;
  std::optional<double> phase_inversion_at;  // offset from start

  double end() const { return start + duration; }
  bool active(double t) const { return t >= start && t <= end(); }

  // Envelope and phase at t, on the piece of the pulse that contains ref.
  // Discontinuities (edges, phase inversion) are resolved by ref.
  double amplitude(double t, double ref) const {
    if (!active(ref)) return 0.0;
    if (envelope == Envelope::rectangular) return rabi;
    const double sigma = fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    const double x = t - (start + 0.5 * duration);
    return rabi * std::exp(-x * x / (2 * sigma * sigma));
  }
  double amplitude(double t) const { return amplitude(t, t); }
  double phase_at(double t, double ref) const {
    double ph = phase - detuning * (t - start);
    if (phase_inversion_at && ref - start >= *phase_inversion_at) ph += kPi;
    return ph;
  }
  double phase_at(double t) const { return phase_at(t, t); }
  // Times inside (a, b) where the drive is discontinuous.
  std::vector<double> breakpoints(double a, double b) const {
    std::vector<double> out;
    for (double x : {start, end(), phase_inversion_at ? start + *phase_inversion_at : start})
      if (x > a && x < b) out.push_back(x);
    return out;
  }
  void validate() const {
    if (!(duration > 0)) throw ScheduleError("drive duration must be > 0");
    if (phase_inversion_at && (*phase_inversion_at <= 0 || *phase_inversion_at >= duration))
      throw ScheduleError("phase inversion must fall inside the pulse");
    if (envelope == Envelope::gaussian && !(fwhm > 0)) throw ScheduleError("gaussian drive needs fwhm > 0");
  }
};

// Area of the unit-peak envelope, Simpson's rule.
inline double envelope_area(const DrivePulse& p, int n = 2000) {
  DrivePulse u = p;
  u.rabi = 1.0;
  const double h = p.duration / n;
  double s = u.amplitude(p.start) + u.amplitude(p.end());
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * u.amplitude(p.start + i * h);
  return s * h / 3.0;
}

// Single-qubit rotation by `angle` about the axis at `phase` in the qubit frame.
// H = Omega (e^{i phase} s+ + h.c.) rotates at rate 2 Omega.
inline DrivePulse rotation_pulse(int qubit, double angle, double phase, double start, double length, double fwhm) {
  DrivePulse p;
  p.qubit = qubit;
  p.phase = phase;
  p.start = start;
  p.duration = length;
  p.envelope = Envelope::gaussian;
  p.fwhm = fwhm;
  p.rabi = angle / (2.0 * envelope_area(p));
  return p;
}

// Operators on [cutoff, 2, ..., 2] for a subset of qubits.
class System {
 public:
  System(const DeviceConfig& cfg, std::vector<int> qubits) : cfg_(cfg), qubits_(std::move(qubits)) {
    std::sort(qubits_.begin(), qubits_.end());
    std::vector<int> dims{cfg_.resonator_cutoff};
    for (size_t i = 0; i < qubits_.size(); ++i) dims.push_back(2);
    space_ = HilbertSpace(dims);
    a_ = embed(op::annihilation(cfg_.resonator_cutoff), 0, dims);
    sm_.assign(kNumQubits, Mat());
    for (size_t i = 0; i < qubits_.size(); ++i) sm_[qubits_[i]] = embed(op::sminus(), static_cast<int>(i) + 1, dims);
  }
  static System full(const DeviceConfig& cfg) { return System(cfg, {0, 1, 2, 3}); }

  const DeviceConfig& config() const { return cfg_; }
  const std::vector<int>& qubits() const { return qubits_; }
  const HilbertSpace& space() const { return space_; }
  int dim() const { return space_.total(); }
  bool has(int q) const { return std::find(qubits_.begin(), qubits_.end(), q) != qubits_.end(); }
  // Subsystem slot of a qubit (resonator is slot 0).
  int slot(int q) const {
    auto it = std::find(qubits_.begin(), qubits_.end(), q);
    if (it == qubits_.end()) throw std::invalid_argument("qubit not present in system");
    return static_cast<int>(it - qubits_.begin()) + 1;
  }
  const Mat& a() const { return a_; }
  const Mat& sminus(int q) const { slot(q); return sm_[q]; }
  Mat splus(int q) const { return sminus(q).adjoint(); }
  Mat number(int q) const { return splus(q) * sminus(q); }
  Mat sz(int q) const { return Mat::Identity(dim(), dim()) - 2.0 * number(q); }
  // Excitation of qubit q in each basis state.
  std::vector<int> occupation(int q) const {
    const int s = slot(q);
    std::vector<int> occ(dim());
    for (int f = 0; f < dim(); ++f) occ[f] = space_.digits(f)[s];
    return occ;
  }

  Mat static_hamiltonian(const FrequencyAssignment& fa) const {
    Mat h = Mat::Zero(dim(), dim());
    for (int q : qubits_) {
      const Mat& sm = sm_[q];
      h += (fa.f[q] - cfg_.resonator_frequency) * (sm.adjoint() * sm);
      h += cfg_.qubits[q].g * (sm.adjoint() * a_ + sm * a_.adjoint());
    }
    for (const auto& p : cfg_.pairs)
      if (has(p.j) && has(p.k) && p.direct != 0.0)
        h += p.direct * (sm_[p.j].adjoint() * sm_[p.k] + sm_[p.k].adjoint() * sm_[p.j]);
    return h;
  }

  // Omega (e^{i(phi - theta)} s+ + h.c.) with theta the carrier phase.
  Mat drive_term(int q, double rabi, double phase) const {
    const Mat sp = splus(q);
    const cd c = rabi * std::exp(kI * phase);
    return c * sp + std::conj(c) * sp.adjoint();
  }

  std::vector<Mat> collapse_operators() const {
    std::vector<Mat> out;
    if (!cfg_.decoherence) return out;
    for (int q : qubits_) {
      const double t1 = cfg_.qubits[q].t1;
      const double tphi = cfg_.pure_dephasing_time(q);
      out.push_back(std::sqrt(1.0 / t1) * sm_[q]);
      out.push_back(std::sqrt(1.0 / (2.0 * tphi)) * sz(q));
    }
    if (cfg_.resonator_kappa > 0) out.push_back(std::sqrt(cfg_.resonator_kappa) * a_);
    return out;
  }

 private:
  DeviceConfig cfg_;
  std::vector<int> qubits_;
  HilbertSpace space_;
  Mat a_;
  std::vector<Mat> sm_;
};

// Full-space Hamiltonian at time t. carrier_phase[q] is the accumulated
// frame phase of qubit q that drive carriers follow.
inline Mat build_hamiltonian(const DeviceConfig& cfg, const FrequencyAssignment& fa,
                             const std::vector<DrivePulse>& drives, double t,
                             const std::array<double, kNumQubits>& carrier_phase = {}) {
  const System sys = System::full(cfg);
  Mat h = sys.static_hamiltonian(fa);
  for (const auto& d : drives)
    if (d.active(t)) h += sys.drive_term(d.qubit, d.amplitude(t), d.phase_at(t) - carrier_phase[d.qubit]);
  return h;
}

inline std::vector<Mat> collapse_operators(const DeviceConfig& cfg) {
  return System::full(cfg).collapse_operators();
}

// Leading-order exchange rate g_j g_k / delta - lambda^c.
inline double effective_coupling(const DeviceConfig& cfg, int j, int k, double delta,
                                 std::vector<std::string>* warnings = nullptr) {
  if (delta == 0.0) throw std::domain_error("effective_coupling: zero detuning (resonant regime)");
  const double gj = cfg.qubits[j].g, gk = cfg.qubits[k].g;
  if (warnings && std::abs(delta) < 5.0 * std::max(gj, gk))
    warnings->push_back("effective_coupling: |delta| < 5 g, dispersive formula unreliable");
  return gj * gk / delta - cfg.direct_coupling(j, k);
}

// Qubit-block Hamiltonian of the single-excitation manifold with the
// resonator adiabatically eliminated (des Cloizeaux effective Hamiltonian).
// Rows follow `qubits` order; entries in rad/s in the resonator frame.
inline RMat effective_qubit_hamiltonian(const DeviceConfig& cfg, const FrequencyAssignment& fa,
                                        const std::vector<int>& qubits) {
  const int n = static_cast<int>(qubits.size());
  RMat h = RMat::Zero(n + 1, n + 1);
  for (int i = 0; i < n; ++i) {
    const int q = qubits[i];
    h(i + 1, i + 1) = fa.f[q] - cfg.resonator_frequency;
    h(0, i + 1) = h(i + 1, 0) = cfg.qubits[q].g;
    for (int m = 0; m < n; ++m)
      if (m != i) h(i + 1, m + 1) = cfg.direct_coupling(q, qubits[m]);
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(h);
  std::vector<int> idx(n + 1);
  std::iota(idx.begin(), idx.end(), 0);
  const RMat& v = es.eigenvectors();
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return std::abs(v(0, x)) < std::abs(v(0, y)); });
  RMat b(n, n);
  RVec e(n);
  for (int c = 0; c < n; ++c) {
    b.col(c) = v.block(1, idx[c], n, 1);
    e(c) = es.eigenvalues()(idx[c]);
  }
  const RMat s = b * b.transpose();
  Eigen::SelfAdjointEigenSolver<RMat> ss(s);
  const RMat s_inv_half = ss.eigenvectors() * ss.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                          ss.eigenvectors().transpose();
  return s_inv_half * b * e.asDiagonal() * b.transpose() * s_inv_half;
}

// Exact exchange rate of a pair with the resonator eliminated, evaluated
// with every qubit present at assignment fa.
inline double exact_effective_coupling(const DeviceConfig& cfg, int j, int k, const FrequencyAssignment& fa) {
  const RMat h = effective_qubit_hamiltonian(cfg, fa, {0, 1, 2, 3});
  return -h(j, k);
}

// Transition frequencies of the dressed qubits (resonator frame). Hybridization
// with far-detuned neighbours is included to second order; near-resonant
// neighbours are left to the dynamics. Absent qubits get 0.
inline std::array<double, kNumQubits> dressed_frequencies(const DeviceConfig& cfg, const FrequencyAssignment& fa,
                                                          const std::vector<int>& qubits) {
  const RMat h = effective_qubit_hamiltonian(cfg, fa, qubits);
  const int n = static_cast<int>(qubits.size());
  std::array<double, kNumQubits> out{};
  for (int i = 0; i < n; ++i) {
    double w = h(i, i);
    for (int m = 0; m < n; ++m) {
      if (m == i) continue;
      const double gap = h(i, i) - h(m, m);
      if (std::abs(gap) > 10.0 * std::abs(h(i, m))) w += h(i, m) * h(i, m) / gap;
    }
    out[qubits[i]] = w;
  }
  return out;
}

// Unitary whose column x is the eigenstate of the static Hamiltonian that
// continues bare product state x. Column phases make <x|W|x> real positive.
inline Mat dressing_basis(const System& sys, const FrequencyAssignment& fa) {
  const auto e = hermitian_eig(sys.static_hamiltonian(fa));
  const int d = sys.dim();
  std::vector<std::tuple<double, int, int>> cand;
  cand.reserve(static_cast<size_t>(d) * d);
  for (int b = 0; b < d; ++b)
    for (int c = 0; c < d; ++c) cand.emplace_back(std::norm(e.vectors(b, c)), b, c);
  std::stable_sort(cand.begin(), cand.end(), [](const auto& x, const auto& y) { return std::get<0>(x) > std::get<0>(y); });
  Mat w = Mat::Zero(d, d);
  std::vector<char> used_b(d, 0), used_c(d, 0);
  int filled = 0;
  for (const auto& [ov, b, c] : cand) {
    if (used_b[b] || used_c[c]) continue;
    const cd amp = e.vectors(b, c);
    w.col(b) = e.vectors.col(c) * (std::abs(amp) / amp);
    used_b[b] = used_c[c] = 1;
    if (++filled == d) break;
  }
  return w;
}

// ---- configuration file -------------------------------------------------

namespace detail {
inline double num(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  const auto& v = j.at(key);
  if (v.is_string() && (v == "inf" || v == "infinity")) return std::numeric_limits<double>::infinity();
  if (!v.is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}
inline std::pair<int, int> parse_pair(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("pair must be a two-element array of qubit numbers");
  return {j[0].get<int>() - 1, j[1].get<int>() - 1};
}
}  // namespace detail

inline FrequencyAssignment calibration_assignment(const DeviceConfig& cfg, const PairCoupling& p) {
  if (p.calibration_point) return FrequencyAssignment{*p.calibration_point};
  return FrequencyAssignment::detuned(cfg, {{p.j, p.working_detuning}, {p.k, p.working_detuning}});
}

// Fill in lambda^c for every pair according to cfg.coupling_model. The exact
// model iterates all pairs jointly until each exact exchange rate equals its
// target; the update has unit slope so the iteration contracts quickly.
inline void calibrate_couplings(DeviceConfig& cfg) {
  if (cfg.coupling_model == CouplingModel::explicit_values) return;
  for (auto& p : cfg.pairs)
    p.direct = cfg.qubits[p.j].g * cfg.qubits[p.k].g / p.working_detuning - p.target;
  if (cfg.coupling_model == CouplingModel::leading_order) return;
  for (int it = 0; it < 100; ++it) {
    double worst = 0;
    for (auto& p : cfg.pairs) {
      const double err = exact_effective_coupling(cfg, p.j, p.k, calibration_assignment(cfg, p)) - p.target;
      p.direct += err;
      worst = std::max(worst, std::abs(err));
    }
    if (worst < 1e-9 * mhz(1)) return;
  }
  throw ConfigError("direct coupling calibration did not converge");
}

inline DeviceConfig device_from_json(const nlohmann::json& j) {
  DeviceConfig cfg;
  try {
    cfg.resonator_frequency = ghz(detail::num(j, "resonator_frequency_ghz"));
    cfg.resonator_cutoff = j.value("resonator_cutoff", 3);
    cfg.resonator_kappa = mhz(j.value("resonator_kappa_mhz", 0.0));
    cfg.protection = j.value("protection", true);
    cfg.decoherence = j.value("decoherence", true);
    const auto& qs = j.at("qubits");
    if (!qs.is_array() || qs.size() != kNumQubits) throw ConfigError("'qubits' must list exactly four qubits");
    for (int q = 0; q < kNumQubits; ++q) {
      const auto& e = qs[q];
      auto& p = cfg.qubits[q];
      p.idle_frequency = ghz(detail::num(e, "idle_frequency_ghz"));
      p.t1 = us(detail::num(e, "t1_us"));
      p.t2_star = us(detail::num(e, "t2_star_us"));
      p.t_phi_dd = us(detail::num(e, "t_phi_dd_us"));
      p.g = mhz(detail::num(e, "g_mhz"));
      p.f0 = detail::num(e, "f0");
      p.f1 = detail::num(e, "f1");
    }
    const std::string model = j.value("direct_coupling_model", std::string("exact"));
    if (model == "exact") cfg.coupling_model = CouplingModel::exact;
    else if (model == "leading_order") cfg.coupling_model = CouplingModel::leading_order;
    else if (model == "explicit") cfg.coupling_model = CouplingModel::explicit_values;
    else throw ConfigError("unknown direct_coupling_model '" + model + "'");
    for (const auto& e : j.value("couplings", nlohmann::json::array())) {
      PairCoupling p;
      std::tie(p.j, p.k) = detail::parse_pair(e.at("pair"));
      p.target = mhz(detail::num(e, "effective_mhz"));
      p.working_detuning = mhz(detail::num(e, "working_detuning_mhz"));
      if (e.contains("calibration_point_ghz")) {
        const auto& v = e.at("calibration_point_ghz");
        if (!v.is_array() || v.size() != kNumQubits) throw ConfigError("calibration_point_ghz needs four frequencies");
        std::array<double, 4> f{};
        for (int q = 0; q < kNumQubits; ++q) f[q] = ghz(v[q].get<double>());
        p.calibration_point = f;
      }
      if (e.contains("direct_mhz")) p.direct = mhz(detail::num(e, "direct_mhz"));
      else if (cfg.coupling_model == CouplingModel::explicit_values)
        throw ConfigError("explicit coupling model requires 'direct_mhz' on every pair");
      cfg.pairs.push_back(p);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  cfg.validate();
  calibrate_couplings(cfg);
  return cfg;
}

inline nlohmann::json device_to_json(const DeviceConfig& cfg) {
  nlohmann::json j;
  j["resonator_frequency_ghz"] = cfg.resonator_frequency / ghz(1);
  j["resonator_cutoff"] = cfg.resonator_cutoff;
  j["resonator_kappa_mhz"] = to_mhz(cfg.resonator_kappa);
  j["protection"] = cfg.protection;
  j["decoherence"] = cfg.decoherence;
  j["direct_coupling_model"] = cfg.coupling_model == CouplingModel::exact           ? "exact"
                               : cfg.coupling_model == CouplingModel::leading_order ? "leading_order"
                                                                                    : "explicit";
  auto t = [](double s) -> nlohmann::json {
    if (std::isinf(s)) return "inf";
    return s * 1e6;
  };
  for (int q = 0; q < kNumQubits; ++q) {
    const auto& p = cfg.qubits[q];
    j["qubits"].push_back({{"name", "Q" + std::to_string(q + 1)},
                           {"idle_frequency_ghz", p.idle_frequency / ghz(1)},
                           {"t1_us", t(p.t1)},
                           {"t2_star_us", t(p.t2_star)},
                           {"t_phi_dd_us", t(p.t_phi_dd)},
                           {"g_mhz", to_mhz(p.g)},
                           {"f0", p.f0},
                           {"f1", p.f1}});
  }
  for (const auto& p : cfg.pairs) {
    nlohmann::json e = {{"pair", {p.j + 1, p.k + 1}},
                        {"effective_mhz", to_mhz(p.target)},
                        {"working_detuning_mhz", to_mhz(p.working_detuning)},
                        {"direct_mhz", to_mhz(p.direct)}};
    if (p.calibration_point)
      for (double f : *p.calibration_point) e["calibration_point_ghz"].push_back(f / ghz(1));
    j["couplings"].push_back(e);
  }
  return j;
}

inline DeviceConfig load_device(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return device_from_json(j);
}

// Device characteristics as characterized at the idle point. The dressed-gate
// pair target is pi / (2 * 219 ns).
inline nlohmann::json default_device_json() {
  return nlohmann::json::parse(R"({
  "resonator_frequency_ghz": 5.588,
  "resonator_cutoff": 3,
  "resonator_kappa_mhz": 0.0,
  "protection": true,
  "decoherence": true,
  "direct_coupling_model": "exact",
  "qubits": [
    {"name": "Q1", "idle_frequency_ghz": 5.229, "t1_us": 27.1, "t2_star_us": 2.0, "t_phi_dd_us": 59.2, "g_mhz": 20.8, "f0": 0.975, "f1": 0.927},
    {"name": "Q2", "idle_frequency_ghz": 5.311, "t1_us": 27.1, "t2_star_us": 2.6, "t_phi_dd_us": 33.2, "g_mhz": 19.9, "f0": 0.975, "f1": 0.925},
    {"name": "Q3", "idle_frequency_ghz": 5.366, "t1_us": 24.0, "t2_star_us": 2.0, "t_phi_dd_us": 55.5, "g_mhz": 20.0, "f0": 0.961, "f1": 0.919},
    {"name": "Q4", "idle_frequency_ghz": 5.421, "t1_us": 18.1, "t2_star_us": 2.0, "t_phi_dd_us": 45.2, "g_mhz": 19.4, "f0": 0.979, "f1": 0.822}
  ],
  "couplings": [
    {"pair": [1, 2], "effective_mhz": 0.82, "working_detuning_mhz": 308.0,
     "calibration_point_ghz": [5.280, 5.280, 5.350, 5.350]},
    {"pair": [3, 4], "effective_mhz": 1.1, "working_detuning_mhz": 238.0,
     "calibration_point_ghz": [5.280, 5.280, 5.350, 5.350]},
    {"pair": [2, 3], "effective_mhz": 1.141552511415525, "working_detuning_mhz": 308.0}
  ]
})");
}

inline DeviceConfig default_device() { return device_from_json(default_device_json()); }

}  // namespace eswap
