// End-to-end swapping experiments: schedule, dynamics, readout, tomography.
#pragma once

#include "dynamics.hpp"
#include "gates.hpp"
#include "measurement.hpp"
#include "tomography.hpp"

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>

namespace eswap {

enum class ExperimentMode { normal, delayed_bell, delayed_computational };
enum class FidelityMode { full, effective };

inline std::string mode_name(ExperimentMode m) {
  switch (m) {
    case ExperimentMode::normal: return "normal";
    case ExperimentMode::delayed_bell: return "delayed-bell";
    case ExperimentMode::delayed_computational: return "delayed-computational";
  }
  return "?";
}

inline ExperimentMode parse_mode(const std::string& s) {
  if (s == "normal") return ExperimentMode::normal;
  if (s == "delayed-bell") return ExperimentMode::delayed_bell;
  if (s == "delayed-computational") return ExperimentMode::delayed_computational;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

inline std::string fidelity_mode_name(FidelityMode m) { return m == FidelityMode::full ? "full" : "effective"; }

struct Sampling {
  bool shots = false;
  long n = 0;
  std::uint64_t seed = 0;

  void validate() const {
    if (shots && n <= 0) throw std::invalid_argument("shot sampling needs a positive shot count");
  }
};

struct ExperimentOptions {
  ExperimentMode mode = ExperimentMode::normal;
  FidelityMode fidelity = FidelityMode::full;
  Sampling sampling;
  SequenceParams sequence;
  IntegratorSettings integrator;
  bool readout_error = true;
  bool gate_fidelity = false;  // adds a process-tomography run of the gate
};

inline PulseSchedule build_schedule(const DeviceConfig& cfg, ExperimentMode mode, const SequenceParams& sp = {}) {
  switch (mode) {
    case ExperimentMode::normal: return sequence_normal(cfg, sp);
    case ExperimentMode::delayed_bell: return sequence_delayed_bell(cfg, sp);
    case ExperimentMode::delayed_computational: return sequence_delayed_computational(cfg, sp);
  }
  throw std::invalid_argument("unknown mode");
}

// Q1Q4 target for each (Q2,Q3) outcome.
struct Target {
  std::string label;
  Vec state;
};

inline Target anchor_target_state(ExperimentMode mode, int anchor) {
  if (mode == ExperimentMode::delayed_computational) {
    const int idx = 3 - anchor;
    return {"|" + bitstring(idx, 2) + ">", basis_ket(4, idx)};
  }
  const auto k = anchor_target(anchor);
  return {bell_name(k), bell_state(k)};
}

// Unnormalized Q1Q4 operators, one per (Q2,Q3) outcome, in the logical basis.
struct SwapData {
  std::array<Mat, 4> blocks;
  std::optional<double> f12, f34, f_prep;
  EvolutionStats stats;
};

struct BellPrepFidelities {
  double f12, f34, joint;
  std::array<double, 4> populations;  // |0101>, |0110>, |1001>, |1010>
};

// rho4: 16x16 logical state of Q1..Q4.
inline BellPrepFidelities bell_prep_fidelities(const Mat& rho4) {
  const std::vector<int> d{2, 2, 2, 2};
  const Vec psi = bell_state(BellKind::psi_plus);
  BellPrepFidelities f{};
  f.f12 = state_fidelity(partial_trace(rho4, d, {0, 1}), psi);
  f.f34 = state_fidelity(partial_trace(rho4, d, {2, 3}), psi);
  f.joint = state_fidelity(rho4, kron(psi, psi));
  const std::array<int, 4> idx{0b0101, 0b0110, 0b1001, 0b1010};
  for (int i = 0; i < 4; ++i) f.populations[i] = rho4(idx[i], idx[i]).real();
  return f;
}

namespace detail {

inline std::vector<int> anchor_bits(int v) { return {(v >> 1) & 1, v & 1}; }

// <row_bits| m |col_bits> on the listed subsystems, as a matrix over the rest.
inline Mat select_block(const Mat& m, const HilbertSpace& sp, const std::vector<int>& slots,
                        const std::vector<int>& row_bits, const std::vector<int>& col_bits) {
  std::vector<int> rest_dims;
  std::vector<char> measured(sp.size(), 0);
  for (int s : slots) measured[s] = 1;
  for (int s = 0; s < sp.size(); ++s)
    if (!measured[s]) rest_dims.push_back(sp.dims[s]);
  const HilbertSpace rest(rest_dims);
  std::vector<int> rows(rest.total(), -1), cols(rest.total(), -1);
  for (int f = 0; f < sp.total(); ++f) {
    const auto dig = sp.digits(f);
    bool r_ok = true, c_ok = true;
    for (size_t k = 0; k < slots.size(); ++k) {
      r_ok = r_ok && dig[slots[k]] == row_bits[k];
      c_ok = c_ok && dig[slots[k]] == col_bits[k];
    }
    if (!r_ok && !c_ok) continue;
    std::vector<int> rd;
    for (int s = 0; s < sp.size(); ++s)
      if (!measured[s]) rd.push_back(dig[s]);
    const int ri = rest.flat(rd);
    if (r_ok) rows[ri] = f;
    if (c_ok) cols[ri] = f;
  }
  Mat out(rest.total(), rest.total());
  for (int r = 0; r < rest.total(); ++r)
    for (int c = 0; c < rest.total(); ++c) out(r, c) = m(rows[r], cols[c]);
  return out;
}

struct Representation {
  System sys;
  LogicalFrame frame;
  Representation(const DeviceConfig& cfg, const std::vector<int>& q) : sys(cfg, q), frame(sys) {}
};

inline int last_segment_with_role(const PulseSchedule& s, SegmentRole role) {
  int last = -1;
  for (size_t i = 0; i < s.segments.size(); ++i)
    if (s.segments[i].role == role && (last < 0 || s.segments[i].start >= s.segments[last].start))
      last = static_cast<int>(i);
  return last;
}

inline std::vector<int> initial_bits(const PulseSchedule& s) {
  return {s.initial_excitation[0], s.initial_excitation[1], s.initial_excitation[2], s.initial_excitation[3]};
}

}  // namespace detail

inline Mat prepared_state(const System& sys, const LogicalFrame& frame, const PulseSchedule& s, const Phases& theta) {
  std::vector<int> dig{0};
  for (int b : detail::initial_bits(s)) dig.push_back(b);
  const Vec psi = frame.ket_from_logical(sys, basis_ket(sys.dim(), sys.space().flat(dig)), theta);
  return psi * psi.adjoint();
}

// Lindblad evolution over the real timeline. Anchor readouts branch the state
// into its four projections; the tomographic readout splits it into the
// operator blocks <a|rho|b> of the read-out pair, which keep evolving with
// the remaining qubits. Blocks with a > b follow from the adjoint.
inline SwapData simulate_full(const DeviceConfig& cfg, const PulseSchedule& s, const IntegratorSettings& st = {}) {
  struct Branch {
    std::vector<int> qubits;
    Mat rho;
    int anchor = -1;
    int a = -1, b = -1;
  };
  std::map<std::vector<int>, std::unique_ptr<detail::Representation>> cache;
  auto rep = [&](const std::vector<int>& q) -> detail::Representation& {
    auto& slot = cache[q];
    if (!slot) slot = std::make_unique<detail::Representation>(cfg, q);
    return *slot;
  };

  SwapData out;
  FrameTracker fr(cfg, s);
  std::vector<Branch> branches;
  {
    auto& r0 = rep({0, 1, 2, 3});
    branches.push_back({{0, 1, 2, 3}, prepared_state(r0.sys, r0.frame, s, fr.theta())});
  }
  const int last_prep = detail::last_segment_with_role(s, SegmentRole::bell_prep);

  for (const auto& ev : timeline(s)) {
    switch (ev.kind) {
      case TimelineEvent::Kind::align: fr.align(ev.index); break;
      case TimelineEvent::Kind::segment: {
        const auto& seg = s.segments[ev.index];
        const auto eps = fr.frequencies(seg);
        for (auto& br : branches) {
          auto& r = rep(br.qubits);
          out.stats.merge(evolve_segment(r.sys, br.rho, seg, seg.start, seg.end(), fr.theta(), eps, st, br.a == br.b));
        }
        fr.advance(seg, seg.duration);
        if (static_cast<int>(ev.index) == last_prep && branches.size() == 1 && branches[0].qubits.size() == 4) {
          auto& r = rep(branches[0].qubits);
          const Mat l = r.frame.to_logical(r.sys, branches[0].rho, fr.unshifted_theta());
          const auto f = bell_prep_fidelities(partial_trace(l, r.sys.space().dims, {1, 2, 3, 4}));
          out.f12 = f.f12;
          out.f34 = f.f34;
          out.f_prep = f.joint;
        }
        break;
      }
      case TimelineEvent::Kind::readout: {
        const auto& ro = s.readouts[ev.index];
        std::vector<int> targets = ro.targets;
        std::sort(targets.begin(), targets.end());
        std::vector<Branch> next;
        for (const auto& br : branches) {
          auto& r = rep(br.qubits);
          std::vector<int> rest, slots;
          for (int q : br.qubits)
            if (std::find(targets.begin(), targets.end(), q) == targets.end()) rest.push_back(q);
          for (int q : targets) slots.push_back(r.sys.slot(q));
          auto& rr = rep(rest);
          const Mat l = r.frame.to_logical(r.sys, br.rho, fr.theta());
          auto emit = [&](const std::vector<int>& rb, const std::vector<int>& cb, int anchor, int a, int b) {
            const Mat blk = detail::select_block(l, r.sys.space(), slots, rb, cb);
            next.push_back({rest, rr.frame.from_logical(rr.sys, blk, fr.theta()), anchor, a, b});
          };
          if (ro.tomography) {
            if (br.a >= 0) throw ScheduleError("more than one tomographic readout");
            for (int a = 0; a < 4; ++a)
              for (int b = a; b < 4; ++b) emit(detail::anchor_bits(a), detail::anchor_bits(b), br.anchor, a, b);
          } else {
            if (br.anchor >= 0) throw ScheduleError("more than one anchor readout");
            for (int k = 0; k < 4; ++k) emit(detail::anchor_bits(k), detail::anchor_bits(k), k, br.a, br.b);
          }
        }
        branches = std::move(next);
        fr.readout(ro);
        break;
      }
    }
  }
  for (auto& m : out.blocks) m = Mat::Zero(4, 4);
  for (const auto& br : branches) {
    if (br.qubits.size() != 0 || br.anchor < 0 || br.a < 0)
      throw ScheduleError("schedule must read out Q2,Q3 (anchor) and Q1,Q4 (tomography)");
    const cd v = br.rho.trace();
    out.blocks[br.anchor](br.a, br.b) += v;
    if (br.a != br.b) out.blocks[br.anchor](br.b, br.a) += std::conj(v);
  }
  return out;
}

// ---- effective model -------------------------------------------------------------

// Closed-form unitary of one segment on the four-qubit register.
inline Mat effective_segment_unitary(const DeviceConfig& cfg, const ScheduleSegment& seg) {
  Mat u = Mat::Identity(16, 16);
  const auto idle = FrequencyAssignment::idle(cfg);
  switch (seg.role) {
    case SegmentRole::rotation:
      for (const auto& d : seg.drives) u = embed_qubits(rotation(2.0 * d.rabi * envelope_area(d), d.phase), {d.qubit}, 4) * u;
      break;
    case SegmentRole::bell_prep:
      for (const auto& p : cfg.pairs)
        if (seg.freqs.f[p.j] == seg.freqs.f[p.k] && seg.freqs.f[p.j] != idle.f[p.j])
          u = embed_qubits(xy_pair_propagator(p.target, seg.duration), {std::min(p.j, p.k), std::max(p.j, p.k)}, 4) * u;
      break;
    case SegmentRole::dressed_gate: {
      std::vector<int> q;
      for (const auto& d : seg.drives) q.push_back(d.qubit);
      std::sort(q.begin(), q.end());
      q.erase(std::unique(q.begin(), q.end()), q.end());
      if (q.size() != 2) throw ScheduleError("dressed gate needs drives on exactly two qubits");
      u = embed_qubits(dressed_gate_ideal_unitary(), q, 4);
      break;
    }
    case SegmentRole::idle: break;
  }
  return u;
}

// Ideal gates with per-qubit relaxation and dephasing, Strang-split around
// each segment. Measured qubits are left untouched.
inline SwapData simulate_effective(const DeviceConfig& cfg, const PulseSchedule& s) {
  SwapData out;
  const Vec x = qubit_ket(detail::initial_bits(s));
  Mat rho = x * x.adjoint();
  std::array<bool, kNumQubits> measured{};
  auto decay = [&](double t) {
    if (!cfg.decoherence || t <= 0) return;
    for (int q = 0; q < kNumQubits; ++q)
      if (!measured[q]) rho = decay_channel(rho, q, 4, t, cfg.qubits[q].t1, cfg.pure_dephasing_time(q));
  };
  const int last_prep = detail::last_segment_with_role(s, SegmentRole::bell_prep);
  for (const auto& ev : timeline(s)) {
    if (ev.kind == TimelineEvent::Kind::readout) {
      for (int q : s.readouts[ev.index].targets) measured[q] = true;
    } else if (ev.kind == TimelineEvent::Kind::segment) {
      const auto& seg = s.segments[ev.index];
      const Mat u = effective_segment_unitary(cfg, seg);
      decay(seg.duration / 2);
      rho = u * rho * u.adjoint();
      decay(seg.duration / 2);
      if (static_cast<int>(ev.index) == last_prep) {
        const auto f = bell_prep_fidelities(rho);
        out.f12 = f.f12;
        out.f34 = f.f34;
        out.f_prep = f.joint;
      }
    }
  }
  for (int k = 0; k < 4; ++k) {
    out.blocks[k] = Mat::Zero(4, 4);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const int ia = 8 * (a >> 1) + 4 * (k >> 1) + 2 * (k & 1) + (a & 1);
        const int ib = 8 * (b >> 1) + 4 * (k >> 1) + 2 * (k & 1) + (b & 1);
        out.blocks[k](a, b) = rho(ia, ib);
      }
  }
  return out;
}

// ---- readout, post-selection and tomography ---------------------------------------

struct AnchorRow {
  int anchor = 0;
  double probability = 0;
  std::string target;
  Vec target_state;
  Mat rho;      // reconstructed, physical
  Mat rho_raw;  // linear inversion
  double fidelity = 0;
  double concurrence = 0;
};

struct ExperimentReport {
  ExperimentMode mode = ExperimentMode::normal;
  FidelityMode fidelity_mode = FidelityMode::full;
  Sampling sampling;
  std::array<AnchorRow, 4> rows;
  Mat unconditional;
  std::optional<double> f12, f34, f_prep, gate_fidelity;
  double trace_drift = 0;
  double min_eigenvalue = 0;
  double clipped_mass = 0;
  std::vector<std::vector<long>> counts;  // per setting, outcomes Q1Q2Q3Q4 (shot mode)
  std::vector<std::string> warnings;
};

// Joint four-qubit outcome probabilities of one tomography setting.
inline RVec joint_setting_probabilities(const std::array<Mat, 4>& blocks, const TomographySetting& set) {
  RVec joint(16);
  for (int k = 0; k < 4; ++k) {
    const RVec p = setting_probabilities(blocks[k], set);
    for (int o = 0; o < 4; ++o) joint(8 * (o >> 1) + 4 * (k >> 1) + 2 * (k & 1) + (o & 1)) = p(o);
  }
  const double s = joint.sum();
  if (!(s > 0)) throw IntegrationError("vanishing joint outcome probability");
  return joint / s;
}

inline void analyze(const std::array<Mat, 4>& blocks, const DeviceConfig& cfg, const ExperimentOptions& opt,
                    ExperimentReport& rep) {
  opt.sampling.validate();
  const std::vector<int> all{0, 1, 2, 3};
  const auto cm = opt.readout_error ? ConfusionModel::from(cfg, all) : ConfusionModel::perfect(all);
  std::array<std::vector<OutcomeDistribution>, 4> dists;
  std::array<double, 4> prob{};
  rep.counts.clear();
  rep.clipped_mass = 0;
  for (const auto& set : all_settings()) {
    OutcomeDistribution reported = apply_confusion({all, joint_setting_probabilities(blocks, set)}, cm);
    if (opt.sampling.shots) {
      const auto c = sample_shots(reported, opt.sampling.n, opt.sampling.seed + static_cast<std::uint64_t>(set.index()));
      rep.counts.push_back(c);
      reported = from_counts(all, c);
    }
    const auto corrected = readout_correct(reported, cm);
    rep.clipped_mass = std::max(rep.clipped_mass, corrected.clipped_mass);
    for (int k = 0; k < 4; ++k) {
      const auto ps = postselect(corrected.dist, k);
      dists[k].push_back(ps.conditional);
      prob[k] += ps.probability / kNumSettings;
    }
  }
  rep.unconditional = Mat::Zero(4, 4);
  for (int k = 0; k < 4; ++k) {
    auto& row = rep.rows[k];
    row.anchor = k;
    row.probability = prob[k];
    const auto t = anchor_target_state(opt.mode, k);
    row.target = t.label;
    row.target_state = t.state;
    const auto r = reconstruct_state_detailed(dists[k]);
    row.rho_raw = r.raw;
    row.rho = r.physical;
    row.fidelity = state_fidelity(row.rho, row.target_state);
    row.concurrence = concurrence(row.rho);
    rep.unconditional += row.probability * row.rho;
  }
}

// ---- characterization ---------------------------------------------------------------

inline BellPrepFidelities characterize_bell_prep(const DeviceConfig& cfg, const SequenceParams& sp = {},
                                                 const IntegratorSettings& st = {}) {
  const auto s = sequence_bell_prep(cfg, sp);
  const System sys = System::full(cfg);
  const LogicalFrame frame(sys);
  const Mat rho0 = prepared_state(sys, frame, s, FrameTracker(cfg, s).theta());
  const auto res = evolve_lindblad({sys.space(), rho0}, s, cfg, {0.0, s.total_duration}, st);
  const Mat l = frame.to_logical(sys, res.final_state.m, res.frame_phases);
  return bell_prep_fidelities(partial_trace(l, sys.space().dims, {1, 2, 3, 4}));
}

// The gate as a channel on the logical Q2Q3 state, with Q1, Q4 and the
// resonator starting in their ground states.
inline Channel full_gate_channel(const DeviceConfig& cfg, const SequenceParams& sp = {},
                                 const IntegratorSettings& st = {}) {
  const auto s = sequence_gate(cfg, sp);
  auto sys = std::make_shared<System>(System::full(cfg));
  auto frame = std::make_shared<LogicalFrame>(*sys);
  const Phases theta0 = FrameTracker(cfg, s).theta();
  return [=](const Mat& in) {
    if (in.rows() != 4) throw std::invalid_argument("gate channel acts on two qubits");
    Mat g2 = Mat::Zero(2, 2), gr = Mat::Zero(cfg.resonator_cutoff, cfg.resonator_cutoff);
    g2(0, 0) = 1;
    gr(0, 0) = 1;
    const Mat rho_l = kron_all({gr, g2, in, g2});
    const Mat rho0 = frame->from_logical(*sys, rho_l, theta0);
    const auto res = evolve_lindblad({sys->space(), rho0}, s, cfg, {0.0, s.total_duration}, st);
    const Mat l = frame->to_logical(*sys, res.final_state.m, res.frame_phases);
    return partial_trace(l, sys->space().dims, {2, 3});
  };
}

inline ChiMatrix characterize_gate(const DeviceConfig& cfg, const SequenceParams& sp = {},
                                   const IntegratorSettings& st = {}) {
  return process_tomography(full_gate_channel(cfg, sp, st));
}

struct CharacterizationReport {
  BellPrepFidelities prep;
  ChiMatrix chi;
  double gate_fidelity = 0;
};

inline CharacterizationReport run_characterization(const DeviceConfig& cfg, const SequenceParams& sp = {},
                                                   const IntegratorSettings& st = {}) {
  CharacterizationReport r;
  r.prep = characterize_bell_prep(cfg, sp, st);
  r.chi = characterize_gate(cfg, sp, st);
  r.gate_fidelity = process_fidelity(r.chi, ChiMatrix::of_unitary(dressed_gate_ideal_unitary()));
  return r;
}

inline nlohmann::json characterization_to_json(const CharacterizationReport& r) {
  return {{"bell_prep",
           {{"f12", r.prep.f12},
            {"f34", r.prep.f34},
            {"joint", r.prep.joint},
            {"populations", {{"0101", r.prep.populations[0]},
                             {"0110", r.prep.populations[1]},
                             {"1001", r.prep.populations[2]},
                             {"1010", r.prep.populations[3]}}}}},
          {"gate", {{"process_fidelity", r.gate_fidelity}, {"chi", chi_to_json(r.chi)}}}};
}

// ---- driver --------------------------------------------------------------------------

inline ExperimentReport run_experiment(const DeviceConfig& cfg, const ExperimentOptions& opt) {
  cfg.validate();
  opt.sampling.validate();
  const auto s = build_schedule(cfg, opt.mode, opt.sequence);
  ExperimentReport rep;
  const auto diag = validate(s, cfg);
  for (const auto& d : diag) {
    if (d.level == Diagnostic::Level::error) throw ScheduleError(d.message);
    rep.warnings.push_back(d.message);
  }
  rep.mode = opt.mode;
  rep.fidelity_mode = opt.fidelity;
  rep.sampling = opt.sampling;
  const SwapData data =
      opt.fidelity == FidelityMode::full ? simulate_full(cfg, s, opt.integrator) : simulate_effective(cfg, s);
  rep.f12 = data.f12;
  rep.f34 = data.f34;
  rep.f_prep = data.f_prep;
  rep.trace_drift = data.stats.trace_drift;
  rep.min_eigenvalue = std::isfinite(data.stats.min_eigenvalue) ? data.stats.min_eigenvalue : 0.0;
  analyze(data.blocks, cfg, opt, rep);
  if (opt.gate_fidelity) {
    if (opt.fidelity == FidelityMode::full)
      rep.gate_fidelity = process_fidelity(characterize_gate(cfg, opt.sequence, opt.integrator),
                                           ChiMatrix::of_unitary(dressed_gate_ideal_unitary()));
    else
      rep.gate_fidelity = 1.0;
  }
  return rep;
}

// ---- output ----------------------------------------------------------------------------

enum class ReportFormat { table, json, csv };

inline ReportFormat parse_format(const std::string& s) {
  if (s == "table") return ReportFormat::table;
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  throw std::invalid_argument("unknown format '" + s + "'");
}

inline const std::vector<std::string>& pair_basis() {
  static const std::vector<std::string> b{"00", "01", "10", "11"};
  return b;
}

inline nlohmann::json report_to_json(const ExperimentReport& r) {
  nlohmann::json j;
  j["mode"] = mode_name(r.mode);
  j["fidelity_mode"] = fidelity_mode_name(r.fidelity_mode);
  j["sampling"] = r.sampling.shots ? nlohmann::json{{"kind", "shots"}, {"shots", r.sampling.n}, {"seed", r.sampling.seed}}
                                   : nlohmann::json{{"kind", "exact"}};
  for (const auto& row : r.rows) {
    j["anchors"].push_back({{"anchor", bitstring(row.anchor, 2)},
                            {"probability", row.probability},
                            {"target", row.target},
                            {"fidelity", row.fidelity},
                            {"concurrence", row.concurrence},
                            {"rho", density_to_json({HilbertSpace({2, 2}), row.rho}, pair_basis())}});
  }
  j["unconditional_rho"] = density_to_json({HilbertSpace({2, 2}), r.unconditional}, pair_basis());
  auto opt = [](const std::optional<double>& v) -> nlohmann::json { return v ? nlohmann::json(*v) : nlohmann::json(); };
  j["bell_prep"] = {{"f12", opt(r.f12)}, {"f34", opt(r.f34)}, {"joint", opt(r.f_prep)}};
  j["gate_process_fidelity"] = opt(r.gate_fidelity);
  j["diagnostics"] = {{"trace_drift", r.trace_drift},
                      {"min_eigenvalue", r.min_eigenvalue},
                      {"clipped_mass", r.clipped_mass},
                      {"warnings", r.warnings}};
  return j;
}

inline void write_report(const ExperimentReport& r, ReportFormat fmt, std::ostream& out) {
  switch (fmt) {
    case ReportFormat::json: out << report_to_json(r).dump(2) << '\n'; break;
    case ReportFormat::csv:
      out << "anchor_q2,anchor_q3,probability,fidelity,concurrence\n";
      out << std::setprecision(10);
      for (const auto& row : r.rows)
        out << (row.anchor >> 1) << ',' << (row.anchor & 1) << ',' << row.probability << ',' << row.fidelity << ','
            << row.concurrence << '\n';
      break;
    case ReportFormat::table: {
      out << "# mode " << mode_name(r.mode) << ", " << fidelity_mode_name(r.fidelity_mode) << " model\n";
      out << std::left << std::setw(8) << "anchor" << std::setw(13) << "probability" << std::setw(8) << "target"
          << std::setw(10) << "fidelity" << "concurrence\n";
      out << std::fixed << std::setprecision(3);
      for (const auto& row : r.rows)
        out << std::setw(8) << bitstring(row.anchor, 2) << std::setw(13) << row.probability << std::setw(8) << row.target
            << std::setw(10) << row.fidelity << row.concurrence << '\n';
      if (r.f12) out << "# bell prep F12 " << *r.f12 << ", F34 " << *r.f34 << ", joint " << *r.f_prep << '\n';
      if (r.gate_fidelity) out << "# gate process fidelity " << *r.gate_fidelity << '\n';
      out.unsetf(std::ios::floatfield);
      break;
    }
  }
}

// destination "" or "-" writes to standard output.
inline void emit_report(const ExperimentReport& r, ReportFormat fmt, const std::string& destination) {
  if (destination.empty() || destination == "-") {
    write_report(r, fmt, std::cout);
    return;
  }
  std::ofstream f(destination);
  if (!f) throw std::runtime_error("cannot write report to '" + destination + "'");
  write_report(r, fmt, f);
  if (!f) throw std::runtime_error("write failed for '" + destination + "'");
}

// One density-matrix file per anchor, named <mode>_<anchor>.json.
inline std::vector<std::string> write_anchor_dumps(const ExperimentReport& r, const std::string& dir) {
  std::vector<std::string> paths;
  std::filesystem::create_directories(dir);
  for (const auto& row : r.rows) {
    const auto path = (std::filesystem::path(dir) / (mode_name(r.mode) + "_" + bitstring(row.anchor, 2) + ".json")).string();
    auto j = density_to_json({HilbertSpace({2, 2}), row.rho}, pair_basis());
    j["target"] = row.target;
    j["probability"] = row.probability;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << j.dump(2) << '\n';
    paths.push_back(path);
  }
  return paths;
}

}  // namespace eswap
