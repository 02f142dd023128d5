// Timed pulse sequences for the three swapping experiments.
#pragma once

#include "device.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace eswap {

enum class SegmentRole { rotation, bell_prep, dressed_gate, idle };

inline const char* role_name(SegmentRole r) {
  switch (r) {
    case SegmentRole::rotation: return "rotation";
    case SegmentRole::bell_prep: return "bell_prep";
    case SegmentRole::dressed_gate: return "dressed_gate";
    case SegmentRole::idle: return "idle";
  }
  return "?";
}

struct ScheduleSegment {
  double start = 0;
  double duration = 0;
  FrequencyAssignment freqs;
  std::vector<DrivePulse> drives;
  std::string label;
  SegmentRole role = SegmentRole::idle;
  std::vector<int> qubits{0, 1, 2, 3};  // qubits whose frequency this segment sets

  double end() const { return start + duration; }
};

struct ReadoutEvent {
  double time = 0;
  std::vector<int> targets;
  double duration = ns(800);
  bool tomography = false;  // tomographic pre-rotations precede the projection
};

// Virtual-Z bookkeeping: at `time` the follower's frame phase is set equal to
// the lead's. Qubits in `co_rotate` receive the same phase shift as the
// follower so that their joint state with it is unchanged.
struct FrameAlignment {
  double time = 0;
  int lead = 0;
  int follower = 0;
  std::vector<int> co_rotate;
};

struct PulseSchedule {
  std::string name;
  std::vector<ScheduleSegment> segments;
  std::vector<ReadoutEvent> readouts;
  std::vector<FrameAlignment> alignments;
  std::array<int, kNumQubits> initial_excitation{};  // set when rotations are instantaneous
  double total_duration = 0;
};

struct SequenceParams {
  double rotation_length = ns(40);
  double rotation_fwhm = ns(20);
  bool ideal_rotations = false;
  double tomography_slot = ns(40);
  double readout_length = ns(800);
  double readout_gap = ns(40);
  double gate_rabi_q2 = mhz(20);
  double gate_rabi_q3 = mhz(8);
  double gate_phase = 0;
};

struct Diagnostic {
  enum class Level { warning, error } level;
  std::string message;
};

namespace detail {
constexpr double kTimeTol = 1e-15;
}

// Pair timings derived from the configured exchange rates.
struct SequenceTimings {
  double prep_12, prep_34, gate;
  double det_12, det_34, det_23;

  static SequenceTimings from(const DeviceConfig& cfg) {
    const auto& p12 = cfg.pair(0, 1);
    const auto& p34 = cfg.pair(2, 3);
    const auto& p23 = cfg.pair(1, 2);
    return {kPi / (4 * p12.target), kPi / (4 * p34.target), kPi / (2 * p23.target),
            p12.working_detuning,   p34.working_detuning,   p23.working_detuning};
  }
};

class ScheduleBuilder {
 public:
  ScheduleBuilder(const DeviceConfig& cfg, std::string name) : cfg_(cfg) { s_.name = std::move(name); }

  double now() const { return t_; }

  ScheduleBuilder& segment(double duration, FrequencyAssignment fa, std::vector<DrivePulse> drives,
                           std::string label, SegmentRole role) {
    ScheduleSegment seg;
    seg.start = t_;
    seg.duration = duration;
    seg.freqs = fa;
    seg.drives = std::move(drives);
    seg.label = std::move(label);
    seg.role = role;
    s_.segments.push_back(std::move(seg));
    t_ += duration;
    return *this;
  }
  ScheduleBuilder& idle(double duration, std::string label) {
    return segment(duration, FrequencyAssignment::idle(cfg_), {}, std::move(label), SegmentRole::idle);
  }
  ScheduleBuilder& readout(std::vector<int> targets, double length, bool tomography) {
    s_.readouts.push_back({t_, std::move(targets), length, tomography});
    return *this;
  }
  ScheduleBuilder& align(int lead, int follower, std::vector<int> co_rotate = {}) {
    s_.alignments.push_back({t_, lead, follower, std::move(co_rotate)});
    return *this;
  }
  PulseSchedule build() {
    double end = t_;
    for (const auto& r : s_.readouts) end = std::max(end, r.time + r.duration);
    s_.total_duration = end;
    return s_;
  }
  PulseSchedule& raw() { return s_; }

 private:
  DeviceConfig cfg_;
  PulseSchedule s_;
  double t_ = 0;
};

// pi pulses on Q1 and Q3, then the parallel sqrt(iSWAP) preparation.
inline void append_bell_prep(ScheduleBuilder& b, const DeviceConfig& cfg, const SequenceParams& sp) {
  const auto tm = SequenceTimings::from(cfg);
  if (sp.ideal_rotations) {
    b.raw().initial_excitation = {1, 0, 1, 0};
  } else {
    const double t0 = b.now();
    b.segment(sp.rotation_length, FrequencyAssignment::idle(cfg),
              {rotation_pulse(0, kPi, 0, t0, sp.rotation_length, sp.rotation_fwhm),
               rotation_pulse(2, kPi, 0, t0, sp.rotation_length, sp.rotation_fwhm)},
              "pi pulses Q1 Q3", SegmentRole::rotation);
  }
  b.align(0, 1).align(2, 3);
  const double both = std::min(tm.prep_12, tm.prep_34);
  const auto fa_both = FrequencyAssignment::detuned(cfg, {{0, tm.det_12}, {1, tm.det_12}, {2, tm.det_34}, {3, tm.det_34}});
  b.segment(both, fa_both, {}, "swap Q1-Q2 and Q3-Q4", SegmentRole::bell_prep);
  if (tm.prep_12 > tm.prep_34)
    b.segment(tm.prep_12 - both, FrequencyAssignment::detuned(cfg, {{0, tm.det_12}, {1, tm.det_12}}), {},
              "swap Q1-Q2", SegmentRole::bell_prep);
  else if (tm.prep_34 > tm.prep_12)
    b.segment(tm.prep_34 - both, FrequencyAssignment::detuned(cfg, {{2, tm.det_34}, {3, tm.det_34}}), {},
              "swap Q3-Q4", SegmentRole::bell_prep);
}

// Dressed-state phase gate on Q2-Q3 with mid-pulse phase inversion.
inline void append_dressed_gate(ScheduleBuilder& b, const DeviceConfig& cfg, const SequenceParams& sp,
                                std::vector<int> co_rotate = {3}) {
  const auto tm = SequenceTimings::from(cfg);
  b.align(1, 2, std::move(co_rotate));
  const double t0 = b.now();
  auto drive = [&](int q, double rabi) {
    DrivePulse d;
    d.qubit = q;
    d.rabi = rabi;
    d.phase = sp.gate_phase;
    d.start = t0;
    d.duration = tm.gate;
    d.phase_inversion_at = tm.gate / 2;
    return d;
  };
  b.segment(tm.gate, FrequencyAssignment::detuned(cfg, {{1, tm.det_23}, {2, tm.det_23}}),
            {drive(1, sp.gate_rabi_q2), drive(2, sp.gate_rabi_q3)}, "dressed gate Q2-Q3", SegmentRole::dressed_gate);
}

inline PulseSchedule sequence_normal(const DeviceConfig& cfg, const SequenceParams& sp = {}) {
  ScheduleBuilder b(cfg, "normal");
  append_bell_prep(b, cfg, sp);
  append_dressed_gate(b, cfg, sp);
  b.readout({1, 2}, sp.readout_length, false);
  b.idle(sp.readout_length + sp.readout_gap, "Q2-Q3 readout, Q1-Q4 wait");
  b.readout({0, 3}, sp.readout_length, true);
  return b.build();
}

inline PulseSchedule sequence_delayed_bell(const DeviceConfig& cfg, const SequenceParams& sp = {}) {
  ScheduleBuilder b(cfg, "delayed-bell");
  append_bell_prep(b, cfg, sp);
  b.idle(sp.tomography_slot, "tomography slot");
  b.readout({0, 3}, sp.readout_length, true);
  b.idle(sp.readout_length, "Q1-Q4 readout, Q2-Q3 wait");
  append_dressed_gate(b, cfg, sp);
  b.readout({1, 2}, sp.readout_length, false);
  return b.build();
}

inline PulseSchedule sequence_delayed_computational(const DeviceConfig& cfg, const SequenceParams& sp = {}) {
  ScheduleBuilder b(cfg, "delayed-computational");
  append_bell_prep(b, cfg, sp);
  b.idle(sp.tomography_slot, "tomography slot");
  b.readout({0, 3}, sp.readout_length, true);
  b.idle(sp.readout_length + sp.readout_gap, "Q1-Q4 readout, Q2-Q3 wait");
  b.readout({1, 2}, sp.readout_length, false);
  return b.build();
}

// Bell preparation alone, ending at the close of the swap segments.
inline PulseSchedule sequence_bell_prep(const DeviceConfig& cfg, const SequenceParams& sp = {}) {
  ScheduleBuilder b(cfg, "bell-prep");
  append_bell_prep(b, cfg, sp);
  return b.build();
}

// The dressed gate alone from t = 0.
inline PulseSchedule sequence_gate(const DeviceConfig& cfg, const SequenceParams& sp = {}) {
  ScheduleBuilder b(cfg, "dressed-gate");
  append_dressed_gate(b, cfg, sp, {});
  return b.build();
}

inline std::vector<Diagnostic> validate(const PulseSchedule& s, const DeviceConfig& cfg) {
  std::vector<Diagnostic> out;
  auto warn = [&](std::string m) { out.push_back({Diagnostic::Level::warning, std::move(m)}); };
  auto fail = [&](std::string m) { out.push_back({Diagnostic::Level::error, std::move(m)}); };
  auto qn = [](int q) { return "Q" + std::to_string(q + 1); };

  for (size_t a = 0; a < s.segments.size(); ++a) {
    const auto& sa = s.segments[a];
    if (!(sa.duration > 0)) fail("segment '" + sa.label + "' has non-positive duration");
    for (size_t b = a + 1; b < s.segments.size(); ++b) {
      const auto& sb = s.segments[b];
      const bool overlap = sa.start < sb.end() - detail::kTimeTol && sb.start < sa.end() - detail::kTimeTol;
      if (!overlap) continue;
      for (int q : sa.qubits)
        if (std::find(sb.qubits.begin(), sb.qubits.end(), q) != sb.qubits.end()) {
          fail("segments '" + sa.label + "' and '" + sb.label + "' overlap on " + qn(q));
          break;
        }
    }
    for (const auto& d : sa.drives) {
      try {
        d.validate();
      } catch (const ScheduleError& e) {
        fail("segment '" + sa.label + "': " + e.what());
      }
      if (d.qubit < 0 || d.qubit >= kNumQubits) fail("drive on invalid qubit");
      if (d.start < sa.start - detail::kTimeTol || d.end() > sa.end() + 1e-12)
        fail("drive on " + qn(d.qubit) + " extends beyond segment '" + sa.label + "'");
    }
    if (!sa.freqs.in_tuning_range()) warn("segment '" + sa.label + "' places a qubit outside 5-6 GHz");

    // Dispersive condition and separation of nominally uncoupled qubits.
    std::array<double, kNumQubits> delta{};
    for (int q = 0; q < kNumQubits; ++q) delta[q] = cfg.resonator_frequency - sa.freqs.f[q];
    for (int q = 0; q < kNumQubits; ++q)
      if (std::abs(delta[q]) < 5 * cfg.qubits[q].g)
        warn("segment '" + sa.label + "': " + qn(q) + " is not dispersive (|detuning| < 5 g)");
    for (int j = 0; j < kNumQubits; ++j)
      for (int k = j + 1; k < kNumQubits; ++k) {
        const double sep = std::abs(delta[j] - delta[k]);
        if (sep < mhz(1)) continue;  // resonant by design
        if (delta[j] == 0 || delta[k] == 0) continue;
        const double x = cfg.qubits[j].g * cfg.qubits[k].g / 2 * (1 / std::abs(delta[j]) + 1 / std::abs(delta[k]));
        if (sep < 5 * x) warn("segment '" + sa.label + "': " + qn(j) + " and " + qn(k) + " are not decoupled");
      }
  }

  // The simulator walks a gapless timeline from t = 0.
  std::vector<const ScheduleSegment*> order;
  for (const auto& sg : s.segments) order.push_back(&sg);
  std::sort(order.begin(), order.end(), [](auto* x, auto* y) { return x->start < y->start; });
  double t = 0;
  for (auto* sg : order) {
    if (sg->start > t + 1e-12) fail("timeline gap before segment '" + sg->label + "'");
    t = std::max(t, sg->end());
  }

  for (const auto& r : s.readouts) {
    if (r.targets.empty()) fail("readout with no targets");
    if (r.time > s.total_duration + 1e-12) fail("readout after the end of the schedule");
  }
  for (size_t a = 0; a < s.readouts.size(); ++a)
    for (size_t b = a + 1; b < s.readouts.size(); ++b)
      for (int q : s.readouts[a].targets)
        if (std::find(s.readouts[b].targets.begin(), s.readouts[b].targets.end(), q) != s.readouts[b].targets.end())
          fail(qn(q) + " is read out twice");
  for (const auto& al : s.alignments)
    if (al.lead == al.follower) fail("frame alignment of a qubit with itself");
  return out;
}

inline bool has_errors(const std::vector<Diagnostic>& d) {
  return std::any_of(d.begin(), d.end(), [](const Diagnostic& x) { return x.level == Diagnostic::Level::error; });
}

inline nlohmann::json schedule_to_json(const PulseSchedule& s) {
  nlohmann::json j;
  j["name"] = s.name;
  j["total_duration_ns"] = to_ns(s.total_duration);
  j["initial_excitation"] = s.initial_excitation;
  for (const auto& sg : s.segments) {
    nlohmann::json e;
    e["label"] = sg.label;
    e["role"] = role_name(sg.role);
    e["start_ns"] = to_ns(sg.start);
    e["duration_ns"] = to_ns(sg.duration);
    for (double f : sg.freqs.f) e["frequencies_ghz"].push_back(f / ghz(1));
    e["drives"] = nlohmann::json::array();
    for (const auto& d : sg.drives) {
      nlohmann::json dj = {{"qubit", d.qubit + 1},
                           {"rabi_mhz", to_mhz(d.rabi)},
                           {"phase", d.phase},
                           {"detuning_mhz", to_mhz(d.detuning)},
                           {"start_ns", to_ns(d.start)},
                           {"duration_ns", to_ns(d.duration)},
                           {"envelope", d.envelope == Envelope::gaussian ? "gaussian" : "rectangular"}};
      if (d.envelope == Envelope::gaussian) dj["fwhm_ns"] = to_ns(d.fwhm);
      if (d.phase_inversion_at) dj["phase_inversion_at_ns"] = to_ns(*d.phase_inversion_at);
      e["drives"].push_back(dj);
    }
    j["segments"].push_back(e);
  }
  j["readouts"] = nlohmann::json::array();
  for (const auto& r : s.readouts) {
    nlohmann::json t;
    for (int q : r.targets) t.push_back(q + 1);
    j["readouts"].push_back({{"time_ns", to_ns(r.time)}, {"targets", t}, {"duration_ns", to_ns(r.duration)},
                             {"tomography", r.tomography}});
  }
  j["frame_alignments"] = nlohmann::json::array();
  for (const auto& a : s.alignments) {
    nlohmann::json c = nlohmann::json::array();
    for (int q : a.co_rotate) c.push_back(q + 1);
    j["frame_alignments"].push_back({{"time_ns", to_ns(a.time)}, {"lead", a.lead + 1}, {"follower", a.follower + 1},
                                     {"co_rotate", c}});
  }
  return j;
}

}  // namespace eswap
