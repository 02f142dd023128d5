// Lindblad and Schroedinger integration over a pulse schedule.
//
// Each segment is integrated in the interaction picture of the diagonal of
// its static Hamiltonian, so only couplings and drives remain in the
// generator. The diagonal is a sum of single-qubit terms, which leaves the
// dissipator unchanged by the transformation.
#pragma once

#include "schedule.hpp"

#include <Eigen/Sparse>
#include <nlohmann/json.hpp>

#include <functional>
#include <limits>
#include <map>

namespace eswap {

enum class Method { rk4, rk45 };

struct IntegratorSettings {
  Method method = Method::rk4;
  double max_step = ns(0.1);
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  int re_hermitize_every = 1;
  double max_trace_drift = 1e-6;
  double min_step = 1e-18;

  void validate() const {
    if (!(max_step > 0) || !(rel_tol > 0) || !(abs_tol > 0))
      throw std::invalid_argument("integrator step and tolerances must be positive");
  }
};

struct EvolutionStats {
  double trace_drift = 0;
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  long steps = 0;

  void merge(const EvolutionStats& o) {
    trace_drift = std::max(trace_drift, o.trace_drift);
    min_eigenvalue = std::min(min_eigenvalue, o.min_eigenvalue);
    steps += o.steps;
  }
};

using Phases = std::array<double, kNumQubits>;

// ---- frames ---------------------------------------------------------------

// Diagonal frame transform exp(i sum_q theta_q n_q) on a system.
inline Vec frame_diagonal(const System& sys, const Phases& theta) {
  Vec d = Vec::Ones(sys.dim());
  for (int q : sys.qubits()) {
    const auto occ = sys.occupation(q);
    const cd ph = std::exp(kI * theta[q]);
    for (int i = 0; i < sys.dim(); ++i)
      if (occ[i]) d(i) *= ph;
  }
  return d;
}

// Dressed basis and rotating frames: the representation in which qubit
// states are read out and compared with targets.
struct LogicalFrame {
  Mat w;  // dressing_basis at idle

  LogicalFrame(const System& sys) : w(dressing_basis(sys, FrequencyAssignment::idle(sys.config()))) {}

  Mat to_logical(const System& sys, const Mat& rho, const Phases& theta) const {
    const Vec d = frame_diagonal(sys, theta);
    return d.asDiagonal() * (w.adjoint() * rho * w) * d.conjugate().asDiagonal();
  }
  Mat from_logical(const System& sys, const Mat& rho_l, const Phases& theta) const {
    const Vec d = frame_diagonal(sys, theta);
    return w * (d.conjugate().asDiagonal() * rho_l * d.asDiagonal()) * w.adjoint();
  }
  Vec ket_from_logical(const System& sys, const Vec& v, const Phases& theta) const {
    return w * (frame_diagonal(sys, theta).conjugate().asDiagonal() * v);
  }
  Vec ket_to_logical(const System& sys, const Vec& v, const Phases& theta) const {
    return frame_diagonal(sys, theta).asDiagonal() * (w.adjoint() * v);
  }
};

// Timeline events in processing order: at equal times readouts come first,
// then alignments, then the segment that starts there.
struct TimelineEvent {
  enum class Kind { readout = 0, align = 1, segment = 2 } kind;
  double time;
  size_t index;
};

inline std::vector<TimelineEvent> timeline(const PulseSchedule& s) {
  std::vector<TimelineEvent> ev;
  for (size_t i = 0; i < s.readouts.size(); ++i) ev.push_back({TimelineEvent::Kind::readout, s.readouts[i].time, i});
  for (size_t i = 0; i < s.alignments.size(); ++i) ev.push_back({TimelineEvent::Kind::align, s.alignments[i].time, i});
  for (size_t i = 0; i < s.segments.size(); ++i) ev.push_back({TimelineEvent::Kind::segment, s.segments[i].start, i});
  std::stable_sort(ev.begin(), ev.end(), [](const TimelineEvent& a, const TimelineEvent& b) {
    if (std::abs(a.time - b.time) > 1e-13) return a.time < b.time;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  });
  return ev;
}

// Frame phase of every qubit along the schedule. Each qubit's phase
// advances at its dressed frequency, computed for the qubits still present.
class FrameTracker {
 public:
  FrameTracker(const DeviceConfig& cfg, const PulseSchedule& s) : cfg_(cfg), s_(s) { plan(); reset(); }

  void reset() {
    theta_ = initial_;
    pending_ = initial_;
    present_ = {0, 1, 2, 3};
  }
  const Phases& theta() const { return theta_; }
  // Phases without shifts that anticipate later co-rotations.
  Phases unshifted_theta() const {
    Phases t = theta_;
    for (int q = 0; q < kNumQubits; ++q) t[q] -= pending_[q];
    return t;
  }
  const std::vector<int>& present() const { return present_; }

  Phases frequencies(const ScheduleSegment& seg) const {
    return dressed_frequencies(cfg_, seg.freqs, present_);
  }
  void advance(const ScheduleSegment& seg, double dt) {
    const auto eps = frequencies(seg);
    for (int q : present_) theta_[q] += eps[q] * dt;
  }
  void readout(const ReadoutEvent& r) {
    std::vector<int> keep;
    for (int q : present_)
      if (std::find(r.targets.begin(), r.targets.end(), q) == r.targets.end()) keep.push_back(q);
    present_ = keep;
  }
  void align(size_t idx) {
    const auto& a = s_.alignments[idx];
    theta_[a.follower] = theta_[a.lead] + extra_[idx];
    pending_[a.follower] = extra_[idx];
    for (int c : a.co_rotate) pending_[c] = 0;
  }

 private:
  // Co-rotation shifts are folded into the co-rotated qubit's latest earlier
  // alignment (or its initial phase), since it may be gone by then.
  void plan() {
    extra_.assign(s_.alignments.size(), 0.0);
    initial_ = {};
    reset();
    std::array<int, kNumQubits> last_align;
    last_align.fill(-1);
    for (const auto& ev : timeline(s_)) {
      switch (ev.kind) {
        case TimelineEvent::Kind::segment: {
          const auto& seg = s_.segments[ev.index];
          advance(seg, seg.duration);
          break;
        }
        case TimelineEvent::Kind::readout: readout(s_.readouts[ev.index]); break;
        case TimelineEvent::Kind::align: {
          const auto& a = s_.alignments[ev.index];
          const double shift = theta_[a.lead] - theta_[a.follower];
          for (int c : a.co_rotate) {
            if (last_align[c] >= 0) extra_[last_align[c]] += shift;
            else initial_[c] += shift;
          }
          theta_[a.follower] = theta_[a.lead];
          last_align[a.follower] = static_cast<int>(ev.index);
          break;
        }
      }
    }
  }

  DeviceConfig cfg_;
  PulseSchedule s_;
  std::vector<double> extra_;
  Phases initial_{};
  Phases theta_{};
  Phases pending_{};
  std::vector<int> present_;
};

// ---- one segment ------------------------------------------------------------

// Generator of one segment on one system, in the interaction picture.
class SegmentGenerator {
 public:
  SegmentGenerator(const System& sys, const ScheduleSegment& seg, double t_ref, const Phases& theta_ref,
                   const Phases& eps)
      : dim_(sys.dim()), t_ref_(t_ref), theta_ref_(theta_ref), eps_(eps) {
    const Mat h = sys.static_hamiltonian(seg.freqs);
    e_.resize(dim_);
    for (int i = 0; i < dim_; ++i) e_(i) = h(i, i).real();

    std::map<std::pair<int, int>, std::vector<Term>> terms;
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c)
        if (r != c && std::abs(h(r, c)) > 0) terms[{r, c}].push_back({h(r, c), -1, false});
    for (size_t d = 0; d < seg.drives.size(); ++d) {
      const int q = seg.drives[d].qubit;
      if (!sys.has(q)) continue;
      drives_.push_back(seg.drives[d]);
      const Mat sp = sys.splus(q);
      for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c)
          if (std::abs(sp(r, c)) > 0) {
            terms[{r, c}].push_back({sp(r, c), static_cast<int>(drives_.size()) - 1, true});
            terms[{c, r}].push_back({std::conj(sp(r, c)), static_cast<int>(drives_.size()) - 1, false});
          }
    }
    std::vector<Eigen::Triplet<cd>> trip;
    for (const auto& [rc, list] : terms) {
      trip.emplace_back(rc.first, rc.second, cd(1.0));
      entries_.push_back({e_(rc.first) - e_(rc.second), list});
    }
    h_.resize(dim_, dim_);
    h_.setFromTriplets(trip.begin(), trip.end());
    h_.makeCompressed();

    // Dissipator split into an elementwise part (diagonal operators and the
    // anticommutator) and sparse jump terms.
    const auto ops = sys.collapse_operators();
    Mat cdc = Mat::Zero(dim_, dim_);
    factor_ = Mat::Zero(dim_, dim_);
    for (const auto& c : ops) {
      cdc += c.adjoint() * c;
      if (c.isDiagonal()) {
        const Vec d = c.diagonal();
        factor_ += d * d.adjoint();
      } else {
        jumps_.push_back(c.sparseView());
      }
    }
    if (!cdc.isDiagonal()) throw std::logic_error("non-diagonal anticommutator is not supported");
    const Vec cd_diag = cdc.diagonal();
    for (int a = 0; a < dim_; ++a)
      for (int b = 0; b < dim_; ++b) factor_(a, b) -= 0.5 * (cd_diag(a) + cd_diag(b));
    dissipative_ = !ops.empty();
  }

  int dim() const { return dim_; }
  const RVec& diagonal_energies() const { return e_; }
  // [t0, t1] cut at every drive discontinuity.
  std::vector<double> pieces(double t0, double t1) const {
    std::vector<double> cuts{t0, t1};
    for (const auto& d : drives_)
      for (double x : d.breakpoints(t0, t1)) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double x, double y) { return std::abs(x - y) < 1e-15; }),
               cuts.end());
    return cuts;
  }

  // Interaction-picture Hamiltonian at absolute time t; drive
  // discontinuities are resolved on the side of `piece`.
  void update(double t, double piece) {
    const double tau = t - t_ref_;
    std::vector<cd> dv(drives_.size());
    for (size_t d = 0; d < drives_.size(); ++d) {
      const auto& p = drives_[d];
      const double theta = theta_ref_[p.qubit] + eps_[p.qubit] * tau;
      dv[d] = p.amplitude(t, piece) * std::exp(kI * (p.phase_at(t, piece) - theta));
    }
    cd* val = h_.valuePtr();
    for (size_t k = 0; k < entries_.size(); ++k) {
      cd v = 0;
      for (const auto& term : entries_[k].terms) {
        if (term.drive < 0) v += term.coef;
        else v += term.coef * (term.plus ? dv[term.drive] : std::conj(dv[term.drive]));
      }
      val[k] = v * std::polar(1.0, entries_[k].de * tau);
    }
  }

  // L(rho) with the current Hamiltonian.
  void rhs(const Mat& rho, Mat& out, bool hermitian) const {
    hr_.noalias() = h_ * rho;
    if (hermitian) out.noalias() = -kI * (hr_ - hr_.adjoint());
    else {
      rh_.noalias() = h_ * rho.adjoint();
      out.noalias() = -kI * (hr_ - rh_.adjoint());
    }
    if (!dissipative_) return;
    out += factor_.cwiseProduct(rho);
    for (const auto& c : jumps_) {
      hr_.noalias() = c * rho;
      rh_.noalias() = c * hr_.adjoint();
      out += rh_.adjoint();
    }
  }
  void rhs_ket(const Vec& psi, Vec& out) const { out.noalias() = -kI * (h_ * psi); }
  Mat hamiltonian() const { return Mat(h_); }

 private:
  struct Term {
    cd coef;
    int drive;  // -1 for static couplings
    bool plus;
  };
  struct Entry {
    double de;
    std::vector<Term> terms;
  };
  int dim_;
  double t_ref_;
  Phases theta_ref_, eps_;
  RVec e_;
  std::vector<DrivePulse> drives_;
  std::vector<Entry> entries_;
  Eigen::SparseMatrix<cd, Eigen::RowMajor> h_;
  Mat factor_;
  std::vector<Eigen::SparseMatrix<cd, Eigen::RowMajor>> jumps_;
  bool dissipative_ = false;
  mutable Mat hr_, rh_;
};

namespace detail {

inline void apply_diagonal_phase(Mat& rho, const RVec& e, double t) {
  Vec ph(e.size());
  for (Eigen::Index i = 0; i < e.size(); ++i) ph(i) = std::polar(1.0, -e(i) * t);
  rho = ph.asDiagonal() * rho * ph.conjugate().asDiagonal();
}

inline double error_norm(const Mat& err, const Mat& y0, const Mat& y1, const IntegratorSettings& s) {
  double acc = 0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double sc = s.abs_tol + s.rel_tol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    acc += std::norm(err(i)) / (sc * sc);
  }
  return std::sqrt(acc / static_cast<double>(err.size()));
}

}  // namespace detail

// Evolve rho (lab representation of `sys`, resonator frame) from t0 to t1
// inside one segment. theta0 holds frame phases at t0.
inline EvolutionStats evolve_segment(const System& sys, Mat& rho, const ScheduleSegment& seg, double t0, double t1,
                                     const Phases& theta0, const Phases& eps, const IntegratorSettings& st,
                                     bool hermitian) {
  EvolutionStats stats;
  const double span = t1 - t0;
  if (span <= 0) return stats;
  st.validate();
  SegmentGenerator gen(sys, seg, t0, theta0, eps);
  const cd tr0 = rho.trace();
  Mat r = rho;
  const int n = gen.dim();
  Mat k1(n, n), k2(n, n), k3(n, n), k4(n, n), k5(n, n), k6(n, n), k7(n, n), tmp(n, n);

  auto herm = [&](Mat& m) {
    if (hermitian) m = 0.5 * (m + m.adjoint()).eval();
  };
  // Trace drift, plus a contraction bound: ||E(X)||_2 <= ||X||_1 <= sqrt(n) ||X||_2.
  const double norm_bound = std::sqrt(static_cast<double>(n)) * rho.norm() * (1 + 1e-9);
  auto check = [&] {
    stats.trace_drift = std::max(stats.trace_drift, std::abs(r.trace() - tr0));
    if (!(stats.trace_drift < st.max_trace_drift))
      throw IntegrationError("trace drift " + std::to_string(stats.trace_drift) + " in segment '" + seg.label + "'");
    if (!(r.norm() <= norm_bound)) throw IntegrationError("integration diverged in segment '" + seg.label + "'");
  };

  const auto cuts = gen.pieces(t0, t1);
  if (st.method == Method::rk4) {
    long done = 0;
    for (size_t p = 0; p + 1 < cuts.size(); ++p) {
      const double a = cuts[p], b = cuts[p + 1], piece = 0.5 * (a + b);
      const long steps = std::max(1L, static_cast<long>(std::ceil((b - a) / st.max_step - 1e-9)));
      const double h = (b - a) / static_cast<double>(steps);
      for (long i = 0; i < steps; ++i, ++done) {
        const double t = a + i * h;
        gen.update(t, piece);
        gen.rhs(r, k1, hermitian);
        gen.update(t + h / 2, piece);
        tmp = r + (h / 2) * k1;
        gen.rhs(tmp, k2, hermitian);
        tmp = r + (h / 2) * k2;
        gen.rhs(tmp, k3, hermitian);
        gen.update(t + h, piece);
        tmp = r + h * k3;
        gen.rhs(tmp, k4, hermitian);
        r += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (st.re_hermitize_every > 0 && (done + 1) % st.re_hermitize_every == 0) herm(r);
        check();
      }
    }
    stats.steps = done;
  } else {
    // Dormand-Prince 5(4).
    static constexpr double c2 = 1. / 5, c3 = 3. / 10, c4 = 4. / 5, c5 = 8. / 9;
    static constexpr double a21 = 1. / 5;
    static constexpr double a31 = 3. / 40, a32 = 9. / 40;
    static constexpr double a41 = 44. / 45, a42 = -56. / 15, a43 = 32. / 9;
    static constexpr double a51 = 19372. / 6561, a52 = -25360. / 2187, a53 = 64448. / 6561, a54 = -212. / 729;
    static constexpr double a61 = 9017. / 3168, a62 = -355. / 33, a63 = 46732. / 5247, a64 = 49. / 176,
                            a65 = -5103. / 18656;
    static constexpr double b1 = 35. / 384, b3 = 500. / 1113, b4 = 125. / 192, b5 = -2187. / 6784, b6 = 11. / 84;
    static constexpr double e1 = 71. / 57600, e3 = -71. / 16695, e4 = 71. / 1920, e5 = -17253. / 339200,
                            e6 = 22. / 525, e7 = -1. / 40;
    double h = std::min(st.max_step, span);
    Mat ynew(n, n), err(n, n);
    for (size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double a = cuts[p], b = cuts[p + 1], piece = 0.5 * (a + b);
    double t = a;
    while (t < b - 1e-18) {
      h = std::min(h, b - t);
      gen.update(t, piece);
      gen.rhs(r, k1, hermitian);
      gen.update(t + c2 * h, piece);
      tmp = r + h * a21 * k1;
      gen.rhs(tmp, k2, hermitian);
      gen.update(t + c3 * h, piece);
      tmp = r + h * (a31 * k1 + a32 * k2);
      gen.rhs(tmp, k3, hermitian);
      gen.update(t + c4 * h, piece);
      tmp = r + h * (a41 * k1 + a42 * k2 + a43 * k3);
      gen.rhs(tmp, k4, hermitian);
      gen.update(t + c5 * h, piece);
      tmp = r + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      gen.rhs(tmp, k5, hermitian);
      gen.update(t + h, piece);
      tmp = r + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      gen.rhs(tmp, k6, hermitian);
      ynew = r + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      gen.rhs(ynew, k7, hermitian);
      err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      const double en = detail::error_norm(err, r, ynew, st);
      if (en <= 1.0) {
        t += h;
        r = ynew;
        herm(r);
        ++stats.steps;
        check();
      }
      const double fac = en > 0 ? 0.9 * std::pow(en, -0.2) : 5.0;
      h = std::min(st.max_step, h * std::clamp(fac, 0.2, 5.0));
      if (h < st.min_step) throw IntegrationError("step size underflow in segment '" + seg.label + "'");
    }
    }
  }
  detail::apply_diagonal_phase(r, gen.diagonal_energies(), span);
  rho = r;
  if (hermitian) stats.min_eigenvalue = min_eigenvalue(rho);
  return stats;
}

// Pure-state counterpart: exact static propagator when the segment has no
// drives, otherwise a fourth-order commutator-free Magnus step built from two
// Gauss-point Hamiltonians, which is unitary by construction.
inline void evolve_segment_ket(const System& sys, Vec& psi, const ScheduleSegment& seg, double t0, double t1,
                               const Phases& theta0, const Phases& eps, const IntegratorSettings& st) {
  const double span = t1 - t0;
  if (span <= 0) return;
  bool driven = false;
  for (const auto& d : seg.drives)
    if (sys.has(d.qubit)) driven = true;
  if (!driven) {
    psi = propagator(sys.static_hamiltonian(seg.freqs), span) * psi;
    return;
  }
  SegmentGenerator gen(sys, seg, t0, theta0, eps);
  const double c1 = 0.5 - std::sqrt(3.0) / 6, c2 = 0.5 + std::sqrt(3.0) / 6;
  const double a1 = (3 - 2 * std::sqrt(3.0)) / 12, a2 = (3 + 2 * std::sqrt(3.0)) / 12;
  Vec v = psi;
  const auto cuts = gen.pieces(t0, t1);
  for (size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double a = cuts[p], b = cuts[p + 1], piece = 0.5 * (a + b);
    const long steps = std::max(1L, static_cast<long>(std::ceil((b - a) / st.max_step - 1e-9)));
    const double h = (b - a) / static_cast<double>(steps);
    for (long i = 0; i < steps; ++i) {
      const double t = a + i * h;
      gen.update(t + c1 * h, piece);
      const Mat h1 = gen.hamiltonian();
      gen.update(t + c2 * h, piece);
      const Mat h2 = gen.hamiltonian();
      v = propagator(a1 * h1 + a2 * h2, h) * (propagator(a2 * h1 + a1 * h2, h) * v);
    }
  }
  const RVec& e = gen.diagonal_energies();
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) *= std::polar(1.0, -e(i) * span);
  psi = v;
}

// ---- whole-schedule evolution on the full space -------------------------------

struct EvolutionResult {
  DensityMatrix final_state;
  double trace_drift = 0;
  double min_eigenvalue = 0;
  Phases frame_phases{};
};

using Checkpoint = std::function<void(double t, const std::string& label, const Mat& rho)>;

namespace detail {

// Walk [t0, t1] on the full space, calling step(seg, a, b, theta, eps) for
// every segment piece. Readouts strictly inside the window are rejected.
template <class Step>
Phases walk_window(const DeviceConfig& cfg, const PulseSchedule& s, double t0, double t1, Step step) {
  if (t1 < t0) throw std::invalid_argument("window end precedes start");
  FrameTracker fr(cfg, s);
  for (const auto& ev : timeline(s)) {
    if (ev.kind == TimelineEvent::Kind::readout) {
      if (ev.time > t0 + 1e-13 && ev.time < t1 - 1e-13)
        throw ScheduleError("evolution window crosses a readout; use the experiment runner");
      continue;
    }
    if (ev.kind == TimelineEvent::Kind::align) {
      if (ev.time <= t1 + 1e-13) fr.align(ev.index);
      continue;
    }
    const auto& seg = s.segments[ev.index];
    const double a = std::max(seg.start, t0), b = std::min(seg.end(), t1);
    if (seg.start >= t1 - 1e-18) break;
    const auto eps = fr.frequencies(seg);
    if (seg.start < t0) fr.advance(seg, std::min(t0, seg.end()) - seg.start);
    if (b > a) {
      step(seg, a, b, fr.theta(), eps);
      fr.advance(seg, b - a);
    }
  }
  return fr.theta();
}

}  // namespace detail

inline EvolutionResult evolve_lindblad(const DensityMatrix& rho0, const PulseSchedule& s, const DeviceConfig& cfg,
                                       std::pair<double, double> window, const IntegratorSettings& st = {},
                                       const Checkpoint& checkpoint = {}) {
  const System sys = System::full(cfg);
  if (rho0.space != sys.space()) throw std::invalid_argument("evolve_lindblad: state must live on the full space");
  Mat rho = rho0.m;
  EvolutionStats total;
  const auto theta = detail::walk_window(cfg, s, window.first, window.second,
                                         [&](const ScheduleSegment& seg, double a, double b, const Phases& th,
                                             const Phases& eps) {
                                           total.merge(evolve_segment(sys, rho, seg, a, b, th, eps, st, true));
                                           if (checkpoint) checkpoint(b, seg.label, rho);
                                         });
  EvolutionResult res{DensityMatrix(sys.space(), rho), total.trace_drift, total.min_eigenvalue, theta};
  if (!std::isfinite(res.min_eigenvalue)) res.min_eigenvalue = min_eigenvalue(rho);
  return res;
}

inline StateVector evolve_unitary(const StateVector& psi0, const PulseSchedule& s, const DeviceConfig& cfg,
                                  std::pair<double, double> window, const IntegratorSettings& st = {}) {
  const System sys = System::full(cfg);
  if (psi0.space != sys.space()) throw std::invalid_argument("evolve_unitary: state must live on the full space");
  Vec psi = psi0.v;
  detail::walk_window(cfg, s, window.first, window.second,
                      [&](const ScheduleSegment& seg, double a, double b, const Phases& th, const Phases& eps) {
                        evolve_segment_ket(sys, psi, seg, a, b, th, eps, st);
                      });
  const double drift = std::abs(psi.norm() - psi0.v.norm());
  if (drift > 1e-9) throw IntegrationError("norm drift " + std::to_string(drift));
  return {sys.space(), psi};
}

// Frame phases at time t (after every alignment up to t).
inline Phases frame_phases_at(const DeviceConfig& cfg, const PulseSchedule& s, double t) {
  return detail::walk_window(cfg, s, 0.0, t, [](auto&&...) {});
}

inline nlohmann::json matrix_to_json(const Mat& m, const std::vector<int>& dims = {}) {
  nlohmann::json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  if (!dims.empty()) j["dims"] = dims;
  std::vector<double> re, im;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  j["real"] = re;
  j["imag"] = im;
  return j;
}

inline Mat matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>(), cols = j.at("cols").get<Eigen::Index>();
  const auto re = j.at("real").get<std::vector<double>>();
  const auto im = j.at("imag").get<std::vector<double>>();
  if (re.size() != static_cast<size_t>(rows * cols) || im.size() != re.size())
    throw std::invalid_argument("matrix json: entry count mismatch");
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = cd(re[r * cols + c], im[r * cols + c]);
  return m;
}

// Checkpoint callback writing one JSON snapshot per segment boundary.
inline Checkpoint json_checkpoint(nlohmann::json& sink, std::vector<int> dims) {
  return [&sink, dims](double t, const std::string& label, const Mat& rho) {
    auto j = matrix_to_json(rho, dims);
    j["time_ns"] = to_ns(t);
    j["segment"] = label;
    sink.push_back(j);
  };
}

}  // namespace eswap
