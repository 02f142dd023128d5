#include <eswap/device.hpp>

#include <gtest/gtest.h>

#include <fstream>
#include <random>

using namespace eswap;

namespace {

const DeviceConfig& cfg() {
  static const DeviceConfig c = default_device();
  return c;
}

Mat total_excitation(const System& sys) {
  Mat n = sys.a().adjoint() * sys.a();
  for (int q : sys.qubits()) n += sys.number(q);
  return n;
}

nlohmann::json broken(const std::function<void(nlohmann::json&)>& edit) {
  auto j = default_device_json();
  edit(j);
  return j;
}

}  // namespace

TEST(Hamiltonian, ConservesExcitationsWithoutDrives) {
  FrequencyAssignment fa;
  fa.f.fill(cfg().resonator_frequency);
  const System sys = System::full(cfg());
  const Mat h = build_hamiltonian(cfg(), fa, {}, 0.0);
  const Mat n = total_excitation(sys);
  EXPECT_LT((h * n - n * h).cwiseAbs().maxCoeff() / mhz(1), 1e-10);
  const Mat hi = build_hamiltonian(cfg(), FrequencyAssignment::idle(cfg()), {}, 0.0);
  EXPECT_LT((hi * n - n * hi).cwiseAbs().maxCoeff() / mhz(1), 1e-10);
}

TEST(Hamiltonian, HermitianWithDrives) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 5; ++trial) {
    FrequencyAssignment fa;
    for (auto& f : fa.f) f = ghz(5.0 + u(rng));
    DrivePulse a, b;
    a.qubit = 1;
    a.rabi = mhz(20 * u(rng));
    a.phase = 6 * u(rng);
    a.duration = ns(200);
    a.phase_inversion_at = ns(100);
    b.qubit = 2;
    b.rabi = mhz(8 * u(rng));
    b.detuning = mhz(100 * u(rng));
    b.duration = ns(200);
    const double t = ns(200) * u(rng);
    const Mat h = build_hamiltonian(cfg(), fa, {a, b}, t, {0.1, 0.2, 0.3, 0.4});
    EXPECT_LT(hermiticity_error(h) / mhz(1), 1e-12);
  }
}

TEST(Hamiltonian, DriveTermMatchesDefinition) {
  const System sys = System::full(cfg());
  const Mat d = sys.drive_term(2, mhz(5), 0.3);
  const Mat want = mhz(5) * (std::exp(kI * 0.3) * sys.splus(2) + std::exp(-kI * 0.3) * sys.sminus(2));
  EXPECT_LT((d - want).norm() / mhz(1), 1e-12);
}

TEST(EffectiveCoupling, LeadingOrderArithmetic) {
  DeviceConfig c = cfg();
  c.pairs.clear();
  EXPECT_NEAR(to_mhz(effective_coupling(c, 0, 1, mhz(308))), 20.8 * 19.9 / 308, 1e-12);
  EXPECT_NEAR(to_mhz(effective_coupling(c, 0, 1, mhz(308))), 1.344, 5e-4);
}

TEST(EffectiveCoupling, ExplicitDirectCouplingGivesMeasuredRate) {
  DeviceConfig c = cfg();
  c.pair(0, 1).direct = mhz(0.524);
  c.pair(2, 3).direct = mhz(0.53);
  EXPECT_NEAR(to_mhz(effective_coupling(c, 0, 1, mhz(308))), 0.82, 1e-3);
  EXPECT_NEAR(to_mhz(effective_coupling(c, 2, 3, mhz(238))), 1.1, 1e-3);
}

TEST(EffectiveCoupling, LeadingOrderCalibrationHitsTargets) {
  auto j = default_device_json();
  j["direct_coupling_model"] = "leading_order";
  const auto c = device_from_json(j);
  EXPECT_NEAR(to_mhz(c.direct_coupling(0, 1)), 0.524, 1e-3);
  EXPECT_NEAR(to_mhz(c.direct_coupling(2, 3)), 0.530, 1e-3);
  EXPECT_NEAR(to_mhz(effective_coupling(c, 0, 1, mhz(308))), 0.82, 1e-12);
  EXPECT_NEAR(to_mhz(effective_coupling(c, 2, 3, mhz(238))), 1.1, 1e-12);
}

TEST(EffectiveCoupling, ExactCalibrationHitsTargets) {
  for (const auto& p : cfg().pairs) {
    const double got = exact_effective_coupling(cfg(), p.j, p.k, calibration_assignment(cfg(), p));
    EXPECT_NEAR(to_mhz(got), to_mhz(p.target), 1e-6) << "pair " << p.j << p.k;
  }
  EXPECT_NEAR(to_mhz(cfg().pair(0, 1).target), 0.82, 1e-12);
  EXPECT_NEAR(to_mhz(cfg().pair(2, 3).target), 1.1, 1e-12);
  EXPECT_NEAR(kPi / (2 * cfg().pair(1, 2).target), ns(219), 1e-15);
}

TEST(EffectiveCoupling, ZeroDetuningIsDomainError) {
  EXPECT_THROW(effective_coupling(cfg(), 0, 1, 0.0), std::domain_error);
}

TEST(EffectiveCoupling, AntisymmetricWithoutDirectCoupling) {
  DeviceConfig c = cfg();
  c.pairs.clear();
  for (double d : {mhz(100), mhz(238), mhz(308), mhz(1000)})
    EXPECT_DOUBLE_EQ(effective_coupling(c, 1, 2, d), -effective_coupling(c, 1, 2, -d));
}

TEST(EffectiveCoupling, WarnsInsideDispersiveLimit) {
  std::vector<std::string> w;
  effective_coupling(cfg(), 0, 1, mhz(50), &w);
  EXPECT_EQ(w.size(), 1u);
  w.clear();
  effective_coupling(cfg(), 0, 1, mhz(308), &w);
  EXPECT_TRUE(w.empty());
}

TEST(Collapse, RatesFollowConfig) {
  const auto ops = collapse_operators(cfg());
  ASSERT_EQ(ops.size(), 8u);
  const System sys = System::full(cfg());
  // Q1 relaxation: L = sqrt(1/T1) s-
  EXPECT_NEAR((ops[0].adjoint() * ops[0]).trace().real() / (sys.dim() / 2), 1.0 / us(27.1), 1e-6 / us(27.1));
  // dephasing: L = sqrt(1/(2 Tphi)) sz, so L^dag L = I / (2 Tphi)
  EXPECT_NEAR((ops[1].adjoint() * ops[1])(0, 0).real(), 1.0 / (2 * us(59.2)), 1e-9 / us(59.2));
}

TEST(Collapse, IdealConfigGivesZeroOperators) {
  auto j = default_device_json();
  for (auto& q : j["qubits"]) {
    q["t1_us"] = "inf";
    q["t_phi_dd_us"] = "inf";
    q["t2_star_us"] = "inf";
  }
  const auto c = device_from_json(j);
  for (const auto& l : collapse_operators(c)) EXPECT_EQ(l.cwiseAbs().maxCoeff(), 0.0);
  DeviceConfig off = cfg();
  off.decoherence = false;
  EXPECT_TRUE(collapse_operators(off).empty());
}

TEST(Collapse, ProtectionSwitchUsesRamseyTime) {
  DeviceConfig c = cfg();
  EXPECT_DOUBLE_EQ(c.pure_dephasing_time(0), us(59.2));
  c.protection = false;
  EXPECT_NEAR(c.pure_dephasing_time(0), 1.0 / (1.0 / us(2.0) - 0.5 / us(27.1)), 1e-12);
}

TEST(Collapse, ResonatorKappaAddsOperator) {
  DeviceConfig c = cfg();
  c.resonator_kappa = mhz(0.1);
  EXPECT_EQ(collapse_operators(c).size(), 9u);
}

TEST(Config, BundledFileMatchesDefaults) {
  std::ifstream in(std::string(ESWAP_DATA_DIR) + "/default_device.json");
  ASSERT_TRUE(in);
  nlohmann::json j;
  in >> j;
  EXPECT_EQ(j, default_device_json());
  const auto c = load_device(std::string(ESWAP_DATA_DIR) + "/default_device.json");
  EXPECT_EQ(c.resonator_cutoff, 3);
  EXPECT_DOUBLE_EQ(c.qubits[3].f1, 0.822);
  EXPECT_DOUBLE_EQ(c.qubits[1].t_phi_dd, us(33.2));
  EXPECT_DOUBLE_EQ(c.qubits[2].idle_frequency, ghz(5.366));
}

TEST(Config, JsonRoundTrip) {
  const auto j = device_to_json(cfg());
  auto c = device_from_json(j);
  for (int q = 0; q < kNumQubits; ++q) {
    EXPECT_NEAR(c.qubits[q].g, cfg().qubits[q].g, 1e-6);
    EXPECT_NEAR(c.qubits[q].t1, cfg().qubits[q].t1, 1e-18);
  }
  for (const auto& p : cfg().pairs) EXPECT_NEAR(c.direct_coupling(p.j, p.k), p.direct, 1e-3);
}

TEST(Config, Errors) {
  EXPECT_THROW(load_device("/nonexistent/device.json"), ConfigError);
  EXPECT_THROW(device_from_json(broken([](auto& j) { j.erase("resonator_frequency_ghz"); })), ConfigError);
  EXPECT_THROW(device_from_json(broken([](auto& j) { j["resonator_cutoff"] = 1; })), ConfigError);
  EXPECT_THROW(device_from_json(broken([](auto& j) { j["qubits"].erase(3); })), ConfigError);
  EXPECT_THROW(device_from_json(broken([](auto& j) { j["qubits"][0]["t1_us"] = -1; })), ConfigError);
  EXPECT_THROW(device_from_json(broken([](auto& j) { j["qubits"][0]["f0"] = 1.5; })), ConfigError);
  EXPECT_THROW(device_from_json(broken([](auto& j) { j["qubits"][1]["g_mhz"] = "x"; })), ConfigError);
  EXPECT_THROW(device_from_json(broken([](auto& j) { j["direct_coupling_model"] = "bogus"; })), ConfigError);
  EXPECT_THROW(device_from_json(broken([](auto& j) { j["direct_coupling_model"] = "explicit"; })), ConfigError);
  EXPECT_THROW(device_from_json(broken([](auto& j) { j["couplings"][0]["pair"] = {1, 1}; })), ConfigError);
  EXPECT_THROW(device_from_json(broken([](auto& j) { j["couplings"][1]["pair"] = {2, 1}; })), ConfigError);
}

TEST(Config, MalformedFile) {
  const std::string path = testing::TempDir() + "/malformed_device.json";
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  EXPECT_THROW(load_device(path), ConfigError);
}

TEST(Dressing, BasisIsUnitaryAndNearIdentity) {
  const System sys = System::full(cfg());
  const Mat w = dressing_basis(sys, FrequencyAssignment::idle(cfg()));
  EXPECT_LT((w.adjoint() * w - Mat::Identity(sys.dim(), sys.dim())).cwiseAbs().maxCoeff(), 1e-10);
  for (int i = 0; i < sys.dim(); ++i) {
    EXPECT_GT(std::abs(w(i, i)), 0.9);
    EXPECT_NEAR(w(i, i).imag(), 0.0, 1e-12);
  }
}

TEST(Dressing, FrequenciesShiftedByResonator) {
  const auto fa = FrequencyAssignment::idle(cfg());
  const auto w = dressed_frequencies(cfg(), fa, {0, 1, 2, 3});
  for (int q = 0; q < kNumQubits; ++q) {
    const double bare = fa.f[q] - cfg().resonator_frequency;
    const double shift = -cfg().qubits[q].g * cfg().qubits[q].g / (cfg().resonator_frequency - fa.f[q]);
    EXPECT_NEAR(to_mhz(w[q] - bare), to_mhz(shift), 0.2);
  }
}
