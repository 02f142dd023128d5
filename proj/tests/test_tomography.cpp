#include <eswap/tomography.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace eswap;

namespace {

std::mt19937 rng(31337);

Mat random_matrix(int d) {
  std::normal_distribution<double> n;
  Mat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = cd(n(rng), n(rng));
  return a;
}

Mat random_density(int d) {
  const Mat a = random_matrix(d);
  Mat r = a * a.adjoint();
  return r / r.trace();
}

Mat random_unitary(int d) {
  const Mat h = random_matrix(d);
  return propagator(0.5 * (h + h.adjoint()), 1.0);
}

std::vector<OutcomeDistribution> exact_distributions(const Mat& rho) {
  std::vector<OutcomeDistribution> out;
  for (const auto& s : all_settings()) out.push_back(setting_distribution(rho, s));
  return out;
}

Mat proj(const Vec& v) { return v * v.adjoint(); }

// Wootters concurrence via the eigenvalues of rho (sy sy) rho* (sy sy), written out independently.
double concurrence_oracle(const Mat& rho) {
  const Mat yy = kron(op::sy(), op::sy());
  const Mat r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Mat> es(r);
  std::vector<double> l;
  for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

}  // namespace

TEST(Settings, IndexingAndUnitaries) {
  for (int k = 0; k < kNumSettings; ++k) EXPECT_EQ(TomographySetting::from_index(k).index(), k);
  EXPECT_THROW(TomographySetting::from_index(9), std::out_of_range);
  for (int r = 0; r < 3; ++r) {
    const Mat u = TomographySetting::single(r);
    EXPECT_LT((u * u.adjoint() - op::identity(2)).norm(), 1e-15);
  }
  // X/2 maps Y eigenbasis to Z; Y/2 maps X to Z.
  const Mat x2 = TomographySetting::single(1), y2 = TomographySetting::single(2);
  EXPECT_LT((x2 * op::sy() * x2.adjoint() - op::sz()).norm(), 1e-14);
  EXPECT_LT((y2 * op::sx() * y2.adjoint() + op::sz()).norm(), 1e-14);
}

TEST(Reconstruct, BellStateRoundTrip) {
  const Mat rho = proj(bell_state(BellKind::psi_plus));
  const auto r = reconstruct_state_detailed(exact_distributions(rho));
  EXPECT_LT((r.raw - rho).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((r.physical - rho).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Reconstruct, MaximallyMixed) {
  const Mat rho = 0.25 * Mat::Identity(4, 4);
  EXPECT_LT((reconstruct_state(exact_distributions(rho)).m - rho).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Reconstruct, RandomStatesRoundTrip) {
  for (int trial = 0; trial < 20; ++trial) {
    const Mat rho = random_density(4);
    EXPECT_LT((reconstruct_state(exact_distributions(rho)).m - rho).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Reconstruct, RejectsWrongSettingCount) {
  auto d = exact_distributions(random_density(4));
  d.pop_back();
  EXPECT_THROW(reconstruct_state(d), std::invalid_argument);
}

TEST(Reconstruct, DesignHasFullRank) {
  const RMat& a = detail::tomography_design();
  EXPECT_EQ(a.rows(), 36);
  EXPECT_EQ(a.cols(), 16);
  EXPECT_EQ(a.colPivHouseholderQr().rank(), 16);
}

TEST(Physical, UnchangedWhenAlreadyPhysical) {
  const Mat rho = random_density(4);
  EXPECT_LT((project_physical(rho) - rho).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Physical, TwoLevelWaterFilling) {
  Mat raw = Mat::Zero(4, 4);
  raw(0, 0) = 1.2;
  raw(1, 1) = -0.2;
  Mat want = Mat::Zero(4, 4);
  want(0, 0) = 1;
  EXPECT_LT((project_physical(raw) - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Physical, OutputIsStateAndIdempotent) {
  for (int trial = 0; trial < 20; ++trial) {
    Mat h = random_matrix(4);
    h = (0.5 * (h + h.adjoint())).eval();
    h += (1.0 - h.trace().real()) / 4.0 * Mat::Identity(4, 4);
    const Mat p = project_physical(h);
    EXPECT_NEAR(p.trace().real(), 1.0, 1e-12);
    EXPECT_GE(min_eigenvalue(p), -1e-12);
    EXPECT_LT(hermiticity_error(p), 1e-12);
    EXPECT_LT((project_physical(p) - p).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Physical, RejectsBadInput) {
  EXPECT_THROW(project_physical(2.0 * Mat::Identity(4, 4)), std::invalid_argument);
  Mat nh = 0.25 * Mat::Identity(4, 4);
  nh(0, 1) = 0.1;
  EXPECT_THROW(project_physical(nh), std::invalid_argument);
}

TEST(Fidelity, PureAndMixed) {
  const Vec psi = bell_state(BellKind::phi_minus);
  EXPECT_NEAR(state_fidelity(proj(psi), psi), 1.0, 1e-15);
  for (auto k : {BellKind::psi_plus, BellKind::psi_minus, BellKind::phi_plus, BellKind::phi_minus})
    EXPECT_NEAR(state_fidelity(0.25 * Mat::Identity(4, 4), bell_state(k)), 0.25, 1e-15);
  const DensityMatrix dm(HilbertSpace({2, 2}), proj(psi));
  EXPECT_NEAR(state_fidelity(dm, StateVector(HilbertSpace({2, 2}), psi)), 1.0, 1e-15);
}

TEST(Concurrence, ClosedFormCases) {
  for (auto k : {BellKind::psi_plus, BellKind::psi_minus, BellKind::phi_plus, BellKind::phi_minus})
    EXPECT_NEAR(concurrence(proj(bell_state(k))), 1.0, 1e-7);
  EXPECT_NEAR(concurrence(0.25 * Mat::Identity(4, 4)), 0.0, 1e-12);
  Vec phi = Vec::Zero(4);
  phi(0) = phi(3) = 1 / std::sqrt(2.0);
  const Mat werner = 0.8 * proj(phi) + 0.2 * 0.25 * Mat::Identity(4, 4);
  EXPECT_NEAR(concurrence(werner), 0.7, 1e-10);
}

TEST(Concurrence, ProductStatesAreZero) {
  for (int trial = 0; trial < 10; ++trial)
    EXPECT_NEAR(concurrence(kron(random_density(2), random_density(2))), 0.0, 1e-7);
}

TEST(Concurrence, MatchesOracleAndBounds) {
  for (int trial = 0; trial < 20; ++trial) {
    const Mat rho = trial % 2 ? random_density(4) : Mat(0.7 * proj(bell_state(BellKind::psi_plus)) + 0.3 * random_density(4));
    const double c = concurrence(rho);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
    EXPECT_NEAR(c, concurrence_oracle(rho), 1e-8);
  }
}

TEST(Concurrence, LocalUnitaryInvariant) {
  for (int trial = 0; trial < 20; ++trial) {
    const Mat rho = 0.6 * proj(bell_state(BellKind::phi_plus)) + 0.4 * random_density(4);
    const Mat u = kron(random_unitary(2), random_unitary(2));
    EXPECT_LT(std::abs(concurrence(rho) - concurrence(Mat(u * rho * u.adjoint()))), 1e-10);
  }
}

TEST(Process, IdentityChannel) {
  const auto chi = process_tomography([](const Mat& m) { return m; });
  EXPECT_NEAR(chi.chi(0, 0).real(), 1.0, 1e-10);
  EXPECT_NEAR(chi.chi.cwiseAbs().sum(), 1.0, 1e-9);
}

TEST(Process, IdealGateSelfFidelity) {
  const Mat u = dressed_gate_ideal_unitary();
  const auto chi = process_tomography([&](const Mat& m) { return Mat(u * m * u.adjoint()); });
  EXPECT_NEAR(process_fidelity(chi, ChiMatrix::of_unitary(u)), 1.0, 1e-10);
  EXPECT_LT((chi.chi - ChiMatrix::of_unitary(u).chi).cwiseAbs().maxCoeff(), 1e-10);
  // U = (II + i XX)/sqrt2: weight 1/2 on II and on XX
  EXPECT_NEAR(chi.chi(0, 0).real(), 0.5, 1e-10);
  EXPECT_NEAR(chi.chi(5, 5).real(), 0.5, 1e-10);
}

TEST(Process, RankOneSelfFidelity) {
  const Mat u = random_unitary(4);
  const auto c = ChiMatrix::of_unitary(u);
  EXPECT_NEAR(process_fidelity(c, c), 1.0, 1e-12);
  EXPECT_NEAR(c.chi.trace().real(), 1.0, 1e-12);
}

TEST(Process, DepolarizingAgainstUnitary) {
  const auto chi = process_tomography([](const Mat& m) { return Mat(m.trace() * 0.25 * Mat::Identity(4, 4)); });
  EXPECT_NEAR(process_fidelity(chi, ChiMatrix::of_unitary(dressed_gate_ideal_unitary())), 1.0 / 16, 1e-10);
  EXPECT_NEAR(process_fidelity(chi, ChiMatrix::of_unitary(random_unitary(4))), 1.0 / 16, 1e-10);
}

TEST(Process, GateAgainstIdentity) {
  const Mat u = dressed_gate_ideal_unitary();
  const double want = std::norm(u.trace() / 4.0);
  EXPECT_NEAR(want, 0.5, 1e-15);
  EXPECT_NEAR(process_fidelity(ChiMatrix::of_unitary(u), ChiMatrix::of_unitary(op::identity(4))), want, 1e-12);
}

TEST(Process, ChannelMatchesChiExpansion) {
  // E(rho) = sum chi_mn P_m rho P_n reproduces a non-unitary channel
  const double g = 0.3;
  auto channel = [&](const Mat& m) {
    Mat k0 = Mat::Zero(2, 2), k1 = Mat::Zero(2, 2);
    k0(0, 0) = 1;
    k0(1, 1) = std::sqrt(1 - g);
    k1(0, 1) = std::sqrt(g);
    const Mat a0 = kron(k0, op::identity(2)), a1 = kron(k1, op::identity(2));
    return Mat(a0 * m * a0.adjoint() + a1 * m * a1.adjoint());
  };
  const auto chi = process_tomography(channel, false);
  const Mat rho = random_density(4);
  Mat back = Mat::Zero(4, 4);
  for (int m = 0; m < 16; ++m)
    for (int n = 0; n < 16; ++n) back += chi.chi(m, n) * pauli2(m) * rho * pauli2(n);
  EXPECT_LT((back - channel(rho)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Serialization, DensityRoundTrip) {
  const DensityMatrix rho(HilbertSpace({2, 2}), random_density(4));
  const auto j = density_to_json(rho, {"00", "01", "10", "11"});
  EXPECT_EQ(j["basis"][2], "10");
  EXPECT_EQ(j["dims"], nlohmann::json({2, 2}));
  const auto back = density_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.space, rho.space);
  EXPECT_LT((back.m - rho.m).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Serialization, ChiRoundTrip) {
  const auto c = ChiMatrix::of_unitary(dressed_gate_ideal_unitary());
  const auto j = chi_to_json(c);
  EXPECT_EQ(j["basis"][0], "II");
  EXPECT_EQ(j["basis"][5], "XX");
  EXPECT_EQ(j["basis"][15], "ZZ");
  EXPECT_LT((chi_from_json(nlohmann::json::parse(j.dump())).chi - c.chi).cwiseAbs().maxCoeff(), 1e-15);
}
