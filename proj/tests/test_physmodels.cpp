#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "oracle/gaussian_oracle.hpp"
#include "qaplan/errors.hpp"
#include "qaplan/physmodels.hpp"
#include "test_support.hpp"

namespace qaplan {
namespace {

using testing::shipped_fiber;
using testing::shipped_raman;

oracle::OracleParams to_oracle(const CvQkdParams& p) {
  return {p.v_a, p.beta, p.eta_det, p.v_el, p.detection == Detection::kHeterodyne, p.f_sym};
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Reads the data file without going through RamanSpectrum.
std::map<double, double> read_table_directly() {
  std::ifstream in(testing::raman_table_path());
  std::map<double, double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    double d, rho;
    is >> d >> rho;
    out[d] = rho;
  }
  return out;
}

TEST(Transmittance, Identities) {
  EXPECT_DOUBLE_EQ(transmittance(0.0, 0.2), 1.0);
  EXPECT_NEAR(transmittance(50.0, 0.2), 0.1, 1e-15);
  EXPECT_NEAR(transmittance(391 * 0.05, 0.2), std::pow(10.0, -0.2 * 19.55 / 10.0), 1e-15);
  double prev = 1.0;
  for (int i = 1; i <= 100; ++i) {
    const double t = transmittance(i * 3.0, 0.2);
    EXPECT_LT(t, prev);
    prev = t;
  }
  EXPECT_THROW(transmittance(-1.0, 0.2), InvalidInput);
}

TEST(RamanTable, KnotsAndMidpoints) {
  const RamanSpectrum table({{-15000, 1.0}, {0, 2.0}, {100, 4.0}, {15000, 6.0}});
  EXPECT_DOUBLE_EQ(table.coefficient(0.0), 2.0);
  EXPECT_DOUBLE_EQ(table.coefficient(100.0), 4.0);
  EXPECT_DOUBLE_EQ(table.coefficient(50.0), 3.0);
  EXPECT_THROW(table.coefficient(15000.5), OutOfRange);
  EXPECT_THROW(table.coefficient(-15001.0), OutOfRange);
}

TEST(RamanTable, RejectsBrokenTables) {
  EXPECT_THROW(RamanSpectrum({{-15000, 1.0}, {-15000, 1.0}, {15000, 1.0}}), InvalidInput);
  EXPECT_THROW(RamanSpectrum({{-15000, 1.0}, {0, -1.0}, {15000, 1.0}}), InvalidInput);
  EXPECT_THROW(RamanSpectrum({{-10000, 1.0}, {15000, 1.0}}), InvalidInput);
  // anti-Stokes above Stokes
  EXPECT_THROW(RamanSpectrum({{-15000, 2.0}, {15000, 1.0}}), InvalidInput);
}

TEST(RamanTable, ParseErrorsCarryPosition) {
  try {
    RamanSpectrum::parse("-15000 1e-12\n0 abc\n15000 1e-12\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_GT(e.column(), 0);
  }
  EXPECT_THROW(RamanSpectrum::load("/nonexistent/raman.txt"), Error);
}

TEST(RamanTable, ShippedTableStokesAsymmetry) {
  const auto raw = read_table_directly();
  ASSERT_TRUE(raw.count(1000.0) && raw.count(-1000.0));
  EXPECT_GE(raw.at(1000.0), raw.at(-1000.0));
  const auto& table = *shipped_raman();
  EXPECT_DOUBLE_EQ(table.coefficient(1000.0), raw.at(1000.0));
  EXPECT_DOUBLE_EQ(table.coefficient(-1000.0), raw.at(-1000.0));
  EXPECT_GE(raman_coefficient(table, 194.4, 193.4), raman_coefficient(table, 192.4, 193.4));
  EXPECT_EQ(raw.size(), table.points().size());
}

TEST(Spurs, Identities) {
  const FiberParams f = shipped_fiber();
  EXPECT_EQ(spurs_power_forward(0.0, 20.0, f, 1e-10, 12.5), 0.0);
  EXPECT_EQ(spurs_power_forward(1e-3, 0.0, f, 1e-10, 12.5), 0.0);
  EXPECT_DOUBLE_EQ(spurs_power_forward(1e-3, 20.0, f, 1e-10, 25.0),
                   2.0 * spurs_power_forward(1e-3, 20.0, f, 1e-10, 12.5));
  EXPECT_DOUBLE_EQ(spurs_power_forward(1e-3, 20.0, f, 1e-10, 12.5),
                   1e-3 * 1e-10 * 12.5 * 20.0 * std::pow(10.0, -0.4));
}

TEST(ExcessNoise, Identities) {
  EXPECT_EQ(raman_to_excess_noise(0.0, 0.5, 193.4, 12.5), 0.0);
  EXPECT_DOUBLE_EQ(raman_to_excess_noise(1e-12, 0.25, 193.4, 12.5),
                   2.0 * raman_to_excess_noise(1e-12, 0.5, 193.4, 12.5));
  const double one_photon = kPlanck * 193.4e12 * 12.5e9;
  EXPECT_NEAR(raman_to_excess_noise(one_photon, 1.0, 193.4, 12.5), 2.0, 1e-12);
  EXPECT_THROW(raman_to_excess_noise(1e-12, 0.0, 193.4, 12.5), NumericFailure);
}

TEST(Skr, ClampsToZeroAtHighNoise) {
  const CvQkdParams p;
  const SkrResult r = skr_gg02(p, 0.5, 2.0);
  EXPECT_LT(p.beta * r.mutual_information, r.holevo_bound);
  EXPECT_EQ(r.bits_per_symbol, 0.0);
  EXPECT_EQ(r.rate_bps, 0.0);
}

TEST(Skr, NominalPointMatchesOracle) {
  const CvQkdParams p;  // v_a 4, beta 0.95, heterodyne, ideal detector
  const SkrResult r = skr_gg02(p, 0.5, 0.01);
  const oracle::OracleResult o = oracle::evaluate(to_oracle(p), 0.5, 0.01);
  EXPECT_GT(r.bits_per_symbol, 0.0);
  EXPECT_LT(rel_err(r.bits_per_symbol, o.bits_per_symbol), 1e-9);
  EXPECT_LT(rel_err(r.rate_bps, o.rate_bps), 1e-9);
}

TEST(Skr, SymplecticEigenvaluesMatchOracleOnRandomDraws) {
  std::mt19937_64 rng(20261017);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    CvQkdParams p;
    p.v_a = 0.5 + 30.0 * u(rng);
    p.beta = 0.85 + 0.15 * u(rng);
    // The purified detector needs eta < 1 whenever v_el > 0; every tenth
    // draw is an ideal detector instead.
    p.eta_det = (i % 10 == 0) ? 1.0 : 0.4 + 0.59 * u(rng);
    p.v_el = (i % 10 == 0) ? 0.0 : 0.2 * u(rng);
    p.detection = (i % 2) ? Detection::kHeterodyne : Detection::kHomodyne;
    const double t = 0.01 + 0.99 * u(rng);
    const double xi = 0.2 * u(rng);

    const SymplecticSpectrum s = symplectic_eigenvalues(p, t, xi);
    const oracle::OracleResult o = oracle::evaluate(to_oracle(p), t, xi);
    std::vector<double> ab{s.nu2, s.nu1};
    std::vector<double> cond{s.nu3, s.nu4, 1.0};
    std::sort(cond.begin(), cond.end());
    ASSERT_EQ(o.nu_ab.size(), 2u);
    ASSERT_EQ(o.nu_cond.size(), 3u);
    for (int k = 0; k < 2; ++k) EXPECT_LT(rel_err(ab[k], o.nu_ab[k]), 1e-9) << "draw " << i;
    for (int k = 0; k < 3; ++k) EXPECT_LT(rel_err(cond[k], o.nu_cond[k]), 1e-9) << "draw " << i;

    const SkrResult r = skr_gg02(p, t, xi);
    EXPECT_LT(rel_err(r.mutual_information, o.mutual_information), 1e-9) << "draw " << i;
    EXPECT_NEAR(r.holevo_bound, o.holevo_bound, 1e-9 * std::max(1.0, o.holevo_bound));
  }
}

TEST(Skr, MonotoneInNoiseAndTransmittance) {
  for (Detection d : {Detection::kHeterodyne, Detection::kHomodyne}) {
    CvQkdParams p;
    p.detection = d;
    p.eta_det = 0.7;
    p.v_el = 0.05;
    double prev = skr_gg02(p, 0.5, 0.0).rate_bps;
    for (int i = 1; i < 100; ++i) {
      const double r = skr_gg02(p, 0.5, 0.002 * i).rate_bps;
      EXPECT_LE(r, prev) << "xi step " << i;
      prev = r;
    }
    prev = skr_gg02(p, 0.01, 0.01).rate_bps;
    for (int i = 1; i < 100; ++i) {
      const double r = skr_gg02(p, 0.01 + 0.0099 * i, 0.01).rate_bps;
      EXPECT_GE(r, prev) << "T step " << i;
      prev = r;
    }
  }
}

TEST(Skr, EntropyRejectsUnphysicalEigenvalue) {
  EXPECT_EQ(entropy_of_symplectic_eigenvalue(1.0), 0.0);
  EXPECT_THROW(entropy_of_symplectic_eigenvalue(0.5), NumericFailure);
}

TEST(LinkSkr, EmptyLoadEqualsBaseNoise) {
  const FiberParams f = shipped_fiber();
  const CvQkdParams p;
  const double t = transmittance(15.0, f.alpha_db_per_km);
  EXPECT_DOUBLE_EQ(link_skr(f, 15.0, p, {}).rate_bps, skr_gg02(p, t, p.xi_base).rate_bps);
}

TEST(LinkSkr, RamanPowerIsLinearAndSkrNeverRises) {
  const FiberParams f = shipped_fiber();
  const CvQkdParams p;
  const ClassicalChannel ch{1e-3, 194.0};
  const std::vector<ClassicalChannel> one{ch}, two{ch, ch};
  EXPECT_DOUBLE_EQ(link_raman_power(f, 15.0, p, two), 2.0 * link_raman_power(f, 15.0, p, one));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> power(1e-5, 1e-2);
  std::uniform_int_distribution<int> slot(0, 39);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ClassicalChannel> load;
    double prev = link_skr(f, 12.0, p, load).rate_bps;
    for (int k = 0; k < 10; ++k) {
      int s = slot(rng);
      if (s == 17) continue;  // 191.7 + 0.1*17 = 193.4 THz is the quantum carrier
      load.push_back({power(rng), 191.7 + 0.1 * s});
      const double r = link_skr(f, 12.0, p, load).rate_bps;
      EXPECT_LE(r, prev);
      prev = r;
    }
  }
}

TEST(Params, Validation) {
  CvQkdParams p;
  p.beta = 1.5;
  EXPECT_THROW(p.validate(), InvalidInput);
  p = {};
  p.eta_det = 0.0;
  EXPECT_THROW(p.validate(), InvalidInput);
  EXPECT_THROW(detection_from_string("balanced"), InvalidInput);
  FiberParams f;
  EXPECT_THROW(f.validate(), InvalidInput);
  EXPECT_NEAR(dbm_to_watt(0.0), 1e-3, 1e-18);
  EXPECT_NEAR(watt_to_dbm(1e-4), -10.0, 1e-12);
}

}  // namespace
}  // namespace qaplan
