#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "curvcheck/error.hpp"
#include "curvcheck/example_chains.hpp"
#include "curvcheck/functionals.hpp"
#include "curvcheck/semigroup.hpp"
#include "fixtures.hpp"

using namespace curvcheck;
using curvcheck::testing::vec;

TEST(Evolve, Examples) {
  const auto chain = two_point_chain(1, 1);
  const Eigen::VectorXd f = vec({1.5, 0.5});
  EXPECT_EQ(evolve(chain, f, 0.0), f);
  const Eigen::VectorXd p = evolve(chain, f, 0.5);
  EXPECT_NEAR(p(0), 1 + std::exp(-1.0) * 0.5, 1e-14);
  EXPECT_NEAR(p(1), 1 - std::exp(-1.0) * 0.5, 1e-14);
  EXPECT_NEAR(p(0), 1.1839397, 1e-7);
  EXPECT_THROW(evolve(chain, f, -1.0), Error);
}

TEST(Evolve, MatchesMatrixExponentialSeries) {
  // scaling and squaring with a Taylor series as an independent route to exp(tL)
  const auto chain = poisson_chain(1.0, 8);
  const double t = 0.7;
  const int squarings = 10;
  const Eigen::MatrixXd a = chain.generator() * (t / std::pow(2.0, squarings));
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::MatrixXd expm = term;
  for (int k = 1; k < 20; ++k) {
    term = term * a / k;
    expm += term;
  }
  for (int i = 0; i < squarings; ++i) expm = expm * expm;
  std::mt19937_64 rng(1);
  const Eigen::VectorXd f = curvcheck::testing::gaussian(rng, chain.size());
  EXPECT_LT((evolve(chain, f, t) - expm * f).cwiseAbs().maxCoeff(), 1e-11);
}

TEST(Evolve, MassConservationAndSemigroupProperty) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (const auto& [name, chain] : curvcheck::testing::operator_fixtures()) {
    const HeatSemigroup semigroup(chain);
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::VectorXd f = curvcheck::testing::gaussian(rng, chain.size());
      const double s = u(rng), t = u(rng);
      const Eigen::VectorXd pt = semigroup.evolve(f, t);
      EXPECT_NEAR(integrate_pi(chain, pt), integrate_pi(chain, f), 1e-12) << name;
      EXPECT_LT((semigroup.evolve(pt, s) - semigroup.evolve(f, s + t)).cwiseAbs().maxCoeff(), 1e-10) << name;
    }
  }
}

TEST(Evolve, ConvergesToMean) {
  std::mt19937_64 rng(32);
  for (const auto& [name, chain] : curvcheck::testing::operator_fixtures()) {
    const HeatSemigroup semigroup(chain);
    const Eigen::VectorXd f = curvcheck::testing::gaussian(rng, chain.size());
    const Eigen::VectorXd limit = semigroup.evolve(f, 50.0 / semigroup.spectral_gap());
    EXPECT_LT((limit.array() - integrate_pi(chain, f)).abs().maxCoeff(), 1e-10) << name;
  }
  EXPECT_NEAR(HeatSemigroup(two_point_chain(1, 1)).spectral_gap(), 2.0, 1e-14);
  EXPECT_NEAR(HeatSemigroup(complete_chain(4)).spectral_gap(), 4.0, 1e-13);
  EXPECT_NEAR(HeatSemigroup(hypercube_chain(3)).spectral_gap(), 2.0, 1e-13);
}

TEST(TimeGrid, Parsing) {
  const auto geom = parse_time_grid("geom:t0=1e-3,ratio=2,count=4");
  EXPECT_EQ(geom, (std::vector<double>{1e-3, 2e-3, 4e-3, 8e-3}));
  const auto lin = parse_time_grid("lin:0,1,5");
  ASSERT_EQ(lin.size(), 5u);
  EXPECT_DOUBLE_EQ(lin[2], 0.5);
  EXPECT_THROW(parse_time_grid("cubic:1"), Error);
  EXPECT_THROW(parse_time_grid("lin:1,0,3"), Error);
}

TEST(Trajectory, ConstantDensityIsFlat) {
  const auto chain = complete_chain(3);
  const auto traj = entropy_trajectory(chain, Eigen::VectorXd::Ones(3), geometric_grid(1e-3, 2.0, 10));
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    EXPECT_NEAR(traj.lambda[i], 0.0, 1e-15);
    EXPECT_NEAR(traj.lambda_prime[i], 0.0, 1e-15);
    EXPECT_NEAR(traj.lambda_double_prime[i], 0.0, 1e-15);
  }
  const auto ode = check_entropy_ode(traj, 5.0, PowerType{3.0, 1.0});
  EXPECT_NEAR(ode.min_slack, 0.0, 1e-14);
}

TEST(Trajectory, TwoPointInitialValues) {
  const auto chain = two_point_chain(1, 1);
  const auto traj = entropy_trajectory(chain, vec({1.5, 0.5}), {0.0, 0.1});
  EXPECT_NEAR(traj.lambda[0], 0.1308120, 1e-7);
  EXPECT_NEAR(traj.lambda_prime[0], -0.5493061, 1e-7);
  EXPECT_THROW(entropy_trajectory(chain, vec({2.0, 0.5}), {0.0}), Error);
  try {
    entropy_trajectory(chain, vec({2.0, 0.5}), {0.0});
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonDensity);
  }
}

TEST(Trajectory, SecondDerivativeMatchesDifferenceOfFirst) {
  std::mt19937_64 rng(33);
  const auto chain = hypercube_chain(3);
  const Eigen::VectorXd f = curvcheck::testing::density(rng, chain);
  const double h = 1e-4;
  for (double t : {0.05, 0.3, 1.0}) {
    const auto traj = entropy_trajectory(chain, f, {t - h, t, t + h});
    const double fd = (traj.lambda_prime[2] - traj.lambda_prime[0]) / (2 * h);
    EXPECT_NEAR(traj.lambda_double_prime[1], fd, 1e-6 * (1 + std::abs(fd))) << t;
  }
}

TEST(Trajectory, FiniteDifferenceIsSecondOrder) {
  std::mt19937_64 rng(34);
  const auto chain = complete_chain(3);
  const Eigen::VectorXd f = curvcheck::testing::density(rng, chain);
  const std::vector<double> times{0.01, 0.05, 0.2};
  const auto coarse = entropy_trajectory(chain, f, times, 1e-3);
  const auto fine = entropy_trajectory(chain, f, times, 1e-4);
  for (std::size_t i = 0; i < times.size(); ++i) {
    // O(h²): a tenfold smaller step shrinks the error about a hundredfold
    EXPECT_LT(fine.fd_error[i], coarse.fd_error[i] / 30 + 1e-11) << times[i];
    EXPECT_LT(coarse.fd_error[i], 1e-4) << times[i];
  }
}

TEST(EntropyOde, TwoPointCertificate) {
  const auto ex = make_example("two_point", {});
  const auto traj = entropy_trajectory(ex.chain, vec({1.5, 0.5}), geometric_grid(1e-3, 1.3, 40));
  const auto ode = check_entropy_ode(traj, ex.certificate->kappa, ex.certificate->F);
  EXPECT_GE(ode.min_slack, -1e-8);
  EXPECT_TRUE(ode.monotone);
}

TEST(EntropyOde, CompleteThreeCertificate) {
  std::mt19937_64 rng(35);
  const auto chain = complete_chain(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd f = curvcheck::testing::density(rng, chain);
    const auto traj = entropy_trajectory(chain, f, geometric_grid(1e-3, 1.5, 25));
    const auto ode = check_entropy_ode(traj, std::sqrt(3.0), PowerType{12.0, 1.0});
    EXPECT_GE(ode.min_slack, -1e-8) << trial;
    EXPECT_TRUE(ode.monotone) << trial;
    for (double d2 : traj.lambda_double_prime) EXPECT_GE(d2, -1e-12);
  }
}

TEST(EntropyOde, CsvExport) {
  const auto chain = two_point_chain(1, 1);
  const auto traj = entropy_trajectory(chain, vec({1.5, 0.5}), {0.0, 0.5});
  const auto ode = check_entropy_ode(traj, 0.0, PowerType{});
  std::ostringstream out;
  write_trajectory_csv(out, traj, ode);
  std::istringstream lines(out.str());
  std::string header, row;
  std::getline(lines, header);
  EXPECT_EQ(header, "t,Lambda,LambdaPrime,LambdaDoublePrime,slack");
  int rows = 0;
  while (std::getline(lines, row)) ++rows;
  EXPECT_EQ(rows, 2);
}

TEST(Clamp, FloorsTinyEntries) {
  Eigen::VectorXd f = vec({1.0, 0.0, -1e-20, 2e-300});
  EXPECT_EQ(clamp_positive(f), 2);
  EXPECT_EQ(f(1), 1e-300);
  EXPECT_EQ(f(3), 2e-300);
}
