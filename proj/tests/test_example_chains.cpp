#include <gtest/gtest.h>

#include <cmath>

#include "curvcheck/cd.hpp"
#include "curvcheck/error.hpp"
#include "curvcheck/example_chains.hpp"
#include "curvcheck/functionals.hpp"
#include "curvcheck/operators.hpp"
#include "curvcheck/upsilon.hpp"
#include "fixtures.hpp"

using namespace curvcheck;
using curvcheck::testing::vec;

namespace {

ErrorKind kind_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST(MakeExample, Certificates) {
  const auto two = make_example("two_point", {{{"a", 1}, {"b", 2}}, {}});
  ASSERT_TRUE(two.certificate);
  EXPECT_EQ(two.certificate->kappa, 0.0);
  const auto& nu_f = std::get<NuBased>(two.certificate->F);
  EXPECT_EQ(nu_f.out_scale, 1.0);
  EXPECT_EQ(nu_f.c, 1.5);
  EXPECT_EQ(nu_f.d, 0.5);
  EXPECT_EQ(nu_f.arg_scale, 2.0);
  EXPECT_TRUE(two.chain.pi().isApprox(vec({2.0 / 3.0, 1.0 / 3.0})));

  const auto k3 = make_example("complete", {{{"n", 3}, {"alpha", 0.25}}, {}});
  EXPECT_NEAR(k3.certificate->kappa, std::sqrt(3.0), 1e-15);
  EXPECT_EQ(std::get<PowerType>(k3.certificate->F).n, 12.0);

  const auto q3 = make_example("hypercube", {{{"d", 3}}, {}});
  EXPECT_EQ(q3.certificate->kappa, 2.0);
  const auto& cube_f = std::get<NuBased>(q3.certificate->F);
  EXPECT_EQ(cube_f.out_scale, 1.5);
  EXPECT_EQ(cube_f.c, 2.0);
  EXPECT_EQ(cube_f.d, 5.0);
  EXPECT_EQ(cube_f.arg_scale, 3.0);
  for (double r : {0.1, 1.0, 4.0}) EXPECT_NEAR(cd_value(q3.certificate->F, r), 1.5 * nu(2.0, 5.0, -r / 3), 1e-15);

  const auto bd = make_example("birth_death", {{{"lambda", 1}, {"cutoff", 20}}, {}});
  EXPECT_FALSE(bd.certificate);
  EXPECT_TRUE(bd.chain.truncated());
  EXPECT_FALSE(bd.notes.empty());
}

TEST(MakeExample, BadParams) {
  EXPECT_EQ(kind_of([] { make_example("complete", {{{"n", 3}, {"alpha", 0.5}}, {}}); }), ErrorKind::BadParams);
  EXPECT_EQ(kind_of([] { make_example("complete", {{{"n", 1}}, {}}); }), ErrorKind::BadParams);
  EXPECT_EQ(kind_of([] { make_example("hypercube", {{{"d", 0}}, {}}); }), ErrorKind::BadParams);
  EXPECT_EQ(kind_of([] { make_example("weighted_complete", {{{"alpha", 1.0}}, {1.0, 2.0}}); }),
            ErrorKind::BadParams);
  EXPECT_EQ(kind_of([] { make_example("two_point", {{{"a", -1}}, {}}); }), ErrorKind::BadParams);
  EXPECT_EQ(kind_of([] { make_example("star", {}); }), ErrorKind::InvalidInput);
}

TEST(MakeExample, TwoPointMatchesSymbolicEvaluation) {
  for (const auto [a, b] : {std::pair{1.0, 3.0}, std::pair{2.5, 0.4}, std::pair{1.0, 1.0}}) {
    const auto chain = two_point_chain(a, b);
    for (double t = -6.0; t <= 6.0; t += 0.25) {
      const Eigen::VectorXd f = vec({0.0, t});
      // 2Ψ₂(f)(x) = k k̃ ν_{1+k/k̃, k/k̃}(f(x̃) - f(x)) with k = k(x, x̃)
      const double at0 = a * b * nu(1 + a / b, a / b, t);
      const double at1 = a * b * nu(1 + b / a, b / a, -t);
      const Eigen::VectorXd p2 = psi2(chain, f, UpsilonKernel{});
      EXPECT_NEAR(2 * p2(0), at0, 1e-10 * (1 + std::abs(at0))) << a << "," << b << " t=" << t;
      EXPECT_NEAR(2 * p2(1), at1, 1e-10 * (1 + std::abs(at1))) << a << "," << b << " t=" << t;
    }
  }
}

TEST(MakeExample, WeightedCompleteReducesToComplete) {
  for (int n : {3, 5}) {
    const auto plain = make_example("complete", {{{"n", n}, {"alpha", 0.2}}, {}});
    const auto weighted = make_example("weighted_complete", {{{"alpha", 0.2}}, std::vector<double>(n, 1.0)});
    EXPECT_NEAR(weighted.certificate->kappa, plain.certificate->kappa, 1e-14);
    const auto& pw = std::get<PowerType>(weighted.certificate->F);
    const auto& pp = std::get<PowerType>(plain.certificate->F);
    EXPECT_NEAR(pw.n, pp.n, 1e-12);
    EXPECT_EQ(pw.delta, pp.delta);
    EXPECT_TRUE(weighted.chain.generator().isApprox(plain.chain.generator()));
  }
}

TEST(MakeExample, EveryCertificateSurvivesSampling) {
  const std::vector<Example> examples{
      make_example("two_point", {{{"a", 1}, {"b", 1}}, {}}),
      make_example("two_point", {{{"a", 1}, {"b", 2}}, {}}),
      make_example("complete", {{{"n", 3}}, {}}),
      make_example("complete", {{{"n", 5}}, {}}),
      make_example("weighted_complete", {{}, {1.0, 2.0, 3.0}}),
      make_example("weighted_complete", {{{"delta", 2.0}}, {1.0, 1.5, 0.7, 2.0}}),
      make_example("hypercube", {{{"d", 2}}, {}}),
      make_example("hypercube", {{{"d", 3}}, {}}),
  };
  for (const auto& ex : examples) {
    const auto verdict = verify_cd_random(ex.chain, ex.certificate->kappa, ex.certificate->F, 10000, 2024);
    EXPECT_NE(verdict.status, CDVerdict::Status::Falsified) << ex.family << " slack " << verdict.witness_slack;
  }
}

TEST(PoissonTestFunction, Examples) {
  const auto flat = poisson_test_function(1.0, 0.0, 30);
  EXPECT_LT((flat.f.array() - 1.0).abs().maxCoeff(), 1e-8);
  EXPECT_NEAR(flat.renormalization, 1.0, 1e-8);

  const auto tilted = poisson_test_function(1.0, 2.0, 40);
  const auto chain = poisson_chain(1.0, 40);
  EXPECT_NEAR(chain.pi().dot(tilted.f), 1.0, 1e-12);
  EXPECT_NEAR(tilted.renormalization, 1.0, 1e-8);
  const double e2 = std::exp(2.0);
  EXPECT_NEAR(entropy(chain, tilted.f), e2 + 1, 1e-6);
  EXPECT_EQ(kind_of([] { poisson_test_function(1.0, 5.0, 60); }), ErrorKind::TruncationInsufficient);
}

TEST(EtaMaps, HypercubeFlips) {
  for (int d : {1, 2, 3, 4}) {
    const auto report = ricci_flat_check(hypercube_chain(d), hypercube_eta_maps(d));
    EXPECT_TRUE(report.passed) << d << " " << report.detail;
  }
  const auto eta1 = hypercube_eta_maps(1);
  ASSERT_EQ(eta1.size(), 2u);
  EXPECT_EQ(eta1[0][0].at(0), 1u);
  EXPECT_EQ(eta1[0][0].at(1), 0u);
}

TEST(EtaMaps, DuplicatedMapBreaksDisjointness) {
  auto eta = hypercube_eta_maps(3);
  eta[0][1] = eta[0][0];
  const auto report = ricci_flat_check(hypercube_chain(3), eta);
  EXPECT_FALSE(report.passed);
  EXPECT_EQ(report.violated_condition, 2);
  EXPECT_EQ(report.center, 0u);
}
