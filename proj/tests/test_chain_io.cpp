#include <gtest/gtest.h>

#include <sstream>

#include "curvcheck/chain_io.hpp"
#include "curvcheck/error.hpp"
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

TEST(ChainSpec, ExplicitStates) {
  const auto loaded = parse_chain_spec(R"({"states": ["a", "b"], "rates": [["a", "b", 1], ["b", "a", 2]]})");
  EXPECT_EQ(loaded.example.family, "explicit");
  EXPECT_FALSE(loaded.example.certificate);
  EXPECT_EQ(loaded.chain().labels(), (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(loaded.chain().pi().isApprox(vec({2.0 / 3.0, 1.0 / 3.0})));
  EXPECT_EQ(loaded.text.front(), '{');
}

TEST(ChainSpec, ExplicitWithSuppliedMeasure) {
  const auto loaded = parse_chain_spec(
      R"({"states": [0, 1, 2], "rates": [[0, 1, 1], [1, 0, 1], [1, 2, 2], [2, 1, 2]], "pi": [1, 1, 1]})");
  EXPECT_TRUE(loaded.chain().pi().isApprox(Eigen::VectorXd::Constant(3, 1.0 / 3.0)));
  // a measure that breaks detailed balance is rejected
  EXPECT_EQ(kind_of([] {
              parse_chain_spec(R"({"states": [0, 1], "rates": [[0, 1, 1], [1, 0, 2]], "pi": [1, 1]})");
            }),
            ErrorKind::DetailedBalanceViolated);
}

TEST(ChainSpec, Families) {
  const auto cube = parse_chain_spec(R"({"family": "hypercube", "params": {"d": 3}})");
  EXPECT_EQ(cube.chain().size(), 8u);
  ASSERT_TRUE(cube.example.certificate);
  EXPECT_EQ(cube.example.certificate->kappa, 2.0);
  const auto weighted = parse_chain_spec(R"({"family": "weighted_complete", "params": {"l": [1, 2, 3]}})");
  EXPECT_EQ(weighted.chain().size(), 3u);
  EXPECT_EQ(weighted.example.params.weights, (std::vector<double>{1, 2, 3}));
}

TEST(ChainSpec, Errors) {
  EXPECT_EQ(kind_of([] { parse_chain_spec("{not json"); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { parse_chain_spec("[1, 2]"); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { parse_chain_spec(R"({"rates": []})"); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { parse_chain_spec(R"({"states": [0, 1], "rates": [[0, 1]]})"); }),
            ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { parse_chain_spec(R"({"states": [0, 1], "rates": [[0, 1, -1], [1, 0, 1]]})"); }),
            ErrorKind::NegativeRate);
  EXPECT_EQ(kind_of([] { parse_chain_spec(R"({"states": [0, 1, 2], "rates": [[0, 1, 1], [1, 0, 1]]})"); }),
            ErrorKind::NonIrreducible);
  EXPECT_EQ(kind_of([] { parse_chain_spec(R"({"family": "complete", "params": {"n": 1}})"); }),
            ErrorKind::BadParams);
  EXPECT_EQ(kind_of([] { parse_chain_spec(R"({"family": "moebius"})"); }), ErrorKind::InvalidInput);
}

TEST(ChainSpec, RoundTrips) {
  const ExampleParams params{{{"n", 4}, {"alpha", 0.2}}, {}};
  const auto family = parse_chain_spec(emit_family_spec("complete", params));
  EXPECT_EQ(family.example.family, "complete");
  EXPECT_EQ(family.example.params.get("alpha", 0), 0.2);

  const MarkovChain chain = poisson_chain(1.5, 12);
  const auto back = parse_chain_spec(emit_explicit_spec(chain));
  EXPECT_EQ(back.chain().labels(), chain.labels());
  EXPECT_TRUE(back.chain().generator().isApprox(chain.generator(), 1e-15));
  EXPECT_TRUE(back.chain().pi().isApprox(chain.pi(), 1e-14));
}

TEST(Density, Formats) {
  const auto chain = parse_chain_spec(R"({"states": ["a", "b", "c"], "rates": [["a", "b", 1], ["b", "a", 1],
                                         ["b", "c", 1], ["c", "b", 1]]})")
                         .chain();
  EXPECT_EQ(parse_density("[1, 2, 3]", chain), vec({1, 2, 3}));
  EXPECT_EQ(parse_density(R"({"c": 3, "a": 1, "b": 2})", chain), vec({1, 2, 3}));
  EXPECT_EQ(parse_density("1 2\n3\n", chain), vec({1, 2, 3}));
  EXPECT_THROW(parse_density("[1, 2]", chain), Error);
  EXPECT_THROW(parse_density("1 two 3", chain), Error);
  EXPECT_THROW(parse_density(R"({"a": 1, "b": 2, "z": 3})", chain), Error);
}

TEST(ReadText, DashReadsStream) {
  std::istringstream in("payload");
  EXPECT_EQ(read_text("-", in), "payload");
  EXPECT_EQ(kind_of([&] { read_text("/nonexistent/spec.json", in); }), ErrorKind::InvalidInput);
}
