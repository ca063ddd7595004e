#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "agreetensor/io.hpp"
#include "support.hpp"

using namespace agreetensor;
using namespace testing_support;
using nlohmann::json;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

}  // namespace

TEST(TensorText, ExactRoundTrip) {
  for (Family f : {Family::QI, Family::Mix, Family::pQI}) {
    const auto p = materialize(sample_params(f, 3, 5));
    std::stringstream buf;
    write_tensor(buf, p);
    EXPECT_EQ(read_tensor(buf), p);
  }
}

TEST(TensorText, AcceptsDecimalsRationalsAndAnyOrder) {
  std::istringstream in(
      "# comment\n"
      "n=2\n"
      "2 2 2 0.375\n1 1 1 3/8\n1 1 2 1/24\n1 2 1 1/24\n\n1 2 2 1/24\n2 1 1 1/24\n2 1 2 1/24\n2 2 1 1/24\n");
  const auto p = read_tensor(in);
  EXPECT_EQ(p(2, 2, 2), R("3/8"));
  EXPECT_EQ(p(1, 2, 1), R("1/24"));
}

TEST(TensorText, FloatWriteReadsBack) {
  const auto p = materialize(sample_params(Family::mix, 2, 3)).to_float();
  std::stringstream buf;
  write_tensor(buf, p);
  EXPECT_EQ(read_float_tensor(buf), p);
}

TEST(TensorText, Errors) {
  auto parse = [](const char* text) {
    return code_of([&] {
      std::istringstream in(text);
      read_tensor(in, Normalization::Unnormalized);
    });
  };
  EXPECT_EQ(parse(""), ErrorCode::Parse);
  EXPECT_EQ(parse("n=x\n"), ErrorCode::Parse);
  EXPECT_EQ(parse("n=1\n1 1 1 1\n1 1 1 1\n"), ErrorCode::Parse);
  EXPECT_EQ(parse("n=1\n1 1 2 1\n"), ErrorCode::Parse);
  EXPECT_EQ(parse("n=2\n1 1 1 1\n"), ErrorCode::Parse);
  EXPECT_EQ(parse("n=1\n1 1 1 1 7\n"), ErrorCode::Parse);
  EXPECT_EQ(parse("n=1\n1 1 1 abc\n"), ErrorCode::Parse);
  EXPECT_EQ(parse("n=1\n1 1 1 -1\n"), ErrorCode::InvalidTensor);
  std::istringstream unnormalized("n=1\n1 1 1 2\n");
  EXPECT_THROW(read_tensor(unnormalized), Error);
}

TEST(CountsText, RoundTripAndIntegrality) {
  const auto c = CountTensor::from_entries(2, {1, 0, 3, 4, 5, 6, 7, 8});
  std::stringstream buf;
  write_counts(buf, c);
  EXPECT_EQ(read_counts(buf).entries(), c.entries());
  std::istringstream frac("n=1\n1 1 1 1/2\n");
  EXPECT_EQ(code_of([&] { read_counts(frac); }), ErrorCode::Parse);
  std::istringstream zero("n=1\n1 1 1 0\n");
  EXPECT_EQ(code_of([&] { read_counts(zero); }), ErrorCode::InvalidTensor);
}

TEST(ParamsJson, RoundTripEveryFamily) {
  for (Family f : {Family::QI, Family::Mix, Family::qI, Family::mix, Family::pQI, Family::pMix}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto p = sample_params(f, 3, seed);
      const json j = params_to_json(p);
      EXPECT_EQ(j["family"], to_string(f));
      const auto back = params_from_json(json::parse(j.dump()));
      EXPECT_EQ(materialize(back), materialize(p));
      EXPECT_EQ(params_to_json(back), j);
    }
  }
}

TEST(ParamsJson, NumbersAreReadExactly) {
  const json j = json::parse(R"({"family": "mix", "n": 2, "a": [0.1, 0.9], "b": ["1/3", "2/3"],
                                  "c": [0.5, "0.5"], "alpha": 0.7})");
  const auto p = std::get<MixUniformParams<Rational>>(params_from_json(j));
  EXPECT_EQ(p.a[0], R("1/10"));
  EXPECT_EQ(p.alpha, R("7/10"));
  EXPECT_EQ(p.b[1], R("2/3"));
}

TEST(ParamsJson, PairwiseMixAlphaZeroImplied) {
  const json j = json::parse(R"({"family": "pMix", "a": ["1/2","1/2"], "b": ["1/2","1/2"], "c": ["1/2","1/2"],
                                  "alpha12": "1/10", "alpha13": "1/10", "alpha23": 0, "alpha123": "1/5"})");
  EXPECT_EQ(std::get<PairwiseMixParams<Rational>>(params_from_json(j)).alpha0, R("3/5"));
}

TEST(ParamsJson, Errors) {
  EXPECT_EQ(code_of([] { params_from_json(json::parse(R"({"family": "qI"})")); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { params_from_json(json::parse(R"({"family": "zz", "a": [1], "b": [1], "c": [1]})")); }),
            ErrorCode::Parse);
  EXPECT_EQ(code_of([] {
              params_from_json(json::parse(R"({"family": "qI", "n": 3, "a": [1,1], "b": [1,1], "c": [1,1], "gamma": 2})"));
            }),
            ErrorCode::Parse);
  EXPECT_EQ(code_of([] {
              params_from_json(json::parse(R"({"family": "qI", "a": [1,1], "b": [1,1], "c": [1,true], "gamma": 2})"));
            }),
            ErrorCode::Parse);
  EXPECT_EQ(code_of([] {
              params_from_json(json::parse(R"({"family": "mix", "a": [1,1], "b": [1,1], "c": [1,1], "alpha": 2})"));
            }),
            ErrorCode::InvalidParams);
}

TEST(MarginalsJson, ShippedAsymmetricFile) {
  const auto m = marginals_from_json(read_json_file(AGREETENSOR_SOURCE_DIR "/data/asymmetric_marginals.json"));
  EXPECT_EQ(m.a, Rs({"1/10", "1/10", "4/5"}));
  EXPECT_EQ(m.b, Rs({"1/15", "2/15", "4/5"}));
  EXPECT_EQ(m.c, Rs({"1/6", "1/6", "2/3"}));
  EXPECT_THROW(marginals_from_json(json::parse(R"({"a": [1, 1], "b": [1, 0], "c": [1, 0]})")), Error);
}

TEST(FitJson, HasMetadata) {
  const auto counts = round_counts(materialize(sample_params(Family::qI, 2, 1)).to_float(), 1000);
  const json j = fit_to_json(ipf_fit(counts, Family::qI));
  EXPECT_EQ(j["family"], "qI");
  EXPECT_TRUE(j["metadata"]["converged"].get<bool>());
  EXPECT_EQ(j["fitted"].size(), 8u);
  EXPECT_TRUE(j.contains("gamma"));

  const auto perfect = CountTensor::from_entries(2, {4, 0, 0, 0, 0, 0, 0, 4});
  const json k = fit_to_json(ipf_fit(perfect, Family::qI));
  EXPECT_FALSE(k.contains("gamma"));
  EXPECT_FALSE(k["metadata"]["warnings"].empty());
}

TEST(CounterexampleJson, Fields) {
  const json j = counterexample_to_json(boundary_counterexample(Direction::MixNotInQI, 2));
  EXPECT_EQ(j["direction"], "MixNotInQI");
  EXPECT_EQ(j["tensor"][0], "1/2");
  EXPECT_TRUE(j["witness_holds"].get<bool>());
}

TEST(Files, MissingFileIsIoError) {
  EXPECT_EQ(code_of([] { read_text_file("/nonexistent/file"); }), ErrorCode::Io);
  EXPECT_EQ(code_of([] { write_text_file("/nonexistent/dir/file", "x"); }), ErrorCode::Io);
}

TEST(Decimals, NearestDouble) {
  EXPECT_EQ(to_double(R("0.1")), 0.1);
  EXPECT_EQ(to_double(R("-2/3")), -2.0 / 3.0);
  EXPECT_EQ(to_double(R("1/3")), 1.0 / 3.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int t = 0; t < 2000; ++t) {
    const double x = u(rng) * std::pow(10.0, t % 9 - 4);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    EXPECT_EQ(to_double(parse_rational(buf)), std::strtod(buf, nullptr)) << buf;
  }
}
