#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "graphex/config.hpp"
#include "graphex/errors.hpp"

using namespace graphex;
using nlohmann::json;

TEST(ParseModelConfig, PlainKinds) {
  auto c = parse_model_config(json::parse(R"({"kind": "SeparablePower", "sigma": 0.5})"));
  EXPECT_EQ(c.kind, ModelKind::SeparablePower);
  EXPECT_EQ(c.sigma, 0.5);
  EXPECT_FALSE(c.tau0.has_value());
  auto g = parse_model_config(json::parse(R"({"kind": "GGP", "sigma0": -0.2, "tau0": 3})"));
  EXPECT_EQ(g.kind, ModelKind::GGP);
  EXPECT_EQ(g.sigma0, -0.2);
  EXPECT_EQ(g.tau0, 3.0);
}

TEST(ParseModelConfig, BlockModel) {
  auto c = parse_model_config(json::parse(R"({
    "partition": [0, 0.5, 1],
    "B": [[0.5, 0.1], [0.1, 0.3]],
    "eta": {"kind": "Exponential"}})"));
  EXPECT_EQ(c.kind, ModelKind::LocalGlobal);
  ASSERT_EQ(c.block_matrix.size(), 2u);
  EXPECT_EQ(c.block_matrix[1][0], 0.1);
  ASSERT_TRUE(c.eta);
  EXPECT_EQ(c.eta->kind, ModelKind::Exponential);
}

TEST(ParseModelConfig, Errors) {
  EXPECT_THROW(parse_model_config(json::parse("[1, 2]")), ValidationError);
  EXPECT_THROW(parse_model_config(json::parse(R"({"sigma": 0.5})")), ValidationError);
  EXPECT_THROW(parse_model_config(json::parse(R"({"kind": "Gaussian"})")), ValidationError);
  EXPECT_THROW(parse_model_config(json::parse(R"({"kind": "SeparablePower", "sigma": "x"})")),
               ValidationError);
  try {
    parse_model_config(json::parse(R"({"kind": "Exponential", "sigmaa": 1})"));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("sigmaa"), std::string::npos);
  }
}

TEST(ParseModelConfig, JsonRoundTrip) {
  auto doc = json::parse(R"({
    "kind": "LocalGlobal",
    "partition": [0, 0.5, 0.8, 1],
    "B": [[0.7, 0.1, 0.1], [0.1, 0.5, 0.05], [0.1, 0.05, 0.9]],
    "eta": {"kind": "SeparablePower", "sigma": 0.8}})");
  auto c = parse_model_config(doc);
  EXPECT_EQ(to_json(c), doc);
  EXPECT_EQ(config_digest(c), config_digest(parse_model_config(to_json(c))));
}

TEST(ConfigDigest, DistinguishesParameters) {
  auto a = parse_model_config(json::parse(R"({"kind": "SeparablePower", "sigma": 0.5})"));
  auto b = parse_model_config(json::parse(R"({"kind": "SeparablePower", "sigma": 0.6})"));
  EXPECT_NE(config_digest(a), config_digest(b));
  EXPECT_EQ(config_digest(a).size(), 16u);
}

TEST(LoadModelConfig, FileErrors) {
  auto dir = std::filesystem::temp_directory_path() / "graphex_config_test";
  std::filesystem::create_directories(dir);
  EXPECT_THROW(load_model_config(dir / "missing.json"), IoError);
  {
    std::ofstream(dir / "broken.json") << "{\"kind\": ";
  }
  EXPECT_THROW(load_model_config(dir / "broken.json"), ValidationError);
  {
    std::ofstream(dir / "ok.json") << R"({"kind": "DenseCompact"})";
  }
  EXPECT_EQ(load_model_config(dir / "ok.json").kind, ModelKind::DenseCompact);
  std::filesystem::remove_all(dir);
}
