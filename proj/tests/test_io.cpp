#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "fixtures.hpp"

using namespace indg;

TEST(EdgeList, ParsesWithComments) {
  Graph g = parse_edge_list("# header\nn 4\n0 1 # trailing\n\n2 3\n");
  EXPECT_EQ(g.node_count(), 4u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.has_edge(3, 2));
}

TEST(EdgeList, RoundTripIsStable) {
  Graph g = fixtures::cycle(5);
  std::string text = format_edge_list(g, "five-cycle");
  EXPECT_EQ(parse_edge_list(text), g);
  EXPECT_EQ(format_edge_list(parse_edge_list(text), "five-cycle"), text);
}

TEST(EdgeList, ReportsLineNumbers) {
  try {
    parse_edge_list("n 3\n0 1\n1 1\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_edge_list("n 3\n0 1\n1 0\n"), ParseError);
  EXPECT_THROW(parse_edge_list("n 3\n0 5\n"), ParseError);
  EXPECT_THROW(parse_edge_list("0 1\n"), ParseError);
  EXPECT_THROW(parse_edge_list("n 3\n0 x\n"), ParseError);
  EXPECT_THROW(parse_edge_list(""), ParseError);
}

TEST(EdgeList, MissingFileIsIoError) {
  EXPECT_THROW(load_edge_list("/nonexistent/graph.txt"), IoError);
}

TEST(EdgeList, LoadErrorNamesTheFile) {
  auto path = std::filesystem::temp_directory_path() / "indg_bad_graph.txt";
  text::write_file(path.string(), "n 2\n0 0\n");
  try {
    load_edge_list(path.string());
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(path.string()), std::string::npos);
    EXPECT_EQ(e.line(), 2u);
  }
  std::filesystem::remove(path);
}

TEST(InstanceFormat, SampleLoads) {
  auto inst = load_instance(fixtures::sample("example2.inst"));
  auto ref = fixtures::example2();
  EXPECT_EQ(inst.g1(), ref.g1());
  EXPECT_EQ(inst.g2(), ref.g2());
  EXPECT_TRUE(inst.dependency_complete());
  for (std::size_t i = 0; i < 9; ++i) {
    EXPECT_EQ(inst.player(i).benefit, ref.player(i).benefit);
    EXPECT_DOUBLE_EQ(inst.player(i).edge_cost, 1.0);
  }
}

TEST(InstanceFormat, RoundTrip) {
  for (const auto& inst : {fixtures::example1(), fixtures::example2(), fixtures::poa_instance()}) {
    std::string text = format_instance(inst);
    auto back = parse_instance(text);
    EXPECT_EQ(format_instance(back), text);
    EXPECT_EQ(back.dependency_edges(), inst.dependency_edges());
  }
}

TEST(InstanceFormat, Rejections) {
  const std::string head = "g1 2\n0 1\ng2 1\ndependencies complete\n";
  EXPECT_NO_THROW(parse_instance(head + "player 0 cost 1 benefits 1\nplayer 1 cost 1 benefits 1\n"));
  EXPECT_THROW(parse_instance(head + "player 0 cost 1 benefits 1\n"), ParseError);  // missing player
  EXPECT_THROW(parse_instance(head + "player 0 cost 1 benefits 1\nplayer 0 cost 1 benefits 1\n"), ParseError);
  EXPECT_THROW(parse_instance(head + "player 0 cost 0 benefits 1\nplayer 1 cost 1 benefits 1\n"), ParseError);
  EXPECT_THROW(parse_instance(head + "player 0 cost 1 benefits 1 2\nplayer 1 cost 1 benefits 1\n"),
               ParseError);  // increasing benefits
  EXPECT_THROW(parse_instance("g2 1\n"), ParseError);
  EXPECT_THROW(parse_instance("g1 2\n0 1\ng2 1\ndependencies\n0 1\n"), ParseError);  // y out of range
}

TEST(ProfileFormat, RoundTripAndErrors) {
  auto inst = fixtures::example2();
  auto p = load_profile(fixtures::sample("example2.profile"), inst);
  EXPECT_EQ(p.actions[6].size(), 7u);
  EXPECT_EQ(p.actions[1], Action{0});
  EXPECT_EQ(parse_profile(format_profile(p), inst), p);
  EXPECT_THROW(parse_profile("profile 8\n", inst), ParseError);
  EXPECT_THROW(parse_profile("profile 9\n0: 7\n", inst), ParseError);
  EXPECT_THROW(parse_profile("profile 9\n0: 1 1\n", inst), ParseError);
  EXPECT_THROW(parse_profile("profile 9\n0: 1\n0: 2\n", inst), ParseError);
  EXPECT_EQ(parse_profile("profile 9\n3: 2 0\n", inst).actions[3], (Action{0, 2}));
}

TEST(ConfigFormat, PresetsParse) {
  auto het = load_config(std::string(INDG_PRESETS_DIR) + "/heterogeneous.cfg");
  auto hom = load_config(std::string(INDG_PRESETS_DIR) + "/homogeneous.cfg");
  EXPECT_EQ(het.n, 500u);
  EXPECT_EQ(het.m, 5000u);
  EXPECT_EQ(het.cost_mode, CostMode::Uniform);
  EXPECT_DOUBLE_EQ(het.cost_high, 2500.0);
  EXPECT_EQ(hom.cost_mode, CostMode::Constant);
  EXPECT_DOUBLE_EQ(hom.cost_value, 1250.0);
  EXPECT_EQ(hom.benefits, (std::vector<double>{1.2, 0.7, 0.6, 0.5, 0.3, 0.2}));
  EXPECT_EQ(het.g1.edges_per_node, 6u);
  EXPECT_EQ(het.g2.edges_per_node, 1u);
  EXPECT_TRUE(het.dependency_path.empty());
}

TEST(ConfigFormat, Rejections) {
  EXPECT_THROW(parse_config("n = 5\nn = 6\n"), ParseError);
  EXPECT_THROW(parse_config("bogus = 1\n"), ParseError);
  EXPECT_THROW(parse_config("g1.family = tree\n"), ParseError);
  EXPECT_THROW(parse_config("trials = 0\n"), ParseError);
  EXPECT_THROW(parse_config("cost.low = 5\ncost.high = 1\n"), ParseError);
  EXPECT_THROW(parse_config("n 5\n"), ParseError);
  auto cfg = parse_config("g1.family = gr # geometric\ng1.radius = 0.3\ng2.hub = false\n");
  EXPECT_EQ(cfg.g1.family, GraphFamily::Geometric);
  EXPECT_DOUBLE_EQ(cfg.g1.radius, 0.3);
  EXPECT_FALSE(cfg.g2_hub);
}
