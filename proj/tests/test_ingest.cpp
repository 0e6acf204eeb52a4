#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "tsgn/error.hpp"
#include "tsgn/ingest.hpp"
#include "tsgn/synthetic.hpp"

using namespace tsgn;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  auto dir = fs::temp_directory_path() / "tsgn_tests" / (std::string(info->test_suite_name()) + "_" + info->name());
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

std::set<std::pair<std::string, std::string>> endpoints(const TransactionGraph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& r : g.records()) out.insert({r.src.str(), r.dst.str()});
  return out;
}

}  // namespace

TEST(ParseCsv, WellFormedRows) {
  std::istringstream in("src,dst,amount,timestamp\n0xA,0xb,1.5,10\n0xb,0xc,0,11\n0xc,0xa,2,12\n");
  const auto r = parse_csv(in);
  ASSERT_EQ(r.records.size(), 3u);
  EXPECT_TRUE(r.rejected.empty());
  EXPECT_EQ(r.records[0].src.str(), "0xa");
  EXPECT_EQ(r.records[0].amount, 1.5);
  EXPECT_EQ(r.records[2].timestamp, 12);
  EXPECT_EQ(r.records[2].id, 2u);
}

TEST(ParseCsv, NegativeAmountRejectedWithLine) {
  std::istringstream in("src,dst,amount,timestamp\na,b,1,1\na,c,-2,2\n");
  const auto r = parse_csv(in);
  EXPECT_EQ(r.records.size(), 1u);
  ASSERT_EQ(r.rejected.size(), 1u);
  EXPECT_EQ(r.rejected[0].line, 3u);
}

TEST(ParseCsv, SelfLoopDroppedAndCounted) {
  std::istringstream in("src,dst,amount,timestamp\na,a,1,1\na,b,1,2\n");
  const auto r = parse_csv(in);
  EXPECT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.self_loops_dropped, 1u);
  EXPECT_TRUE(r.rejected.empty());
  EXPECT_EQ(r.records[0].id, 0u);
}

TEST(ParseCsv, ColumnOrderAndOptionalTimestamp) {
  std::istringstream in("value,to,from\n3,b,a\n");
  EdgeListSchema schema{"from", "to", "value", "time"};
  const auto r = parse_csv(in, schema);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].src.str(), "a");
  EXPECT_FALSE(r.records[0].timestamp);
}

TEST(ParseCsv, MalformedFieldsRejected) {
  std::istringstream in("src,dst,amount,timestamp\na,b,abc,1\na,b,1,later\na,b\n");
  const auto r = parse_csv(in);
  EXPECT_TRUE(r.records.empty());
  EXPECT_EQ(r.rejected.size(), 3u);
}

TEST(ParseCsv, MissingMandatoryColumnThrows) {
  std::istringstream in("src,amount\na,1\n");
  try {
    parse_csv(in);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::format);
  }
}

TEST(ParseJsonl, SameFieldsAsCsv) {
  std::istringstream in(
      "{\"src\":\"0xA\",\"dst\":\"0xb\",\"amount\":1.5,\"timestamp\":10}\n"
      "{\"src\":\"0xb\",\"dst\":\"0xc\",\"amount\":\"2\"}\n"
      "not json\n");
  const auto r = parse_jsonl(in);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].src.str(), "0xa");
  EXPECT_EQ(r.records[1].amount, 2.0);
  EXPECT_FALSE(r.records[1].timestamp);
  ASSERT_EQ(r.rejected.size(), 1u);
  EXPECT_EQ(r.rejected[0].line, 3u);
}

TEST(LoadEdgeList, UnreadableFileThrows) {
  try {
    load_edge_list("/nonexistent/edges.csv");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io);
  }
}

TEST(LoadEdgeList, DetectsFormatByExtension) {
  const auto dir = scratch_dir();
  write(dir / "e.jsonl", "{\"src\":\"a\",\"dst\":\"b\",\"amount\":1,\"timestamp\":1}\n");
  write(dir / "e.csv", "src,dst,amount,timestamp\na,b,1,1\n");
  EXPECT_EQ(load_edge_list(dir / "e.jsonl").records.size(), 1u);
  EXPECT_EQ(load_edge_list(dir / "e.csv").records.size(), 1u);
}

TEST(ToCsv, RoundTripsRecords) {
  const auto records = fixture::records({{"a", "b", 0.1, 5}, {"b", "c", 123456.789, std::nullopt}});
  std::istringstream in(to_csv(records));
  const auto back = parse_csv(in);
  ASSERT_EQ(back.records.size(), 2u);
  EXPECT_EQ(back.records[0].amount, 0.1);
  EXPECT_EQ(back.records[1].amount, 123456.789);
  EXPECT_FALSE(back.records[1].timestamp);
}

TEST(ExtractEgoNetwork, StarDropsNeighborEdges) {
  const auto records = fixture::records({{"a", "b", 1, 1}, {"a", "c", 1, 2}, {"b", "c", 1, 3}});
  const auto star = extract_ego_network(records, Address("a"), Form::star, Tier::directed);
  EXPECT_EQ(star.edge_count(), 2u);
  const auto net = extract_ego_network(records, Address("a"), Form::net, Tier::directed);
  EXPECT_EQ(net.edge_count(), 3u);
  EXPECT_EQ(net.node(*net.center()).str(), "a");
}

TEST(ExtractEgoNetwork, MultiedgeKeepsParallelRecords) {
  const auto records = fixture::records({{"a", "b", 1, 1}, {"a", "b", 1, 5}});
  const auto multi = extract_ego_network(records, Address("a"), Form::net, Tier::multiedge);
  EXPECT_EQ(multi.edge_count(), 2u);
  EXPECT_TRUE(multi.flags().multiedge);
  EXPECT_TRUE(multi.flags().temporal);
  EXPECT_EQ(extract_ego_network(records, Address("a"), Form::net, Tier::directed).edge_count(), 1u);
  const auto plain = extract_ego_network(records, Address("a"), Form::net, Tier::plain);
  EXPECT_EQ(plain.edge_count(), 1u);
  EXPECT_FALSE(plain.flags().directed);
}

TEST(ExtractEgoNetwork, AbsentTargetThrows) {
  const auto records = fixture::records({{"a", "b", 1, 1}});
  try {
    extract_ego_network(records, Address("z"), Form::net, Tier::multiedge);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_found);
  }
}

TEST(ExtractEgoNetwork, StarWithinNetAndNodesWithinOneHop) {
  // Accounts x and y are two hops away and must not appear.
  const auto records = fixture::records({{"a", "b", 1, 1}, {"c", "a", 2, 2}, {"b", "c", 3, 3},
                                         {"b", "x", 4, 4}, {"x", "y", 5, 5}, {"d", "a", 6, 6},
                                         {"d", "b", 7, 7}});
  for (auto tier : {Tier::plain, Tier::directed, Tier::multiedge}) {
    const auto star = extract_ego_network(records, Address("a"), Form::star, tier);
    const auto net = extract_ego_network(records, Address("a"), Form::net, tier);
    const auto s = endpoints(star);
    const auto n = endpoints(net);
    EXPECT_TRUE(std::includes(n.begin(), n.end(), s.begin(), s.end()));
    for (const auto& node : net.nodes()) {
      EXPECT_TRUE(node.str() != "x" && node.str() != "y") << node.str();
    }
    EXPECT_EQ(net.node_count(), 4u);
  }
}

TEST(DatasetStats, MeansAndMaxima) {
  DatasetManifest m;
  m.graphs.push_back(fixture::graph({{"a", "b", 1, 1}, {"b", "c", 1, 2}}, "a"));
  m.graphs.push_back(fixture::graph({{"a", "b", 1, 1}, {"a", "c", 1, 2}, {"a", "d", 1, 3}, {"a", "e", 1, 4}}, "a"));
  m.graph_ids = {"g0", "g1"};
  const auto s = dataset_stats(m);
  EXPECT_EQ(s.n_graphs, 2u);
  EXPECT_EQ(s.mean_nodes(), 4.0);
  EXPECT_EQ(s.max_nodes, 5u);
  EXPECT_EQ(s.mean_edges(), 3.0);
  EXPECT_GE(static_cast<double>(s.max_edges), s.mean_edges());
}

TEST(DatasetStats, SingleGraphAndEmpty) {
  DatasetManifest m;
  m.graphs.push_back(TransactionGraph::from_records(fixture::records({{"a", "b", 1, 1}}), Address("a"),
                                                    {true, true, false}, "phishing"));
  m.graph_ids = {"g0"};
  EXPECT_EQ(dataset_stats(m).n_largest_class, 1u);
  EXPECT_EQ(dataset_stats(m).n_classes, 1u);
  EXPECT_THROW(dataset_stats(DatasetManifest{}), Error);
}

TEST(SyntheticDataset, ProfileSizes) {
  const auto m = generate_synthetic_dataset({"EtherG1", 350, 7});
  const auto s = dataset_stats(m);
  EXPECT_EQ(s.n_graphs, 700u);
  EXPECT_EQ(s.n_classes, 2u);
  EXPECT_EQ(s.n_largest_class, 350u);
  EXPECT_NEAR(s.mean_nodes(), 7.0, 0.5);
  EXPECT_LE(s.max_nodes, 13u);
  EXPECT_EQ(m.label_set(), (std::vector<std::string>{"benign", "phishing"}));
  for (const auto& g : m.graphs) {
    EXPECT_TRUE(validate(g).empty());
    EXPECT_TRUE(g.flags().temporal && g.flags().multiedge && g.flags().directed);
  }
}

TEST(SyntheticDataset, TimestampsStrictlyIncreasePerGraph) {
  const auto m = generate_synthetic_dataset({"EtherG2", 40, 3});
  for (const auto& g : m.graphs) {
    std::set<std::int64_t> seen;
    for (const auto& e : g.edges()) EXPECT_TRUE(seen.insert(*e.timestamp).second);
  }
}

TEST(SyntheticDataset, Deterministic) {
  const auto a = generate_synthetic_dataset({"EtherG1", 20, 5});
  const auto b = generate_synthetic_dataset({"EtherG1", 20, 5});
  ASSERT_EQ(a.graphs.size(), b.graphs.size());
  for (std::size_t i = 0; i < a.graphs.size(); ++i) {
    EXPECT_EQ(to_csv(a.graphs[i].records()), to_csv(b.graphs[i].records()));
    EXPECT_EQ(a.graphs[i].label(), b.graphs[i].label());
  }
  const auto c = generate_synthetic_dataset({"EtherG1", 20, 6});
  EXPECT_NE(to_csv(a.graphs[0].records()), to_csv(c.graphs[0].records()));
}

TEST(SyntheticDataset, OnePerClass) {
  const auto m = generate_synthetic_dataset({"EtherG3", 1, 1});
  EXPECT_EQ(m.graphs.size(), 2u);
  EXPECT_EQ(m.label_set().size(), 2u);
}

TEST(SyntheticDataset, RejectsBadConfig) {
  EXPECT_THROW(generate_synthetic_dataset({"EtherG9", 1, 1}), Error);
  EXPECT_THROW(generate_synthetic_dataset({"EtherG1", 0, 1}), Error);
}

TEST(DenseEgoNetwork, SizeAndDistinctTimes) {
  const auto g = generate_dense_ego_network(100, 0.1, 4);
  EXPECT_EQ(g.node_count(), 101u);
  EXPECT_TRUE(validate(g).empty());
  std::set<std::int64_t> seen;
  for (const auto& e : g.edges()) EXPECT_TRUE(seen.insert(*e.timestamp).second);
}

TEST(Dataset, SaveLoadRoundTrip) {
  const auto dir = scratch_dir();
  const auto m = generate_synthetic_dataset({"EtherG1", 10, 2});
  save_dataset(m, dir / "set");
  const auto back = load_dataset(dir / "set");
  ASSERT_EQ(back.graphs.size(), m.graphs.size());
  EXPECT_EQ(back.graph_ids, m.graph_ids);
  EXPECT_EQ(back.name, "set");
  for (std::size_t i = 0; i < m.graphs.size(); ++i) {
    EXPECT_EQ(to_csv(back.graphs[i].records()), to_csv(m.graphs[i].records()));
    EXPECT_EQ(back.graphs[i].label(), m.graphs[i].label());
    EXPECT_EQ(back.graphs[i].node(*back.graphs[i].center()), m.graphs[i].node(*m.graphs[i].center()));
  }
  // Saving again produces the same bytes.
  save_dataset(back, dir / "again");
  for (const auto& entry : fs::directory_iterator(dir / "set")) {
    std::ifstream a(entry.path(), std::ios::binary);
    std::ifstream b(dir / "again" / entry.path().filename(), std::ios::binary);
    EXPECT_EQ(std::string(std::istreambuf_iterator<char>(a), {}),
              std::string(std::istreambuf_iterator<char>(b), {}))
        << entry.path().filename();
  }
}

TEST(Dataset, LoadRejectsBrokenDirectories) {
  const auto dir = scratch_dir();
  EXPECT_THROW(load_dataset(dir), Error);
  write(dir / "labels.csv", "graph_id,center_address,label\ng0,0xa,phishing\n");
  EXPECT_THROW(load_dataset(dir), Error);
  write(dir / "g0.csv", "src,dst,amount,timestamp\n0xb,0xc,1,1\n");
  EXPECT_THROW(load_dataset(dir), Error);
  write(dir / "g0.csv", "src,dst,amount,timestamp\n0xa,0xc,-1,1\n");
  EXPECT_THROW(load_dataset(dir), Error);
  write(dir / "g0.csv", "src,dst,amount,timestamp\n0xa,0xc,1,1\n");
  EXPECT_EQ(load_dataset(dir).graphs.size(), 1u);
}

TEST(Dataset, ReextractOnlyLowersTier) {
  const auto m = generate_synthetic_dataset({"EtherG1", 10, 2});
  const auto star = reextract(m, Form::star, Tier::directed);
  EXPECT_EQ(star.form, Form::star);
  EXPECT_EQ(star.tier, Tier::directed);
  for (std::size_t i = 0; i < m.graphs.size(); ++i) {
    EXPECT_LE(star.graphs[i].edge_count(), m.graphs[i].edge_count());
    EXPECT_FALSE(star.graphs[i].flags().multiedge);
  }
  const auto plain = reextract(star, Form::star, Tier::plain);
  EXPECT_FALSE(plain.graphs[0].flags().directed);
  try {
    reextract(plain, Form::star, Tier::multiedge);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::incompatible);
  }
}

TEST(StatsTable, HasHeaderAndRow) {
  auto m = generate_synthetic_dataset({"EtherG1", 350, 7});
  const auto table = stats_table({m});
  EXPECT_EQ(table.substr(0, table.find(' ')), "Dataset");
  const auto row = table.substr(table.find('\n') + 1);
  EXPECT_EQ(row.substr(0, 7), "EtherG1");
  EXPECT_NE(row.find(" 700 "), std::string::npos);
  EXPECT_NE(row.find(" 350 "), std::string::npos);
}
