// Command-line front end over the tsgn C API.
//
//   tsgn synth     --profile EtherG1 --per-class 350 --seed 7 --out data/g1
//   tsgn stats     --dataset data/g1
//   tsgn transform --dataset data/g1 --variant ttsgn --out mapped
//   tsgn features  --dataset data/g1 --variant ttsgn --out features
//   tsgn evaluate  --dataset data/g1 --variant tsgn --variant ttsgn --out report
//
// Every output file depends only on the flags, never on --threads or timing.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tsgn/tsgn.h"

namespace fs = std::filesystem;

namespace {

struct Failure {
  std::string message;
};

void check(tsgn_status status) {
  if (status != TSGN_OK) throw Failure{tsgn_last_error()};
}

struct DatasetDeleter {
  void operator()(tsgn_dataset* d) const { tsgn_dataset_free(d); }
};
struct MappedDeleter {
  void operator()(tsgn_mapped* m) const { tsgn_mapped_free(m); }
};
struct ReportDeleter {
  void operator()(tsgn_report* r) const { tsgn_report_free(r); }
};
using Dataset = std::unique_ptr<tsgn_dataset, DatasetDeleter>;
using Mapped = std::unique_ptr<tsgn_mapped, MappedDeleter>;
using Report = std::unique_ptr<tsgn_report, ReportDeleter>;

struct Options {
  std::string dataset;
  std::string profile;
  std::size_t per_class = 350;
  std::uint64_t seed = 0;
  std::string form = "net";
  std::string tier = "multiedge";
  std::vector<std::string> variants;
  std::size_t repeats = 300;
  std::size_t trees = 100;
  std::string positive = "phishing";
  std::string out;
  unsigned threads = 1;
};

void add_source_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--dataset", o.dataset, "Dataset directory (labels.csv plus one edge list per graph)");
  cmd->add_option("--profile", o.profile, "Generate a synthetic dataset with this size profile instead");
  cmd->add_option("--per-class", o.per_class, "Graphs per class for --profile")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  cmd->add_option("--form", o.form, "Ego-network form: star|net")->capture_default_str();
  cmd->add_option("--tier", o.tier, "Attribute tier: plain|directed|multiedge")->capture_default_str();
}

void add_threads_flag(CLI::App* cmd, Options& o) {
  cmd->add_option("--threads", o.threads, "Worker threads; results do not depend on it")
      ->capture_default_str()
      ->check(CLI::Range(1u, 1024u));
}

Dataset open_dataset(const Options& o) {
  if (o.dataset.empty() == o.profile.empty()) throw Failure{"give exactly one of --dataset or --profile"};
  tsgn_dataset* raw = nullptr;
  if (!o.dataset.empty()) {
    check(tsgn_dataset_load(o.dataset.c_str(), &raw));
  } else {
    check(tsgn_dataset_synthesize(o.profile.c_str(), o.per_class, o.seed, &raw));
  }
  Dataset d(raw);

  tsgn_form form;
  tsgn_tier tier;
  check(tsgn_parse_form(o.form.c_str(), &form));
  check(tsgn_parse_tier(o.tier.c_str(), &tier));
  // Both sources already hold net-form multiedge graphs.
  if (form == TSGN_FORM_NET && tier == TSGN_TIER_MULTIEDGE) return d;
  tsgn_dataset* lowered = nullptr;
  check(tsgn_dataset_reextract(d.get(), form, tier, &lowered));
  return Dataset(lowered);
}

std::vector<tsgn_variant> parse_variants(const std::vector<std::string>& names) {
  std::vector<tsgn_variant> out;
  for (const auto& name : names) {
    tsgn_variant v;
    check(tsgn_parse_variant(name.c_str(), &v));
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

fs::path require_out(const Options& o) {
  if (o.out.empty()) throw Failure{"--out is required"};
  fs::create_directories(o.out);
  return o.out;
}

// Calls fn(i) for i in [0, n) on `threads` workers; the first failure wins.
template <class F>
void for_each_index(std::size_t n, unsigned threads, F&& fn) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::optional<Failure> first;
  std::mutex guard;
  auto worker = [&] {
    for (std::size_t i; !failed && (i = next++) < n;) {
      try {
        fn(i);
      } catch (const Failure& f) {
        std::lock_guard lock(guard);
        if (!first) first = f;
        failed = true;
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (first) throw *first;
}

int cmd_synth(const Options& o) {
  if (o.profile.empty()) throw Failure{"--profile is required"};
  Options source = o;
  source.dataset.clear();
  const auto d = open_dataset(source);
  check(tsgn_dataset_save(d.get(), require_out(o).c_str()));
  fmt::print("wrote {} graphs to {}\n", tsgn_dataset_size(d.get()), o.out);
  return 0;
}

int cmd_stats(const Options& o) {
  const auto d = open_dataset(o);
  char* table = nullptr;
  check(tsgn_dataset_stats_table(d.get(), &table));
  const std::string text(table);
  tsgn_string_free(table);
  fmt::print("{}", text);
  if (!o.out.empty()) {
    std::ofstream(require_out(o) / "stats.txt", std::ios::binary | std::ios::trunc) << text;
  }
  return 0;
}

int cmd_transform(const Options& o) {
  const auto variants = parse_variants(o.variants);
  if (variants.empty()) return 0;
  const auto d = open_dataset(o);
  for (auto v : variants) check(tsgn_dataset_check_variant(d.get(), v));
  const auto out = require_out(o);
  const auto n = tsgn_dataset_size(d.get());

  for (auto v : variants) {
    const auto dir = out / tsgn_variant_name(v);
    fs::create_directories(dir);

    std::vector<Mapped> mapped(n);
    const auto start = std::chrono::steady_clock::now();
    for_each_index(n, o.threads, [&](std::size_t i) {
      tsgn_mapped* m = nullptr;
      check(tsgn_map(d.get(), i, v, &m));
      mapped[i].reset(m);
    });
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    std::size_t nodes = 0;
    std::size_t edges = 0;
    for (const auto& m : mapped) {
      nodes += tsgn_mapped_node_count(m.get());
      edges += tsgn_mapped_edge_count(m.get());
    }
    for_each_index(n, o.threads, [&](std::size_t i) {
      const auto path = dir / fmt::format("{}.csv", tsgn_dataset_graph_id(d.get(), i));
      check(tsgn_mapped_write(mapped[i].get(), path.c_str()));
    });
    fmt::print("{:<6} graphs={} nodes={} edges={} seconds={:.6f}\n", tsgn_variant_name(v), n, nodes,
               edges, elapsed.count());
  }
  return 0;
}

int cmd_features(const Options& o) {
  const auto variants = parse_variants(o.variants);
  const auto d = open_dataset(o);
  for (auto v : variants) check(tsgn_dataset_check_variant(d.get(), v));
  const auto out = require_out(o);
  check(tsgn_dataset_write_features(d.get(), nullptr, o.threads, (out / "features_tn.csv").c_str()));
  for (auto v : variants) {
    const auto path = out / fmt::format("features_{}.csv", tsgn_variant_name(v));
    check(tsgn_dataset_write_features(d.get(), &v, o.threads, path.c_str()));
  }
  return 0;
}

int cmd_evaluate(const Options& o) {
  const auto variants = parse_variants(o.variants);
  const auto d = open_dataset(o);
  const auto out = require_out(o);

  tsgn_eval_options options;
  tsgn_eval_options_init(&options);
  options.n_repeats = o.repeats;
  options.seed = o.seed;
  options.n_trees = o.trees;
  options.threads = o.threads;
  options.positive_label = o.positive.c_str();

  tsgn_report* raw = nullptr;
  check(tsgn_evaluate(d.get(), variants.data(), variants.size(), &options, &raw));
  const Report report(raw);
  check(tsgn_report_write_text(report.get(), (out / "report.txt").c_str()));
  check(tsgn_report_write_csv(report.get(), (out / "report.csv").c_str()));

  for (std::size_t i = 0; i < tsgn_report_size(report.get()); ++i) {
    const char* name = nullptr;
    double mean = 0.0;
    double std_dev = 0.0;
    int has_increase = 0;
    double increase = 0.0;
    check(tsgn_report_row(report.get(), i, &name, &mean, &std_dev, &has_increase, &increase));
    const auto change = has_increase ? fmt::format("{:+.2f}%", increase) : std::string("-");
    fmt::print("{:<10} f1={:.4f} std={:.4f} increase={}\n", name, mean, std_dev, change);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transaction subgraph network toolkit"};
  app.require_subcommand(1);
  Options o;

  auto* synth = app.add_subcommand("synth", "Write a synthetic labeled dataset directory");
  synth->add_option("--profile", o.profile, "Size profile EtherG1..EtherG6")->required();
  synth->add_option("--per-class", o.per_class, "Graphs per class")->capture_default_str();
  synth->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  synth->add_option("--out", o.out, "Output directory")->required();

  auto* stats = app.add_subcommand("stats", "Print the dataset statistics table");
  add_source_flags(stats, o);
  stats->add_option("--out", o.out, "Also write stats.txt here");

  auto* transform = app.add_subcommand("transform", "Write mapped graphs per variant");
  add_source_flags(transform, o);
  transform->add_option("--variant", o.variants, "tsgn|dtsgn|ttsgn|mtsgn (repeatable)");
  transform->add_option("--out", o.out, "Output directory")->required();
  add_threads_flag(transform, o);

  auto* features = app.add_subcommand("features", "Write handcrafted feature tables");
  add_source_flags(features, o);
  features->add_option("--variant", o.variants, "tsgn|dtsgn|ttsgn|mtsgn (repeatable)");
  features->add_option("--out", o.out, "Output directory")->required();
  add_threads_flag(features, o);

  auto* evaluate = app.add_subcommand("evaluate", "Repeated hold-out F1 of TN and fused variants");
  add_source_flags(evaluate, o);
  evaluate->add_option("--variant", o.variants, "tsgn|dtsgn|ttsgn|mtsgn (repeatable)");
  evaluate->add_option("--repeats", o.repeats, "Random splits")->capture_default_str();
  evaluate->add_option("--trees", o.trees, "Trees per forest")->capture_default_str();
  evaluate->add_option("--positive", o.positive, "Positive class label")->capture_default_str();
  evaluate->add_option("--out", o.out, "Output directory")->required();
  add_threads_flag(evaluate, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return cmd_synth(o);
    if (stats->parsed()) return cmd_stats(o);
    if (transform->parsed()) return cmd_transform(o);
    if (features->parsed()) return cmd_features(o);
    if (evaluate->parsed()) return cmd_evaluate(o);
  } catch (const Failure& f) {
    fmt::print(stderr, "error: {}\n", f.message);
    return 1;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 1;
}
