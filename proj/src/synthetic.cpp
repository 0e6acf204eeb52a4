#include "tsgn/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include <fmt/format.h>

#include "tsgn/error.hpp"
#include "tsgn/rng.hpp"

namespace tsgn {

namespace {

enum class SizeClass { small, medium, large };

SizeClass size_class(const std::string& profile) {
  if (profile == "EtherG1" || profile == "EtherG4") return SizeClass::small;
  if (profile == "EtherG2" || profile == "EtherG5") return SizeClass::medium;
  if (profile == "EtherG3" || profile == "EtherG6") return SizeClass::large;
  throw Error(ErrorKind::invalid_argument,
              fmt::format("unknown profile '{}' (EtherG1..EtherG6)", profile));
}

// Number of counterparties of the center.
std::size_t draw_neighbors(SizeClass size, std::mt19937_64& rng) {
  switch (size) {
    case SizeClass::small:
      return 1 + std::binomial_distribution<std::size_t>(11, 5.0 / 11.0)(rng);
    case SizeClass::medium:
      return 1 + std::binomial_distribution<std::size_t>(31, 12.0 / 31.0)(rng);
    case SizeClass::large: {
      const double k = std::lognormal_distribution<double>(3.834, 1.2)(rng);
      return std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(k)), 1, 4971);
    }
  }
  return 1;
}

std::string random_address(std::mt19937_64& rng) {
  return fmt::format("0x{:016x}{:016x}{:08x}", rng(), rng(), static_cast<std::uint32_t>(rng()));
}

// A transfer between participants (0 = center) ordered by `key`.
struct Draft {
  std::size_t src;
  std::size_t dst;
  double amount;
  double key;
};

class GraphDraft {
 public:
  explicit GraphDraft(std::mt19937_64& rng) : rng_(rng) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::size_t pick(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  double amount(double mu, double sigma) {
    // Whole gwei keep decimal exports short.
    const double eth = std::lognormal_distribution<double>(mu, sigma)(rng_);
    return std::max(1e-9, std::round(eth * 1e9) / 1e9);
  }

  void add(std::size_t src, std::size_t dst, double amount, double key) {
    drafts_.push_back({src, dst, amount, key});
  }

  // Addresses are drawn fresh; timestamps follow key order with gaps of
  // 30 s to 2 h, so they strictly increase.
  TransactionGraph finish(std::size_t participants, std::string label) {
    std::vector<Address> address;
    address.reserve(participants);
    for (std::size_t i = 0; i < participants; ++i) address.emplace_back(random_address(rng_));

    std::stable_sort(drafts_.begin(), drafts_.end(),
                     [](const Draft& a, const Draft& b) { return a.key < b.key; });
    std::int64_t t = 1'438'214'400 + static_cast<std::int64_t>(pick(0, 100'000'000));
    std::vector<EdgeRecord> records;
    records.reserve(drafts_.size());
    for (const auto& d : drafts_) {
      t += static_cast<std::int64_t>(pick(30, 7200));
      records.push_back(EdgeRecord{address[d.src], address[d.dst], d.amount, t,
                                   static_cast<EdgeId>(records.size())});
    }
    return TransactionGraph::from_records(records, address[0], GraphFlags{true, true, true},
                                          std::move(label));
  }

 private:
  std::mt19937_64& rng_;
  std::vector<Draft> drafts_;
};

TransactionGraph phishing_graph(std::size_t k, std::mt19937_64& rng) {
  GraphDraft g(rng);
  const std::size_t victims = k >= 2 ? k - 1 : 1;
  double collected = 0.0;
  for (std::size_t v = 1; v <= victims; ++v) {
    const int transfers = g.chance(0.3) ? 2 : 1;
    for (int i = 0; i < transfers; ++i) {
      const double a = g.amount(-1.0, 1.0);
      collected += a;
      g.add(v, 0, a, g.uniform(0.0, 1.0));
    }
  }
  if (k >= 2) {
    const std::size_t collector = k;
    const double out = std::round(collected * 0.95 * 1e9) / 1e9;
    if (g.chance(0.3)) {
      const double first = std::round(out * g.uniform(0.3, 0.7) * 1e9) / 1e9;
      g.add(0, collector, first, g.uniform(1.0, 2.0));
      g.add(0, collector, std::max(1e-9, out - first), g.uniform(1.0, 2.0));
    } else {
      g.add(0, collector, out, g.uniform(1.0, 2.0));
    }
  }
  if (victims >= 2 && g.chance(0.05)) {
    const auto a = g.pick(1, victims);
    auto b = g.pick(1, victims - 1);
    if (b >= a) ++b;
    g.add(a, b, g.amount(-1.0, 1.0), g.uniform(0.0, 2.0));
  }
  return g.finish(k + 1, std::string(kPhishingLabel));
}

TransactionGraph benign_graph(std::size_t k, std::mt19937_64& rng) {
  GraphDraft g(rng);
  for (std::size_t v = 1; v <= k; ++v) {
    const double r = g.uniform(0.0, 1.0);
    const std::size_t n_in = r < 0.6 ? g.pick(1, 3) : (r < 0.8 ? g.pick(1, 2) : 0);
    const std::size_t n_out = r < 0.6 ? g.pick(1, 3) : (r < 0.8 ? 0 : g.pick(1, 2));
    for (std::size_t i = 0; i < n_in; ++i) g.add(v, 0, g.amount(0.0, 1.5), g.uniform(0.0, 1.0));
    for (std::size_t i = 0; i < n_out; ++i) g.add(0, v, g.amount(0.0, 1.5), g.uniform(0.0, 1.0));
  }
  if (k >= 2) {
    const std::size_t pairs = k * (k - 1) / 2;
    const std::size_t wanted =
        std::min(pairs, 1 + std::binomial_distribution<std::size_t>(k - 1, 0.25)(rng));
    std::set<std::pair<std::size_t, std::size_t>> chosen;
    while (chosen.size() < wanted) {
      const auto a = g.pick(1, k);
      auto b = g.pick(1, k - 1);
      if (b >= a) ++b;
      if (!chosen.insert({std::min(a, b), std::max(a, b)}).second) continue;
      const auto transfers = g.pick(1, 2);
      for (std::size_t i = 0; i < transfers; ++i) {
        const bool forward = g.chance(0.5);
        g.add(forward ? a : b, forward ? b : a, g.amount(0.0, 1.5), g.uniform(0.0, 1.0));
      }
    }
  }
  return g.finish(k + 1, std::string(kBenignLabel));
}

}  // namespace

DatasetManifest generate_synthetic_dataset(const SyntheticConfig& config) {
  const auto size = size_class(config.profile);
  if (config.n_per_class == 0) throw Error(ErrorKind::invalid_argument, "n_per_class must be at least 1");

  DatasetManifest m;
  m.name = config.profile;
  m.provenance = fmt::format("synthetic profile={} n_per_class={} seed={}", config.profile,
                             config.n_per_class, config.seed);
  m.form = Form::net;
  m.tier = Tier::multiedge;
  for (std::size_t i = 0; i < config.n_per_class; ++i) {
    for (std::uint64_t cls = 0; cls < 2; ++cls) {
      std::mt19937_64 rng(derive_seed(config.seed, {cls, i}));
      const auto k = draw_neighbors(size, rng);
      m.graph_ids.push_back(fmt::format("g{:05d}", m.graphs.size()));
      m.graphs.push_back(cls == 0 ? phishing_graph(k, rng) : benign_graph(k, rng));
    }
  }
  return m;
}

TransactionGraph generate_dense_ego_network(std::size_t neighbors, double pair_probability,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution link(pair_probability);
  std::lognormal_distribution<double> amount(0.0, 1.5);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t v = 1; v <= neighbors; ++v) {
    pairs.push_back(coin(rng) ? std::pair{std::size_t{0}, v} : std::pair{v, std::size_t{0}});
  }
  for (std::size_t a = 1; a <= neighbors; ++a) {
    for (std::size_t b = a + 1; b <= neighbors; ++b) {
      if (link(rng)) pairs.push_back(coin(rng) ? std::pair{a, b} : std::pair{b, a});
    }
  }
  std::vector<std::int64_t> times(pairs.size());
  std::iota(times.begin(), times.end(), std::int64_t{1'500'000'000});
  std::shuffle(times.begin(), times.end(), rng);

  std::vector<EdgeRecord> records;
  records.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    records.push_back(EdgeRecord{Address(fmt::format("0x{:040x}", pairs[i].first)),
                                 Address(fmt::format("0x{:040x}", pairs[i].second)), amount(rng),
                                 times[i], static_cast<EdgeId>(i)});
  }
  return TransactionGraph::from_records(records, Address(fmt::format("0x{:040x}", 0)),
                                        GraphFlags{true, true, false});
}

}  // namespace tsgn
