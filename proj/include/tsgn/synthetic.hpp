#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "tsgn/graph.hpp"
#include "tsgn/ingest.hpp"

namespace tsgn {

inline constexpr std::string_view kPhishingLabel = "phishing";
inline constexpr std::string_view kBenignLabel = "benign";

struct SyntheticConfig {
  /// Size profile: EtherG1/EtherG4 (about 7 nodes, at most 13), EtherG2/EtherG5
  /// (about 14, at most 33) or EtherG3/EtherG6 (heavy tailed, about 96).
  std::string profile = "EtherG1";
  std::size_t n_per_class = 350;
  std::uint64_t seed = 0;
};

/// Two-class labeled dataset of multi-edge temporal ego-networks, net form.
///
/// Phishing-like graphs are inbound stars: many small transfers from distinct
/// accounts, followed by one or two large transfers out to a collector.
/// Benign-like graphs trade in both directions with time-interleaved
/// transfers, and some neighbors also trade with each other. Timestamps
/// strictly increase within each graph. Throws `Error(invalid_argument)` for an
/// unknown profile or `n_per_class == 0`.
DatasetManifest generate_synthetic_dataset(const SyntheticConfig& config);

/// A directed temporal ego-network with `neighbors` counterparties of the
/// center, each joined to it in a random direction, plus each neighbor pair
/// joined with probability `pair_probability`. Simple, with distinct
/// timestamps.
TransactionGraph generate_dense_ego_network(std::size_t neighbors, double pair_probability,
                                            std::uint64_t seed);

}  // namespace tsgn
