#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsgn/graph.hpp"

namespace tsgn {

enum class Form { star, net };
enum class Tier { plain, directed, multiedge };

std::string_view form_name(Form f) noexcept;
std::string_view tier_name(Tier t) noexcept;
Form parse_form(std::string_view s);
Tier parse_tier(std::string_view s);

/// Column (CSV) or field (JSON lines) names of a record export.
struct EdgeListSchema {
  std::string src = "src";
  std::string dst = "dst";
  std::string amount = "amount";
  std::string timestamp = "timestamp";
};

enum class RecordFormat { detect, csv, jsonl };

struct RowError {
  std::size_t line = 0;  // 1-based, counting the header
  std::string message;
};

struct LoadResult {
  std::vector<EdgeRecord> records;  // ids are the ordinal of accepted records
  std::vector<RowError> rejected;
  std::size_t self_loops_dropped = 0;
};

/// Reads an edge list. Addresses are lowercased; rows with a negative or
/// malformed amount or timestamp are rejected with their line number;
/// self-loops are dropped and counted. Throws `Error(io)` if the file cannot
/// be read and `Error(format)` if a mandatory column (src, dst, amount) is
/// missing. `detect` picks JSON lines for `.jsonl`/`.json` and CSV otherwise.
LoadResult load_edge_list(const std::filesystem::path& path, const EdgeListSchema& schema = {},
                          RecordFormat format = RecordFormat::detect);
LoadResult parse_csv(std::istream& in, const EdgeListSchema& schema = {});
LoadResult parse_jsonl(std::istream& in, const EdgeListSchema& schema = {});

/// CSV export with header `src,dst,amount,timestamp`.
std::string to_csv(std::span<const EdgeRecord> records);

/// The ego-network of `target`. Star form keeps records incident to the
/// target; net form also keeps records between two of its 1-hop neighbors.
/// The tier selects the attribute level: plain is the undirected projection,
/// directed collapses parallel records, multiedge keeps every record.
/// Throws `Error(not_found)` if no record touches `target`.
TransactionGraph extract_ego_network(std::span<const EdgeRecord> records, const Address& target,
                                     Form form, Tier tier,
                                     std::optional<std::string> label = std::nullopt);

struct DatasetManifest {
  std::string name;
  std::string provenance;
  Form form = Form::net;
  Tier tier = Tier::multiedge;
  std::vector<std::string> graph_ids;
  std::vector<TransactionGraph> graphs;
  std::size_t self_loops_dropped = 0;  // while loading

  std::vector<std::string> label_set() const;
  std::vector<std::string> labels() const;
};

/// Rebuilds every graph of `m` at the requested form and tier. Tiers can only
/// be lowered (multiedge -> directed -> plain); raising one throws
/// `Error(incompatible)`.
DatasetManifest reextract(const DatasetManifest& m, Form form, Tier tier);

struct DatasetStats {
  std::size_t n_graphs = 0;
  std::size_t n_largest_class = 0;
  std::size_t n_classes = 0;
  std::size_t total_nodes = 0;
  std::size_t max_nodes = 0;
  std::size_t total_edges = 0;
  std::size_t max_edges = 0;

  double mean_nodes() const { return static_cast<double>(total_nodes) / static_cast<double>(n_graphs); }
  double mean_edges() const { return static_cast<double>(total_edges) / static_cast<double>(n_graphs); }
};

/// Throws `Error(invalid_argument)` on an empty manifest.
DatasetStats dataset_stats(const DatasetManifest& m);

/// Aligned text table in dataset-statistics column order: name, type, N_G,
/// #C_max, N_C, #N, max#N, then #E and max#E for the plain, directed and
/// multiedge tiers. Tiers above the manifest's own are shown as `-`.
std::string stats_table(const std::vector<DatasetManifest>& manifests);

/// Dataset directory: `labels.csv` (graph_id,center_address,label) plus one
/// `<graph_id>.csv` edge list per graph. Existing files are overwritten.
void save_dataset(const DatasetManifest& m, const std::filesystem::path& dir);

/// Loads a dataset directory as multi-edge, net-form graphs. A graph file may
/// be `<graph_id>.csv` or `<graph_id>.jsonl`. Rejected rows, a missing file or
/// a center absent from its records throw.
DatasetManifest load_dataset(const std::filesystem::path& dir);

}  // namespace tsgn
