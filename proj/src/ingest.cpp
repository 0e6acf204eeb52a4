#include "tsgn/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "tsgn/error.hpp"

namespace tsgn {

std::string_view form_name(Form f) noexcept { return f == Form::star ? "star" : "net"; }

std::string_view tier_name(Tier t) noexcept {
  switch (t) {
    case Tier::plain: return "plain";
    case Tier::directed: return "directed";
    case Tier::multiedge: return "multiedge";
  }
  return "unknown";
}

Form parse_form(std::string_view s) {
  if (s == "star") return Form::star;
  if (s == "net") return Form::net;
  throw Error(ErrorKind::invalid_argument, fmt::format("unknown form '{}' (star|net)", s));
}

Tier parse_tier(std::string_view s) {
  if (s == "plain") return Tier::plain;
  if (s == "directed") return Tier::directed;
  if (s == "multiedge") return Tier::multiedge;
  throw Error(ErrorKind::invalid_argument,
              fmt::format("unknown tier '{}' (plain|directed|multiedge)", s));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_amount(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<std::int64_t> parse_timestamp(std::string_view s) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Shared per-row validation; returns an error message or accepts the record.
struct RowSink {
  LoadResult& result;

  void accept(std::size_t line, std::string_view src, std::string_view dst,
              std::string_view amount_text, std::optional<std::string_view> timestamp_text) {
    if (src.empty() || dst.empty()) {
      result.rejected.push_back({line, "empty address"});
      return;
    }
    auto amount = parse_amount(amount_text);
    if (!amount) {
      result.rejected.push_back({line, fmt::format("malformed amount '{}'", amount_text)});
      return;
    }
    if (*amount < 0.0) {
      result.rejected.push_back({line, fmt::format("negative amount {}", amount_text)});
      return;
    }
    std::optional<std::int64_t> timestamp;
    if (timestamp_text && !timestamp_text->empty()) {
      timestamp = parse_timestamp(*timestamp_text);
      if (!timestamp) {
        result.rejected.push_back({line, fmt::format("malformed timestamp '{}'", *timestamp_text)});
        return;
      }
    }
    auto s = Address::normalized(src);
    auto d = Address::normalized(dst);
    if (s == d) {
      ++result.self_loops_dropped;
      return;
    }
    const auto id = static_cast<EdgeId>(result.records.size());
    result.records.push_back(EdgeRecord{std::move(s), std::move(d), *amount, timestamp, id});
  }
};

}  // namespace

LoadResult parse_csv(std::istream& in, const EdgeListSchema& schema) {
  LoadResult result;
  RowSink sink{result};
  std::string line;
  std::size_t line_no = 0;

  std::map<std::string, std::size_t, std::less<>> columns;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    for (std::size_t i = 0; i < fields.size(); ++i) columns.emplace(std::string(fields[i]), i);
    break;
  }
  auto column = [&](const std::string& name, bool mandatory) -> std::optional<std::size_t> {
    auto it = columns.find(name);
    if (it != columns.end()) return it->second;
    if (mandatory) throw Error(ErrorKind::format, fmt::format("missing mandatory column '{}'", name));
    return std::nullopt;
  };
  const auto src = *column(schema.src, true);
  const auto dst = *column(schema.dst, true);
  const auto amount = *column(schema.amount, true);
  const auto timestamp = column(schema.timestamp, false);
  const auto width = std::max({src, dst, amount, timestamp.value_or(0)}) + 1;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() < width) {
      result.rejected.push_back({line_no, fmt::format("expected {} fields, found {}", width, fields.size())});
      continue;
    }
    std::optional<std::string_view> ts;
    if (timestamp) ts = fields[*timestamp];
    sink.accept(line_no, fields[src], fields[dst], fields[amount], ts);
  }
  return result;
}

LoadResult parse_jsonl(std::istream& in, const EdgeListSchema& schema) {
  using nlohmann::json;
  LoadResult result;
  RowSink sink{result};
  std::string line;
  std::size_t line_no = 0;

  auto text_of = [](const json& v) -> std::optional<std::string> {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_float()) return fmt::format("{}", v.get<double>());
    return std::nullopt;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json row = json::parse(line, nullptr, false);
    if (row.is_discarded() || !row.is_object()) {
      result.rejected.push_back({line_no, "not a JSON object"});
      continue;
    }
    std::array<std::optional<std::string>, 3> mandatory;
    const std::array<const std::string*, 3> names = {&schema.src, &schema.dst, &schema.amount};
    bool ok = true;
    for (std::size_t i = 0; i < 3 && ok; ++i) {
      auto it = row.find(*names[i]);
      if (it == row.end()) {
        result.rejected.push_back({line_no, fmt::format("missing field '{}'", *names[i])});
        ok = false;
      } else if (!(mandatory[i] = text_of(*it))) {
        result.rejected.push_back({line_no, fmt::format("field '{}' has the wrong type", *names[i])});
        ok = false;
      }
    }
    if (!ok) continue;
    std::optional<std::string> ts;
    if (auto it = row.find(schema.timestamp); it != row.end() && !it->is_null()) {
      ts = text_of(*it);
      if (!ts) {
        result.rejected.push_back({line_no, "timestamp has the wrong type"});
        continue;
      }
    }
    std::optional<std::string_view> ts_view;
    if (ts) ts_view = *ts;
    sink.accept(line_no, *mandatory[0], *mandatory[1], *mandatory[2], ts_view);
  }
  return result;
}

LoadResult load_edge_list(const std::filesystem::path& path, const EdgeListSchema& schema,
                          RecordFormat format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, fmt::format("cannot read '{}'", path.string()));
  if (format == RecordFormat::detect) {
    const auto ext = path.extension().string();
    format = (ext == ".jsonl" || ext == ".json") ? RecordFormat::jsonl : RecordFormat::csv;
  }
  return format == RecordFormat::jsonl ? parse_jsonl(in, schema) : parse_csv(in, schema);
}

std::string to_csv(std::span<const EdgeRecord> records) {
  std::string out = "src,dst,amount,timestamp\n";
  for (const auto& r : records) {
    out += fmt::format("{},{},{},{}\n", r.src.str(), r.dst.str(), r.amount,
                       r.timestamp ? std::to_string(*r.timestamp) : std::string());
  }
  return out;
}

TransactionGraph extract_ego_network(std::span<const EdgeRecord> records, const Address& target,
                                     Form form, Tier tier, std::optional<std::string> label) {
  std::set<Address> neighbors;
  for (const auto& r : records) {
    if (r.src == target) neighbors.insert(r.dst);
    if (r.dst == target) neighbors.insert(r.src);
  }
  if (neighbors.empty()) {
    throw Error(ErrorKind::not_found, fmt::format("target {} appears in no record", target.str()));
  }

  std::vector<EdgeRecord> kept;
  for (const auto& r : records) {
    const bool incident = r.src == target || r.dst == target;
    const bool between = form == Form::net && neighbors.count(r.src) && neighbors.count(r.dst);
    if (incident || between) kept.push_back(r);
  }

  const bool timestamped = std::all_of(kept.begin(), kept.end(),
                                       [](const EdgeRecord& r) { return r.timestamp.has_value(); });
  auto graph = TransactionGraph::from_records(kept, target, GraphFlags{true, timestamped, true},
                                              std::move(label));
  switch (tier) {
    case Tier::plain: return undirected_projection(graph);
    case Tier::directed: return directed_projection(graph);
    case Tier::multiedge: return graph;
  }
  return graph;
}

std::vector<std::string> DatasetManifest::labels() const {
  std::vector<std::string> out;
  out.reserve(graphs.size());
  for (const auto& g : graphs) out.push_back(g.label().value_or(""));
  return out;
}

std::vector<std::string> DatasetManifest::label_set() const {
  auto out = labels();
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

Tier tier_of(const TransactionGraph& g) {
  if (!g.flags().directed) return Tier::plain;
  return g.flags().multiedge ? Tier::multiedge : Tier::directed;
}

}  // namespace

DatasetManifest reextract(const DatasetManifest& m, Form form, Tier tier) {
  if (static_cast<int>(tier) > static_cast<int>(m.tier)) {
    throw Error(ErrorKind::incompatible,
                fmt::format("cannot raise a {} dataset to the {} tier", tier_name(m.tier), tier_name(tier)));
  }
  if (form == Form::net && m.form == Form::star) {
    throw Error(ErrorKind::incompatible, "a star-form dataset has no neighbor edges to restore");
  }
  DatasetManifest out;
  out.name = m.name;
  out.provenance = m.provenance;
  out.form = form;
  out.tier = tier;
  out.graph_ids = m.graph_ids;
  out.graphs.reserve(m.graphs.size());
  for (const auto& g : m.graphs) {
    if (!g.center()) throw Error(ErrorKind::invalid_argument, "graph without a center");
    auto records = g.records();
    const auto& center = g.node(*g.center());
    if (tier_of(g) == Tier::plain) {
      // Undirected edges have no meaningful orientation; keep the graph as is
      // apart from the form filter.
      auto ego = extract_ego_network(records, center, form, Tier::multiedge, g.label());
      out.graphs.push_back(undirected_projection(ego));
    } else {
      out.graphs.push_back(extract_ego_network(records, center, form, tier, g.label()));
    }
  }
  return out;
}

DatasetStats dataset_stats(const DatasetManifest& m) {
  if (m.graphs.empty()) throw Error(ErrorKind::invalid_argument, "dataset has no graphs");
  DatasetStats s;
  s.n_graphs = m.graphs.size();
  std::map<std::string, std::size_t> per_class;
  for (const auto& g : m.graphs) {
    ++per_class[g.label().value_or("")];
    s.total_nodes += g.node_count();
    s.max_nodes = std::max(s.max_nodes, g.node_count());
    s.total_edges += g.edge_count();
    s.max_edges = std::max(s.max_edges, g.edge_count());
  }
  s.n_classes = per_class.size();
  for (const auto& [_, count] : per_class) s.n_largest_class = std::max(s.n_largest_class, count);
  return s;
}

std::string stats_table(const std::vector<DatasetManifest>& manifests) {
  const std::vector<std::string> header = {"Dataset", "Type",  "N_G", "#C_max", "N_C",
                                           "#N",      "max#N", "Plain #E", "Plain max#E",
                                           "Directed #E", "Directed max#E", "Multiedge #E",
                                           "Multiedge max#E"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& m : manifests) {
    const auto base = dataset_stats(m);
    std::vector<std::string> row = {
        m.name,
        m.form == Form::star ? "Star" : "Net",
        std::to_string(base.n_graphs),
        std::to_string(base.n_largest_class),
        std::to_string(base.n_classes),
        std::to_string(std::lround(base.mean_nodes())),
        std::to_string(base.max_nodes),
    };
    for (auto tier : {Tier::plain, Tier::directed, Tier::multiedge}) {
      if (static_cast<int>(tier) > static_cast<int>(m.tier)) {
        row.insert(row.end(), {"-", "-"});
        continue;
      }
      const auto s = tier == m.tier ? base : dataset_stats(reextract(m, m.form, tier));
      row.push_back(std::to_string(std::lround(s.mean_edges())));
      row.push_back(std::to_string(s.max_edges));
    }
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  auto format_row = [&](const std::vector<std::string>& r) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c > 0) line += "  ";
      line += c < 2 ? fmt::format("{:<{}}", r[c], width[c]) : fmt::format("{:>{}}", r[c], width[c]);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    return line + '\n';
  };
  std::string out = format_row(header);
  for (const auto& r : rows) out += format_row(r);
  return out;
}

void save_dataset(const DatasetManifest& m, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io, fmt::format("cannot create '{}': {}", dir.string(), ec.message()));

  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw Error(ErrorKind::io, fmt::format("cannot write '{}'", path.string()));
  };

  std::string labels = "graph_id,center_address,label\n";
  for (std::size_t i = 0; i < m.graphs.size(); ++i) {
    const auto& g = m.graphs[i];
    const auto& id = m.graph_ids.at(i);
    if (id.empty() || id == "labels" || id.find_first_of("/\\,") != std::string::npos) {
      throw Error(ErrorKind::invalid_argument, fmt::format("unusable graph id '{}'", id));
    }
    if (!g.center()) throw Error(ErrorKind::invalid_argument, fmt::format("graph {} has no center", id));
    labels += fmt::format("{},{},{}\n", id, g.node(*g.center()).str(), g.label().value_or(""));
    write(dir / (id + ".csv"), to_csv(g.records()));
  }
  write(dir / "labels.csv", labels);
}

DatasetManifest load_dataset(const std::filesystem::path& dir) {
  const auto labels_path = dir / "labels.csv";
  std::ifstream in(labels_path);
  if (!in) throw Error(ErrorKind::io, fmt::format("cannot read '{}'", labels_path.string()));

  DatasetManifest m;
  m.name = dir.filename().empty() ? dir.parent_path().filename().string() : dir.filename().string();
  m.provenance = dir.string();
  m.form = Form::net;
  m.tier = Tier::multiedge;

  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (header) {
      header = false;
      if (fields.size() < 3 || fields[0] != "graph_id" || fields[1] != "center_address" ||
          fields[2] != "label") {
        throw Error(ErrorKind::format,
                    fmt::format("{}: expected header graph_id,center_address,label", labels_path.string()));
      }
      continue;
    }
    if (fields.size() < 3 || fields[0].empty() || fields[1].empty()) {
      throw Error(ErrorKind::format, fmt::format("{}:{}: malformed row", labels_path.string(), line_no));
    }
    const std::string id(fields[0]);
    auto path = dir / (id + ".csv");
    if (!std::filesystem::exists(path) && std::filesystem::exists(dir / (id + ".jsonl"))) {
      path = dir / (id + ".jsonl");
    }
    auto loaded = load_edge_list(path);
    if (!loaded.rejected.empty()) {
      const auto& bad = loaded.rejected.front();
      throw Error(ErrorKind::format,
                  fmt::format("{}:{}: {}", path.string(), bad.line, bad.message));
    }
    const auto center = Address::normalized(fields[1]);
    const bool touches = std::any_of(loaded.records.begin(), loaded.records.end(),
                                     [&](const EdgeRecord& r) { return r.src == center || r.dst == center; });
    if (!touches) {
      throw Error(ErrorKind::format,
                  fmt::format("{}: center {} appears in no record", path.string(), center.str()));
    }
    const bool timestamped = std::all_of(loaded.records.begin(), loaded.records.end(),
                                         [](const EdgeRecord& r) { return r.timestamp.has_value(); });
    m.self_loops_dropped += loaded.self_loops_dropped;
    m.graph_ids.push_back(id);
    m.graphs.push_back(TransactionGraph::from_records(
        loaded.records, center, GraphFlags{true, timestamped, true}, std::string(fields[2])));
  }
  if (m.graphs.empty()) {
    throw Error(ErrorKind::invalid_argument, fmt::format("dataset '{}' lists no graphs", dir.string()));
  }
  return m;
}

}  // namespace tsgn
