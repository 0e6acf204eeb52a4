#include "tsgn/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "tsgn/error.hpp"
#include "tsgn/metrics.hpp"
#include "tsgn/parallel.hpp"
#include "tsgn/pca.hpp"
#include "tsgn/rng.hpp"

namespace tsgn {

Split stratified_split(std::span<const int> classes, double train_fraction, std::mt19937_64& rng) {
  const int n_classes = classes.empty() ? 0 : *std::max_element(classes.begin(), classes.end()) + 1;
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(n_classes));
  for (std::size_t i = 0; i < classes.size(); ++i) members[static_cast<std::size_t>(classes[i])].push_back(i);

  Split split;
  for (auto& rows : members) {
    std::shuffle(rows.begin(), rows.end(), rng);
    auto n_train = static_cast<std::size_t>(std::lround(train_fraction * static_cast<double>(rows.size())));
    if (rows.size() >= 2) n_train = std::clamp<std::size_t>(n_train, 1, rows.size() - 1);
    split.train.insert(split.train.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.test.insert(split.test.end(), rows.begin() + static_cast<std::ptrdiff_t>(n_train), rows.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

namespace {

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m, const std::vector<std::size_t>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(rows[i]));
  }
  return out;
}

bool covers(const std::vector<std::size_t>& rows, std::span<const int> ids, std::size_t n_classes) {
  std::set<int> seen;
  for (auto r : rows) seen.insert(ids[r]);
  return seen.size() == n_classes;
}

}  // namespace

EvalResult evaluate(const FeatureMatrix& data, const EvalOptions& options) {
  if (options.n_repeats < 1) throw Error(ErrorKind::invalid_argument, "n_repeats must be at least 1");
  if (!(options.train_fraction > 0.0 && options.train_fraction < 1.0)) {
    throw Error(ErrorKind::invalid_argument, "train_fraction must lie in (0, 1)");
  }
  if (data.labels.size() != data.rows()) {
    throw Error(ErrorKind::invalid_argument, "labels are not aligned with feature rows");
  }
  if (options.pca_components > data.cols()) {
    throw Error(ErrorKind::invalid_argument,
                fmt::format("cannot project {} columns onto {} components", data.cols(),
                            options.pca_components));
  }
  const auto [classes, ids] = encode_labels(data.labels);
  if (classes.size() < 2) {
    throw Error(ErrorKind::invalid_argument, "evaluation needs at least two classes");
  }
  auto positive_it = std::find(classes.begin(), classes.end(), options.positive_label);
  if (positive_it == classes.end()) {
    throw Error(ErrorKind::not_found,
                fmt::format("positive class '{}' does not occur in the data", options.positive_label));
  }
  const int positive = static_cast<int>(positive_it - classes.begin());

  EvalResult result;
  result.n_repeats = options.n_repeats;
  result.f1.assign(options.n_repeats, 0.0);

  parallel_for(options.n_repeats, options.threads, [&](std::size_t repeat) {
    std::mt19937_64 rng(derive_seed(options.seed, {repeat, 0}));
    Split split;
    std::size_t attempt = 0;
    for (;; ++attempt) {
      if (attempt == options.max_split_attempts) {
        throw Error(ErrorKind::invalid_argument,
                    fmt::format("repeat {}: a class is missing from every split after {} draws",
                                repeat, attempt));
      }
      split = stratified_split(ids, options.train_fraction, rng);
      if (covers(split.train, ids, classes.size()) && covers(split.test, ids, classes.size())) break;
    }

    Eigen::MatrixXd train_x = take_rows(data.values, split.train);
    Eigen::MatrixXd test_x = take_rows(data.values, split.test);
    if (options.pca_components > 0) {
      const auto pca = Pca::fit(train_x, options.pca_components);
      train_x = pca.transform(train_x);
      test_x = pca.transform(test_x);
    }
    std::vector<int> train_y;
    std::vector<int> test_y;
    for (auto r : split.train) train_y.push_back(ids[r]);
    for (auto r : split.test) test_y.push_back(ids[r]);

    ForestConfig forest = options.forest;
    forest.seed = derive_seed(options.seed, {repeat, 1});
    const auto model = RandomForest::train(train_x, train_y, classes.size(), forest);
    result.f1[repeat] = f1_score(model.predict(test_x), test_y, positive);
  });

  const double n = static_cast<double>(options.n_repeats);
  result.mean_f1 = std::accumulate(result.f1.begin(), result.f1.end(), 0.0) / n;
  double ss = 0.0;
  for (double f : result.f1) ss += (f - result.mean_f1) * (f - result.mean_f1);
  result.std_f1 = std::sqrt(ss / n);
  return result;
}

std::string EvalReport::to_text() const {
  std::string out;
  for (const auto& row : rows) {
    out += fmt::format("[{}]\n", row.variant);
    out += fmt::format("dataset = {}\n", row.dataset);
    out += fmt::format("variant = {}\n", row.variant);
    out += fmt::format("mean_f1 = {:.6f}\n", row.mean_f1);
    out += fmt::format("std_f1 = {:.6f}\n", row.std_f1);
    out += fmt::format("n_repeats = {}\n", row.n_repeats);
    out += row.percent_increase ? fmt::format("percent_increase = {:.4f}\n", *row.percent_increase)
                                : std::string("percent_increase = baseline\n");
    out += fmt::format("seed = {}\n\n", row.seed);
  }
  return out;
}

std::string EvalReport::to_csv() const {
  std::string out = "dataset,variant,mean_f1,std_f1,n_repeats,percent_increase,seed\n";
  for (const auto& row : rows) {
    out += fmt::format("{},{},{:.6f},{:.6f},{},{},{}\n", row.dataset, row.variant, row.mean_f1,
                       row.std_f1, row.n_repeats,
                       row.percent_increase ? fmt::format("{:.4f}", *row.percent_increase) : "",
                       row.seed);
  }
  return out;
}

}  // namespace tsgn
