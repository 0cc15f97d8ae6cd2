#include "vrfw/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vrfw {

namespace {

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
  throw std::runtime_error("parse_dataset: line " + std::to_string(line_no) +
                           ": " + what);
}

}  // namespace

SparseDataset parse_dataset(std::istream& in) {
  SparseDataset ds;
  std::map<std::string, int> label_ids;
  std::string line;
  int line_no = 0;
  int max_index = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string label_tok;
    if (!(ls >> label_tok)) continue;  // blank line
    SparseRow row;
    auto it = label_ids.find(label_tok);
    if (it == label_ids.end()) {
      const int id = static_cast<int>(label_ids.size());
      it = label_ids.emplace(label_tok, id).first;
      ds.label_map.emplace_back(label_tok, id);
    }
    row.label = it->second;
    std::string tok;
    int prev_index = -1;
    while (ls >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
        parse_fail(line_no, "malformed token '" + tok + "'");
      int index;
      double value;
      try {
        size_t pos = 0;
        index = std::stoi(tok.substr(0, colon), &pos);
        if (pos != colon) throw std::invalid_argument("");
        pos = 0;
        const std::string val_str = tok.substr(colon + 1);
        value = std::stod(val_str, &pos);
        if (pos != val_str.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        parse_fail(line_no, "non-numeric token '" + tok + "'");
      }
      if (index < 1) parse_fail(line_no, "index must be >= 1");
      const int idx0 = index - 1;
      if (idx0 <= prev_index)
        parse_fail(line_no, "non-increasing feature index " +
                                std::to_string(index));
      prev_index = idx0;
      row.features.emplace_back(idx0, value);
      max_index = std::max(max_index, idx0);
    }
    ds.rows.push_back(std::move(row));
  }
  ds.num_features = max_index + 1;
  ds.num_classes = static_cast<int>(label_ids.size());
  return ds;
}

SparseDataset parse_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  return parse_dataset(in);
}

std::string serialize_dataset(const SparseDataset& ds) {
  std::string out;
  char buf[64];
  std::vector<std::string> id_to_label(ds.label_map.size());
  for (const auto& [name, id] : ds.label_map) id_to_label[id] = name;
  for (const auto& row : ds.rows) {
    out += id_to_label[row.label];
    for (const auto& [idx, val] : row.features) {
      std::snprintf(buf, sizeof(buf), " %d:%.17g", idx + 1, val);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

SparseDataset synth_multiclass(int n, int m, int h, std::uint64_t seed,
                               double separability) {
  if (n < 1 || m < 1 || h < 1)
    throw std::invalid_argument("synth_multiclass: n, m, h must be >= 1");
  RngStream rng(seed);
  SparseDataset ds;
  ds.num_features = m;
  ds.num_classes = h;
  ds.centers = Eigen::MatrixXd(h, m);
  for (int c = 0; c < h; ++c)
    for (int j = 0; j < m; ++j) ds.centers(c, j) = rng.next_gaussian();
  for (int c = 0; c < h; ++c)
    ds.label_map.emplace_back(std::to_string(c), c);

  const int nnz = std::min(m, std::max(2, m / 4));
  for (int i = 0; i < n; ++i) {
    SparseRow row;
    row.label = static_cast<int>(rng.next_index(h));
    // distinct sorted coordinates
    std::vector<int> coords;
    while (static_cast<int>(coords.size()) < nnz) {
      const int j = static_cast<int>(rng.next_index(m));
      if (std::find(coords.begin(), coords.end(), j) == coords.end())
        coords.push_back(j);
    }
    std::sort(coords.begin(), coords.end());
    double norm2 = 0.0;
    for (int j : coords) {
      const double v =
          separability * ds.centers(row.label, j) + rng.next_gaussian();
      row.features.emplace_back(j, v);
      norm2 += v * v;
    }
    // Normalize feature vectors so the smoothness bound stays O(1).
    if (norm2 > 0) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& [j, v] : row.features) v *= inv;
    }
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

std::pair<SparseDataset, SparseDataset> split_rows(const SparseDataset& ds,
                                                   double frac,
                                                   std::uint64_t seed) {
  if (frac < 0.0 || frac > 1.0)
    throw std::invalid_argument("split_rows: frac outside [0,1]");
  RngStream rng(seed);
  const int n = static_cast<int>(ds.rows.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(order[i], order[rng.next_index(i + 1)]);
  const int n1 = static_cast<int>(std::lround(frac * n));
  SparseDataset a, b;
  a.num_features = b.num_features = ds.num_features;
  a.num_classes = b.num_classes = ds.num_classes;
  a.label_map = b.label_map = ds.label_map;
  for (int i = 0; i < n; ++i)
    (i < n1 ? a : b).rows.push_back(ds.rows[order[i]]);
  return {std::move(a), std::move(b)};
}

}  // namespace vrfw
