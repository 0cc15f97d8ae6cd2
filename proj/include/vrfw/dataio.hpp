#ifndef VRFW_DATAIO_HPP
#define VRFW_DATAIO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "vrfw/core.hpp"

namespace vrfw {

// Sparse labeled dataset in memory: 0-based feature indices, contiguous
// 0-based class ids.
struct SparseRow {
  int label = 0;
  std::vector<std::pair<int, double>> features;  // strictly increasing index
};

struct SparseDataset {
  std::vector<SparseRow> rows;
  int num_features = 0;
  int num_classes = 0;
  // original label text -> contiguous id, first-seen order
  std::vector<std::pair<std::string, int>> label_map;

  // Ground-truth class centers when synthetically generated (num_classes x
  // num_features); empty otherwise.
  Eigen::MatrixXd centers;
};

// Parses `label index:value ...` lines (1-based indices on disk). Throws
// std::runtime_error with a line number on malformed input, non-increasing
// or duplicate indices.
SparseDataset parse_dataset(std::istream& in);
SparseDataset parse_dataset_file(const std::string& path);

// Canonical serialization: original labels, 1-based sorted indices, %.17g.
std::string serialize_dataset(const SparseDataset& ds);

// Seeded class-center model: h gaussian centers in R^m, sparse noisy
// examples around them. Higher separability means cleaner classes.
SparseDataset synth_multiclass(int n, int m, int h, std::uint64_t seed,
                               double separability);

// Seeded row-level split: first part gets round(frac * n) rows.
std::pair<SparseDataset, SparseDataset> split_rows(const SparseDataset& ds,
                                                   double frac,
                                                   std::uint64_t seed);

}  // namespace vrfw

#endif  // VRFW_DATAIO_HPP
