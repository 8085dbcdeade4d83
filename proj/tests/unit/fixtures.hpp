#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "smaa_choquet/problem_io.hpp"

namespace fixtures {

inline std::string data(const std::string& name) { return std::string(SMAA_DATA_DIR) + "/" + name; }

inline smaa_choquet::ProblemFile load(const std::string& name) {
  return smaa_choquet::load_problem(data(name));
}

/// Evaluation matrix of the 18-alternative didactic example.
inline const std::vector<std::vector<double>>& didactic_matrix() {
  static const std::vector<std::vector<double>> m = {
      {15, 12, 10, 7}, {7, 8, 14, 16}, {18, 8, 4, 12},
      {9, 16, 4, 16}, {12, 5, 14, 14}, {8, 3, 7, 20},
      {14, 20, 5, 10}, {8, 13, 15, 6}, {3, 17, 2, 14},
      {4, 20, 8, 9}, {16, 7, 14, 10}, {8, 11, 5, 19},
      {17, 12, 6, 8}, {8, 6, 7, 19}, {20, 7, 4, 12},
      {12, 4, 15, 13}, {14, 11, 12, 9}, {9, 13, 12, 6},
  };
  return m;
}

/// Published barycenter of the didactic example, rounded as printed.
inline const std::vector<double>& didactic_barycenter() {
  static const std::vector<double> b = {0.26, 0.12, 0.27, 0.22, 0.098, 0.008, -0.001, 0.09, -0.06, -0.07};
  return b;
}

/// Published barycenter of the car example on its most discriminant scale.
inline const std::vector<double>& cars_barycenter() {
  static const std::vector<double> b = {0.22, 0.19, 0.16, 0.25, 0.037, 0.003, 0.097, -0.05, -0.008, 0.09};
  return b;
}

/// Alternative indices sorted by decreasing value; ties keep index order.
inline std::vector<std::size_t> order_by(const std::vector<double>& values) {
  std::vector<std::size_t> idx(values.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return idx;
}

}  // namespace fixtures
