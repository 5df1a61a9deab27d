// Copyright 2026 The mlgdesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mlg/kernels.hpp"

#include <cmath>
#include <vector>

namespace mlg {

namespace {

// Scales the pivot row and returns the columns where it is nonzero.
std::vector<std::size_t> normalize_pivot_row(TableauView t, std::size_t r,
                                             std::size_t c) {
  double* prow = t.row(r);
  const double inv = 1.0 / prow[c];
  std::vector<std::size_t> nz;
  nz.reserve(t.cols / 4 + 1);
  for (std::size_t j = 0; j < t.cols; ++j) {
    if (prow[j] == 0.0) continue;
    prow[j] *= inv;
    nz.push_back(j);
  }
  prow[c] = 1.0;
  return nz;
}

inline void eliminate_row(TableauView t, std::size_t i, std::size_t c,
                          const double* prow,
                          const std::vector<std::size_t>& nz) {
  double* row = t.row(i);
  const double factor = row[c];
  if (factor == 0.0) return;
  for (std::size_t j : nz) {
    const double v = row[j] - factor * prow[j];
    row[j] = std::abs(v) < kFlushThreshold ? 0.0 : v;
  }
  row[c] = 0.0;
}

}  // namespace

void pivot_serial(TableauView t, std::size_t pivot_row, std::size_t pivot_col) {
  const auto nz = normalize_pivot_row(t, pivot_row, pivot_col);
  const double* prow = t.row(pivot_row);
  for (std::size_t i = 0; i < t.rows; ++i) {
    if (i != pivot_row) eliminate_row(t, i, pivot_col, prow, nz);
  }
}

void pivot_parallel(TableauView t, std::size_t pivot_row,
                    std::size_t pivot_col) {
  const auto nz = normalize_pivot_row(t, pivot_row, pivot_col);
  const double* prow = t.row(pivot_row);
  const auto rows = static_cast<std::ptrdiff_t>(t.rows);
  const bool wide = t.rows * nz.size() > 32768;
#pragma omp parallel for schedule(static) if (wide)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (k != pivot_row) eliminate_row(t, k, pivot_col, prow, nz);
  }
}

}  // namespace mlg
