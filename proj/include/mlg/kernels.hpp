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

// Gauss-Jordan pivot on a dense row-major tableau.  The serial kernel is the
// reference; the parallel one splits the row eliminations across OpenMP
// threads and performs the same floating-point operations in the same order
// per element, so both produce bit-identical tableaus.

#ifndef MLG_KERNELS_HPP
#define MLG_KERNELS_HPP

#include <cstddef>
#include <span>

namespace mlg {

enum class PivotKernel { Serial, Parallel };

struct TableauView {
  std::span<double> data;
  std::size_t rows = 0;
  std::size_t cols = 0;

  double* row(std::size_t r) const { return data.data() + r * cols; }
};

// Entries whose magnitude drops below this after elimination are flushed to
// zero.
inline constexpr double kFlushThreshold = 1e-13;

void pivot_serial(TableauView t, std::size_t pivot_row, std::size_t pivot_col);
void pivot_parallel(TableauView t, std::size_t pivot_row,
                    std::size_t pivot_col);

inline void pivot(PivotKernel kernel, TableauView t, std::size_t pivot_row,
                  std::size_t pivot_col) {
  if (kernel == PivotKernel::Serial) {
    pivot_serial(t, pivot_row, pivot_col);
  } else {
    pivot_parallel(t, pivot_row, pivot_col);
  }
}

}  // namespace mlg

#endif  // MLG_KERNELS_HPP
