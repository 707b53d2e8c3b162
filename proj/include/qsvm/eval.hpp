// Copyright 2026 The qsvm-gnss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsvm/dataio.hpp"
#include "qsvm/svm.hpp"

namespace qsvm::eval {

using ConfusionMatrix = std::vector<std::vector<std::size_t>>;

struct EvalReport {
    std::vector<int> classes;
    ConfusionMatrix confusion;  // rows = truth, cols = prediction
    std::size_t n_total = 0;
    double accuracy = 0.0;
};

// Fraction of positions where prediction equals truth.
double accuracy(std::span<const int> predictions, std::span<const int> truth);

ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> truth,
                          std::span<const int> classes);

EvalReport evaluate(std::span<const int> predictions, std::span<const int> truth,
                    std::span<const int> classes);

using LabelFormatter = std::function<std::string(int)>;

std::string default_label_name(int class_id);

nlohmann::ordered_json to_json(const EvalReport& report,
                               const LabelFormatter& names = default_label_name);

// Header row of predicted classes, then one row per true class.
void write_confusion_csv(const EvalReport& report, std::ostream& out,
                         const LabelFormatter& names = default_label_name);

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

struct BoundaryGrid {
    Interval x_range;
    Interval y_range;
    std::size_t resolution = 0;
    // Row-major: cell (ix, iy) at index iy * resolution + ix.
    std::vector<int> cells;

    double x_center(std::size_t ix) const;
    double y_center(std::size_t iy) const;
    int at(std::size_t ix, std::size_t iy) const { return cells[iy * resolution + ix]; }
};

inline constexpr std::size_t kDefaultGridResolution = 100;

// Predicted labels at uniformly spaced cell centres over x_range x y_range.
BoundaryGrid boundary_grid(const svm::SvmModel& model, Interval x_range, Interval y_range,
                           std::size_t resolution = kDefaultGridResolution);

// Grid over the scaler's target square.
BoundaryGrid boundary_grid(const svm::SvmModel& model, const dataio::ScalerParams& scaler,
                           std::size_t resolution = kDefaultGridResolution);

// Header x,y,label then one row per cell in row-major order.
void write_grid_csv(const BoundaryGrid& grid, std::ostream& out,
                    const LabelFormatter& names = default_label_name);

}  // namespace qsvm::eval
