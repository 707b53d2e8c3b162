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

#include "qsvm/eval.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include "qsvm/error.hpp"

namespace qsvm::eval {

namespace {

std::size_t index_of(std::span<const int> classes, int label) {
    const auto it = std::find(classes.begin(), classes.end(), label);
    if (it == classes.end()) {
        throw InvalidArgumentError("label " + std::to_string(label) +
                                   " is not in the class list");
    }
    return static_cast<std::size_t>(it - classes.begin());
}

void check_lengths(std::span<const int> predictions, std::span<const int> truth) {
    if (predictions.size() != truth.size()) {
        throw InvalidArgumentError("prediction and truth vectors differ in length (" +
                                   std::to_string(predictions.size()) + " vs " +
                                   std::to_string(truth.size()) + ")");
    }
    if (truth.empty()) {
        throw InvalidArgumentError("cannot evaluate an empty prediction set");
    }
}

void write_number(std::ostream& out, double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    out.write(buf, res.ptr - buf);
}

}  // namespace

double accuracy(std::span<const int> predictions, std::span<const int> truth) {
    check_lengths(predictions, truth);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (predictions[i] == truth[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(truth.size());
}

ConfusionMatrix confusion(std::span<const int> predictions, std::span<const int> truth,
                          std::span<const int> classes) {
    check_lengths(predictions, truth);
    ConfusionMatrix m(classes.size(), std::vector<std::size_t>(classes.size(), 0));
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++m[index_of(classes, truth[i])][index_of(classes, predictions[i])];
    }
    return m;
}

EvalReport evaluate(std::span<const int> predictions, std::span<const int> truth,
                    std::span<const int> classes) {
    EvalReport report;
    report.classes.assign(classes.begin(), classes.end());
    report.confusion = confusion(predictions, truth, classes);
    report.n_total = truth.size();
    std::size_t trace = 0;
    for (std::size_t c = 0; c < classes.size(); ++c) trace += report.confusion[c][c];
    report.accuracy = static_cast<double>(trace) / static_cast<double>(report.n_total);
    return report;
}

std::string default_label_name(int class_id) { return std::to_string(class_id); }

nlohmann::ordered_json to_json(const EvalReport& report, const LabelFormatter& names) {
    nlohmann::ordered_json j;
    j["accuracy"] = report.accuracy;
    j["n_total"] = report.n_total;
    auto& classes = j["classes"] = nlohmann::ordered_json::array();
    for (int c : report.classes) classes.push_back(names(c));
    j["confusion"] = report.confusion;
    return j;
}

void write_confusion_csv(const EvalReport& report, std::ostream& out,
                         const LabelFormatter& names) {
    out << "truth";
    for (int c : report.classes) out << ',' << names(c);
    out << '\n';
    for (std::size_t r = 0; r < report.classes.size(); ++r) {
        out << names(report.classes[r]);
        for (std::size_t count : report.confusion[r]) out << ',' << count;
        out << '\n';
    }
}

double BoundaryGrid::x_center(std::size_t ix) const {
    const double step = (x_range.hi - x_range.lo) / static_cast<double>(resolution);
    return x_range.lo + (static_cast<double>(ix) + 0.5) * step;
}

double BoundaryGrid::y_center(std::size_t iy) const {
    const double step = (y_range.hi - y_range.lo) / static_cast<double>(resolution);
    return y_range.lo + (static_cast<double>(iy) + 0.5) * step;
}

BoundaryGrid boundary_grid(const svm::SvmModel& model, Interval x_range, Interval y_range,
                           std::size_t resolution) {
    if (model.num_features() != 2) {
        throw UnsupportedError("decision-boundary grids need a 2-feature model, got " +
                               std::to_string(model.num_features()));
    }
    if (resolution == 0) {
        throw InvalidArgumentError("grid resolution must be positive");
    }
    if (!(x_range.hi > x_range.lo) || !(y_range.hi > y_range.lo)) {
        throw InvalidArgumentError("grid ranges must satisfy lo < hi");
    }

    BoundaryGrid grid{x_range, y_range, resolution, {}};
    Matrix points(resolution * resolution, 2);
    for (std::size_t iy = 0; iy < resolution; ++iy) {
        for (std::size_t ix = 0; ix < resolution; ++ix) {
            points(iy * resolution + ix, 0) = grid.x_center(ix);
            points(iy * resolution + ix, 1) = grid.y_center(iy);
        }
    }
    grid.cells = svm::predict(model, points);
    return grid;
}

BoundaryGrid boundary_grid(const svm::SvmModel& model, const dataio::ScalerParams& scaler,
                           std::size_t resolution) {
    const Interval square{scaler.target_lo, scaler.target_hi};
    return boundary_grid(model, square, square, resolution);
}

void write_grid_csv(const BoundaryGrid& grid, std::ostream& out, const LabelFormatter& names) {
    out << "x,y,label\n";
    for (std::size_t iy = 0; iy < grid.resolution; ++iy) {
        for (std::size_t ix = 0; ix < grid.resolution; ++ix) {
            write_number(out, grid.x_center(ix));
            out << ',';
            write_number(out, grid.y_center(iy));
            out << ',' << names(grid.at(ix, iy)) << '\n';
        }
    }
}

}  // namespace qsvm::eval
