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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include "qsvm/error.hpp"

using namespace qsvm;
using namespace qsvm::eval;

namespace {

const std::vector<int> kClasses{0, 1, 2};

svm::SvmModel corner_model() {
    const Matrix X{{0.1, 0.1}, {0.2, 0.15}, {0.9, 0.1}, {0.8, 0.2}, {0.5, 0.9}, {0.45, 0.85}};
    qkernel::KernelConfig k;
    k.mode = qkernel::KernelMode::Rbf;
    k.gamma = 5.0;
    return svm::train_ovo(X, std::vector<int>{0, 0, 1, 1, 2, 2}, svm::SvmConfig{10.0}, k);
}

}  // namespace

TEST(Accuracy, Examples) {
    EXPECT_DOUBLE_EQ(accuracy(std::vector<int>{0, 1, 2, 2}, std::vector<int>{0, 1, 2, 2}), 1.0);
    EXPECT_DOUBLE_EQ(accuracy(std::vector<int>{0, 1, 1, 0}, std::vector<int>{0, 1, 2, 2}), 0.5);
    EXPECT_THROW(accuracy(std::vector<int>{0}, std::vector<int>{0, 1}), InvalidArgumentError);
    EXPECT_THROW(accuracy(std::vector<int>{}, std::vector<int>{}), InvalidArgumentError);
}

TEST(Confusion, RowsAreTruth) {
    const std::vector<int> pred{0, 1, 1, 0, 2, 2};
    const std::vector<int> truth{0, 1, 2, 2, 2, 1};
    const auto m = confusion(pred, truth, kClasses);
    const ConfusionMatrix expected{{1, 0, 0}, {0, 1, 1}, {1, 1, 1}};
    EXPECT_EQ(m, expected);
    EXPECT_THROW(confusion(std::vector<int>{5}, std::vector<int>{0}, kClasses),
                 InvalidArgumentError);
}

TEST(Evaluate, TraceOverTotalEqualsAccuracy) {
    const std::vector<int> pred{0, 1, 1, 0, 2, 2, 0};
    const std::vector<int> truth{0, 1, 2, 2, 2, 1, 0};
    const auto r = evaluate(pred, truth, kClasses);
    EXPECT_EQ(r.n_total, 7u);
    EXPECT_DOUBLE_EQ(r.accuracy, accuracy(pred, truth));
    std::size_t total = 0;
    for (const auto& row : r.confusion)
        for (auto c : row) total += c;
    EXPECT_EQ(total, 7u);
}

TEST(Evaluate, LabelPermutationInvariance) {
    const std::vector<int> pred{0, 1, 1, 0, 2, 2, 0};
    const std::vector<int> truth{0, 1, 2, 2, 2, 1, 0};
    const std::vector<int> perm{2, 0, 1};  // class c -> perm[c]
    std::vector<int> p2, t2;
    for (int v : pred) p2.push_back(perm[v]);
    for (int v : truth) t2.push_back(perm[v]);
    const auto a = evaluate(pred, truth, kClasses);
    const auto b = evaluate(p2, t2, kClasses);
    EXPECT_DOUBLE_EQ(a.accuracy, b.accuracy);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) EXPECT_EQ(a.confusion[r][c], b.confusion[perm[r]][perm[c]]);
}

TEST(ToJson, Layout) {
    const auto r = evaluate(std::vector<int>{0, 1}, std::vector<int>{0, 0}, kClasses);
    const auto j = to_json(r, [](int c) { return "c" + std::to_string(c); });
    EXPECT_EQ(j.dump(), R"({"accuracy":0.5,"n_total":2,"classes":["c0","c1","c2"],)"
                        R"("confusion":[[1,1,0],[0,0,0],[0,0,0]]})");
}

TEST(WriteConfusionCsv, Layout) {
    const auto r = evaluate(std::vector<int>{0, 1}, std::vector<int>{0, 0}, kClasses);
    std::ostringstream out;
    write_confusion_csv(r, out);
    EXPECT_EQ(out.str(), "truth,0,1,2\n0,1,1,0\n1,0,0,0\n2,0,0,0\n");
}

TEST(BoundaryGrid, CellCentres) {
    BoundaryGrid g{{0.0, 1.0}, {-2.0, 2.0}, 4, {}};
    EXPECT_DOUBLE_EQ(g.x_center(0), 0.125);
    EXPECT_DOUBLE_EQ(g.x_center(3), 0.875);
    EXPECT_DOUBLE_EQ(g.y_center(1), -0.5);
}

TEST(BoundaryGrid, PredictsEachCellAndIsDeterministic) {
    const auto model = corner_model();
    const auto g = boundary_grid(model, Interval{0.0, 1.0}, Interval{0.0, 1.0}, 20);
    ASSERT_EQ(g.cells.size(), 400u);
    const std::set<int> labels(g.cells.begin(), g.cells.end());
    EXPECT_EQ(labels, (std::set<int>{0, 1, 2}));
    // Corners near the training clusters take their label.
    EXPECT_EQ(g.at(2, 2), 0);
    EXPECT_EQ(g.at(17, 2), 1);
    EXPECT_EQ(g.at(10, 18), 2);
    const Matrix probe{{g.x_center(7), g.y_center(13)}};
    EXPECT_EQ(svm::predict(model, probe)[0], g.at(7, 13));
    EXPECT_EQ(g.cells, boundary_grid(model, Interval{0.0, 1.0}, Interval{0.0, 1.0}, 20).cells);
}

TEST(BoundaryGrid, ScalerOverloadUsesTargetSquare) {
    const auto model = corner_model();
    dataio::ScalerParams p{{0.0, 0.0}, {1.0, 1.0}, 0.0, 1.0};
    const auto g = boundary_grid(model, p, 10);
    EXPECT_DOUBLE_EQ(g.x_range.lo, 0.0);
    EXPECT_DOUBLE_EQ(g.y_range.hi, 1.0);
    EXPECT_EQ(g.cells, boundary_grid(model, Interval{0, 1}, Interval{0, 1}, 10).cells);
}

TEST(BoundaryGrid, Errors) {
    const auto model = corner_model();
    EXPECT_THROW(boundary_grid(model, Interval{0, 1}, Interval{0, 1}, 0), InvalidArgumentError);
    EXPECT_THROW(boundary_grid(model, Interval{1, 0}, Interval{0, 1}, 5), InvalidArgumentError);

    qkernel::KernelConfig k;
    k.mode = qkernel::KernelMode::Rbf;
    k.gamma = 1.0;
    const auto model3 = svm::train_ovo(Matrix{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}},
                                       std::vector<int>{0, 1}, {}, k);
    EXPECT_THROW(boundary_grid(model3, Interval{0, 1}, Interval{0, 1}, 5), UnsupportedError);
}

TEST(WriteGridCsv, Layout) {
    BoundaryGrid g{{0.0, 1.0}, {0.0, 1.0}, 2, {0, 1, 2, 0}};
    std::ostringstream out;
    write_grid_csv(g, out);
    EXPECT_EQ(out.str(), "x,y,label\n0.25,0.25,0\n0.75,0.25,1\n0.25,0.75,2\n0.75,0.75,0\n");
}
