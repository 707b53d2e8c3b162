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
#include <span>
#include <vector>

#include "qsvm/matrix.hpp"
#include "qsvm/qkernel.hpp"

namespace qsvm::svm {

struct SvmConfig {
    double C = 1.0;
    double kkt_tolerance = 1e-3;
    // Iteration cap, in units of one pass over the training set.
    std::size_t max_passes = 10000;

    friend bool operator==(const SvmConfig&, const SvmConfig&) = default;
};

void validate(const SvmConfig& config);

// Soft-margin dual solution for one binary problem. Decision function is
// sum_i alpha_i * y_i * k(x, x_i) + bias; positive values select class_a.
struct BinaryModel {
    std::vector<double> alpha;
    std::vector<int> y;  // +1 for class_a, -1 for class_b
    double bias = 0.0;
    int class_a = +1;
    int class_b = -1;
    // Rows of the ensemble's training matrix that this problem was trained on.
    std::vector<std::size_t> training_indices;
    bool converged = true;
    std::size_t iterations = 0;
};

// sum_i alpha_i - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij
double dual_objective(const qkernel::KernelMatrix& gram, std::span<const int> y,
                      std::span<const double> alpha);

// Sequential minimal optimization on a precomputed square Gram matrix.
// Each step updates the maximal-violating pair chosen with second-order gain,
// stopping once the KKT gap drops below cfg.kkt_tolerance. Hitting the
// iteration cap returns the current iterate with converged = false.
// Throws InvalidLabelsError unless y holds both +1 and -1 and nothing else.
BinaryModel solve_binary_smo(const qkernel::KernelMatrix& gram, std::span<const int> y,
                             const SvmConfig& cfg);

double decision_value(const BinaryModel& model, std::span<const double> kernel_row);

struct SvmModel {
    std::vector<int> classes;  // ascending
    std::vector<BinaryModel> binary_models;
    qkernel::KernelConfig kernel_config;
    Matrix training_features;

    std::size_t num_features() const noexcept { return training_features.cols(); }
    bool converged() const;
};

// One binary model per unordered class pair (a < b in class order), each
// trained on that pair's rows and the matching block of one shared Gram
// matrix. An unset RBF gamma is resolved from X with default_gamma().
SvmModel train_ovo(const Matrix& X, std::span<const int> labels, const SvmConfig& cfg,
                   qkernel::KernelConfig kernel_config);

// Votes from every pairwise model; ties go to the largest summed |decision
// value| over the contests a class won, then to the lowest class index.
std::vector<int> predict_from_kernel(const SvmModel& model, const qkernel::KernelMatrix& kernel);

// Kernel rows are recomputed against the retained training features using
// the model's kernel configuration.
std::vector<int> predict(const SvmModel& model, const Matrix& X);

}  // namespace qsvm::svm
