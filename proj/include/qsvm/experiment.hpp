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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsvm/dataio.hpp"
#include "qsvm/eval.hpp"
#include "qsvm/model_io.hpp"
#include "qsvm/qkernel.hpp"
#include "qsvm/svm.hpp"

namespace qsvm::experiment {

enum class ModelKind { Qsvm, Svm };

std::string_view to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view text);

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "QSVM_OUTPUT_DIR";

inline constexpr std::uint64_t kDefaultDataSeed = 2024;
inline constexpr std::uint64_t kDefaultKernelSeed = 7;

struct ExperimentConfig {
    // Each source is a CSV path or a synthetic preset, written T0_SHAPE or
    // T0_SHAPE:<seed>. Presets without a seed use data_seed.
    std::vector<std::string> train_sources;
    std::string test_source;
    std::uint64_t data_seed = kDefaultDataSeed;

    ModelKind model = ModelKind::Qsvm;
    // QSVM kernels only: FidelityExact or FidelitySampled.
    qkernel::KernelMode quantum_kernel = qkernel::KernelMode::FidelitySampled;
    std::uint64_t shots = qkernel::kDefaultShots;
    std::uint64_t seed = kDefaultKernelSeed;
    std::size_t repetitions = 2;
    std::optional<double> gamma;  // SVM only; default rule when empty

    bool scale = true;
    double target_lo = 0.0;
    double target_hi = 1.0;

    svm::SvmConfig svm;

    std::filesystem::path output_dir;
    std::size_t grid_resolution = eval::kDefaultGridResolution;  // 0 disables the grid
};

// Throws InvalidArgumentError on an unusable configuration.
void validate(const ExperimentConfig& config);

dataio::Dataset load_source(const std::string& source, std::uint64_t default_seed);

// Kernel configuration implied by the experiment settings.
qkernel::KernelConfig kernel_config_for(const ExperimentConfig& config);

struct ExperimentResult {
    eval::EvalReport report;
    model_io::ModelBundle bundle;
    std::optional<eval::BoundaryGrid> grid;
    nlohmann::ordered_json report_json;
};

std::string label_name(int class_id);

// Loads every source, fits the scaler on the training rows only, trains,
// predicts the test rows and evaluates. Nothing is written to disk.
ExperimentResult run_experiment(const ExperimentConfig& config);

nlohmann::ordered_json config_to_json(const ExperimentConfig& config);

// report.json, confusion.csv, model.json and, when present, grid.csv.
void write_artifacts(const ExperimentResult& result, const std::filesystem::path& dir);

// Raw features pass through unchanged when the bundle has no scaler.
Matrix prepare_features(const model_io::ModelBundle& bundle, const dataio::Dataset& data);

// Grid over the scaled square, or over the training bounding box when the
// model was trained on raw features.
eval::BoundaryGrid boundary_for(const model_io::ModelBundle& bundle, std::size_t resolution);

}  // namespace qsvm::experiment
