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

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "qsvm/dataio.hpp"
#include "qsvm/svm.hpp"

namespace qsvm::model_io {

// A trained ensemble plus the scaler that produced its training features.
// An empty scaler means the model was trained on raw features.
struct ModelBundle {
    svm::SvmModel model;
    std::optional<dataio::ScalerParams> scaler;
};

inline constexpr int kFormatVersion = 1;

nlohmann::ordered_json to_json(const featuremap::FeatureMapConfig& config);
nlohmann::ordered_json to_json(const qkernel::KernelConfig& config);
nlohmann::ordered_json to_json(const dataio::ScalerParams& params);
nlohmann::ordered_json to_json(const ModelBundle& bundle);

// Throws ParseError on a malformed document.
ModelBundle bundle_from_json(const nlohmann::json& doc);

void save(const ModelBundle& bundle, const std::filesystem::path& path);
ModelBundle load(const std::filesystem::path& path);

}  // namespace qsvm::model_io
