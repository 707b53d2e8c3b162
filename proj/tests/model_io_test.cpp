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

#include "qsvm/model_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "qsvm/error.hpp"

using namespace qsvm;
using namespace qsvm::model_io;

namespace {

ModelBundle trained_bundle(qkernel::KernelMode mode) {
    const auto data = dataio::generate_synthetic(dataio::Preset::T1Shape, 8);
    ModelBundle b;
    b.scaler = dataio::fit_scaler(data);
    qkernel::KernelConfig k;
    k.mode = mode;
    k.shots = 256;
    k.seed = 19;
    b.model = svm::train_ovo(dataio::apply_scaler(*b.scaler, data), data.class_ids(),
                             svm::SvmConfig{2.5, 1e-3, 500}, k);
    return b;
}

void expect_same(const ModelBundle& a, const ModelBundle& b) {
    EXPECT_EQ(a.scaler, b.scaler);
    EXPECT_EQ(a.model.classes, b.model.classes);
    EXPECT_EQ(a.model.kernel_config, b.model.kernel_config);
    EXPECT_EQ(a.model.training_features, b.model.training_features);
    ASSERT_EQ(a.model.binary_models.size(), b.model.binary_models.size());
    for (std::size_t k = 0; k < a.model.binary_models.size(); ++k) {
        const auto& x = a.model.binary_models[k];
        const auto& y = b.model.binary_models[k];
        EXPECT_EQ(x.alpha, y.alpha);
        EXPECT_EQ(x.y, y.y);
        EXPECT_EQ(x.bias, y.bias);
        EXPECT_EQ(x.class_a, y.class_a);
        EXPECT_EQ(x.class_b, y.class_b);
        EXPECT_EQ(x.training_indices, y.training_indices);
        EXPECT_EQ(x.converged, y.converged);
        EXPECT_EQ(x.iterations, y.iterations);
    }
}

}  // namespace

TEST(ModelIo, JsonRoundTripIsLossFree) {
    for (auto mode : {qkernel::KernelMode::FidelityExact, qkernel::KernelMode::FidelitySampled,
                      qkernel::KernelMode::Rbf}) {
        const auto bundle = trained_bundle(mode);
        const auto text = to_json(bundle).dump(2);
        const auto back = bundle_from_json(nlohmann::json::parse(text));
        expect_same(bundle, back);
        EXPECT_EQ(to_json(back).dump(2), text);
    }
}

TEST(ModelIo, RawModelHasNullScaler) {
    auto bundle = trained_bundle(qkernel::KernelMode::Rbf);
    bundle.scaler.reset();
    const auto j = to_json(bundle);
    EXPECT_TRUE(j.at("scaler").is_null());
    EXPECT_EQ(j.at("format_version"), kFormatVersion);
    EXPECT_FALSE(bundle_from_json(nlohmann::json::parse(j.dump())).scaler.has_value());
}

TEST(ModelIo, FileRoundTripPredictsIdentically) {
    const auto dir = std::filesystem::temp_directory_path() / "qsvm_model_io_test";
    std::filesystem::create_directories(dir);
    const auto bundle = trained_bundle(qkernel::KernelMode::FidelitySampled);
    save(bundle, dir / "model.json");
    const auto back = load(dir / "model.json");
    expect_same(bundle, back);
    const auto test = dataio::generate_synthetic(dataio::Preset::T2Shape, 8);
    EXPECT_EQ(svm::predict(bundle.model, dataio::apply_scaler(*bundle.scaler, test)),
              svm::predict(back.model, dataio::apply_scaler(*back.scaler, test)));
    std::filesystem::remove_all(dir);
}

TEST(ModelIo, MalformedDocumentsThrowParseError) {
    const auto good = nlohmann::json::parse(to_json(trained_bundle(qkernel::KernelMode::Rbf)).dump());
    auto bad = good;
    bad.erase("binary_models");
    EXPECT_THROW(bundle_from_json(bad), ParseError);
    bad = good;
    bad["format_version"] = 99;
    EXPECT_THROW(bundle_from_json(bad), ParseError);
    bad = good;
    bad["kernel"]["mode"] = "linear";
    EXPECT_THROW(bundle_from_json(bad), Error);
    EXPECT_THROW(bundle_from_json(nlohmann::json::array()), ParseError);

    const auto dir = std::filesystem::temp_directory_path() / "qsvm_model_io_bad";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "broken.json") << "{ not json";
    EXPECT_THROW(load(dir / "broken.json"), ParseError);
    EXPECT_THROW(load(dir / "missing.json"), Error);
    std::filesystem::remove_all(dir);
}
