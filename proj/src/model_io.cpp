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

#include <fstream>
#include <string>

#include "qsvm/error.hpp"

namespace qsvm::model_io {

namespace {

using json = nlohmann::json;

std::string_view entanglement_name(featuremap::Entanglement e) {
    return e == featuremap::Entanglement::Linear ? "linear" : "full";
}

featuremap::Entanglement entanglement_from(const std::string& name) {
    if (name == "full") return featuremap::Entanglement::Full;
    if (name == "linear") return featuremap::Entanglement::Linear;
    throw InvalidArgumentError("unknown entanglement rule '" + name + "'");
}

featuremap::FeatureMapConfig feature_map_from(const json& j) {
    featuremap::FeatureMapConfig fm;
    fm.num_features = j.at("num_features").get<std::size_t>();
    fm.repetitions = j.at("repetitions").get<std::size_t>();
    fm.entanglement = entanglement_from(j.at("entanglement").get<std::string>());
    return fm;
}

qkernel::KernelConfig kernel_from(const json& j) {
    qkernel::KernelConfig k;
    k.mode = qkernel::kernel_mode_from_string(j.at("mode").get<std::string>());
    k.shots = j.at("shots").get<std::uint64_t>();
    k.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("gamma") && !j.at("gamma").is_null()) {
        k.gamma = j.at("gamma").get<double>();
    }
    k.feature_map = feature_map_from(j.at("feature_map"));
    return k;
}

dataio::ScalerParams scaler_from(const json& j) {
    dataio::ScalerParams p;
    p.data_min = j.at("data_min").get<std::vector<double>>();
    p.data_max = j.at("data_max").get<std::vector<double>>();
    p.target_lo = j.at("target_lo").get<double>();
    p.target_hi = j.at("target_hi").get<double>();
    return p;
}

}  // namespace

nlohmann::ordered_json to_json(const featuremap::FeatureMapConfig& config) {
    nlohmann::ordered_json j;
    j["num_features"] = config.num_features;
    j["repetitions"] = config.repetitions;
    j["entanglement"] = entanglement_name(config.entanglement);
    return j;
}

nlohmann::ordered_json to_json(const qkernel::KernelConfig& config) {
    nlohmann::ordered_json j;
    j["mode"] = qkernel::to_string(config.mode);
    j["shots"] = config.shots;
    j["seed"] = config.seed;
    j["gamma"] = config.gamma ? nlohmann::ordered_json(*config.gamma) : nullptr;
    j["feature_map"] = to_json(config.feature_map);
    return j;
}

nlohmann::ordered_json to_json(const dataio::ScalerParams& params) {
    nlohmann::ordered_json j;
    j["data_min"] = params.data_min;
    j["data_max"] = params.data_max;
    j["target_lo"] = params.target_lo;
    j["target_hi"] = params.target_hi;
    return j;
}

nlohmann::ordered_json to_json(const ModelBundle& bundle) {
    const auto& m = bundle.model;
    nlohmann::ordered_json j;
    j["format_version"] = kFormatVersion;
    j["classes"] = m.classes;
    j["kernel"] = to_json(m.kernel_config);
    j["scaler"] = bundle.scaler ? to_json(*bundle.scaler) : nlohmann::ordered_json(nullptr);

    auto& features = j["training_features"] = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < m.training_features.rows(); ++r) {
        const auto row = m.training_features.row(r);
        features.push_back(std::vector<double>(row.begin(), row.end()));
    }

    auto& pairs = j["binary_models"] = nlohmann::ordered_json::array();
    for (const auto& bm : m.binary_models) {
        nlohmann::ordered_json p;
        p["class_a"] = bm.class_a;
        p["class_b"] = bm.class_b;
        p["bias"] = bm.bias;
        p["alpha"] = bm.alpha;
        p["y"] = bm.y;
        p["training_indices"] = bm.training_indices;
        p["converged"] = bm.converged;
        p["iterations"] = bm.iterations;
        pairs.push_back(std::move(p));
    }
    return j;
}

ModelBundle bundle_from_json(const nlohmann::json& doc) {
    try {
        if (doc.at("format_version").get<int>() != kFormatVersion) {
            throw ParseError("model", 0, "unsupported model format version");
        }
        ModelBundle bundle;
        auto& m = bundle.model;
        m.classes = doc.at("classes").get<std::vector<int>>();
        m.kernel_config = kernel_from(doc.at("kernel"));
        if (!doc.at("scaler").is_null()) {
            bundle.scaler = scaler_from(doc.at("scaler"));
        }
        for (const auto& row : doc.at("training_features")) {
            m.training_features.append_row(row.get<std::vector<double>>());
        }
        for (const auto& p : doc.at("binary_models")) {
            svm::BinaryModel bm;
            bm.class_a = p.at("class_a").get<int>();
            bm.class_b = p.at("class_b").get<int>();
            bm.bias = p.at("bias").get<double>();
            bm.alpha = p.at("alpha").get<std::vector<double>>();
            bm.y = p.at("y").get<std::vector<int>>();
            bm.training_indices = p.at("training_indices").get<std::vector<std::size_t>>();
            bm.converged = p.at("converged").get<bool>();
            bm.iterations = p.at("iterations").get<std::size_t>();
            if (bm.alpha.size() != bm.y.size() || bm.alpha.size() != bm.training_indices.size()) {
                throw ParseError("model", 0, "binary model arrays differ in length");
            }
            for (std::size_t idx : bm.training_indices) {
                if (idx >= m.training_features.rows()) {
                    throw ParseError("model", 0, "training index out of range");
                }
            }
            m.binary_models.push_back(std::move(bm));
        }
        return bundle;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("model", 0, e.what());
    }
}

void save(const ModelBundle& bundle, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidArgumentError("cannot write '" + path.string() + "'");
    }
    out << to_json(bundle).dump(2) << '\n';
}

ModelBundle load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgumentError("cannot open '" + path.string() + "'");
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ParseError(path.string(), 0, e.what());
    }
    return bundle_from_json(doc);
}

}  // namespace qsvm::model_io
