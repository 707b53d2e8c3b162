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

#include "qsvm/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "qsvm/error.hpp"

namespace qsvm::experiment {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidArgumentError("cannot write '" + path.string() + "'");
    }
    out << text;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
    return kind == ModelKind::Qsvm ? "qsvm" : "svm";
}

ModelKind model_kind_from_string(std::string_view text) {
    if (text == "qsvm" || text == "QSVM") return ModelKind::Qsvm;
    if (text == "svm" || text == "SVM") return ModelKind::Svm;
    throw InvalidArgumentError("unknown model '" + std::string(text) + "' (expected qsvm or svm)");
}

std::string label_name(int class_id) {
    return std::string(dataio::to_string(dataio::reception_from_class_id(class_id)));
}

void validate(const ExperimentConfig& config) {
    if (config.train_sources.empty()) {
        throw InvalidArgumentError("at least one training source is required");
    }
    if (config.test_source.empty()) {
        throw InvalidArgumentError("a test source is required");
    }
    if (config.model == ModelKind::Qsvm &&
        config.quantum_kernel == qkernel::KernelMode::Rbf) {
        throw InvalidArgumentError("QSVM needs a fidelity kernel");
    }
    if (config.scale && !(config.target_hi > config.target_lo)) {
        throw InvalidArgumentError("scaler target range must satisfy lo < hi");
    }
    svm::validate(config.svm);
}

dataio::Dataset load_source(const std::string& source, std::uint64_t default_seed) {
    const auto colon = source.find(':');
    const std::string head = source.substr(0, colon);
    if (const auto preset = dataio::preset_from_string(head)) {
        std::uint64_t seed = default_seed;
        if (colon != std::string::npos) {
            const std::string tail = source.substr(colon + 1);
            const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), seed);
            if (ec != std::errc{} || ptr != tail.data() + tail.size()) {
                throw InvalidArgumentError("bad preset seed in '" + source + "'");
            }
        }
        return dataio::generate_synthetic(*preset, seed);
    }
    return dataio::load_csv(source);
}

qkernel::KernelConfig kernel_config_for(const ExperimentConfig& config) {
    qkernel::KernelConfig k;
    k.seed = config.seed;
    k.shots = config.shots;
    k.feature_map.num_features = dataio::kNumFeatures;
    k.feature_map.repetitions = config.repetitions;
    if (config.model == ModelKind::Qsvm) {
        k.mode = config.quantum_kernel;
    } else {
        k.mode = qkernel::KernelMode::Rbf;
        k.gamma = config.gamma;
    }
    return k;
}

Matrix prepare_features(const model_io::ModelBundle& bundle, const dataio::Dataset& data) {
    if (bundle.scaler) return dataio::apply_scaler(*bundle.scaler, data);
    return data.features();
}

eval::BoundaryGrid boundary_for(const model_io::ModelBundle& bundle, std::size_t resolution) {
    if (bundle.scaler) {
        return eval::boundary_grid(bundle.model, *bundle.scaler, resolution);
    }
    const Matrix& X = bundle.model.training_features;
    if (X.cols() != 2) {
        throw UnsupportedError("decision-boundary grids need a 2-feature model");
    }
    eval::Interval xr{X(0, 0), X(0, 0)};
    eval::Interval yr{X(0, 1), X(0, 1)};
    for (std::size_t r = 1; r < X.rows(); ++r) {
        xr.lo = std::min(xr.lo, X(r, 0));
        xr.hi = std::max(xr.hi, X(r, 0));
        yr.lo = std::min(yr.lo, X(r, 1));
        yr.hi = std::max(yr.hi, X(r, 1));
    }
    return eval::boundary_grid(bundle.model, xr, yr, resolution);
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& config) {
    nlohmann::ordered_json j;
    j["train"] = config.train_sources;
    j["test"] = config.test_source;
    j["data_seed"] = config.data_seed;
    j["model"] = to_string(config.model);
    j["kernel"] = model_io::to_json(kernel_config_for(config));
    j["scale"] = config.scale;
    j["target_range"] = {config.target_lo, config.target_hi};
    j["svm"] = {{"C", config.svm.C},
                {"kkt_tolerance", config.svm.kkt_tolerance},
                {"max_passes", config.svm.max_passes}};
    j["grid_resolution"] = config.grid_resolution;
    return j;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    validate(config);

    std::vector<dataio::Dataset> parts;
    for (const auto& source : config.train_sources) {
        parts.push_back(load_source(source, config.data_seed));
    }
    std::string train_name;
    for (const auto& p : parts) {
        if (!train_name.empty()) train_name += "+";
        train_name += p.name;
    }
    const dataio::Dataset train = dataio::concatenate(parts, train_name);
    const dataio::Dataset test = load_source(config.test_source, config.data_seed);

    ExperimentResult result;
    if (config.scale) {
        result.bundle.scaler = dataio::fit_scaler(train, config.target_lo, config.target_hi);
    }
    const Matrix X_train = prepare_features(result.bundle, train);
    const Matrix X_test = prepare_features(result.bundle, test);
    const std::vector<int> y_train = train.class_ids();
    const std::vector<int> y_test = test.class_ids();

    result.bundle.model = svm::train_ovo(X_train, y_train, config.svm, kernel_config_for(config));
    const std::vector<int> predictions = svm::predict(result.bundle.model, X_test);

    std::vector<int> classes;
    for (auto r : dataio::kAllReceptions) classes.push_back(dataio::class_id(r));
    result.report = eval::evaluate(predictions, y_test, classes);

    if (config.grid_resolution > 0) {
        result.grid = boundary_for(result.bundle, config.grid_resolution);
    }

    auto& j = result.report_json;
    j = eval::to_json(result.report, label_name);
    j["converged"] = result.bundle.model.converged();
    j["train_set"] = {{"name", train.name}, {"size", train.size()}};
    j["test_set"] = {{"name", test.name}, {"size", test.size()}};
    j["resolved_kernel"] = model_io::to_json(result.bundle.model.kernel_config);
    j["config"] = config_to_json(config);
    return result;
}

void write_artifacts(const ExperimentResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_text(dir / "report.json", result.report_json.dump(2) + "\n");

    std::ostringstream confusion;
    eval::write_confusion_csv(result.report, confusion, label_name);
    write_text(dir / "confusion.csv", confusion.str());

    model_io::save(result.bundle, dir / "model.json");

    if (result.grid) {
        std::ostringstream grid;
        eval::write_grid_csv(*result.grid, grid, label_name);
        write_text(dir / "grid.csv", grid.str());
    }
}

}  // namespace qsvm::experiment
