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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsvm/dataio.hpp"
#include "qsvm/error.hpp"
#include "qsvm/eval.hpp"
#include "qsvm/experiment.hpp"
#include "qsvm/model_io.hpp"

namespace {

using namespace qsvm;

std::string default_output_dir() {
    if (const char* env = std::getenv(experiment::kOutputDirEnv); env && *env) return env;
    return "qsvm_out";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgumentError("cannot write '" + path + "'");
    out << text;
}

// Flags shared by `train` and `experiment`.
struct TrainFlags {
    std::string model = "qsvm";
    std::string kernel = "sampled";
    double gamma = 0.0;
    std::vector<double> range{0.0, 1.0};
    bool no_scale = false;
};

void add_train_flags(CLI::App* cmd, experiment::ExperimentConfig& cfg, TrainFlags& flags) {
    cmd->add_option("--train", cfg.train_sources,
                    "Training source(s): CSV path or preset (T0_SHAPE[:seed])")
        ->required();
    cmd->add_option("--data-seed", cfg.data_seed, "Seed for presets given without one")
        ->capture_default_str();
    cmd->add_option("--model", flags.model, "qsvm or svm")->capture_default_str();
    cmd->add_option("--kernel", flags.kernel, "QSVM kernel: exact or sampled")
        ->capture_default_str();
    cmd->add_option("--shots", cfg.shots, "Shots per sampled kernel entry")
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Kernel sampling seed")->capture_default_str();
    cmd->add_option("--reps", cfg.repetitions, "Feature map repetitions")->capture_default_str();
    cmd->add_option("--gamma", flags.gamma, "RBF gamma (default: 1/(d*var))");
    cmd->add_option("--C", cfg.svm.C, "SVM box constraint")->capture_default_str();
    cmd->add_option("--tol", cfg.svm.kkt_tolerance, "SMO KKT tolerance")->capture_default_str();
    cmd->add_option("--max-passes", cfg.svm.max_passes, "SMO iteration cap in passes")
        ->capture_default_str();
    cmd->add_option("--range", flags.range, "Scaler target range lo hi")
        ->expected(2)
        ->capture_default_str();
    cmd->add_flag("--no-scale", flags.no_scale, "Train on raw features");
}

void resolve_train_flags(experiment::ExperimentConfig& cfg, const TrainFlags& flags,
                         const CLI::App* cmd) {
    cfg.model = experiment::model_kind_from_string(flags.model);
    cfg.quantum_kernel = qkernel::kernel_mode_from_string(flags.kernel);
    if (cmd->count("--gamma") > 0) cfg.gamma = flags.gamma;
    cfg.target_lo = flags.range.at(0);
    cfg.target_hi = flags.range.at(1);
    cfg.scale = !flags.no_scale;
}

std::vector<int> class_list() {
    std::vector<int> classes;
    for (auto r : dataio::kAllReceptions) classes.push_back(dataio::class_id(r));
    return classes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-kernel and RBF SVM classification of GNSS reception conditions"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "Write a synthetic dataset CSV");
    std::string preset_name = "T0_SHAPE";
    std::uint64_t synth_seed = experiment::kDefaultDataSeed;
    std::string synth_out;
    synth->add_option("--preset", preset_name, "T0_SHAPE, T1_SHAPE or T2_SHAPE")
        ->capture_default_str();
    synth->add_option("--seed", synth_seed, "Generator seed")->capture_default_str();
    synth->add_option("--out", synth_out, "Output CSV path")->required();

    // train
    auto* train = app.add_subcommand("train", "Fit scaler and model, write model JSON");
    experiment::ExperimentConfig train_cfg;
    TrainFlags train_flags;
    std::string train_out;
    add_train_flags(train, train_cfg, train_flags);
    train->add_option("--out", train_out, "Model JSON path")->required();

    // predict
    auto* predict = app.add_subcommand("predict", "Predict labels for a dataset");
    std::string predict_model;
    std::string predict_data;
    std::string predict_out;
    std::uint64_t predict_data_seed = experiment::kDefaultDataSeed;
    predict->add_option("--model", predict_model, "Model JSON")->required();
    predict->add_option("--data", predict_data, "CSV path or preset")->required();
    predict->add_option("--data-seed", predict_data_seed, "Seed for presets")
        ->capture_default_str();
    predict->add_option("--out", predict_out, "Predictions CSV path")->required();

    // eval
    auto* evaluate = app.add_subcommand("eval", "Evaluate a model on a labeled dataset");
    std::string eval_model;
    std::string eval_data;
    std::string eval_out;
    std::string eval_confusion;
    std::uint64_t eval_data_seed = experiment::kDefaultDataSeed;
    evaluate->add_option("--model", eval_model, "Model JSON")->required();
    evaluate->add_option("--data", eval_data, "CSV path or preset")->required();
    evaluate->add_option("--data-seed", eval_data_seed, "Seed for presets")
        ->capture_default_str();
    evaluate->add_option("--out", eval_out, "Report JSON path")->required();
    evaluate->add_option("--confusion", eval_confusion, "Optional confusion CSV path");

    // boundary
    auto* boundary = app.add_subcommand("boundary", "Write a decision-boundary grid CSV");
    std::string boundary_model;
    std::string boundary_out;
    std::size_t boundary_resolution = eval::kDefaultGridResolution;
    boundary->add_option("--model", boundary_model, "Model JSON")->required();
    boundary->add_option("--resolution", boundary_resolution, "Cells per axis")
        ->capture_default_str();
    boundary->add_option("--out", boundary_out, "Grid CSV path")->required();

    // experiment
    auto* exp = app.add_subcommand("experiment", "Full train/test pipeline");
    experiment::ExperimentConfig exp_cfg;
    TrainFlags exp_flags;
    std::string out_dir = default_output_dir();
    add_train_flags(exp, exp_cfg, exp_flags);
    exp->add_option("--test", exp_cfg.test_source, "Test source: CSV path or preset")
        ->required();
    exp->add_option("--out-dir", out_dir, "Output directory (env QSVM_OUTPUT_DIR)")
        ->capture_default_str();
    exp->add_option("--grid-resolution", exp_cfg.grid_resolution,
                    "Boundary grid cells per axis, 0 to skip")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) {
            const auto preset = dataio::preset_from_string(preset_name);
            if (!preset) throw InvalidArgumentError("unknown preset '" + preset_name + "'");
            dataio::save_csv(dataio::generate_synthetic(*preset, synth_seed), synth_out);
        } else if (train->parsed()) {
            resolve_train_flags(train_cfg, train_flags, train);
            train_cfg.test_source = "-";
            experiment::validate(train_cfg);
            std::vector<dataio::Dataset> parts;
            for (const auto& s : train_cfg.train_sources) {
                parts.push_back(experiment::load_source(s, train_cfg.data_seed));
            }
            const auto data = dataio::concatenate(parts, "train");
            model_io::ModelBundle bundle;
            if (train_cfg.scale) {
                bundle.scaler =
                    dataio::fit_scaler(data, train_cfg.target_lo, train_cfg.target_hi);
            }
            bundle.model = svm::train_ovo(experiment::prepare_features(bundle, data),
                                          data.class_ids(), train_cfg.svm,
                                          experiment::kernel_config_for(train_cfg));
            if (!bundle.model.converged()) {
                std::cerr << "warning: SMO hit its iteration cap before converging\n";
            }
            model_io::save(bundle, train_out);
        } else if (predict->parsed()) {
            const auto bundle = model_io::load(predict_model);
            const auto data = experiment::load_source(predict_data, predict_data_seed);
            const auto labels =
                svm::predict(bundle.model, experiment::prepare_features(bundle, data));
            std::ostringstream out;
            out << "label\n";
            for (int l : labels) out << experiment::label_name(l) << '\n';
            write_file(predict_out, out.str());
        } else if (evaluate->parsed()) {
            const auto bundle = model_io::load(eval_model);
            const auto data = experiment::load_source(eval_data, eval_data_seed);
            const auto labels =
                svm::predict(bundle.model, experiment::prepare_features(bundle, data));
            const auto report = eval::evaluate(labels, data.class_ids(), class_list());
            auto j = eval::to_json(report, experiment::label_name);
            j["converged"] = bundle.model.converged();
            j["kernel"] = model_io::to_json(bundle.model.kernel_config);
            write_file(eval_out, j.dump(2) + "\n");
            if (!eval_confusion.empty()) {
                std::ostringstream out;
                eval::write_confusion_csv(report, out, experiment::label_name);
                write_file(eval_confusion, out.str());
            }
        } else if (boundary->parsed()) {
            const auto bundle = model_io::load(boundary_model);
            const auto grid = experiment::boundary_for(bundle, boundary_resolution);
            std::ostringstream out;
            eval::write_grid_csv(grid, out, experiment::label_name);
            write_file(boundary_out, out.str());
        } else if (exp->parsed()) {
            resolve_train_flags(exp_cfg, exp_flags, exp);
            exp_cfg.output_dir = out_dir;
            const auto result = experiment::run_experiment(exp_cfg);
            if (!result.bundle.model.converged()) {
                std::cerr << "warning: SMO hit its iteration cap before converging\n";
            }
            experiment::write_artifacts(result, out_dir);
            std::cout << "accuracy " << result.report.accuracy << " (" << result.report.n_total
                      << " test samples)\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
