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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qsvm/error.hpp"

using namespace qsvm;
using namespace qsvm::experiment;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(QSVM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.train_sources = {"T1_SHAPE"};
    c.test_source = "T2_SHAPE";
    c.quantum_kernel = qkernel::KernelMode::FidelitySampled;
    c.shots = 200;
    c.grid_resolution = 8;
    return c;
}

}  // namespace

TEST(LoadSource, PresetSyntax) {
    EXPECT_EQ(load_source("T1_SHAPE", 5), dataio::generate_synthetic(dataio::Preset::T1Shape, 5));
    EXPECT_EQ(load_source("T1_SHAPE:9", 5), dataio::generate_synthetic(dataio::Preset::T1Shape, 9));
    EXPECT_THROW(load_source("T1_SHAPE:x", 5), InvalidArgumentError);
    EXPECT_THROW(load_source("/nonexistent/file.csv", 5), InvalidArgumentError);
}

TEST(Validate, RejectsBadConfigs) {
    auto c = small_config();
    EXPECT_NO_THROW(validate(c));
    c.quantum_kernel = qkernel::KernelMode::Rbf;
    EXPECT_THROW(validate(c), InvalidArgumentError);
    c = small_config();
    c.train_sources.clear();
    EXPECT_THROW(validate(c), InvalidArgumentError);
    c = small_config();
    c.target_lo = 1.0;
    EXPECT_THROW(validate(c), InvalidArgumentError);
    EXPECT_EQ(model_kind_from_string("svm"), ModelKind::Svm);
    EXPECT_THROW(model_kind_from_string("knn"), InvalidArgumentError);
}

TEST(KernelConfigFor, FollowsModelKind) {
    auto c = small_config();
    EXPECT_EQ(kernel_config_for(c).mode, qkernel::KernelMode::FidelitySampled);
    EXPECT_EQ(kernel_config_for(c).shots, 200u);
    c.model = ModelKind::Svm;
    c.gamma = 0.7;
    EXPECT_EQ(kernel_config_for(c).mode, qkernel::KernelMode::Rbf);
    EXPECT_EQ(kernel_config_for(c).gamma, 0.7);
}

TEST(RunExperiment, ReportAndDeterminism) {
    const auto a = run_experiment(small_config());
    const auto b = run_experiment(small_config());
    EXPECT_EQ(a.report_json.dump(), b.report_json.dump());
    ASSERT_TRUE(a.grid.has_value());
    EXPECT_EQ(a.grid->cells, b.grid->cells);
    EXPECT_EQ(a.report.n_total, 120u);
    EXPECT_EQ(a.report_json.at("train_set").at("size"), 41);
    EXPECT_EQ(a.report_json.at("classes"), nlohmann::ordered_json({"LOS", "NLOS", "LOS_NLOS"}));
    EXPECT_TRUE(a.bundle.scaler.has_value());
}

TEST(RunExperiment, SvmResolvesGammaAndRawGridUsesBoundingBox) {
    auto c = small_config();
    c.model = ModelKind::Svm;
    c.scale = false;
    const auto r = run_experiment(c);
    EXPECT_TRUE(r.bundle.model.kernel_config.gamma.has_value());
    EXPECT_FALSE(r.bundle.scaler.has_value());
    ASSERT_TRUE(r.grid.has_value());
    EXPECT_LT(r.grid->x_range.lo, 0.0);
    EXPECT_GT(r.grid->y_range.hi, 1.0);
}

TEST(WriteArtifacts, WritesAllFiles) {
    const auto dir = fresh_dir("qsvm_experiment_artifacts");
    const auto r = run_experiment(small_config());
    write_artifacts(r, dir);
    for (const char* f : {"report.json", "confusion.csv", "model.json", "grid.csv"}) {
        EXPECT_TRUE(fs::exists(dir / f)) << f;
    }
    EXPECT_EQ(slurp(dir / "confusion.csv").substr(0, 27), "truth,LOS,NLOS,LOS_NLOS\nLOS");
    const auto reloaded = model_io::load(dir / "model.json");
    EXPECT_EQ(reloaded.model.binary_models.size(), 3u);
    fs::remove_all(dir);
}

TEST(Cli, MissingTrainFileFailsWithoutOutputs) {
    const auto dir = fresh_dir("qsvm_cli_missing");
    EXPECT_NE(run_cli("experiment --train /nonexistent/train.csv --test T2_SHAPE --out-dir " +
                      dir.string()),
              0);
    EXPECT_FALSE(fs::exists(dir));
}

TEST(Cli, MalformedCsvFailsWithoutOutputs) {
    const auto dir = fresh_dir("qsvm_cli_malformed");
    const auto bad = fs::temp_directory_path() / "qsvm_cli_bad.csv";
    std::ofstream(bad) << "cn0_diff,elevation_deg,label\n1,2,LOS\n3,4,BOGUS\n";
    EXPECT_NE(run_cli("experiment --train " + bad.string() + " --test T2_SHAPE --out-dir " +
                      dir.string()),
              0);
    EXPECT_FALSE(fs::exists(dir));
    fs::remove(bad);
}

TEST(Cli, UnknownSubcommandFails) {
    EXPECT_NE(run_cli("frobnicate"), 0);
    EXPECT_NE(run_cli(""), 0);
}

TEST(Cli, TrainPredictEvalBoundaryChain) {
    const auto dir = fresh_dir("qsvm_cli_chain");
    fs::create_directories(dir);
    const std::string d = dir.string() + "/";
    ASSERT_EQ(run_cli("synth --preset T1_SHAPE --seed 3 --out " + d + "t1.csv"), 0);
    ASSERT_EQ(run_cli("train --train " + d + "t1.csv --kernel exact --out " + d + "m.json"), 0);
    ASSERT_EQ(run_cli("predict --model " + d + "m.json --data T2_SHAPE --out " + d + "p.csv"), 0);
    ASSERT_EQ(run_cli("eval --model " + d + "m.json --data T2_SHAPE --out " + d +
                      "r.json --confusion " + d + "c.csv"),
              0);
    ASSERT_EQ(run_cli("boundary --model " + d + "m.json --resolution 5 --out " + d + "g.csv"), 0);

    const auto pred = slurp(dir / "p.csv");
    EXPECT_EQ(pred.substr(0, 6), "label\n");
    EXPECT_EQ(std::count(pred.begin(), pred.end(), '\n'), 121);
    const auto grid = slurp(dir / "g.csv");
    EXPECT_EQ(std::count(grid.begin(), grid.end(), '\n'), 26);
    const auto report = nlohmann::json::parse(slurp(dir / "r.json"));
    EXPECT_EQ(report.at("n_total"), 120);
    fs::remove_all(dir);
}
