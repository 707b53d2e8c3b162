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

#include "qsvm/qkernel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "qsvm/error.hpp"

namespace qsvm::qkernel {

namespace {

void check_same_length(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DimensionError("kernel arguments have lengths " + std::to_string(x.size()) +
                             " and " + std::to_string(y.size()));
    }
}

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double sampled_zero_frequency(const qsim::QuantumState& state, std::uint64_t shots,
                              std::uint64_t seed) {
    return static_cast<double>(qsim::sample_zero_count(state, shots, seed)) /
           static_cast<double>(shots);
}

// Caches the pieces of the compute-uncompute circuit so a Gram block builds
// each feature-map circuit once per point instead of once per entry.
class FidelityBlock {
public:
    FidelityBlock(const Matrix& compute_points, const Matrix& uncompute_points,
                  const featuremap::FeatureMapConfig& fm) {
        forward_.reserve(compute_points.rows());
        for (std::size_t i = 0; i < compute_points.rows(); ++i) {
            forward_.push_back(featuremap::map_to_state(compute_points.row(i), fm));
        }
        inverse_.reserve(uncompute_points.rows());
        for (std::size_t j = 0; j < uncompute_points.rows(); ++j) {
            inverse_.push_back(featuremap::build_circuit(uncompute_points.row(j), fm).inverse());
        }
    }

    qsim::QuantumState overlap_state(std::size_t i, std::size_t j) const {
        qsim::QuantumState state = forward_[i];
        qsim::run_circuit_in_place(inverse_[j], state);
        return state;
    }

private:
    std::vector<qsim::QuantumState> forward_;
    std::vector<qsim::Circuit> inverse_;
};

class EntryEvaluator {
public:
    EntryEvaluator(const Matrix& rows, const Matrix& cols, const KernelConfig& config)
        : rows_(rows), cols_(cols), config_(config) {
        if (config.mode != KernelMode::Rbf) {
            block_.emplace(rows, cols, config.feature_map);
        }
    }

    double operator()(std::size_t i, std::size_t j, SeedDomain domain) const {
        switch (config_.mode) {
        case KernelMode::FidelityExact:
            return qsim::zero_probability(block_->overlap_state(i, j));
        case KernelMode::FidelitySampled:
            return sampled_zero_frequency(block_->overlap_state(i, j), config_.shots,
                                          entry_seed(config_.seed, domain, i, j));
        case KernelMode::Rbf:
            return rbf(rows_.row(i), cols_.row(j), *config_.gamma);
        }
        return 0.0;
    }

private:
    const Matrix& rows_;
    const Matrix& cols_;
    const KernelConfig& config_;
    std::optional<FidelityBlock> block_;
};

void check_features(const Matrix& X, const KernelConfig& config) {
    if (config.mode != KernelMode::Rbf && X.cols() != config.feature_map.num_features) {
        throw DimensionError("feature matrix has " + std::to_string(X.cols()) +
                             " columns, feature map expects " +
                             std::to_string(config.feature_map.num_features));
    }
}

}  // namespace

std::string_view to_string(KernelMode mode) {
    switch (mode) {
    case KernelMode::FidelityExact: return "fidelity_exact";
    case KernelMode::FidelitySampled: return "fidelity_sampled";
    case KernelMode::Rbf: return "rbf";
    }
    return "unknown";
}

KernelMode kernel_mode_from_string(std::string_view name) {
    if (name == "fidelity_exact" || name == "exact") return KernelMode::FidelityExact;
    if (name == "fidelity_sampled" || name == "sampled") return KernelMode::FidelitySampled;
    if (name == "rbf") return KernelMode::Rbf;
    throw InvalidArgumentError("unknown kernel mode '" + std::string(name) + "'");
}

void validate(const KernelConfig& config) {
    if (config.mode == KernelMode::FidelitySampled && config.shots == 0) {
        throw InvalidArgumentError("sampled kernel needs at least one shot");
    }
    if (config.mode == KernelMode::Rbf) {
        if (!config.gamma) {
            throw InvalidArgumentError("RBF kernel gamma has not been resolved");
        }
        if (!(*config.gamma > 0.0) || !std::isfinite(*config.gamma)) {
            throw InvalidArgumentError("RBF gamma must be a positive finite number");
        }
    } else {
        featuremap::validate(config.feature_map);
    }
}

double fidelity_exact(std::span<const double> x, std::span<const double> y,
                      const featuremap::FeatureMapConfig& fm) {
    check_same_length(x, y);
    qsim::QuantumState state = featuremap::map_to_state(x, fm);
    qsim::run_circuit_in_place(featuremap::build_circuit(y, fm).inverse(), state);
    return qsim::zero_probability(state);
}

double fidelity_sampled(std::span<const double> x, std::span<const double> y,
                        const featuremap::FeatureMapConfig& fm, std::uint64_t shots,
                        std::uint64_t seed) {
    check_same_length(x, y);
    if (shots == 0) {
        throw InvalidArgumentError("sampled fidelity needs at least one shot");
    }
    qsim::QuantumState state = featuremap::map_to_state(x, fm);
    qsim::run_circuit_in_place(featuremap::build_circuit(y, fm).inverse(), state);
    return sampled_zero_frequency(state, shots, seed);
}

double rbf(std::span<const double> x, std::span<const double> y, double gamma) {
    check_same_length(x, y);
    double dist2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        dist2 += d * d;
    }
    return std::exp(-gamma * dist2);
}

double default_gamma(const Matrix& X) {
    if (X.empty() || X.cols() == 0) {
        throw InvalidArgumentError("default gamma needs a non-empty feature matrix");
    }
    const auto values = X.data();
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    if (!(var > 0.0)) {
        throw DegenerateDataError("feature matrix has zero variance; default gamma undefined");
    }
    return 1.0 / (static_cast<double>(X.cols()) * var);
}

std::uint64_t entry_seed(std::uint64_t master, SeedDomain domain, std::uint64_t row,
                         std::uint64_t col) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ static_cast<std::uint64_t>(domain));
    h = splitmix64(h ^ row);
    return splitmix64(h ^ col);
}

KernelMatrix gram_symmetric(const Matrix& X, const KernelConfig& config) {
    if (X.empty()) {
        throw InvalidArgumentError("Gram matrix of an empty feature matrix");
    }
    validate(config);
    check_features(X, config);

    const std::size_t n = X.rows();
    KernelMatrix K{Matrix(n, n, 0.0), true};
    const EntryEvaluator eval(X, X, config);
    for (std::size_t i = 0; i < n; ++i) {
        K.values(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = eval(i, j, SeedDomain::Symmetric);
            K.values(i, j) = v;
            K.values(j, i) = v;
        }
    }
    return K;
}

KernelMatrix gram_rectangular(const Matrix& X_test, const Matrix& X_train,
                              const KernelConfig& config) {
    if (X_test.cols() != X_train.cols()) {
        throw DimensionError("test features have " + std::to_string(X_test.cols()) +
                             " columns, training features have " +
                             std::to_string(X_train.cols()));
    }
    validate(config);
    check_features(X_train, config);

    KernelMatrix K{Matrix(X_test.rows(), X_train.rows(), 0.0), false};
    if (X_test.empty() || X_train.empty()) {
        return K;
    }
    const EntryEvaluator eval(X_test, X_train, config);
    for (std::size_t i = 0; i < X_test.rows(); ++i) {
        for (std::size_t j = 0; j < X_train.rows(); ++j) {
            K.values(i, j) = eval(i, j, SeedDomain::Rectangular);
        }
    }
    return K;
}

void write_csv(const KernelMatrix& kernel, std::ostream& out) {
    char buf[64];
    for (std::size_t i = 0; i < kernel.rows(); ++i) {
        for (std::size_t j = 0; j < kernel.cols(); ++j) {
            if (j > 0) out << ',';
            const auto res = std::to_chars(buf, buf + sizeof buf, kernel(i, j),
                                           std::chars_format::general, 17);
            out.write(buf, res.ptr - buf);
        }
        out << '\n';
    }
}

}  // namespace qsvm::qkernel
