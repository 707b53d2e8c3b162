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
#include <optional>
#include <ostream>
#include <span>
#include <string_view>

#include "qsvm/featuremap.hpp"
#include "qsvm/matrix.hpp"

namespace qsvm::qkernel {

enum class KernelMode { FidelityExact, FidelitySampled, Rbf };

inline constexpr std::uint64_t kDefaultShots = 1000;

struct KernelConfig {
    KernelMode mode = KernelMode::FidelityExact;
    std::uint64_t shots = kDefaultShots;  // FidelitySampled only
    std::uint64_t seed = 0;
    // Rbf only. Left empty until training resolves it with default_gamma().
    std::optional<double> gamma;
    featuremap::FeatureMapConfig feature_map;

    friend bool operator==(const KernelConfig&, const KernelConfig&) = default;
};

std::string_view to_string(KernelMode mode);
KernelMode kernel_mode_from_string(std::string_view name);

// Throws on shots == 0 in sampled mode or a non-positive gamma in RBF mode.
void validate(const KernelConfig& config);

struct KernelMatrix {
    Matrix values;
    bool symmetric = false;

    std::size_t rows() const noexcept { return values.rows(); }
    std::size_t cols() const noexcept { return values.cols(); }
    double operator()(std::size_t r, std::size_t c) const { return values(r, c); }
};

// |<0| U(y)^dagger U(x) |0>|^2, computed by running U(x), then the inverse of
// U(y), and reading the all-zeros probability.
double fidelity_exact(std::span<const double> x, std::span<const double> y,
                      const featuremap::FeatureMapConfig& fm);

// Same compute-uncompute circuit, estimated as the all-zeros frequency over
// `shots` sampled outcomes.
double fidelity_sampled(std::span<const double> x, std::span<const double> y,
                        const featuremap::FeatureMapConfig& fm, std::uint64_t shots,
                        std::uint64_t seed);

// exp(-gamma * |x - y|^2)
double rbf(std::span<const double> x, std::span<const double> y, double gamma);

// 1 / (d * var), var being the population variance of every entry of X pooled.
double default_gamma(const Matrix& X);

// Per-entry sampling seed. Depends only on the master seed, the assembly
// kind and the entry position, never on evaluation order.
enum class SeedDomain : std::uint64_t { Symmetric = 0, Rectangular = 1 };
std::uint64_t entry_seed(std::uint64_t master, SeedDomain domain, std::uint64_t row,
                         std::uint64_t col);

// Upper triangle evaluated once per unordered pair and mirrored; diagonal set
// to exactly 1.0 without evaluation.
KernelMatrix gram_symmetric(const Matrix& X, const KernelConfig& config);

// values(i, j) = k(X_test[i], X_train[j]).
KernelMatrix gram_rectangular(const Matrix& X_test, const Matrix& X_train,
                              const KernelConfig& config);

// Full matrix, row-major, 17 significant digits.
void write_csv(const KernelMatrix& kernel, std::ostream& out);

}  // namespace qsvm::qkernel
