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
#include <utility>
#include <vector>

#include "qsvm/qsim.hpp"

namespace qsvm::featuremap {

// Which qubit pairs receive a ZZ interaction block.
enum class Entanglement {
    Full,    // every pair i < j
    Linear,  // nearest neighbours (i, i + 1)
};

struct FeatureMapConfig {
    std::size_t num_features = 2;
    std::size_t repetitions = 2;
    Entanglement entanglement = Entanglement::Full;

    friend bool operator==(const FeatureMapConfig&, const FeatureMapConfig&) = default;
};

// Throws InvalidArgumentError on a zero feature count or repetition count.
void validate(const FeatureMapConfig& config);

// Ordered list of entangled pairs (i < j) for the given rule.
std::vector<std::pair<std::size_t, std::size_t>> entangled_pairs(std::size_t num_features,
                                                                 Entanglement rule);

struct PairPhase {
    std::size_t first;
    std::size_t second;
    double phase;
};

// Data-derived rotation angles: x_i for each qubit and (pi - x_i)(pi - x_j)
// for each pair.
struct PhaseSet {
    std::vector<double> single;
    std::vector<PairPhase> pairwise;
};

PhaseSet compute_phases(std::span<const double> x,
                        Entanglement rule = Entanglement::Full);

// Per repetition: H on every qubit, P(2 x_i) on each qubit, then for each
// pair CX(i, j) P(2 phi_ij) on j CX(i, j).
qsim::Circuit build_circuit(std::span<const double> x, const FeatureMapConfig& config);

// build_circuit(x) applied to |0...0>.
qsim::QuantumState map_to_state(std::span<const double> x, const FeatureMapConfig& config);

}  // namespace qsvm::featuremap
