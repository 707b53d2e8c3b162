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

#include "qsvm/featuremap.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qsvm/error.hpp"

namespace qsvm::featuremap {

void validate(const FeatureMapConfig& config) {
    if (config.num_features == 0) {
        throw InvalidArgumentError("feature map needs at least one feature");
    }
    if (config.num_features > qsim::kMaxQubits) {
        throw InvalidArgumentError("feature map supports at most " +
                                   std::to_string(qsim::kMaxQubits) + " features");
    }
    if (config.repetitions == 0) {
        throw InvalidArgumentError("feature map needs at least one repetition");
    }
}

std::vector<std::pair<std::size_t, std::size_t>> entangled_pairs(std::size_t num_features,
                                                                 Entanglement rule) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (rule == Entanglement::Linear) {
        for (std::size_t i = 0; i + 1 < num_features; ++i) {
            pairs.emplace_back(i, i + 1);
        }
        return pairs;
    }
    for (std::size_t i = 0; i < num_features; ++i) {
        for (std::size_t j = i + 1; j < num_features; ++j) {
            pairs.emplace_back(i, j);
        }
    }
    return pairs;
}

PhaseSet compute_phases(std::span<const double> x, Entanglement rule) {
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw InvalidArgumentError("feature vector contains a non-finite value");
        }
    }
    PhaseSet phases;
    phases.single.assign(x.begin(), x.end());
    for (const auto& [i, j] : entangled_pairs(x.size(), rule)) {
        phases.pairwise.push_back({i, j, (std::numbers::pi - x[i]) * (std::numbers::pi - x[j])});
    }
    return phases;
}

qsim::Circuit build_circuit(std::span<const double> x, const FeatureMapConfig& config) {
    validate(config);
    if (x.size() != config.num_features) {
        throw DimensionError("feature vector has " + std::to_string(x.size()) +
                             " entries, feature map expects " +
                             std::to_string(config.num_features));
    }
    const PhaseSet phases = compute_phases(x, config.entanglement);
    const std::size_t n = config.num_features;

    qsim::Circuit circuit(n);
    for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
        for (std::size_t q = 0; q < n; ++q) {
            circuit.add(qsim::Gate::h(q));
        }
        for (std::size_t q = 0; q < n; ++q) {
            circuit.add(qsim::Gate::phase(q, 2.0 * phases.single[q]));
        }
        for (const auto& pair : phases.pairwise) {
            circuit.add(qsim::Gate::cx(pair.first, pair.second));
            circuit.add(qsim::Gate::phase(pair.second, 2.0 * pair.phase));
            circuit.add(qsim::Gate::cx(pair.first, pair.second));
        }
    }
    return circuit;
}

qsim::QuantumState map_to_state(std::span<const double> x, const FeatureMapConfig& config) {
    const qsim::Circuit circuit = build_circuit(x, config);
    return qsim::run_circuit(circuit, qsim::QuantumState(circuit.num_qubits()));
}

}  // namespace qsvm::featuremap
