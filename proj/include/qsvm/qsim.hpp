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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qsvm::qsim {

using Amplitude = std::complex<double>;

// Dense statevectors are capped; the feature maps used here need one qubit
// per feature.
inline constexpr std::size_t kMaxQubits = 10;

// Basis index convention: qubit 0 is the least-significant bit.
class QuantumState {
public:
    // |0...0> on num_qubits qubits.
    explicit QuantumState(std::size_t num_qubits);

    // Takes ownership of explicit amplitudes. Length must be a power of two
    // and the vector must have unit norm within 1e-10.
    explicit QuantumState(std::vector<Amplitude> amplitudes);

    static QuantumState basis(std::size_t num_qubits, std::uint64_t index);

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::size_t dimension() const noexcept { return amplitudes_.size(); }
    std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
    std::span<Amplitude> mutable_amplitudes() noexcept { return amplitudes_; }
    const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm() const;

private:
    std::size_t num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

enum class GateKind { H, Phase, CX };

struct Gate {
    GateKind kind = GateKind::H;
    std::size_t target = 0;
    std::optional<std::size_t> control;  // CX only
    double theta = 0.0;                  // Phase only, radians

    static Gate h(std::size_t target) { return {GateKind::H, target, std::nullopt, 0.0}; }
    static Gate phase(std::size_t target, double theta) {
        return {GateKind::Phase, target, std::nullopt, theta};
    }
    static Gate cx(std::size_t control, std::size_t target) {
        return {GateKind::CX, target, control, 0.0};
    }

    // H and CX are self-inverse; Phase negates its angle.
    Gate inverse() const;

    friend bool operator==(const Gate&, const Gate&) = default;
};

// Throws InvalidGateError if the gate's indices do not fit num_qubits.
void validate_gate(const Gate& gate, std::size_t num_qubits);

class Circuit {
public:
    explicit Circuit(std::size_t num_qubits);

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    const std::vector<Gate>& gates() const noexcept { return gates_; }
    std::size_t size() const noexcept { return gates_.size(); }

    // Validates and appends.
    Circuit& add(const Gate& gate);
    Circuit& append(const Circuit& other);

    // Reversed gate order with each gate inverted.
    Circuit inverse() const;

    friend bool operator==(const Circuit&, const Circuit&) = default;

private:
    std::size_t num_qubits_;
    std::vector<Gate> gates_;
};

void apply_gate_in_place(QuantumState& state, const Gate& gate);
void run_circuit_in_place(const Circuit& circuit, QuantumState& state);

QuantumState apply_gate(const QuantumState& state, const Gate& gate);
QuantumState run_circuit(const Circuit& circuit, const QuantumState& initial);

// <a|b>, conjugate-linear in a.
Amplitude inner_product(const QuantumState& a, const QuantumState& b);

// Probability of measuring the all-zeros bitstring.
double zero_probability(const QuantumState& state);

// Outcome histogram indexed by basis index; counts sum to the shot count.
using Counts = std::vector<std::uint64_t>;

// Draws `shots` independent computational-basis outcomes from |amplitude|^2.
// Uses a SplitMix64 generator seeded with `seed`, and draws the histogram as a
// multinomial through conditional binomials so the cost is independent of
// the shot count.
Counts sample_counts(const QuantumState& state, std::uint64_t shots, std::uint64_t seed);

// sample_counts(state, shots, seed)[0] without drawing the other outcomes.
std::uint64_t sample_zero_count(const QuantumState& state, std::uint64_t shots,
                                std::uint64_t seed);

}  // namespace qsvm::qsim
