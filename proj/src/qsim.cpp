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

#include "qsvm/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qsvm/error.hpp"

namespace qsvm::qsim {

namespace {

constexpr double kNormTolerance = 1e-10;

// SplitMix64 as a UniformRandomBitGenerator. Sampling seeds a fresh engine
// per call, and this one costs a single word of state to set up.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

void check_qubit_count(std::size_t num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw InvalidArgumentError("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                                   "], got " + std::to_string(num_qubits));
    }
}

}  // namespace

QuantumState::QuantumState(std::size_t num_qubits) : num_qubits_(num_qubits) {
    check_qubit_count(num_qubits);
    amplitudes_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

QuantumState::QuantumState(std::vector<Amplitude> amplitudes) : num_qubits_(0) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw DimensionError("amplitude vector length must be a power of two >= 2, got " +
                             std::to_string(dim));
    }
    while ((std::size_t{1} << num_qubits_) < dim) {
        ++num_qubits_;
    }
    check_qubit_count(num_qubits_);
    amplitudes_ = std::move(amplitudes);
    if (std::abs(norm() - 1.0) > kNormTolerance) {
        throw InvalidArgumentError("amplitude vector is not normalized");
    }
}

QuantumState QuantumState::basis(std::size_t num_qubits, std::uint64_t index) {
    QuantumState state(num_qubits);
    if (index >= state.dimension()) {
        throw InvalidArgumentError("basis index out of range");
    }
    state.amplitudes_[0] = 0.0;
    state.amplitudes_[index] = 1.0;
    return state;
}

double QuantumState::norm() const {
    double sum = 0.0;
    for (const auto& a : amplitudes_) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

Gate Gate::inverse() const {
    Gate inv = *this;
    if (kind == GateKind::Phase) {
        inv.theta = -theta;
    }
    return inv;
}

void validate_gate(const Gate& gate, std::size_t num_qubits) {
    if (gate.target >= num_qubits) {
        throw InvalidGateError("gate target " + std::to_string(gate.target) +
                               " out of range for " + std::to_string(num_qubits) + " qubits");
    }
    if (gate.kind == GateKind::CX) {
        if (!gate.control) {
            throw InvalidGateError("CX gate requires a control qubit");
        }
        if (*gate.control >= num_qubits) {
            throw InvalidGateError("gate control " + std::to_string(*gate.control) +
                                   " out of range for " + std::to_string(num_qubits) + " qubits");
        }
        if (*gate.control == gate.target) {
            throw InvalidGateError("CX control and target must differ");
        }
    } else if (gate.control) {
        throw InvalidGateError("only CX gates take a control qubit");
    }
    if (gate.kind == GateKind::Phase && !std::isfinite(gate.theta)) {
        throw InvalidGateError("phase angle must be finite");
    }
}

Circuit::Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {
    check_qubit_count(num_qubits);
}

Circuit& Circuit::add(const Gate& gate) {
    validate_gate(gate, num_qubits_);
    gates_.push_back(gate);
    return *this;
}

Circuit& Circuit::append(const Circuit& other) {
    if (other.num_qubits_ != num_qubits_) {
        throw DimensionError("cannot append a circuit on a different number of qubits");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

Circuit Circuit::inverse() const {
    Circuit inv(num_qubits_);
    inv.gates_.reserve(gates_.size());
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        inv.gates_.push_back(it->inverse());
    }
    return inv;
}

void apply_gate_in_place(QuantumState& state, const Gate& gate) {
    validate_gate(gate, state.num_qubits());
    auto amps = state.mutable_amplitudes();
    const std::size_t dim = amps.size();
    const std::size_t tmask = std::size_t{1} << gate.target;

    switch (gate.kind) {
    case GateKind::H: {
        constexpr double r = std::numbers::sqrt2 / 2.0;
        for (std::size_t i = 0; i < dim; ++i) {
            if (i & tmask) continue;
            const Amplitude a0 = amps[i];
            const Amplitude a1 = amps[i | tmask];
            amps[i] = r * (a0 + a1);
            amps[i | tmask] = r * (a0 - a1);
        }
        break;
    }
    case GateKind::Phase: {
        const Amplitude factor = std::polar(1.0, gate.theta);
        for (std::size_t i = 0; i < dim; ++i) {
            if (i & tmask) amps[i] *= factor;
        }
        break;
    }
    case GateKind::CX: {
        const std::size_t cmask = std::size_t{1} << *gate.control;
        for (std::size_t i = 0; i < dim; ++i) {
            // Visit each swapped pair once, from its target-bit-clear member.
            if ((i & cmask) && !(i & tmask)) {
                std::swap(amps[i], amps[i | tmask]);
            }
        }
        break;
    }
    }
}

void run_circuit_in_place(const Circuit& circuit, QuantumState& state) {
    if (circuit.num_qubits() != state.num_qubits()) {
        throw DimensionError("circuit acts on " + std::to_string(circuit.num_qubits()) +
                             " qubits but state has " + std::to_string(state.num_qubits()));
    }
    for (const auto& gate : circuit.gates()) {
        apply_gate_in_place(state, gate);
    }
}

QuantumState apply_gate(const QuantumState& state, const Gate& gate) {
    QuantumState out = state;
    apply_gate_in_place(out, gate);
    return out;
}

QuantumState run_circuit(const Circuit& circuit, const QuantumState& initial) {
    QuantumState out = initial;
    run_circuit_in_place(circuit, out);
    return out;
}

Amplitude inner_product(const QuantumState& a, const QuantumState& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionError("inner product of states with different qubit counts");
    }
    Amplitude sum{0.0, 0.0};
    const auto lhs = a.amplitudes();
    const auto rhs = b.amplitudes();
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        sum += std::conj(lhs[i]) * rhs[i];
    }
    return sum;
}

double zero_probability(const QuantumState& state) {
    return std::clamp(std::norm(state[0]), 0.0, 1.0);
}

Counts sample_counts(const QuantumState& state, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw InvalidArgumentError("shot count must be at least 1");
    }
    SplitMix64 rng(seed);
    const auto amps = state.amplitudes();
    Counts counts(amps.size(), 0);

    // Multinomial draw: each outcome takes a binomial share of the shots that
    // remain, conditioned on the probability mass not yet assigned. The last
    // outcome with nonzero probability absorbs whatever is left.
    std::size_t last = 0;
    double mass_left = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        mass_left += p;
        if (p > 0.0) last = i;
    }

    std::uint64_t remaining = shots;
    for (std::size_t i = 0; i < last && remaining > 0; ++i) {
        const double p = std::norm(amps[i]);
        if (p <= 0.0) continue;
        const double conditional = std::clamp(p / mass_left, 0.0, 1.0);
        std::binomial_distribution<std::uint64_t> binom(remaining, conditional);
        const std::uint64_t drawn = binom(rng);
        counts[i] = drawn;
        remaining -= drawn;
        mass_left -= p;
    }
    counts[last] += remaining;
    return counts;
}

std::uint64_t sample_zero_count(const QuantumState& state, std::uint64_t shots,
                                std::uint64_t seed) {
    if (shots == 0) {
        throw InvalidArgumentError("shot count must be at least 1");
    }
    const auto amps = state.amplitudes();
    const double p0 = std::norm(amps[0]);
    if (p0 <= 0.0) return 0;
    double mass = 0.0;
    bool others = false;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        mass += p;
        if (i > 0 && p > 0.0) others = true;
    }
    if (!others) return shots;
    // Same generator and first conditional draw as sample_counts.
    SplitMix64 rng(seed);
    std::binomial_distribution<std::uint64_t> binom(shots, std::clamp(p0 / mass, 0.0, 1.0));
    return binom(rng);
}

}  // namespace qsvm::qsim
