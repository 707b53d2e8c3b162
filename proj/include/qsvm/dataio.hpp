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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsvm/matrix.hpp"

namespace qsvm::dataio {

// Reception condition. Integer values are the class ids used by the SVM.
enum class Reception : int { Los = 0, Nlos = 1, LosNlos = 2 };

inline constexpr std::array<Reception, 3> kAllReceptions = {Reception::Los, Reception::Nlos,
                                                            Reception::LosNlos};

// CSV spelling: LOS, NLOS, LOS_NLOS.
std::string_view to_string(Reception label);
std::optional<Reception> reception_from_string(std::string_view text);

inline int class_id(Reception label) { return static_cast<int>(label); }
Reception reception_from_class_id(int id);

struct SignalSample {
    double cn0_diff = 0.0;       // dB-Hz, RHCP C/N0 minus LHCP C/N0
    double elevation_deg = 0.0;  // [0, 90]
    Reception label = Reception::Los;

    friend bool operator==(const SignalSample&, const SignalSample&) = default;
};

inline constexpr std::size_t kNumFeatures = 2;

struct Dataset {
    std::string name;
    std::vector<SignalSample> samples;

    std::size_t size() const noexcept { return samples.size(); }
    bool empty() const noexcept { return samples.empty(); }
    std::size_t count(Reception label) const;

    // Unscaled (cn0_diff, elevation_deg) rows.
    Matrix features() const;
    std::vector<int> class_ids() const;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

Dataset concatenate(const std::vector<Dataset>& parts, std::string name);

inline constexpr std::string_view kCsvHeader = "cn0_diff,elevation_deg,label";

// Strict reader for the cn0_diff,elevation_deg,label schema. Throws
// ParseError naming the offending line.
Dataset read_csv(std::istream& in, const std::string& source_name);
Dataset load_csv(const std::filesystem::path& path);

// Numbers are written in shortest round-trip fixed-point notation.
void write_csv(const Dataset& dataset, std::ostream& out);
void save_csv(const Dataset& dataset, const std::filesystem::path& path);

struct ScalerParams {
    std::vector<double> data_min;
    std::vector<double> data_max;
    double target_lo = 0.0;
    double target_hi = 1.0;

    friend bool operator==(const ScalerParams&, const ScalerParams&) = default;
};

// Per-feature min/max of the given rows. Throws DegenerateDataError on a
// constant feature and InvalidArgumentError when target_hi <= target_lo.
ScalerParams fit_scaler(const Matrix& train, double target_lo = 0.0, double target_hi = 1.0);
ScalerParams fit_scaler(const Dataset& train, double target_lo = 0.0, double target_hi = 1.0);

// Linear map of each feature onto [target_lo, target_hi] using the fitted
// range. Values outside the fitted range are not clamped.
Matrix apply_scaler(const ScalerParams& params, const Matrix& features);
Matrix apply_scaler(const ScalerParams& params, const Dataset& samples);

enum class Preset { T0Shape, T1Shape, T2Shape };

std::string_view to_string(Preset preset);
std::optional<Preset> preset_from_string(std::string_view text);

struct PresetCounts {
    std::size_t los;
    std::size_t nlos;
    std::size_t los_nlos;
    std::size_t total() const { return los + nlos + los_nlos; }
};

PresetCounts preset_counts(Preset preset);

// Seeded stand-in for recorded GNSS samples with the preset's class counts.
// LOS:      cn0_diff ~ N(8, 2),    elevation ~ U(30, 90)
// NLOS:     cn0_diff ~ N(-3, 2),   elevation ~ U(5, 45)
// LOS+NLOS: cn0_diff ~ N(2, 2.5),  elevation ~ U(10, 60)
Dataset generate_synthetic(Preset preset, std::uint64_t seed);

}  // namespace qsvm::dataio
