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

#include "qsvm/dataio.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qsvm/error.hpp"

using namespace qsvm;
using namespace qsvm::dataio;

namespace {

Dataset parse(const std::string& text) {
    std::istringstream in(text);
    return read_csv(in, "mem.csv");
}

// Line number reported for a malformed input, or 0 if it parsed.
std::size_t error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

const std::string kHead = "cn0_diff,elevation_deg,label\n";

}  // namespace

TEST(Labels, RoundTrip) {
    for (Reception r : kAllReceptions) {
        EXPECT_EQ(reception_from_string(to_string(r)), r);
        EXPECT_EQ(reception_from_class_id(class_id(r)), r);
    }
    EXPECT_EQ(to_string(Reception::LosNlos), "LOS_NLOS");
    EXPECT_FALSE(reception_from_string("los").has_value());
    EXPECT_THROW(reception_from_class_id(3), InvalidArgumentError);
}

TEST(ReadCsv, ParsesRows) {
    const auto d = parse(kHead + "8.5,45,LOS\n-3.25,10.5,NLOS\r\n+2,0,LOS_NLOS\n\n");
    ASSERT_EQ(d.size(), 3u);
    EXPECT_EQ(d.samples[0], (SignalSample{8.5, 45.0, Reception::Los}));
    EXPECT_EQ(d.samples[1], (SignalSample{-3.25, 10.5, Reception::Nlos}));
    EXPECT_EQ(d.samples[2], (SignalSample{2.0, 0.0, Reception::LosNlos}));
    EXPECT_EQ(d.name, "mem.csv");
    EXPECT_EQ(d.count(Reception::Nlos), 1u);
    EXPECT_EQ(d.class_ids(), (std::vector<int>{0, 1, 2}));
    const Matrix f = d.features();
    EXPECT_EQ(f(1, 0), -3.25);
    EXPECT_EQ(f(1, 1), 10.5);
}

TEST(ReadCsv, AcceptsByteOrderMark) {
    EXPECT_EQ(parse("\xEF\xBB\xBF" + kHead + "1,2,LOS\n").size(), 1u);
}

TEST(ReadCsv, ErrorsNameTheLine) {
    EXPECT_EQ(error_line(""), 1u);
    EXPECT_EQ(error_line("a,b,c\n1,2,LOS\n"), 1u);
    EXPECT_EQ(error_line(kHead), 1u);
    EXPECT_EQ(error_line(kHead + "1,2,LOS\n1,2\n"), 3u);
    EXPECT_EQ(error_line(kHead + "1,2,LOS,4\n"), 2u);
    EXPECT_EQ(error_line(kHead + "x,2,LOS\n"), 2u);
    EXPECT_EQ(error_line(kHead + "1,,LOS\n"), 2u);
    EXPECT_EQ(error_line(kHead + "nan,2,LOS\n"), 2u);
    EXPECT_EQ(error_line(kHead + "inf,2,LOS\n"), 2u);
    EXPECT_EQ(error_line(kHead + "1,2,LOS\n1,2,LOS\n1,95,LOS\n"), 4u);
    EXPECT_EQ(error_line(kHead + "1,-1,NLOS\n"), 2u);
    EXPECT_EQ(error_line(kHead + "1,2,MULTIPATH\n"), 2u);
    EXPECT_EQ(error_line(kHead + "1 ,2,LOS\n"), 2u);
}

TEST(ReadCsv, MessageIncludesSourceAndLine) {
    try {
        parse(kHead + "1,2,FOO\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("mem.csv:2"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("FOO"), std::string::npos);
    }
}

TEST(Csv, WriteReadRoundTripIsExact) {
    const Dataset d = generate_synthetic(Preset::T1Shape, 99);
    std::ostringstream out;
    write_csv(d, out);
    EXPECT_EQ(out.str().substr(0, kHead.size()), kHead);
    Dataset back = parse(out.str());
    back.name = d.name;
    EXPECT_EQ(back, d);
}

TEST(Csv, SaveAndLoadFile) {
    const auto dir = std::filesystem::temp_directory_path() / "qsvm_dataio_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "sample.csv";
    const Dataset d = generate_synthetic(Preset::T2Shape, 1);
    save_csv(d, path);
    const Dataset back = load_csv(path);
    EXPECT_EQ(back.name, "sample");
    EXPECT_EQ(back.samples, d.samples);
    EXPECT_THROW(load_csv(dir / "missing.csv"), InvalidArgumentError);
    std::filesystem::remove_all(dir);
}

TEST(Concatenate, KeepsOrder) {
    const Dataset a{"a", {{1.0, 2.0, Reception::Los}}};
    const Dataset b{"b", {{3.0, 4.0, Reception::Nlos}, {5.0, 6.0, Reception::LosNlos}}};
    const Dataset c = concatenate({a, b}, "ab");
    EXPECT_EQ(c.name, "ab");
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c.samples[2].cn0_diff, 5.0);
}

TEST(Scaler, FitAndApply) {
    const Matrix train{{-4.0, 10.0}, {6.0, 60.0}, {1.0, 35.0}};
    const auto p = fit_scaler(train);
    EXPECT_EQ(p.data_min, (std::vector<double>{-4.0, 10.0}));
    EXPECT_EQ(p.data_max, (std::vector<double>{6.0, 60.0}));
    const Matrix s = apply_scaler(p, train);
    EXPECT_DOUBLE_EQ(s(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(s(1, 0), 1.0);
    EXPECT_DOUBLE_EQ(s(2, 0), 0.5);
    EXPECT_DOUBLE_EQ(s(2, 1), 0.5);
}

TEST(Scaler, OutOfRangeIsNotClamped) {
    const auto p = fit_scaler(Matrix{{0.0, 0.0}, {10.0, 20.0}});
    const Matrix s = apply_scaler(p, Matrix{{15.0, -10.0}});
    EXPECT_DOUBLE_EQ(s(0, 0), 1.5);
    EXPECT_DOUBLE_EQ(s(0, 1), -0.5);
}

TEST(Scaler, CustomTargetRange) {
    const auto p = fit_scaler(Matrix{{0.0, 0.0}, {10.0, 20.0}}, -1.0, 1.0);
    const Matrix s = apply_scaler(p, Matrix{{5.0, 20.0}});
    EXPECT_DOUBLE_EQ(s(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(s(0, 1), 1.0);
}

TEST(Scaler, Errors) {
    EXPECT_THROW(fit_scaler(Matrix{{1.0, 0.0}, {1.0, 5.0}}), DegenerateDataError);
    EXPECT_THROW(fit_scaler(Matrix()), InvalidArgumentError);
    EXPECT_THROW(fit_scaler(Matrix{{0.0, 0.0}, {1.0, 1.0}}, 1.0, 1.0), InvalidArgumentError);
    const auto p = fit_scaler(Matrix{{0.0, 0.0}, {1.0, 1.0}});
    EXPECT_THROW(apply_scaler(p, Matrix{{0.5}}), DimensionError);
}

TEST(Synthetic, PresetCounts) {
    EXPECT_EQ(preset_counts(Preset::T0Shape).total(), 152u);
    EXPECT_EQ(preset_counts(Preset::T1Shape).total(), 41u);
    EXPECT_EQ(preset_counts(Preset::T2Shape).total(), 120u);
    for (Preset p : {Preset::T0Shape, Preset::T1Shape, Preset::T2Shape}) {
        const auto c = preset_counts(p);
        const Dataset d = generate_synthetic(p, 3);
        EXPECT_EQ(d.count(Reception::Los), c.los);
        EXPECT_EQ(d.count(Reception::Nlos), c.nlos);
        EXPECT_EQ(d.count(Reception::LosNlos), c.los_nlos);
        EXPECT_EQ(d.name, to_string(p));
        EXPECT_EQ(preset_from_string(to_string(p)), p);
    }
    EXPECT_FALSE(preset_from_string("T3_SHAPE").has_value());
}

TEST(Synthetic, SeededAndInRange) {
    const Dataset a = generate_synthetic(Preset::T0Shape, 42);
    EXPECT_EQ(a, generate_synthetic(Preset::T0Shape, 42));
    EXPECT_NE(a.samples, generate_synthetic(Preset::T0Shape, 43).samples);
    for (const auto& s : a.samples) {
        EXPECT_GE(s.elevation_deg, 0.0);
        EXPECT_LE(s.elevation_deg, 90.0);
    }
}

TEST(Synthetic, ClassMeansFollowTheirDistributions) {
    // Large-sample check on the generator: average over many seeds.
    double sum[3] = {0.0, 0.0, 0.0};
    std::size_t n[3] = {0, 0, 0};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        for (const auto& s : generate_synthetic(Preset::T0Shape, seed).samples) {
            sum[class_id(s.label)] += s.cn0_diff;
            ++n[class_id(s.label)];
        }
    }
    EXPECT_NEAR(sum[0] / n[0], 8.0, 0.1);
    EXPECT_NEAR(sum[1] / n[1], -3.0, 0.15);
    EXPECT_NEAR(sum[2] / n[2], 2.0, 0.2);
}
