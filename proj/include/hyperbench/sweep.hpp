/*
 * Copyright 2026 The hyperbench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HYPERBENCH_SWEEP_HPP
#define HYPERBENCH_SWEEP_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperbench/compressor.hpp"
#include "hyperbench/dataset.hpp"
#include "hyperbench/gbt.hpp"
#include "hyperbench/metrics.hpp"
#include "hyperbench/models.hpp"
#include "hyperbench/savgol.hpp"

namespace hyperbench {

/// Baseline rows carry these method names and rate 0.
inline constexpr std::string_view kRgbBaseline = "rgb";
inline constexpr std::string_view kRawBaseline = "raw";

struct SweepPlan {
    /// Dataset file paths (.hspx or .csv) or synthetic tags, see resolve_dataset.
    std::vector<std::string> datasets;
    std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
    std::vector<int> rates;  // empty means 1..98
    bool include_rgb_baseline = false;
    bool include_uncompressed_baseline = false;
    bool pre_sg = false;
    SgConfig sg;
    std::uint64_t seed = 0;
    std::size_t parallelism = 1;

    GbtConfig gbt;
    FitOptions fit;
    /// Each job is repeated this many times and its timings averaged.
    int time_reps = 1;
    /// When false every timing is written as 0, which makes results.csv
    /// byte-identical across runs.
    bool record_timings = true;

    std::vector<int> effective_rates() const;
    void validate() const;
};

/// Parses the line-oriented `key = value` plan format. '#' starts a comment;
/// lists are comma-separated. Unknown keys are a ConfigError.
SweepPlan parse_plan(std::string_view text);
SweepPlan load_plan(const std::filesystem::path& path);

struct Timings {
    double fit_s = 0.0;
    double encode_s = 0.0;
    double train_s = 0.0;
    double predict_s = 0.0;

    double total() const { return fit_s + encode_s + train_s + predict_s; }
};

struct SweepResult {
    std::string dataset;
    std::string method;  // compressor name or a baseline name
    int rate = 0;
    std::size_t d = 0;
    std::vector<std::string> labels;
    std::vector<ClassScore> per_class;  // test split, same order as labels
    double macro_f1 = 0.0;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    std::optional<double> mse;     // test-split mean over bands and pixels
    std::optional<double> snr_db;  // mean over test pixels
    Timings timings;
    std::string status = "ok";     // "ok", "warn:<...>" or "failed:<...>"

    bool failed() const { return status.starts_with("failed"); }
};

/// Synthetic dataset presets: "suburban", "urban" and "forest" follow the
/// class proportions of the three reference scenes; "acceptance" is a
/// 3-class, 4000-pixel scene with noise 0.02. `total` rescales the pixel
/// count (0 keeps the preset's size).
SyntheticConfig preset_config(std::string_view name, std::size_t total = 0);

/// Loads a dataset file, or generates one for a tag of the form
/// `synthetic:<preset>[:<total>[:<seed>]]`.
LabeledDataset resolve_dataset(const std::string& tag);

/// Per-job seed derived from the plan seed and the job coordinates.
std::uint64_t job_seed(std::uint64_t plan_seed, std::string_view dataset, std::string_view method,
                       int rate);

/// Runs every (dataset, method, rate) job plus the enabled baselines. The
/// returned order is fixed: datasets in plan order, baselines first, then
/// methods in plan order, rates ascending. Job failures become rows with a
/// "failed:" status.
std::vector<SweepResult> run_sweep(const SweepPlan& plan);

/// Same, on datasets already loaded; `tags` name them in the output.
std::vector<SweepResult> run_sweep(const SweepPlan& plan, const std::vector<std::string>& tags,
                                   const std::vector<LabeledDataset>& datasets);

inline constexpr std::string_view kResultsHeader =
    "dataset,method,rate,d,label,precision,recall,f1,macro_f1,mse,snr_db,fit_s,encode_s,train_s,"
    "predict_s,status";

/// results.csv text: one line per result and class label, failed jobs as a
/// single line with an empty label.
std::string results_csv(const std::vector<SweepResult>& results);

/// Writes results.csv, mse_by_rate.csv, {f1,precision,recall}_heatmap_<dataset>.csv,
/// timings.csv and summary.md into `out_dir` (created if missing).
void emit_reports(const std::vector<SweepResult>& results, const std::filesystem::path& out_dir);

/// Predicts every pixel of `ds`, after encoding with `compressor` when it is
/// non-null, and writes `pixel,predicted,class` lines to `out`. Returns the
/// predictions.
std::vector<int> classify_dataset(const LabeledDataset& ds, const Compressor* compressor,
                                  const GbtModel& classifier, const std::filesystem::path& out);

} // namespace hyperbench

#endif
