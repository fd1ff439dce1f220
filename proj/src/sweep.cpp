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

#include "hyperbench/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "hyperbench/binary_io.hpp"
#include "hyperbench/dataset_io.hpp"
#include "hyperbench/error.hpp"

namespace hyperbench {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_list(std::string_view s, char sep = ',') {
    std::vector<std::string> out;
    while (true) {
        auto pos = s.find(sep);
        auto item = trim(s.substr(0, pos));
        if (!item.empty()) out.emplace_back(item);
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view v) {
    T out{};
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw ConfigError(std::string(key), "not a number: '" + std::string(v) + "'");
    return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(std::string(key), "expected true or false, got '" + std::string(v) + "'");
}

std::vector<int> parse_rates(std::string_view v) {
    std::vector<int> out;
    for (const auto& item : split_list(v)) {
        auto dash = item.find('-');
        if (dash != std::string::npos && dash > 0) {
            int lo = parse_number<int>("rates", trim(std::string_view(item).substr(0, dash)));
            int hi = parse_number<int>("rates", trim(std::string_view(item).substr(dash + 1)));
            if (hi < lo) throw ConfigError("rates", "empty range '" + item + "'");
            for (int r = lo; r <= hi; ++r) out.push_back(r);
        } else {
            out.push_back(parse_number<int>("rates", item));
        }
    }
    return out;
}

std::string sanitize(std::string s) {
    for (auto& c : s) {
        if (c == ',') c = ';';
        if (c == '\n' || c == '\r') c = ' ';
    }
    return s;
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string file_tag(std::string_view tag) {
    std::string out;
    for (char c : tag)
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ? c : '_');
    return out;
}

} // namespace

std::vector<int> SweepPlan::effective_rates() const {
    if (!rates.empty()) return rates;
    std::vector<int> r(98);
    for (int i = 0; i < 98; ++i) r[std::size_t(i)] = i + 1;
    return r;
}

void SweepPlan::validate() const {
    if (methods.empty() && !include_rgb_baseline && !include_uncompressed_baseline)
        throw ConfigError("methods", "must not be empty");
    auto r = effective_rates();
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] < 1 || r[i] > 99) throw ConfigError("rates", "must lie in [1, 99]");
        if (i > 0 && r[i] <= r[i - 1]) throw ConfigError("rates", "must be strictly increasing");
    }
    for (std::size_t i = 0; i < methods.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (methods[i] == methods[j]) throw ConfigError("methods", "duplicate method");
    if (parallelism < 1) throw ConfigError("parallelism", "must be >= 1");
    if (time_reps < 1) throw ConfigError("time_reps", "must be >= 1");
    if (pre_sg) sg.validate();
    gbt.validate();
}

SweepPlan parse_plan(std::string_view text) {
    SweepPlan p;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(line_no, "expected 'key = value' on line " + std::to_string(line_no));
        const auto key = std::string(trim(line.substr(0, eq)));
        const auto v = trim(line.substr(eq + 1));

        if (key == "datasets") p.datasets = split_list(v);
        else if (key == "methods") {
            p.methods.clear();
            for (const auto& m : split_list(v)) p.methods.push_back(parse_method(m));
        }
        else if (key == "rates") p.rates = parse_rates(v);
        else if (key == "include_rgb_baseline") p.include_rgb_baseline = parse_bool(key, v);
        else if (key == "include_uncompressed_baseline") p.include_uncompressed_baseline = parse_bool(key, v);
        else if (key == "pre_sg") p.pre_sg = parse_bool(key, v);
        else if (key == "sg_window") p.sg.window = parse_number<int>(key, v);
        else if (key == "sg_order") p.sg.poly_order = parse_number<int>(key, v);
        else if (key == "seed") p.seed = parse_number<std::uint64_t>(key, v);
        else if (key == "parallelism" || key == "workers") p.parallelism = parse_number<std::size_t>(key, v);
        else if (key == "time_reps") p.time_reps = parse_number<int>(key, v);
        else if (key == "timing") {
            if (v == "wall") p.record_timings = true;
            else if (v == "none") p.record_timings = false;
            else throw ConfigError(key, "expected wall or none");
        }
        else if (key == "gbt_rounds") p.gbt.n_rounds = parse_number<int>(key, v);
        else if (key == "gbt_max_depth") p.gbt.max_depth = parse_number<int>(key, v);
        else if (key == "gbt_learning_rate") p.gbt.learning_rate = parse_number<double>(key, v);
        else if (key == "gbt_lambda") p.gbt.reg_lambda = parse_number<double>(key, v);
        else if (key == "ae_epochs") p.fit.ae.epochs = parse_number<int>(key, v);
        else if (key == "ae_restarts") p.fit.ae.restarts = parse_number<int>(key, v);
        else if (key == "ae_hidden") p.fit.ae.hidden_ae = parse_number<std::size_t>(key, v);
        else if (key == "ae_batch") p.fit.ae.batch_size = parse_number<std::size_t>(key, v);
        else if (key == "ae_lr") p.fit.ae.adam.lr = parse_number<double>(key, v);
        else if (key == "dae_noise") p.fit.ae.dae_noise_sigma = parse_number<double>(key, v);
        else if (key == "kpca_degree") p.fit.kpca.degree = parse_number<int>(key, v);
        else if (key == "kpca_offset") p.fit.kpca.offset = parse_number<double>(key, v);
        else if (key == "kpca_anchors") p.fit.kpca.max_anchors = parse_number<std::size_t>(key, v);
        else if (key == "ica_max_iter") p.fit.ica.max_iter = parse_number<int>(key, v);
        else throw ConfigError(key, "unknown plan key");
    }
    p.validate();
    return p;
}

SweepPlan load_plan(const std::filesystem::path& path) { return parse_plan(read_file(path)); }

SyntheticConfig preset_config(std::string_view name, std::size_t total) {
    SyntheticConfig cfg;
    cfg.shift_jitter_nm = 40.0;
    cfg.endmember_smoothness = 12.0;
    cfg.mixing_jitter = 0.8;
    if (name == "suburban") {
        cfg.seed = 1;
        cfg.classes = {{"asphalt", 18311}, {"rooftop", 15820}, {"shadow", 20770}, {"vegetation", 30294}};
    } else if (name == "urban") {
        cfg.seed = 2;
        cfg.classes = {{"lawn", 6864}, {"rooftop", 44647}, {"shadow", 8768}};
    } else if (name == "forest") {
        cfg.seed = 3;
        cfg.classes = {{"shadow", 18400}, {"tree", 14687}};
    } else if (name == "acceptance") {
        cfg.seed = 42;
        cfg.noise_sigma = 0.02;
        cfg.classes = {{"asphalt", 1334}, {"vegetation", 1333}, {"shadow", 1333}};
    } else {
        throw ConfigError("dataset", "unknown synthetic preset '" + std::string(name) + "'");
    }
    if (total > 0) {
        std::size_t sum = 0;
        for (const auto& c : cfg.classes) sum += c.pixel_count;
        if (total < 4 * cfg.classes.size())
            throw ConfigError("dataset", "total too small for " + std::to_string(cfg.classes.size()) +
                                             " classes");
        // largest remainder, every class keeps at least 4 pixels
        std::vector<std::pair<double, std::size_t>> rem;
        std::size_t assigned = 0;
        for (std::size_t i = 0; i < cfg.classes.size(); ++i) {
            double exact = double(total) * double(cfg.classes[i].pixel_count) / double(sum);
            auto base = std::size_t(std::floor(exact));
            cfg.classes[i].pixel_count = base;
            assigned += base;
            rem.push_back({exact - double(base), i});
        }
        std::stable_sort(rem.begin(), rem.end(), [](auto a, auto b) { return a.first > b.first; });
        for (std::size_t k = 0; assigned < total; ++k, ++assigned)
            ++cfg.classes[rem[k % rem.size()].second].pixel_count;
        for (auto& c : cfg.classes) {
            while (c.pixel_count < 4) {
                auto big = std::max_element(cfg.classes.begin(), cfg.classes.end(),
                                            [](auto& a, auto& b) { return a.pixel_count < b.pixel_count; });
                --big->pixel_count;
                ++c.pixel_count;
            }
        }
    }
    return cfg;
}

LabeledDataset resolve_dataset(const std::string& tag) {
    constexpr std::string_view prefix = "synthetic:";
    if (!tag.starts_with(prefix)) return load_dataset(tag);
    auto parts = split_list(std::string_view(tag).substr(prefix.size()), ':');
    if (parts.empty() || parts.size() > 3)
        throw ConfigError("dataset", "expected synthetic:<preset>[:<total>[:<seed>]]");
    std::size_t total = parts.size() > 1 ? parse_number<std::size_t>("dataset", parts[1]) : 0;
    auto cfg = preset_config(parts[0], total);
    if (parts.size() > 2) cfg.seed = parse_number<std::uint64_t>("dataset", parts[2]);
    return generate_synthetic(cfg);
}

std::uint64_t job_seed(std::uint64_t plan_seed, std::string_view dataset, std::string_view method,
                       int rate) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](unsigned char b) {
        h ^= b;
        h *= 0x100000001b3ull;
    };
    for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(plan_seed >> (8 * i)));
    for (char c : dataset) mix(static_cast<unsigned char>(c));
    mix(0);
    for (char c : method) mix(static_cast<unsigned char>(c));
    mix(0);
    for (int i = 0; i < 4; ++i) mix(static_cast<unsigned char>(std::uint32_t(rate) >> (8 * i)));
    return h;
}

namespace {

struct Prepared {
    std::string tag;
    std::vector<std::string> labels;
    std::size_t n_bands = 0;
    Eigen::MatrixXd train, val, test;
    std::vector<int> y_train, y_test;
    std::vector<std::size_t> rgb;
};

struct Job {
    std::size_t dataset = 0;
    std::string method;
    int rate = 0;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double mean_snr(const Eigen::MatrixXd& rows, const SgConfig& sg) {
    if (rows.rows() == 0) return 0.0;
    std::vector<double> buf(std::size_t(rows.cols()));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        for (Eigen::Index j = 0; j < rows.cols(); ++j) buf[std::size_t(j)] = rows(i, j);
        acc += snr_db(buf, sg);
    }
    return acc / double(rows.rows());
}

void fill_scores(SweepResult& r, const Prepared& p, const std::vector<int>& pred) {
    auto rep = classification_scores(pred, p.y_test, p.labels.size());
    r.labels = p.labels;
    r.per_class = rep.per_class;
    r.macro_f1 = rep.macro_f1();
    r.macro_precision = rep.macro_precision();
    r.macro_recall = rep.macro_recall();
}

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& m, const std::vector<std::size_t>& cols) {
    Eigen::MatrixXd out(m.rows(), Eigen::Index(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) out.col(Eigen::Index(k)) = m.col(Eigen::Index(cols[k]));
    return out;
}

SweepResult run_once(const SweepPlan& plan, const Prepared& p, const Job& job) {
    SweepResult r;
    r.dataset = p.tag;
    r.method = job.method;
    r.rate = job.rate;
    const auto seed = job_seed(plan.seed, p.tag, job.method, job.rate);
    const auto n_classes = p.labels.size();
    GbtConfig gbt = plan.gbt;
    gbt.seed = seed;

    if (job.method == kRgbBaseline || job.method == kRawBaseline) {
        const bool rgb = job.method == kRgbBaseline;
        r.d = rgb ? 3 : p.n_bands;
        auto t0 = Clock::now();
        Eigen::MatrixXd xtr = rgb ? select_columns(p.train, p.rgb) : p.train;
        Eigen::MatrixXd xte = rgb ? select_columns(p.test, p.rgb) : p.test;
        r.timings.encode_s = rgb ? seconds_since(t0) : 0.0;
        t0 = Clock::now();
        auto model = gbt_train(xtr, p.y_train, n_classes, gbt);
        r.timings.train_s = seconds_since(t0);
        t0 = Clock::now();
        auto pred = model.predict_labels(xte);
        r.timings.predict_s = seconds_since(t0);
        fill_scores(r, p, pred);
        if (!rgb) r.snr_db = mean_snr(p.test, plan.sg);
        return r;
    }

    const auto method = parse_method(job.method);
    r.d = dims_for_rate(p.n_bands, job.rate);
    auto t0 = Clock::now();
    auto model = fit_compressor(method, p.train, p.val, r.d, seed, plan.fit);
    r.timings.fit_s = seconds_since(t0);
    t0 = Clock::now();
    Eigen::MatrixXd z_train = model->encode(p.train);
    Eigen::MatrixXd z_val = model->encode(p.val);
    Eigen::MatrixXd z_test = model->encode(p.test);
    r.timings.encode_s = seconds_since(t0);
    t0 = Clock::now();
    auto clf = gbt_train(z_train, p.y_train, n_classes, gbt);
    r.timings.train_s = seconds_since(t0);
    t0 = Clock::now();
    auto pred = clf.predict_labels(z_test);
    r.timings.predict_s = seconds_since(t0);
    fill_scores(r, p, pred);

    Eigen::MatrixXd recon = model->decode(z_test);
    r.mse = (recon - p.test).squaredNorm() / double(p.test.size());
    r.snr_db = mean_snr(recon, plan.sg);
    if (!model->warnings().empty()) {
        std::string w;
        for (const auto& s : model->warnings()) w += (w.empty() ? "" : "; ") + s;
        r.status = "warn:" + sanitize(w);
    }
    return r;
}

SweepResult run_job(const SweepPlan& plan, const Prepared& p, const Job& job) {
    try {
        SweepResult first = run_once(plan, p, job);
        for (int rep = 1; rep < plan.time_reps; ++rep) {
            auto again = run_once(plan, p, job);
            first.timings.fit_s += again.timings.fit_s;
            first.timings.encode_s += again.timings.encode_s;
            first.timings.train_s += again.timings.train_s;
            first.timings.predict_s += again.timings.predict_s;
        }
        const double reps = double(plan.time_reps);
        first.timings = {first.timings.fit_s / reps, first.timings.encode_s / reps,
                         first.timings.train_s / reps, first.timings.predict_s / reps};
        return first;
    } catch (const std::exception& e) {
        SweepResult r;
        r.dataset = p.tag;
        r.method = job.method;
        r.rate = job.rate;
        if (job.method != kRgbBaseline && job.method != kRawBaseline) {
            try {
                r.d = dims_for_rate(p.n_bands, job.rate);
            } catch (const Error&) {
            }
        }
        r.status = "failed:" + sanitize(e.what());
        return r;
    }
}

} // namespace

std::vector<SweepResult> run_sweep(const SweepPlan& plan) {
    plan.validate();
    if (plan.datasets.empty()) throw ConfigError("datasets", "must not be empty");
    std::vector<LabeledDataset> data;
    for (const auto& tag : plan.datasets) data.push_back(resolve_dataset(tag));
    return run_sweep(plan, plan.datasets, data);
}

std::vector<SweepResult> run_sweep(const SweepPlan& plan, const std::vector<std::string>& tags,
                                   const std::vector<LabeledDataset>& datasets) {
    plan.validate();
    if (tags.size() != datasets.size()) throw ConfigError("datasets", "tag count mismatch");
    std::vector<Prepared> prepared;
    for (std::size_t k = 0; k < datasets.size(); ++k) {
        const LabeledDataset ds = plan.pre_sg ? sg_filter_dataset(datasets[k], plan.sg) : datasets[k];
        ds.validate();
        Prepared p;
        p.tag = tags[k];
        p.labels = ds.class_names;
        p.n_bands = ds.n_bands;
        p.train = ds.matrix(Split::Train);
        p.val = ds.matrix(Split::Validation);
        p.test = ds.matrix(Split::Test);
        p.y_train = ds.labels_of(Split::Train);
        p.y_test = ds.labels_of(Split::Test);
        if (plan.include_rgb_baseline) p.rgb = rgb_band_indices(ds.wavelengths);
        prepared.push_back(std::move(p));
    }

    std::vector<Job> jobs;
    const auto rates = plan.effective_rates();
    for (std::size_t k = 0; k < prepared.size(); ++k) {
        if (plan.include_rgb_baseline) jobs.push_back({k, std::string(kRgbBaseline), 0});
        if (plan.include_uncompressed_baseline) jobs.push_back({k, std::string(kRawBaseline), 0});
        for (auto m : plan.methods)
            for (int rate : rates) jobs.push_back({k, std::string(method_name(m)), rate});
    }

    std::vector<SweepResult> results(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++)
            results[i] = run_job(plan, prepared[jobs[i].dataset], jobs[i]);
    };
    const auto n_workers = std::min(plan.parallelism, std::max<std::size_t>(jobs.size(), 1));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    }
    if (!plan.record_timings)
        for (auto& r : results) r.timings = {};
    return results;
}

std::string results_csv(const std::vector<SweepResult>& results) {
    std::string out(kResultsHeader);
    out += '\n';
    auto opt = [](const std::optional<double>& v) { return v ? fixed6(*v) : std::string(); };
    for (const auto& r : results) {
        const std::string head =
            sanitize(r.dataset) + ',' + r.method + ',' + std::to_string(r.rate) + ',' + std::to_string(r.d) + ',';
        const std::string tail = fixed6(r.timings.fit_s) + ',' + fixed6(r.timings.encode_s) + ',' +
                                 fixed6(r.timings.train_s) + ',' + fixed6(r.timings.predict_s) + ',' +
                                 r.status + '\n';
        if (r.failed() || r.labels.empty()) {
            out += head + ",,,,,,," + tail;
            continue;
        }
        for (std::size_t c = 0; c < r.labels.size(); ++c) {
            const auto& s = r.per_class[c];
            out += head + sanitize(r.labels[c]) + ',' + fixed6(s.precision) + ',' + fixed6(s.recall) + ',' +
                   fixed6(s.f1) + ',' + fixed6(r.macro_f1) + ',' + opt(r.mse) + ',' + opt(r.snr_db) + ',' + tail;
        }
    }
    return out;
}

namespace {

bool is_baseline(const SweepResult& r) { return r.method == kRgbBaseline || r.method == kRawBaseline; }

std::vector<std::string> ordered(const std::vector<SweepResult>& results, auto key) {
    std::vector<std::string> out;
    for (const auto& r : results) {
        auto k = key(r);
        if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    }
    return out;
}

std::string display_name(std::string_view method) {
    if (method == kRgbBaseline) return "RGB";
    if (method == kRawBaseline) return "Uncompressed";
    std::string s(method);
    for (auto& c : s) c = char(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

int table_rank(std::string_view method) {
    static constexpr std::string_view order[] = {"rgb", "pca", "kpca", "ica", "ae", "dae", "raw"};
    for (int i = 0; i < 7; ++i)
        if (order[i] == method) return i;
    return 7;
}

void write_text(const std::filesystem::path& path, const std::string& text) { write_file(path, text); }

} // namespace

void emit_reports(const std::vector<SweepResult>& results, const std::filesystem::path& out_dir) {
    if (results.empty()) throw ConfigError("results", "nothing to report");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    write_text(out_dir / "results.csv", results_csv(results));

    const auto datasets = ordered(results, [](const SweepResult& r) { return r.dataset; });
    std::vector<SweepResult> compressed;
    for (const auto& r : results)
        if (!is_baseline(r)) compressed.push_back(r);
    const auto methods = ordered(compressed, [](const SweepResult& r) { return r.method; });

    auto find = [&](const std::string& ds, const std::string& m, int rate) -> const SweepResult* {
        for (const auto& r : results)
            if (r.dataset == ds && r.method == m && r.rate == rate) return &r;
        return nullptr;
    };
    auto rates_of = [&](const std::string& ds) {
        std::vector<int> rates;
        for (const auto& r : compressed)
            if (r.dataset == ds && std::find(rates.begin(), rates.end(), r.rate) == rates.end())
                rates.push_back(r.rate);
        std::sort(rates.begin(), rates.end());
        return rates;
    };

    // mse_by_rate.csv: one row per (dataset, rate), one column per method
    {
        std::string s = "dataset,rate";
        for (const auto& m : methods) s += ',' + m;
        s += '\n';
        for (const auto& ds : datasets) {
            for (int rate : rates_of(ds)) {
                s += sanitize(ds) + ',' + std::to_string(rate);
                for (const auto& m : methods) {
                    auto r = find(ds, m, rate);
                    s += ',';
                    if (r && r->mse && !r->failed()) s += fixed6(*r->mse);
                }
                s += '\n';
            }
        }
        write_text(out_dir / "mse_by_rate.csv", s);
    }

    // heatmaps: methods x rates per dataset and metric
    for (const auto& ds : datasets) {
        const auto rates = rates_of(ds);
        struct Metric {
            const char* name;
            double (*get)(const SweepResult&);
        };
        const Metric metrics[] = {{"f1", [](const SweepResult& r) { return r.macro_f1; }},
                                  {"precision", [](const SweepResult& r) { return r.macro_precision; }},
                                  {"recall", [](const SweepResult& r) { return r.macro_recall; }}};
        for (const auto& metric : metrics) {
            std::string s = "method";
            for (int rate : rates) s += ',' + std::to_string(rate);
            s += '\n';
            for (const auto& m : methods) {
                s += m;
                for (int rate : rates) {
                    auto r = find(ds, m, rate);
                    s += ',';
                    if (r && !r->failed()) s += fixed6(metric.get(*r));
                }
                s += '\n';
            }
            write_text(out_dir / (std::string(metric.name) + "_heatmap_" + file_tag(ds) + ".csv"), s);
        }
    }

    // timings.csv
    {
        std::string s = "dataset,method,rate,d,fit_s,encode_s,train_s,predict_s,total_s,status\n";
        for (const auto& r : results) {
            s += sanitize(r.dataset) + ',' + r.method + ',' + std::to_string(r.rate) + ',' +
                 std::to_string(r.d) + ',' + fixed6(r.timings.fit_s) + ',' + fixed6(r.timings.encode_s) +
                 ',' + fixed6(r.timings.train_s) + ',' + fixed6(r.timings.predict_s) + ',' +
                 fixed6(r.timings.total()) + ',' + (r.failed() ? "failed" : "ok") + '\n';
        }
        write_text(out_dir / "timings.csv", s);
    }

    // summary.md
    std::ostringstream md;
    md << "# Sweep summary\n";
    static constexpr int kSummaryRates[] = {90, 95, 97, 98};
    for (const auto& ds : datasets) {
        md << "\n## " << ds << "\n";
        std::vector<const SweepResult*> base;
        for (const auto& r : results)
            if (r.dataset == ds && is_baseline(r)) base.push_back(&r);

        md << "\n### Top scores\n\n| rate | method | macro f1 |\n|---:|---|---:|\n";
        for (int rate : kSummaryRates) {
            const SweepResult* best = nullptr;
            for (const auto& r : compressed)
                if (r.dataset == ds && r.rate == rate && !r.failed() && (!best || r.macro_f1 > best->macro_f1))
                    best = &r;
            if (best) md << "| " << rate << " | " << display_name(best->method) << " | " << fixed6(best->macro_f1) << " |\n";
        }
        for (const auto* b : base)
            if (!b->failed()) md << "| - | " << display_name(b->method) << " | " << fixed6(b->macro_f1) << " |\n";

        for (int rate : kSummaryRates) {
            std::vector<const SweepResult*> rows = base;
            for (const auto& r : compressed)
                if (r.dataset == ds && r.rate == rate) rows.push_back(&r);
            if (rows.size() == base.size()) continue;
            std::stable_sort(rows.begin(), rows.end(), [](auto a, auto b) {
                return table_rank(a->method) < table_rank(b->method);
            });
            std::vector<std::string> labels;
            for (const auto* r : rows)
                if (!r->labels.empty()) {
                    labels = r->labels;
                    break;
                }
            md << "\n### Compression rate " << rate << "%\n\n| method |";
            for (const auto& l : labels) md << ' ' << l << " precision | " << l << " recall | " << l << " f1 |";
            md << " macro f1 |\n|---|";
            for (std::size_t k = 0; k < labels.size() * 3 + 1; ++k) md << "---:|";
            md << '\n';
            for (const auto* r : rows) {
                md << "| " << display_name(r->method) << " |";
                if (r->failed() || r->per_class.size() != labels.size()) {
                    for (std::size_t k = 0; k < labels.size() * 3; ++k) md << " - |";
                    md << " failed |\n";
                    continue;
                }
                for (const auto& s : r->per_class)
                    md << ' ' << fixed6(s.precision) << " | " << fixed6(s.recall) << " | " << fixed6(s.f1) << " |";
                md << ' ' << fixed6(r->macro_f1) << " |\n";
            }
        }
    }

    md << "\n## Execution time times number of jobs\n\n"
          "| dataset | method | jobs | mean seconds per job | total seconds |\n|---|---|---:|---:|---:|\n";
    for (const auto& ds : datasets) {
        for (const auto& m : ordered(results, [](const SweepResult& r) { return r.method; })) {
            std::size_t jobs = 0;
            double total = 0.0;
            for (const auto& r : results)
                if (r.dataset == ds && r.method == m) {
                    ++jobs;
                    total += r.timings.total();
                }
            if (jobs == 0) continue;
            md << "| " << ds << " | " << display_name(m) << " | " << jobs << " | "
               << fixed6(total / double(jobs)) << " | " << fixed6(total) << " |\n";
        }
    }
    write_text(out_dir / "summary.md", md.str());
}

std::vector<int> classify_dataset(const LabeledDataset& ds, const Compressor* compressor,
                                  const GbtModel& classifier, const std::filesystem::path& out) {
    Eigen::MatrixXd x = ds.matrix();
    if (compressor) {
        if (compressor->input_dim() != ds.n_bands)
            throw NumericError("classify: compressor expects " + std::to_string(compressor->input_dim()) +
                               " bands, dataset has " + std::to_string(ds.n_bands));
        x = compressor->encode(x);
    }
    if (std::size_t(x.cols()) != classifier.n_features())
        throw NumericError("classify: classifier expects " + std::to_string(classifier.n_features()) +
                           " features, got " + std::to_string(x.cols()));
    auto pred = classifier.predict_labels(x);
    std::string s = "pixel,predicted,class\n";
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const auto c = std::size_t(pred[i]);
        s += std::to_string(i) + ',' + std::to_string(pred[i]) + ',' +
             (c < ds.class_names.size() ? sanitize(ds.class_names[c]) : std::string()) + '\n';
    }
    write_file(out, s);
    return pred;
}

} // namespace hyperbench
