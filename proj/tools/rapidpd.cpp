// Command line front end: synthesize cabin CSI recordings, score them for
// presence, and evaluate the scores against ground truth.
//
// Exit codes: 0 success, 1 usage, 2 bad data, 3 internal fault.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "rapidpd/rapidpd.hpp"

namespace {

using namespace rapidpd;

DetectorConfig config_from(const std::string& path) {
    return path.empty() ? DetectorConfig{} : load_config(path);
}

// Per-window-position statistics combined across streams, in index order.
struct ScoredRun {
    std::vector<std::int64_t> index;
    std::vector<double> overall;     // subcarrier-direction statistic, summed over streams
    std::vector<double> baseline;    // time-direction statistic, summed the same way
    int streams = 0;
};

ScoredRun score_file(const CsiFileData& data, const DetectorConfig& cfg, bool with_baseline) {
    const auto by_stream = assemble_windows(data.frames, cfg, data.header.rate_hz);
    if (by_stream.empty())
        throw std::runtime_error("no complete windows; need at least " +
                                 std::to_string(cfg.window_len) + " frames per stream");

    std::map<std::int64_t, std::vector<WindowStatistic>> stats;
    std::map<std::int64_t, double> base;
    std::map<std::int64_t, int> base_streams;
    for (const auto& [stream_id, windows] : by_stream) {
        for (std::size_t i = 0; i < windows.size(); ++i) {
            const auto idx = static_cast<std::int64_t>(i);
            const auto norm = normalize(amplitude(windows[i], data.header.grid));
            const auto psi = detect_window(norm, cfg);
            stats[idx].push_back(window_statistic(psi, cfg, stream_id, idx));
            if (with_baseline) {
                base[idx] += baseline_window_statistic(norm, stream_id, idx).phi_time;
                base_streams[idx] += 1;
            }
        }
    }

    ScoredRun run;
    run.streams = static_cast<int>(by_stream.size());
    for (const auto& [idx, window_stats] : stats) {
        if (static_cast<int>(window_stats.size()) < run.streams)
            std::cerr << "warning: window " << idx << " scored on " << window_stats.size()
                      << " of " << run.streams << " streams\n";
        run.index.push_back(idx);
        run.overall.push_back(overall_statistic(window_stats));
        if (with_baseline) run.baseline.push_back(base[idx]);
    }
    if (run.index.empty())
        throw std::runtime_error("no complete windows; need at least " +
                                 std::to_string(cfg.window_len) + " frames per stream");
    return run;
}

// Ground truth per window position, collapsed across streams.
struct LabelTable {
    std::map<std::int64_t, int> label;
    std::map<std::int64_t, std::string> scenario;
};

LabelTable collapse_labels(const std::vector<WindowLabel>& rows) {
    LabelTable t;
    for (const WindowLabel& l : rows) {
        const auto it = t.label.find(l.window_index);
        if (it == t.label.end()) {
            t.label[l.window_index] = l.label;
            t.scenario[l.window_index] = l.scenario;
        } else if (it->second != l.label) {
            throw std::runtime_error("labels disagree across streams for window " +
                                     std::to_string(l.window_index));
        }
    }
    return t;
}

int labeled(const LabelTable& t, std::int64_t index) {
    const auto it = t.label.find(index);
    if (it == t.label.end())
        throw std::runtime_error("no label for window " + std::to_string(index));
    return it->second;
}

struct SimulateArgs {
    std::string scenario = "empty";
    std::string out;
    std::string labels;
    std::string config;
    double duration_s = 60.0;
    double rate_hz = 20.0;
    std::uint64_t seed = 1;
    int streams = 1;
    int clutter = 10;
    double motile_rcs_scale = 1.0;
    double noise_divisor = preset::kNoiseDivisor;
    bool no_agc = false;
    bool binary = false;
    bool amplitude_only = false;
};

int run_simulate(const SimulateArgs& a) {
    const auto cfg = config_from(a.config);
    const auto grid = SubcarrierGrid::default_grid();
    const auto scenario = scenario_from(a.scenario);
    const auto scene = make_scene(scenario, a.seed, {a.clutter, a.motile_rcs_scale});
    const auto radio = default_radio(scene, grid, a.noise_divisor, !a.no_agc);
    if (a.streams < 1) throw std::runtime_error("--streams must be at least 1");

    std::vector<SynthesisResult> runs;
    runs.reserve(static_cast<std::size_t>(a.streams));
    for (int s = 0; s < a.streams; ++s) {
        SynthesisOptions opt;
        opt.stream_id = s;
        runs.push_back(synthesize(scene, radio, a.duration_s, a.rate_hz, grid,
                                  derive_seed(a.seed, kRxChainStream,
                                              static_cast<std::uint64_t>(s)),
                                  opt));
    }

    CsiFileData data;
    data.header.mode = a.amplitude_only ? CsiValueMode::amplitude : CsiValueMode::complex_values;
    data.header.grid = grid;
    data.header.rate_hz = a.rate_hz;
    data.header.streams = a.streams;
    data.header.metadata = runs.front().metadata;
    data.header.metadata["seed"] = std::to_string(a.seed);
    const std::size_t frames_per_stream = runs.front().frames.size();
    for (std::size_t n = 0; n < frames_per_stream; ++n)
        for (auto& run : runs) data.frames.push_back(std::move(run.frames[n]));
    write_csi(a.out, data, a.binary ? CsiFileFormat::binary : CsiFileFormat::text);

    std::size_t window_count = 0;
    if (frames_per_stream >= static_cast<std::size_t>(cfg.window_len))
        window_count = (frames_per_stream - static_cast<std::size_t>(cfg.window_len)) /
                           static_cast<std::size_t>(cfg.step()) +
                       1;
    if (!a.labels.empty()) {
        std::vector<WindowLabel> rows;
        for (std::size_t w = 0; w < window_count; ++w)
            for (int s = 0; s < a.streams; ++s)
                rows.push_back({static_cast<std::int64_t>(w), s, scene.motile() ? 1 : 0,
                                scene.name});
        write_labels(a.labels, rows);
    }

    std::cout << "wrote " << data.frames.size() << " frames (" << a.streams << " stream"
              << (a.streams == 1 ? "" : "s") << ", " << frames_per_stream
              << " each) to " << a.out << "\n";
    if (!a.labels.empty())
        std::cout << "wrote " << window_count * static_cast<std::size_t>(a.streams)
                  << " window labels to " << a.labels << "\n";
    return 0;
}

struct DetectArgs {
    std::string in;
    std::string out;
    std::string config;
};

int run_detect(const DetectArgs& a) {
    const auto cfg = config_from(a.config);
    const auto data = read_csi(a.in);
    const auto run = score_file(data, cfg, false);

    std::vector<VerdictRow> rows;
    DecisionSmoother smoother(cfg.smooth_windows);
    std::size_t present = 0;
    for (std::size_t i = 0; i < run.index.size(); ++i) {
        const bool raw = decide(run.overall[i], cfg);
        const auto vote = smoother.push(raw);
        // While the vote window is still filling, the safety policy speaks:
        // cautious installs report presence, others fall back to the raw call.
        const bool smoothed = vote.value_or(cfg.safety_on ? true : raw);
        rows.push_back({run.index[i], run.overall[i], raw ? 1 : 0, smoothed ? 1 : 0});
        present += smoothed ? 1 : 0;
    }
    write_verdicts(a.out, rows);
    std::cout << "scored " << rows.size() << " windows on " << run.streams << " stream"
              << (run.streams == 1 ? "" : "s") << "; " << present
              << " judged occupied; verdicts in " << a.out << "\n";
    return 0;
}

struct EvaluateArgs {
    std::string verdicts;
    std::string labels;
    std::string use = "smoothed";
};

int run_evaluate(const EvaluateArgs& a) {
    if (a.use != "raw" && a.use != "smoothed")
        throw std::runtime_error("--use must be raw or smoothed, got '" + a.use + "'");
    const auto rows = read_verdicts(a.verdicts);
    const auto table = collapse_labels(read_labels(a.labels));
    if (rows.empty()) throw std::runtime_error("no verdicts in " + a.verdicts);

    std::vector<int> predicted;
    std::vector<int> truth;
    std::vector<std::string> scenarios;
    for (const VerdictRow& r : rows) {
        predicted.push_back(a.use == "raw" ? r.raw : r.smoothed);
        truth.push_back(labeled(table, r.window_index));
        scenarios.push_back(table.scenario.at(r.window_index));
    }
    const auto report = evaluate(predicted, truth, scenarios);
    std::cout << "windows=" << report.total() << " using " << a.use << " verdicts\n"
              << "tp=" << report.tp << " fp=" << report.fp << " tn=" << report.tn
              << " fn=" << report.fn << "\n"
              << "accuracy=" << report.accuracy << " tpr=" << report.tpr
              << " fpr=" << report.fpr << "\n";
    for (const auto& [name, counts] : report.per_scenario)
        std::cout << "scenario " << name << ": " << counts.first << "/" << counts.second
                  << " correct\n";
    return 0;
}

struct RocArgs {
    std::string in;
    std::string labels;
    std::string out;
    std::string cdf;
    std::string config;
    int resolution = 0;
};

int run_roc(const RocArgs& a) {
    const auto cfg = config_from(a.config);
    const auto data = read_csi(a.in);
    const auto run = score_file(data, cfg, false);
    const auto table = collapse_labels(read_labels(a.labels));

    std::vector<int> truth;
    truth.reserve(run.index.size());
    for (const auto idx : run.index) truth.push_back(labeled(table, idx));
    const auto curve = roc_sweep(run.overall, truth, a.resolution);

    if (!a.out.empty()) {
        std::ofstream out(a.out, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + a.out);
        out << "eta,fpr,tpr\n";
        for (const RocPoint& p : curve.points)
            out << io_detail::format_double(p.eta) << ',' << io_detail::format_double(p.fpr)
                << ',' << io_detail::format_double(p.tpr) << '\n';
        if (!out) throw std::runtime_error("write failed on " + a.out);
    }
    if (!a.cdf.empty()) {
        EvaluationReport report;
        attach_cdf(report, run.overall, truth);
        std::ofstream out(a.cdf, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + a.cdf);
        out << "label,phi\n";
        for (const double v : report.cdf_empty)
            out << "0," << io_detail::format_double(v) << '\n';
        for (const double v : report.cdf_occupied)
            out << "1," << io_detail::format_double(v) << '\n';
        if (!out) throw std::runtime_error("write failed on " + a.cdf);
    }

    std::cout << "windows=" << run.index.size() << " thresholds=" << curve.points.size()
              << " auc=" << curve.auc << "\n";
    return 0;
}

struct CompareArgs {
    std::string in;
    std::string labels;
    std::string out;
    std::string config;
};

int run_compare(const CompareArgs& a) {
    const auto cfg = config_from(a.config);
    const auto data = read_csi(a.in);
    const auto run = score_file(data, cfg, true);
    const auto table = collapse_labels(read_labels(a.labels));

    std::vector<int> truth;
    truth.reserve(run.index.size());
    for (const auto idx : run.index) truth.push_back(labeled(table, idx));

    if (!a.out.empty()) {
        std::ofstream out(a.out, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + a.out);
        out << "window_index,label,phi_subcarrier,phi_baseline\n";
        for (std::size_t i = 0; i < run.index.size(); ++i)
            out << run.index[i] << ',' << truth[i] << ','
                << io_detail::format_double(run.overall[i]) << ','
                << io_detail::format_double(run.baseline[i]) << '\n';
        if (!out) throw std::runtime_error("write failed on " + a.out);
    }

    const auto sub = roc_sweep(run.overall, truth);
    const auto base = roc_sweep(run.baseline, truth);
    std::cout << "windows=" << run.index.size() << " auc_subcarrier=" << sub.auc
              << " auc_baseline=" << base.auc << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"In-cabin presence detection from Wi-Fi channel state"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand(
        "simulate", "Synthesize a CSI recording of a cabin scene");
    simulate->add_option("--scenario", sim.scenario, "empty, human, dog, or cat")
        ->default_val("empty");
    simulate->add_option("--out", sim.out, "CSI output path")->required();
    simulate->add_option("--labels", sim.labels, "also write per-window truth labels here");
    simulate->add_option("--config", sim.config, "detector config (sets window size for labels)");
    simulate->add_option("--duration", sim.duration_s, "seconds of recording")
        ->default_val(60.0);
    simulate->add_option("--rate", sim.rate_hz, "frames per second")->default_val(20.0);
    simulate->add_option("--seed", sim.seed, "scene and noise seed")->default_val(1);
    simulate->add_option("--streams", sim.streams, "antenna streams to record")
        ->default_val(1);
    simulate->add_option("--clutter", sim.clutter, "static reflection paths")
        ->default_val(10);
    simulate->add_option("--motile-rcs-scale", sim.motile_rcs_scale,
                         "shrink the occupant reflection by this factor")
        ->default_val(1.0);
    simulate->add_option("--noise-divisor", sim.noise_divisor,
                         "noise sigma = mean amplitude / divisor")
        ->default_val(preset::kNoiseDivisor);
    simulate->add_flag("--no-agc", sim.no_agc, "hold the receiver gain constant");
    simulate->add_flag("--binary", sim.binary, "write the binary file format");
    simulate->add_flag("--amplitude", sim.amplitude_only,
                       "store amplitudes instead of complex values");

    DetectArgs det;
    auto* detect = app.add_subcommand("detect", "Score a CSI recording window by window");
    detect->add_option("--in", det.in, "CSI recording")->required();
    detect->add_option("--out", det.out, "verdict CSV path")->required();
    detect->add_option("--config", det.config, "detector config file");

    EvaluateArgs eva;
    auto* evaluate_cmd =
        app.add_subcommand("evaluate", "Compare verdicts against truth labels");
    evaluate_cmd->add_option("--verdicts", eva.verdicts, "verdict CSV from detect")
        ->required();
    evaluate_cmd->add_option("--labels", eva.labels, "label CSV from simulate")->required();
    evaluate_cmd->add_option("--use", eva.use, "which verdict column: raw or smoothed")
        ->default_val("smoothed");

    RocArgs roc;
    auto* roc_cmd = app.add_subcommand(
        "roc", "Sweep the presence threshold over a labeled recording");
    roc_cmd->add_option("--in", roc.in, "CSI recording")->required();
    roc_cmd->add_option("--labels", roc.labels, "label CSV from simulate")->required();
    roc_cmd->add_option("--out", roc.out, "write eta,fpr,tpr rows here");
    roc_cmd->add_option("--cdf", roc.cdf, "write per-class sorted statistics here");
    roc_cmd->add_option("--config", roc.config, "detector config file");
    roc_cmd->add_option("--resolution", roc.resolution,
                        "evenly spaced thresholds; 0 sweeps every observed value")
        ->default_val(0);

    CompareArgs cmp;
    auto* compare = app.add_subcommand(
        "compare-baseline", "Score subcarrier and time statistics side by side");
    compare->add_option("--in", cmp.in, "CSI recording")->required();
    compare->add_option("--labels", cmp.labels, "label CSV from simulate")->required();
    compare->add_option("--out", cmp.out, "write per-window comparison rows here");
    compare->add_option("--config", cmp.config, "detector config file");

    try {
        app.parse(argc, argv);
        if (simulate->parsed()) return run_simulate(sim);
        if (detect->parsed()) return run_detect(det);
        if (evaluate_cmd->parsed()) return run_evaluate(eva);
        if (roc_cmd->parsed()) return run_roc(roc);
        if (compare->parsed()) return run_compare(cmp);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const rapidpd::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
