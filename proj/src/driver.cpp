#include "lola/driver.hpp"

#include "lola/log_io.hpp"
#include "lola/net.hpp"
#include "lola/parser.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

namespace lola {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open specification file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string sink_path(const std::string& location, const RunConfig& config) {
    std::filesystem::path p(location);
    if (p.is_relative() && !config.out_dir.empty())
        p = std::filesystem::path(config.out_dir) / p;
    return p.string();
}

std::string fire_label(const FeedbackDecl& decl) {
    switch (decl.kind) {
        case FeedbackKind::Tag:
        case FeedbackKind::Filter:
            return std::string(to_string(decl.kind)) + " " +
                   escape_string(decl.location);
        default:
            return std::string(to_string(decl.kind)) + " " +
                   escape_string(decl.message);
    }
}

/// Owns the sinks and the notification streams for one run.
class FeedbackRouter {
public:
    FeedbackRouter(const Specification& spec, const RunConfig& config,
                   std::ostream& notify, std::ostream& diag)
        : notify_(notify), diag_(diag) {
        fire_counts_.assign(spec.feedback.size(), 0);
        std::map<std::string, int32_t> claimed;
        for (size_t k = 0; k < spec.feedback.size(); ++k) {
            const FeedbackDecl& decl = spec.feedback[k];
            if (decl.kind != FeedbackKind::Tag && decl.kind != FeedbackKind::Filter)
                continue;
            std::string path = sink_path(decl.location, config);
            auto [it, fresh] = claimed.emplace(path, static_cast<int32_t>(k));
            if (!fresh)
                throw SpecError("tag sinks collide: declarations " +
                                std::to_string(it->second) + " and " + std::to_string(k) +
                                " both write '" + path + "'");
            sinks_.emplace(decl.location,
                           std::make_unique<TagSink>(path, decl.columns));
        }
    }

    void route(const StepOutput& out) {
        for (const auto& ev : out.feedback) {
            switch (ev.kind) {
                case FeedbackEventKind::RuntimeError:
                    diag_ << "diagnostic: " << ev.format() << "\n";
                    break;
                case FeedbackEventKind::TagRow:
                    sinks_.at(ev.location)->append(ev.payload);
                    fire_counts_[static_cast<size_t>(ev.decl_index)]++;
                    break;
                default:
                    notify_ << ev.format() << "\n";
                    fire_counts_[static_cast<size_t>(ev.decl_index)]++;
            }
        }
    }

    void flush() {
        for (auto& [loc, sink] : sinks_) sink->flush();
    }

    const std::vector<int64_t>& fire_counts() const { return fire_counts_; }

private:
    std::ostream& notify_;
    std::ostream& diag_;
    std::map<std::string, std::unique_ptr<TagSink>> sinks_;
    std::vector<int64_t> fire_counts_;
};

/// First/last value of the `time` stream, for the measured input frequency.
class TimeTracker {
public:
    TimeTracker(const Specification& spec) {
        for (size_t k = 0; k < spec.inputs.size(); ++k)
            if (spec.inputs[k].name == "time" &&
                spec.inputs[k].type == StreamType::Double)
                input_index_ = static_cast<int>(k);
        for (size_t k = 0; k < spec.outputs.size(); ++k)
            if (spec.outputs[k].name == "time" &&
                spec.outputs[k].type == StreamType::Double)
                output_index_ = static_cast<int>(k);
    }

    void observe(const Event& event, const StepOutput& out) {
        if (input_index_ >= 0) {
            note(std::get<double>(event.inputs[static_cast<size_t>(input_index_)]));
            return;
        }
        if (output_index_ < 0) return;
        for (const auto& rv : out.resolved)
            if (rv.output_index == output_index_) note(std::get<double>(rv.value));
    }

    void observe_tail(const StepOutput& out) {
        if (output_index_ < 0 || input_index_ >= 0) return;
        for (const auto& rv : out.resolved)
            if (rv.output_index == output_index_) note(std::get<double>(rv.value));
    }

    std::optional<double> average_frequency(int64_t events) const {
        if (!seen_ || events < 2 || last_ <= first_) return std::nullopt;
        return static_cast<double>(events - 1) / (last_ - first_);
    }

private:
    void note(double t) {
        if (!seen_) {
            first_ = t;
            seen_ = true;
        }
        last_ = t;
    }

    int input_index_ = -1;
    int output_index_ = -1;
    bool seen_ = false;
    double first_ = 0.0;
    double last_ = 0.0;
};

void fill_fire_counts(RunReport& report, const Specification& spec,
                      const FeedbackRouter& router) {
    for (size_t k = 0; k < spec.feedback.size(); ++k)
        report.fire_counts.emplace_back(fire_label(spec.feedback[k]),
                                        router.fire_counts()[k]);
}

struct EvaluationRun {
    Specification spec;
    AnalysisResult analysis;
};

EvaluationRun prepare(const RunConfig& config) {
    EvaluationRun run;
    run.spec = load_specs(config);
    run.analysis = analyze(run.spec);
    return run;
}

} // namespace

Specification load_specs(const RunConfig& config) {
    if (config.spec_paths.empty()) throw SpecError("no specification files given");
    std::vector<Specification> parsed;
    for (const auto& path : config.spec_paths) {
        std::string text = read_file(path);
        parsed.push_back(desugar(parse_specification(
            text, std::filesystem::path(path).filename().string())));
    }
    return merge_specifications(std::move(parsed));
}

RunReport run_check(const RunConfig& config, std::ostream& out) {
    EvaluationRun run = prepare(config);
    const AnalysisResult& a = run.analysis;

    RunReport report;
    report.well_formed = a.well_formed.ok;
    report.efficiently_monitorable = a.efficiently_monitorable.ok;

    out << "specification            : " << run.spec.source_file << "\n";
    out << "streams                  : " << run.spec.inputs.size() << " input, "
        << run.spec.outputs.size() << " output, " << run.spec.feedback.size()
        << " feedback\n";
    out << "well-formed              : " << (a.well_formed.ok ? "yes" : "no");
    if (!a.well_formed.ok) out << "  [" << a.well_formed.witness << "]";
    out << "\n";
    out << "efficiently monitorable  : "
        << (a.efficiently_monitorable.ok ? "yes" : "no");
    if (a.well_formed.ok && !a.efficiently_monitorable.ok)
        out << "  [" << a.efficiently_monitorable.witness << "]";
    out << "\n";

    out << "types:\n";
    for (size_t k = 0; k < a.graph.vertices.size(); ++k) {
        const std::string& name = a.graph.vertices[k];
        out << "  " << name << " : " << to_string(a.type_table.at(name)) << " ("
            << (k < run.spec.inputs.size() ? "input" : "output") << ")\n";
    }
    out << "buffers:\n";
    for (const auto& name : a.graph.vertices) {
        const BufferBounds& b = a.buffer_bounds.at(name);
        out << "  " << name << " : past=" << b.past_depth
            << " future=" << b.future_depth;
        if (!b.pinned.empty()) {
            out << " pinned=[";
            for (size_t k = 0; k < b.pinned.size(); ++k)
                out << (k ? "," : "") << b.pinned[k];
            out << "]";
        }
        out << "\n";
    }
    out << "evaluation order         : ";
    for (size_t k = 0; k < a.evaluation_order.size(); ++k)
        out << (k ? ", " : "") << a.evaluation_order[k];
    out << "\n";
    return report;
}

namespace {

RunReport run_events(const RunConfig& config, EvaluationRun& run,
                     std::ostream& notify, std::ostream& diag, bool online) {
    const AnalysisResult& a = run.analysis;
    RunReport report;
    report.well_formed = a.well_formed.ok;
    report.efficiently_monitorable = a.efficiently_monitorable.ok;
    if (!a.well_formed.ok)
        throw SpecError("specification is not well-formed: " + a.well_formed.witness);
    if (online && !a.efficiently_monitorable.ok)
        throw SpecError("online monitoring requires the efficiently monitorable "
                        "fragment: " + a.efficiently_monitorable.witness);

    MonitorOptions opts;
    opts.bounded_memory = a.efficiently_monitorable.ok;
    Monitor monitor(run.spec, a, opts);
    FeedbackRouter router(run.spec, config, notify, diag);
    TimeTracker time_tracker(run.spec);

    auto t0 = std::chrono::steady_clock::now();
    int64_t events = 0;

    auto pump = [&](const Event& ev) {
        StepOutput out = monitor.step(ev);
        time_tracker.observe(ev, out);
        router.route(out);
        ++events;
        report.peak_state_slots =
            std::max(report.peak_state_slots, monitor.state_size_slots());
    };

    if (online) {
        std::unique_ptr<SocketSource> socket;
        std::unique_ptr<std::ifstream> file;
        std::istream* in = nullptr;
        if (!config.listen.empty()) {
            socket = std::make_unique<SocketSource>(config.listen);
            in = &socket->stream();
        } else if (config.input == "-") {
            in = &std::cin;
        } else {
            file = std::make_unique<std::ifstream>(config.input);
            if (!*file) throw IoError("cannot open input '" + config.input + "'");
            in = file.get();
        }
        StreamReader reader(*in, run.spec, static_cast<size_t>(config.evalstep),
                            config.lenient, &diag);
        for (;;) {
            std::vector<Event> batch = reader.next_batch();
            if (batch.empty()) break;
            for (const Event& ev : batch) pump(ev);
        }
    } else {
        std::vector<Event> events_vec = read_log(config.input, run.spec, &diag);
        for (const Event& ev : events_vec) pump(ev);
    }

    StepOutput tail = monitor.finalize();
    time_tracker.observe_tail(tail);
    router.route(tail);
    router.flush();
    report.peak_state_slots =
        std::max(report.peak_state_slots, monitor.state_size_slots());

    auto t1 = std::chrono::steady_clock::now();
    report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    report.events = events;
    report.events_per_second =
        report.wall_seconds > 0 ? static_cast<double>(events) / report.wall_seconds : 0;
    report.runtime_errors = monitor.runtime_errors();
    if (online) report.avg_input_frequency_hz = time_tracker.average_frequency(events);
    fill_fire_counts(report, run.spec, router);

    print_report(report, config, notify);
    if (!config.json_report.empty())
        write_json_report(report, config, config.json_report);
    return report;
}

} // namespace

RunReport run_offline(const RunConfig& config, std::ostream& notify,
                      std::ostream& diag) {
    EvaluationRun run = prepare(config);
    return run_events(config, run, notify, diag, /*online=*/false);
}

RunReport run_online(const RunConfig& config, std::ostream& notify,
                     std::ostream& diag) {
    EvaluationRun run = prepare(config);
    return run_events(config, run, notify, diag, /*online=*/true);
}

void print_report(const RunReport& report, const RunConfig& config,
                  std::ostream& out) {
    out << "events processed : " << report.events << "\n";
    if (!report.fire_counts.empty()) {
        out << "feedback:\n";
        for (const auto& [label, count] : report.fire_counts)
            out << "  " << label << " : " << count << "\n";
    }
    out << "runtime errors   : " << report.runtime_errors << "\n";
    if (report.avg_input_frequency_hz)
        out << "avg input freq   : " << format_double(*report.avg_input_frequency_hz)
            << " Hz\n";
    if (config.stats) {
        std::ostringstream wall;
        wall.precision(3);
        wall << std::fixed << report.wall_seconds;
        out << "wall time        : " << wall.str() << " s\n";
        out << "throughput       : " << static_cast<int64_t>(report.events_per_second)
            << " events/s\n";
        out << "peak state       : " << report.peak_state_slots << " slots\n";
    }
}

void write_json_report(const RunReport& report, const RunConfig& config,
                       const std::string& path) {
    nlohmann::json j;
    j["mode"] = config.mode == RunMode::Check ? "check"
                : config.mode == RunMode::Offline ? "offline"
                                                  : "online";
    j["specs"] = config.spec_paths;
    j["events"] = report.events;
    j["wall_seconds"] = report.wall_seconds;
    j["events_per_second"] = report.events_per_second;
    j["peak_state_slots"] = report.peak_state_slots;
    j["runtime_errors"] = report.runtime_errors;
    j["well_formed"] = report.well_formed;
    j["efficiently_monitorable"] = report.efficiently_monitorable;
    if (report.avg_input_frequency_hz)
        j["avg_input_frequency_hz"] = *report.avg_input_frequency_hz;
    nlohmann::json feedback = nlohmann::json::array();
    for (const auto& [label, count] : report.fire_counts)
        feedback.push_back({{"declaration", label}, {"count", count}});
    j["feedback"] = feedback;

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write JSON report '" + path + "'");
    out << j.dump(2) << "\n";
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"stream runtime monitor for Lola specifications"};
    app.require_subcommand(1);

    RunConfig config;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--spec", config.spec_paths,
                        "specification file (repeatable)")
            ->required();
    };
    auto add_run_options = [&](CLI::App* sub) {
        sub->add_option("--out-dir", config.out_dir,
                        "base directory for relative tag sink paths");
        sub->add_flag("--stats", config.stats,
                      "report wall time, throughput, and peak state size");
        sub->add_option("--json-report", config.json_report,
                        "write a machine-readable report to this path");
    };

    CLI::App* check = app.add_subcommand("check", "static verdicts only");
    add_common(check);

    CLI::App* offline = app.add_subcommand("offline", "evaluate a whole log file");
    add_common(offline);
    offline->add_option("--input", config.input, "log file to evaluate")->required();
    add_run_options(offline);

    CLI::App* online =
        app.add_subcommand("online", "evaluate an incremental stream");
    add_common(online);
    online->add_option("--input", config.input,
                       "stream source: a file path or '-' for stdin");
    online->add_option("--listen", config.listen,
                       "accept one connection on host:port and read records from it");
    online->add_option("--evalstep", config.evalstep,
                       "records buffered per evaluation burst")
        ->check(CLI::PositiveNumber);
    online->add_flag("--lenient", config.lenient,
                     "substitute previous values for malformed records");
    add_run_options(online);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (check->parsed()) {
            config.mode = RunMode::Check;
            RunReport report = run_check(config, out);
            return report.well_formed ? kExitOk : kExitSpecError;
        }
        if (offline->parsed()) {
            config.mode = RunMode::Offline;
            RunReport report = run_offline(config, out, err);
            return report.runtime_errors > 0 ? kExitRuntimeError : kExitOk;
        }
        config.mode = RunMode::Online;
        if (config.listen.empty() == config.input.empty()) {
            err << "error: online mode needs exactly one of --input or --listen\n";
            return kExitIoError;
        }
        RunReport report = run_online(config, out, err);
        return report.runtime_errors > 0 ? kExitRuntimeError : kExitOk;
    } catch (const SpecError& e) {
        err << "error: " << e.what() << "\n";
        return kExitSpecError;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIoError;
    }
}

} // namespace lola
