#include "lola/feedback.hpp"

#include "lola/diagnostics.hpp"
#include "lola/log_io.hpp"

#include <sstream>

namespace lola {

const char* to_string(FeedbackEventKind kind) {
    switch (kind) {
        case FeedbackEventKind::Trigger: return "trigger";
        case FeedbackEventKind::TriggerOnce: return "trigger_once";
        case FeedbackEventKind::TriggerChange: return "trigger_change";
        case FeedbackEventKind::Snapshot: return "snapshot";
        case FeedbackEventKind::TagRow: return "tag";
        case FeedbackEventKind::RuntimeError: return "runtime_error";
    }
    return "?";
}

std::string FeedbackEvent::format() const {
    std::ostringstream os;
    os << "position=" << position;
    if (timestamp) os << " time=" << format_double(*timestamp);
    os << " kind=" << to_string(kind) << " msg=" << escape_string(message);
    if (kind == FeedbackEventKind::Snapshot)
        for (const auto& [name, value] : payload)
            os << " " << name << "=" << format_value(value);
    return os.str();
}

namespace {

FeedbackEventKind event_kind(FeedbackKind kind) {
    switch (kind) {
        case FeedbackKind::Trigger: return FeedbackEventKind::Trigger;
        case FeedbackKind::TriggerOnce: return FeedbackEventKind::TriggerOnce;
        case FeedbackKind::TriggerChange: return FeedbackEventKind::TriggerChange;
        case FeedbackKind::Snapshot: return FeedbackEventKind::Snapshot;
        default: return FeedbackEventKind::TagRow;
    }
}

} // namespace

std::vector<FeedbackEvent> evaluate_feedback(std::span<const FeedbackDecl> decls,
                                             const std::vector<bool>& conditions,
                                             const FeedbackContext& ctx,
                                             FeedbackState& state) {
    std::vector<FeedbackEvent> events;
    for (size_t k = 0; k < decls.size(); ++k) {
        const FeedbackDecl& decl = decls[k];
        bool cond = conditions[k];
        bool fire = false;
        switch (decl.kind) {
            case FeedbackKind::Trigger:
            case FeedbackKind::Snapshot:
            case FeedbackKind::Tag:
            case FeedbackKind::Filter:
                fire = cond;
                break;
            case FeedbackKind::TriggerOnce:
                if (cond && !state.fired_once[k]) {
                    state.fired_once[k] = true;
                    fire = true;
                }
                break;
            case FeedbackKind::TriggerChange:
                // never at position 0: there is no previous value to differ from
                fire = state.previous[k].has_value() && *state.previous[k] != cond;
                state.previous[k] = cond;
                break;
        }
        if (!fire) continue;

        FeedbackEvent ev;
        ev.kind = event_kind(decl.kind);
        ev.decl_index = static_cast<int32_t>(k);
        ev.position = ctx.position;
        ev.timestamp = ctx.timestamp;
        ev.message = decl.message;
        if (decl.kind == FeedbackKind::Snapshot) {
            ev.payload = ctx.snapshot();
        } else if (decl.kind == FeedbackKind::Tag || decl.kind == FeedbackKind::Filter) {
            ev.location = decl.location;
            for (size_t c = 0; c < decl.sources.size(); ++c)
                ev.payload.emplace_back(decl.columns[c], ctx.read(decl.sources[c]));
        }
        events.push_back(std::move(ev));
    }
    return events;
}

TagSink::TagSink(std::filesystem::path path, std::vector<std::string> columns)
    : path_(std::move(path)), columns_(std::move(columns)) {
    if (path_.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path_.parent_path(), ec);
    }
    out_.open(path_, std::ios::trunc);
    if (!out_) throw IoError("cannot open tag sink '" + path_.string() + "'");
    for (size_t k = 0; k < columns_.size(); ++k)
        out_ << (k ? "," : "") << columns_[k];
    out_ << "\n";
    if (!out_) throw IoError("cannot write tag sink '" + path_.string() + "'");
}

void TagSink::append(std::span<const std::pair<std::string, Value>> row) {
    for (size_t k = 0; k < row.size(); ++k)
        out_ << (k ? "," : "") << format_cell(row[k].second);
    out_ << "\n";
    if (!out_) throw IoError("cannot write tag sink '" + path_.string() + "'");
    ++rows_;
}

void TagSink::flush() {
    out_.flush();
    if (!out_) throw IoError("cannot flush tag sink '" + path_.string() + "'");
}

} // namespace lola
