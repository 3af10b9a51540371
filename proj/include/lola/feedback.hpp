#pragma once

#include "lola/ast.hpp"
#include "lola/value.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lola {

enum class FeedbackEventKind : uint8_t {
    Trigger, TriggerOnce, TriggerChange, Snapshot, TagRow, RuntimeError,
};

const char* to_string(FeedbackEventKind kind);

struct FeedbackEvent {
    FeedbackEventKind kind = FeedbackEventKind::Trigger;
    int32_t decl_index = -1; // -1 for runtime diagnostics
    int64_t position = 0;
    std::optional<double> timestamp; // value of stream `time`, when declared
    std::string message;
    std::vector<std::pair<std::string, Value>> payload; // snapshot pairs / tag row
    std::string location; // tag sink path

    /// `position=<j> time=<t> kind=<kind> msg=<message>` plus snapshot pairs.
    std::string format() const;
};

/// Latches and edge-detection state, one slot per feedback declaration.
struct FeedbackState {
    std::vector<bool> fired_once;
    std::vector<std::optional<bool>> previous;

    explicit FeedbackState(size_t decl_count = 0)
        : fired_once(decl_count, false), previous(decl_count) {}

    size_t slots() const { return fired_once.size() + previous.size(); }
};

struct FeedbackContext {
    int64_t position = 0;
    std::optional<double> timestamp;
    // Value of a named stream at `position`.
    std::function<Value(std::string_view)> read;
    // Full (stream, value) valuation at `position`, declaration order.
    std::function<std::vector<std::pair<std::string, Value>>()> snapshot;
};

/// Apply the firing semantics for one finalized position. `conditions`
/// holds the evaluated boolean condition per declaration.
///   trigger        fires whenever the condition holds
///   trigger_once   fires the first time only (latched for the run)
///   trigger_change fires when the value differs from the previous position,
///                  never at position 0
///   snapshot       emits the full valuation, gated by its condition
///   tag/filter     emits one row of source values bound to target columns
std::vector<FeedbackEvent> evaluate_feedback(std::span<const FeedbackDecl> decls,
                                             const std::vector<bool>& conditions,
                                             const FeedbackContext& ctx,
                                             FeedbackState& state);

/// One derived log file. Header is written on open; rows are appended in
/// position order. Output uses the input log format, so sinks re-ingest.
class TagSink {
public:
    TagSink(std::filesystem::path path, std::vector<std::string> columns);

    void append(std::span<const std::pair<std::string, Value>> row);
    void flush();
    const std::filesystem::path& path() const { return path_; }
    int64_t rows_written() const { return rows_; }

private:
    std::filesystem::path path_;
    std::vector<std::string> columns_;
    std::ofstream out_;
    int64_t rows_ = 0;
};

} // namespace lola
