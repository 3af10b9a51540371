#pragma once

#include "lola/ast.hpp"
#include "lola/engine.hpp"
#include "lola/value.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lola {

/// Parse one CSV cell against a declared type. Bools accept 0/1/true/false;
/// strings may be quoted (required when they contain commas or quotes).
/// Throws IoError naming the row, column, and expected type.
Value parse_cell(std::string_view cell, StreamType type, int64_t row,
                 std::string_view column);

std::string format_cell(const Value& v);

/// Split a CSV line, honoring quotes and trimming unquoted whitespace.
std::vector<std::string> split_csv_line(std::string_view line);

/// Read a whole log file: comma-separated, `#` comment lines skipped,
/// header row first. Every declared input column must be present; extra
/// columns are ignored with a warning on `warn`. Positions are assigned
/// from record order, starting at 0.
std::vector<Event> read_log(const std::filesystem::path& path,
                            const Specification& spec,
                            std::ostream* warn = nullptr);

/// Write a log file in the same format; doubles use the shortest
/// round-trip representation so re-reading is bit-exact.
void write_log(const std::filesystem::path& path,
               std::span<const std::string> header,
               std::span<const std::vector<Value>> rows);

/// Incremental reader over a line-delimited stream (file, stdin, socket):
/// header line first, then one record per line. Delivers up to `evalstep`
/// events per batch and flushes the partial batch at end-of-stream.
/// Malformed lines abort in strict mode; in lenient mode they substitute
/// the previous event's values (a diagnostic is printed either way).
class StreamReader {
public:
    StreamReader(std::istream& in, const Specification& spec, size_t evalstep,
                 bool lenient = false, std::ostream* diag = nullptr);

    /// Next batch of events; empty at end-of-stream.
    std::vector<Event> next_batch();
    bool done() const { return done_; }
    int64_t events_delivered() const { return next_position_; }

private:
    bool read_record(Event& out);

    std::istream& in_;
    const Specification& spec_;
    size_t evalstep_;
    bool lenient_;
    std::ostream* diag_;
    std::vector<int> column_of_input_; // input index -> header column
    size_t header_arity_ = 0;
    int64_t next_position_ = 0;
    int64_t line_number_ = 0;
    bool done_ = false;
    bool header_read_ = false;
    std::vector<Value> previous_;

    void read_header();
};

} // namespace lola
