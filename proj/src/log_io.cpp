#include "lola/log_io.hpp"

#include "lola/diagnostics.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

namespace lola {

namespace {

std::string_view trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void cell_error(std::string_view cell, StreamType type, int64_t row,
                             std::string_view column) {
    throw IoError("row " + std::to_string(row) + ", column '" + std::string(column) +
                  "': cannot parse '" + std::string(cell) + "' as " + to_string(type));
}

} // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::string current;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '\\' && i + 1 < line.size()) {
                char esc = line[++i];
                switch (esc) {
                    case 'n': current += '\n'; break;
                    case 't': current += '\t'; break;
                    case 'r': current += '\r'; break;
                    default: current += esc;
                }
            } else if (c == '"') {
                quoted = false;
                current += '"'; // keep the closing quote; parse_cell strips it
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
            current += '"';
        } else if (c == ',') {
            cells.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    cells.push_back(std::move(current));
    return cells;
}

Value parse_cell(std::string_view cell, StreamType type, int64_t row,
                 std::string_view column) {
    std::string_view t = trim(cell);
    switch (type) {
        case StreamType::Bool: {
            if (t == "0" || t == "false") return Value{false};
            if (t == "1" || t == "true") return Value{true};
            cell_error(cell, type, row, column);
        }
        case StreamType::Int: {
            int64_t v = 0;
            auto res = std::from_chars(t.data(), t.data() + t.size(), v);
            if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
                cell_error(cell, type, row, column);
            return Value{v};
        }
        case StreamType::Double: {
            double v = 0.0;
            auto res = std::from_chars(t.data(), t.data() + t.size(), v);
            if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
                cell_error(cell, type, row, column);
            return Value{v};
        }
        case StreamType::String: {
            if (t.size() >= 2 && t.front() == '"' && t.back() == '"')
                return Value{std::string(t.substr(1, t.size() - 2))};
            return Value{std::string(t)}; // bare strings allowed when comma-free
        }
    }
    cell_error(cell, type, row, column);
}

std::string format_cell(const Value& v) { return format_value(v); }

namespace {

struct ColumnMap {
    std::vector<int> column_of_input; // input index -> column index
    size_t arity = 0;
};

ColumnMap map_columns(const std::vector<std::string>& header,
                      const Specification& spec, std::ostream* warn,
                      const std::string& origin) {
    ColumnMap map;
    map.arity = header.size();
    map.column_of_input.assign(spec.inputs.size(), -1);
    std::vector<bool> used(header.size(), false);
    std::vector<std::string> missing;
    for (size_t k = 0; k < spec.inputs.size(); ++k) {
        bool found = false;
        for (size_t c = 0; c < header.size(); ++c) {
            if (header[c] == spec.inputs[k].name) {
                map.column_of_input[k] = static_cast<int>(c);
                used[c] = true;
                found = true;
                break;
            }
        }
        if (!found) missing.push_back(spec.inputs[k].name);
    }
    if (!missing.empty()) {
        std::string list;
        for (size_t k = 0; k < missing.size(); ++k)
            list += (k ? ", " : "") + missing[k];
        throw IoError(origin + ": missing declared input column(s): " + list);
    }
    if (warn) {
        for (size_t c = 0; c < header.size(); ++c)
            if (!used[c])
                *warn << "warning: " << origin << ": column '" << header[c]
                      << "' is not a declared input; ignored\n";
    }
    return map;
}

bool next_content_line(std::istream& in, std::string& line, int64_t& line_number) {
    while (std::getline(in, line)) {
        ++line_number;
        std::string_view t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        return true;
    }
    return false;
}

} // namespace

std::vector<Event> read_log(const std::filesystem::path& path,
                            const Specification& spec, std::ostream* warn) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open log file '" + path.string() + "'");

    std::string line;
    int64_t line_number = 0;
    if (!next_content_line(in, line, line_number))
        throw IoError("log file '" + path.string() + "' has no header row");
    std::vector<std::string> header;
    for (auto& cell : split_csv_line(line)) header.emplace_back(trim(cell));
    ColumnMap map = map_columns(header, spec, warn, path.string());

    std::vector<Event> events;
    int64_t position = 0;
    while (next_content_line(in, line, line_number)) {
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != map.arity)
            throw IoError(path.string() + ": row " + std::to_string(position) +
                          " has " + std::to_string(cells.size()) + " cells, header has " +
                          std::to_string(map.arity));
        Event ev;
        ev.position = position;
        ev.inputs.reserve(spec.inputs.size());
        for (size_t k = 0; k < spec.inputs.size(); ++k)
            ev.inputs.push_back(
                parse_cell(cells[static_cast<size_t>(map.column_of_input[k])],
                           spec.inputs[k].type, position, spec.inputs[k].name));
        events.push_back(std::move(ev));
        ++position;
    }
    return events;
}

void write_log(const std::filesystem::path& path,
               std::span<const std::string> header,
               std::span<const std::vector<Value>> rows) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    for (size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << "\n";
    for (const auto& row : rows) {
        for (size_t k = 0; k < row.size(); ++k)
            out << (k ? "," : "") << format_cell(row[k]);
        out << "\n";
    }
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

// ── StreamReader ────────────────────────────────────────────────────────

StreamReader::StreamReader(std::istream& in, const Specification& spec,
                           size_t evalstep, bool lenient, std::ostream* diag)
    : in_(in), spec_(spec), evalstep_(evalstep == 0 ? 1 : evalstep),
      lenient_(lenient), diag_(diag) {}

void StreamReader::read_header() {
    std::string line;
    if (!next_content_line(in_, line, line_number_)) {
        done_ = true;
        header_read_ = true;
        return;
    }
    std::vector<std::string> header;
    for (auto& cell : split_csv_line(line)) header.emplace_back(trim(cell));
    ColumnMap map = map_columns(header, spec_, diag_, "stream source");
    column_of_input_ = std::move(map.column_of_input);
    header_arity_ = map.arity;
    header_read_ = true;
}

bool StreamReader::read_record(Event& out) {
    std::string line;
    for (;;) {
        if (!next_content_line(in_, line, line_number_)) {
            done_ = true;
            return false;
        }
        std::vector<std::string> cells = split_csv_line(line);
        bool truncated = in_.eof(); // a disconnect can chop the last line
        try {
            if (cells.size() != header_arity_)
                throw IoError("line " + std::to_string(line_number_) + " has " +
                              std::to_string(cells.size()) + " cells, header has " +
                              std::to_string(header_arity_));
            out.position = next_position_;
            out.inputs.clear();
            for (size_t k = 0; k < spec_.inputs.size(); ++k)
                out.inputs.push_back(
                    parse_cell(cells[static_cast<size_t>(column_of_input_[k])],
                               spec_.inputs[k].type, next_position_,
                               spec_.inputs[k].name));
            previous_ = out.inputs;
            ++next_position_;
            return true;
        } catch (const IoError& e) {
            if (truncated) {
                if (diag_)
                    *diag_ << "diagnostic: truncated final record dropped (" << e.what()
                           << ")\n";
                done_ = true;
                return false;
            }
            if (!lenient_) throw;
            if (diag_)
                *diag_ << "diagnostic: malformed record at line " << line_number_
                       << " (" << e.what() << ")";
            if (previous_.empty()) {
                if (diag_) *diag_ << "; no previous event to substitute, aborting\n";
                throw;
            }
            if (diag_) *diag_ << "; substituting previous values\n";
            out.position = next_position_;
            out.inputs = previous_;
            ++next_position_;
            return true;
        }
    }
}

std::vector<Event> StreamReader::next_batch() {
    if (!header_read_) read_header();
    std::vector<Event> batch;
    while (!done_ && batch.size() < evalstep_) {
        Event ev;
        if (!read_record(ev)) break;
        batch.push_back(std::move(ev));
    }
    return batch;
}

} // namespace lola
