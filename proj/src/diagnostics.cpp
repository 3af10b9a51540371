#include "lola/diagnostics.hpp"

#include <sstream>

namespace lola {

std::string format_location(const std::string& file, SourcePos pos) {
    std::ostringstream os;
    if (!file.empty()) os << file << ":";
    os << pos.line << ":" << pos.column << ": ";
    return os.str();
}

} // namespace lola
