#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "popmatch/instance.hpp"

namespace popmatch {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line, int column)
        : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(column) +
                             ": " + message),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Instance file format (one directive per line, `#` starts a comment):
///   students: <name> <name> ...
///   courses: <name> <name> ...
///   cap: <name> <positive int>        (optional; default 1)
///   pref: <name> <neighbor> ...       (strict order, most preferred first)
/// Vertex and preference order are preserved exactly as written.
InstanceData parse_instance_data(std::string_view text);

/// Parse + validate + freeze. Throws ParseError or ValidationError.
Instance parse_instance(std::string_view text);

Instance load_instance_file(const std::string& path);

std::string serialize_instance(const Instance& inst);

/// Matching file format: one `<student> <course>` pair per line.
Matching parse_matching(const Instance& inst, std::string_view text);
Matching load_matching_file(const Instance& inst, const std::string& path);
std::string serialize_matching(const Instance& inst, const Matching& m);

}  // namespace popmatch
