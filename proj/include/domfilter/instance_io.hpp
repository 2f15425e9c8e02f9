#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "domfilter/network.hpp"

namespace domfilter {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

// Line-oriented instance format:
//   vars <n>
//   dom <i> <v1> <v2> ...          (n lines, i = 0..n-1 in order)
//   con <i> <j> all | none | allow a:b ... | forbid a:b ...
// '#' starts a comment. Unknown directives are errors.
ConstraintNetwork parse_instance(std::istream& in);
ConstraintNetwork parse_instance_string(std::string_view text);
ConstraintNetwork read_instance_file(const std::string& path);

// Canonical text: constraints ascending, each written with whichever of
// all/none/allow/forbid is shortest (allow on ties).
void write_instance(const ConstraintNetwork& net, std::ostream& out);
std::string instance_to_string(const ConstraintNetwork& net);

}  // namespace domfilter
