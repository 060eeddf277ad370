// errors.hpp
// Error taxonomy shared by the library and the CLI exit-code table.

#ifndef CQ_ERRORS_HPP
#define CQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cq {

// Malformed input file: syntax or file-level semantic problems
// (duplicate arrow name, loop declared, unknown vertex, bad relation path).
class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, int line = 0, int col = 0)
        : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) +
                                            ", col " + std::to_string(col) + ")"
                                      : msg),
          line_(line), col_(col) {}

    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

// A configured cap was exceeded before the answer could be decided
// (mutation-class bounds, nilpotency cap, closure search caps).
class indeterminate_error : public std::runtime_error {
public:
    explicit indeterminate_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally well-formed input that a semantic precondition rejects
// (2-cycles where forbidden, not finite cluster type, >2 shortest paths,
// failed tilted-presentation validation, unknown vertex id at the API level).
class invalid_input : public std::runtime_error {
public:
    explicit invalid_input(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace cq

#endif
