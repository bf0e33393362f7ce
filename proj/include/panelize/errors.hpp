#pragma once

#include <stdexcept>
#include <string>

namespace panelize {

// Base for everything thrown by this library. The CLI maps subclasses to
// exit codes, so new failure kinds should extend one of the classes below.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text (BDF decks, JSON files). line == 0 means unknown.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Mesh connectivity that violates what an operation requires: open loops,
// non-manifold edges, dangling curves, degenerate elements.
class TopologyError : public Error {
public:
    using Error::Error;
};

// Sizing and optimization failures (no feasible design, bad configuration).
class AnalysisError : public Error {
public:
    using Error::Error;
};

class RenderError : public Error {
public:
    using Error::Error;
};

} // namespace panelize
