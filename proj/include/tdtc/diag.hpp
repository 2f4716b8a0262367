#pragma once

#include <string>
#include <vector>

namespace tdtc {

// Source position, 1-based. `length` is the token length in columns.
struct Span {
    int line = 0;
    int column = 0;
    int length = 0;
};

struct Diagnostic {
    enum class Severity { Error, Warning };

    Severity severity = Severity::Error;
    std::string message;
    Span span;
    std::string file;

    bool is_error() const { return severity == Severity::Error; }
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.is_error()) return true;
    return false;
}

// "file:line:col: error: message" -- the shape editors and CI logs expect.
std::string format_diagnostic(const Diagnostic& d);

} // namespace tdtc
