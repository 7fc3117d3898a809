#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace normcheck {

enum class Severity { error, warning };

// A line/column of 0 means the diagnostic has no source position (e.g. a
// model built in memory rather than parsed).
struct Diagnostic {
    Severity severity = Severity::error;
    std::string message;
    int line = 0;
    int column = 0;
    std::string declaration;

    bool is_error() const { return severity == Severity::error; }
};

inline bool has_errors(const std::vector<Diagnostic>& diags)
{
    for (const auto& d : diags)
        if (d.is_error())
            return true;
    return false;
}

std::string to_string(const Diagnostic& d);

template <typename T>
struct ParseResult {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;   // warnings may accompany a value

    bool ok() const { return value.has_value(); }
};

// Internal inconsistency that well-formedness checking should have ruled out.
class DefectError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A configured node/step budget was exhausted.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace normcheck
