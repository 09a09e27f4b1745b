#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sigvote {

/// Malformed input file. Carries the 1-based line (0 when not line-specific).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& file, std::size_t line, const std::string& what)
        : std::runtime_error(format(file, line, what)), file_(file), line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& file, std::size_t line, const std::string& what) {
        std::string out = file;
        if (line > 0) out += ":" + std::to_string(line);
        return out + ": " + what;
    }

    std::string file_;
    std::size_t line_;
};

/// A filter left no voter or no roll-call.
class EmptySelectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A pipeline stage failed; the message is prefixed with the stage name.
class StageError : public std::runtime_error {
public:
    StageError(const std::string& stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(stage) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace sigvote
