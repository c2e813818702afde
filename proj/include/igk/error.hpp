#ifndef IGK_ERROR_HPP
#define IGK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace igk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or unreadable dataset / centroid files. Carries the 1-based
/// line number when the problem is tied to a specific row (0 otherwise).
class ParseError : public Error {
public:
    ParseError(const std::string& path, std::size_t line, const std::string& what)
        : Error(path + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A configuration or argument outside its documented domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace igk

#endif  // IGK_ERROR_HPP
