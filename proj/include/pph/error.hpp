#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace pph {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. `position()` is a byte offset into the parsed text.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error("parse error at " + std::to_string(position) + ": " + message), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A variable refers past the declared width of its block (or to a missing block).
class WidthError : public Error {
public:
    explicit WidthError(const std::string& message, std::optional<std::size_t> position = std::nullopt)
        : Error(position ? "width error at " + std::to_string(*position) + ": " + message
                         : "width error: " + message),
          position_(position) {}
    std::optional<std::size_t> position() const noexcept { return position_; }

private:
    std::optional<std::size_t> position_;
};

class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& m) : Error("shape error: " + m) {}
};

class IndexError : public Error {
public:
    explicit IndexError(const std::string& m) : Error("index error: " + m) {}
};

/// Exhaustive enumeration would exceed the configured assignment cap.
class CapExceeded : public Error {
public:
    explicit CapExceeded(const std::string& m) : Error("cap exceeded: " + m) {}
};

class LevelMismatch : public Error {
public:
    explicit LevelMismatch(const std::string& m) : Error("level mismatch: " + m) {}
};

class UnknownRule : public Error {
public:
    explicit UnknownRule(const std::string& name) : Error("unknown rule: " + name) {}
};

class TypeMismatch : public Error {
public:
    explicit TypeMismatch(const std::string& m) : Error("type mismatch: " + m) {}
};

class PathCapExceeded : public Error {
public:
    explicit PathCapExceeded(const std::string& m) : Error("path cap exceeded: " + m) {}
};

class IncompleteRegistry : public Error {
public:
    explicit IncompleteRegistry(const std::string& m) : Error("incomplete registry: " + m) {}
};

} // namespace pph
