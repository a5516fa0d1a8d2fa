#pragma once

#include <stdexcept>
#include <string>

namespace tft {

// Raised when an operation would exceed an explicit enumeration or
// precision guard. Guards fail loudly; nothing is silently truncated.
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed input files or strings (JSON, type text, growth files).
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Raised on filesystem read/write failures.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tft
