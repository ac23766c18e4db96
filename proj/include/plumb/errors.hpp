#pragma once

#include <stdexcept>
#include <string>

namespace plumb {

// Contract violation in a library operation. The CLI maps this to exit code 2.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed external input (JSON schema, argument syntax). CLI exit code 1.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace plumb
