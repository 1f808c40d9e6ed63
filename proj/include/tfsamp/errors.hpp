#pragma once

#include <stdexcept>

namespace tfsamp {

// Requested operation exceeds a validated capability (order caps,
// unbounded scans without a declared window, unsupported window kinds).
class capability_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Region expression text failed to parse; message carries the byte offset.
class region_parse_error : public std::runtime_error {
public:
    region_parse_error(const std::string& what, std::size_t position)
        : std::runtime_error(what), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

}  // namespace tfsamp
