#pragma once

#include <stdexcept>
#include <string>

namespace ssbh {

/// Thrown when a requested bound or key length cannot be met by any
/// admissible parameter choice.
class infeasible_error : public std::runtime_error {
public:
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ssbh
