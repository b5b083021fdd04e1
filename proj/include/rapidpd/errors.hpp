#pragma once

#include <stdexcept>
#include <string>

namespace rapidpd {

// Broken invariant inside the pipeline, as opposed to bad input. The CLI
// maps this to its own exit code so callers can tell the two apart.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace rapidpd
