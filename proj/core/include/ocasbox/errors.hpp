#pragma once

#include <stdexcept>

namespace ocasbox {

/// A configured memory budget would be exceeded.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A persisted file (checkpoint, report) is malformed or inconsistent.
struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ocasbox
