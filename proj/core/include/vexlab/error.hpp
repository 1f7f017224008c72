#pragma once

#include <stdexcept>
#include <string>

namespace vexlab {

// Every failure surfaced by the library is a vexlab::Error carrying a short,
// stable message (e.g. "empty ball", "norm bracket failure").
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vexlab
