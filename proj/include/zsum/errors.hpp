#pragma once

#include <stdexcept>
#include <string>

namespace zsum {

// Input text that does not match one of the sequence grammars.
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// A computation contradicted a guarantee the library relies on. Seeing one
// of these means a bug in the library, not bad input.
class invariant_violation : public std::logic_error {
 public:
  explicit invariant_violation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace zsum
