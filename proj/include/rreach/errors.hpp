#pragma once

#include <stdexcept>
#include <string>

namespace rreach {

// An operation would exceed a configured enumeration/size cap (see config.hpp).
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed object failed a structural cross-check that must hold by
// construction (e.g. a transition matrix disagreeing with a closed form,
// or a realizability count contradicting the window criterion).
class InternalCheckError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rreach
