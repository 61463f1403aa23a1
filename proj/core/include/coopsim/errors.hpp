#pragma once

#include <stdexcept>
#include <string>

namespace coopsim {

class invalid_argument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class empty_graph_error : public std::runtime_error {
 public:
  empty_graph_error() : std::runtime_error("graph has no vertices") {}
};

class illegal_state : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class unsupported_topology : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the brute-force oracles when an instance exceeds the enumeration
// bound; they never fall back to sampling.
class enumeration_bound_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A table-law DBPC step whose pair count passed the explosion guard with no
// survival threshold to absorb it.
class explosion_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class invariant_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace coopsim
