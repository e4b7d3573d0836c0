#pragma once

#include <stdexcept>
#include <string>

namespace pebblechain {

struct error : std::runtime_error {
  explicit error(const std::string &msg) : std::runtime_error(msg) {}
};

// lookup of a provider name that was never registered
struct unknown_provider_error : error {
  using error::error;
};

// violated precondition of an operation (bad argument, width mismatch, ...)
struct contract_error : error {
  using error::error;
};

// operation not valid in the current phase (finalize twice, grow after finalize, ...)
struct state_error : error {
  using error::error;
};

// traversal stepped past the last element
struct exhausted_error : error {
  using error::error;
};

// malformed snapshot, ledger or disclosure file
struct parse_error : error {
  using error::error;
};

// custody policy violation (fewer than three providers without override)
struct policy_error : error {
  using error::error;
};

}  // namespace pebblechain
