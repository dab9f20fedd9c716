#pragma once

#include <stdexcept>
#include <string>

namespace rainbow {

/// Malformed external input: bad element ids, unparsable files, non-basis
/// colour classes. Maps to CLI exit code 2.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A caller violated a documented precondition.
struct contract_error : std::logic_error {
  explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

/// An internally asserted counting bound or structural guarantee failed.
/// These guarantees are exact consequences of the independence axioms, so a
/// violation always indicates an implementation bug, never bad input.
struct theorem_violation : std::logic_error {
  explicit theorem_violation(const std::string& what) : std::logic_error(what) {}
};

/// A cascade certificate was computed against an older family snapshot.
struct stale_certificate : std::logic_error {
  explicit stale_certificate(const std::string& what) : std::logic_error(what) {}
};

}  // namespace rainbow
