#pragma once

#include <stdexcept>
#include <string>

namespace precy {

/* All failures are loud.  Every error carries enough context to reproduce
   the offending call; nothing is ever silently truncated or coerced. */

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/* mixing scalars/elements from different coefficient rings */
struct RingMismatch : Error {
  explicit RingMismatch(const std::string& what) : Error("ring mismatch: " + what) {}
};

/* division by zero or non-invertible residue */
struct NotInvertible : Error {
  explicit NotInvertible(const std::string& what) : Error("not invertible: " + what) {}
};

/* an exact result would leave the t-truncation window */
struct TruncationOverflow : Error {
  explicit TruncationOverflow(const std::string& what)
      : Error("truncation overflow: " + what) {}
};

/* a requested computation exceeds the completeness window of its operands */
struct WindowExceeded : Error {
  explicit WindowExceeded(const std::string& what)
      : Error("window exceeded: " + what) {}
};

/* an operation that is only defined over Q (or over a field where some
   integer is invertible) was requested over an unsupported ring */
struct FieldUnsupported : Error {
  explicit FieldUnsupported(const std::string& what)
      : Error("field unsupported: " + what) {}
};

/* malformed input: incompatible profiles, degrees, arities, ... */
struct Malformed : Error {
  explicit Malformed(const std::string& what) : Error("malformed: " + what) {}
};

}  // namespace precy
