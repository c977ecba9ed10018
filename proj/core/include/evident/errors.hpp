#pragma once

#include <stdexcept>
#include <string>

namespace evident {

/// Base class for all errors raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The sources cannot all be unreliable-or-consistent at once: the
/// renormalisation constant of the event distribution is zero.
class ContradictorySources : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration was requested for more rule indices than the
/// configured cap allows.
class SizeLimit : public Error {
 public:
  using Error::Error;
};

/// The rejection sampler hit its per-trial rejection cap, which signals
/// near-contradictory sources.
class RejectionLimit : public Error {
 public:
  using Error::Error;
};

/// A formula mentions an atom from the reserved encoding namespace.
class ReservedAtom : public Error {
 public:
  using Error::Error;
};

/// A valuation was asked about an atom outside its domain.
class MissingAtom : public Error {
 public:
  using Error::Error;
};

/// A model or knowledge base violates a structural invariant (bad ids,
/// weights out of range, malformed priority levels, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace evident
