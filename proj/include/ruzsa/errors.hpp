#ifndef RUZSA_ERRORS_HPP_
#define RUZSA_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ruzsa {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument is outside the operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Difference sets and injections are only defined for non-empty sets.
class EmptySetError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// An operation needed an enumerable carrier (or a sampler) and had none.
class MissingCarrierError : public Error {
 public:
  using Error::Error;
};

/// check_weak_axioms was called on a structure without F or G.
class MissingWeakOperationError : public Error {
 public:
  using Error::Error;
};

}  // namespace ruzsa

#endif  // RUZSA_ERRORS_HPP_
