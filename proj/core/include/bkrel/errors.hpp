#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bkrel {

/// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two truth values from different lattices met in one operation.
class LatticeMismatchError : public Error {
public:
  using Error::Error;
};

/// A finite lattice table is structurally unusable (not a bounded lattice,
/// ragged tables, duplicate names, underivable residuum, ...).
class LatticeDefinitionError : public Error {
public:
  using Error::Error;
};

/// Relation operands whose domains do not line up for the requested product
/// or comparison.
class WiringError : public Error {
public:
  using Error::Error;
};

/// A value outside its admissible range, an unknown name, or an argument
/// combination the API rejects.
class ValueError : public Error {
public:
  using Error::Error;
};

/// A predicate that is only defined for crisp relations was asked about a
/// properly fuzzy one.
class NotCrispError : public Error {
public:
  using Error::Error;
};

/// An operation that requires a particular carrier (e.g. mean products need
/// the real unit interval) was invoked on a lattice without it.
class UnsupportedLatticeError : public Error {
public:
  using Error::Error;
};

/// Expression text that does not lex or parse; carries the byte offset of
/// the offending token.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg), position_(position) {}
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// File content that cannot be read or decoded (CSV shape, JSON schema,
/// unreadable path).
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace bkrel
