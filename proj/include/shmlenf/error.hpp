#ifndef SHMLENF_ERROR_HPP
#define SHMLENF_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shmlenf {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Syntax or scoping error; `position` is a 0-based byte offset into the input.
class ParseError : public Error {
public:
  ParseError(const std::string &message, std::size_t position)
      : Error(message + " at offset " + std::to_string(position)),
        message_(message), position_(position) {}

  std::size_t position() const noexcept { return position_; }
  /// The message without the position suffix.
  const std::string &message() const noexcept { return message_; }

private:
  std::string message_;
  std::size_t position_;
};

class UnboundVariable : public Error {
public:
  explicit UnboundVariable(const std::string &name)
      : Error("unbound data variable '" + name + "'"), name_(name) {}

  const std::string &name() const noexcept { return name_; }

private:
  std::string name_;
};

/// A state-space or closure bound was hit. Callers treat this as
/// "inconclusive", never as a property failure.
class BoundExceeded : public Error {
public:
  using Error::Error;
};

/// Input lies outside the fragment an operation accepts (not sHML, not
/// guarded, not in normal form, ...).
class FragmentError : public Error {
public:
  using Error::Error;
};

} // namespace shmlenf

#endif
