#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace asimkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A predicate letter was used with a number of arguments different from its arity.
class ArityError : public Error {
 public:
  ArityError(const std::string& letter, int expected, int actual)
      : Error("letter '" + letter + "' has arity " + std::to_string(expected) + " but is applied to " +
              std::to_string(actual) + " argument(s)"),
        letter_(letter) {}

  const std::string& letter() const noexcept { return letter_; }

 private:
  std::string letter_;
};

class VocabularyError : public Error {
 public:
  using Error::Error;
};

class TranslationError : public Error {
 public:
  using Error::Error;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class RelationError : public Error {
 public:
  using Error::Error;
};

class FamilyError : public Error {
 public:
  using Error::Error;
};

}  // namespace asimkit
