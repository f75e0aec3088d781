#ifndef LEXENT_ERROR_HPP
#define LEXENT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexent {

// Malformed or inconsistent input data (bad corpus, bad pair files, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A term was requested that the vocabulary does not contain.
class LookupError : public InputError {
 public:
  explicit LookupError(const std::string& term)
      : InputError("unknown term: '" + term + "'"), term_(term) {}
  const std::string& term() const noexcept { return term_; }

 private:
  std::string term_;
};

// A text file line could not be parsed.
class ParseError : public InputError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : InputError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A caller-supplied parameter is outside its domain (k out of range, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Training, tuning or calibration cannot proceed (e.g. single-class data).
class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical routine failed to produce a finite or convergent result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lexent

#endif  // LEXENT_ERROR_HPP
