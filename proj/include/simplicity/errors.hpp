#pragma once

#include <stdexcept>
#include <string>

namespace simplicity {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad input files, records, flags or anchors.
class InputError : public Error {
public:
  using Error::Error;
};

// Well-formed input that cannot be scored.
class EvaluationError : public Error {
public:
  using Error::Error;
};

// Knowledge whose bounds contradict each other.
class InconsistencyError : public Error {
public:
  using Error::Error;
};

class ParseError : public InputError {
public:
  ParseError(const std::string& where, const std::string& what)
      : InputError("parse error at " + where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

private:
  std::string where_;
};

class SchemaVersionMismatch : public InputError {
public:
  SchemaVersionMismatch(long long found, long long expected)
      : InputError("schema version " + std::to_string(found) + " is not supported (expected " +
                   std::to_string(expected) + ")") {}
};

class EmptyInput : public InputError {
public:
  explicit EmptyInput(const std::string& what) : InputError("empty input: " + what) {}
};

class DuplicateItem : public InputError {
public:
  explicit DuplicateItem(const std::string& item)
      : InputError("duplicate item: " + item), item_(item) {}
  const std::string& item() const { return item_; }

private:
  std::string item_;
};

class InvalidAnchor : public InputError {
public:
  using InputError::InputError;
};

class InvalidDistance : public InputError {
public:
  using InputError::InputError;
};

class InvalidModel : public InputError {
public:
  using InputError::InputError;
};

class ContradictoryFacts : public InputError {
public:
  using InputError::InputError;
};

class NonMonotoneCombiner : public InputError {
public:
  using InputError::InputError;
};

class UnknownItem : public EvaluationError {
public:
  UnknownItem(const std::string& list, const std::string& item)
      : EvaluationError("unknown item '" + item + "' in list '" + list + "'") {}
};

class UnknownList : public EvaluationError {
public:
  explicit UnknownList(const std::string& list) : EvaluationError("unknown list '" + list + "'") {}
};

class UnresolvedScenario : public EvaluationError {
public:
  explicit UnresolvedScenario(const std::string& target)
      : EvaluationError("no scenario known for " + target), target_(target) {}
  const std::string& target() const { return target_; }

private:
  std::string target_;
};

class UndefinedUnexpectedness : public EvaluationError {
public:
  UndefinedUnexpectedness()
      : EvaluationError("unexpectedness undefined: both complexities are infinite") {}
};

} // namespace simplicity
