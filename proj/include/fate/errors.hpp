#pragma once

#include <stdexcept>
#include <string>

namespace fate {

// Base of all library errors. CLI maps InputError and plain Error to
// exit code 1 and LimitError to exit code 2.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : Error {
  using Error::Error;
};

struct LimitError : Error {
  using Error::Error;
};

// firing / graph construction
struct NotEnabled : Error { using Error::Error; };
struct UnsafeFiring : Error { using Error::Error; };
struct UnsafeNet : Error { using Error::Error; };
struct StateLimitExceeded : LimitError { using LimitError::LimitError; };

// simulation
struct ScriptNotFireable : Error { using Error::Error; };
struct NotDecidable : Error { using Error::Error; };

// unfolding / configurations
struct EventLimitExceeded : LimitError { using LimitError::LimitError; };
struct CapExceeded : LimitError { using LimitError::LimitError; };
struct UnknownEvent : Error { using Error::Error; };
struct UnknownNode : Error { using Error::Error; };
struct UnknownMarking : Error { using Error::Error; };
struct DifferentPrefixes : Error { using Error::Error; };
struct InvalidPair : Error { using Error::Error; };
struct NotShaved : Error { using Error::Error; };

// parsing
struct SyntaxError : InputError {
  SyntaxError(int line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};
struct DuplicateName : InputError { using InputError::InputError; };
struct DanglingArc : InputError { using InputError::InputError; };
struct SourceTransition : InputError { using InputError::InputError; };
struct UnknownPlaceName : InputError { using InputError::InputError; };

}  // namespace fate
