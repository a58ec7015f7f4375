#pragma once

#include <stdexcept>
#include <string>

namespace pba {

/// Input tables that cannot even be interpreted (index out of range,
/// conflicting entries for the same unordered pair).
class MalformedTable : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A configured size bound would be exceeded.
class SizeLimitExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Caller-supplied data does not satisfy an operation's precondition.
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

} // namespace pba
