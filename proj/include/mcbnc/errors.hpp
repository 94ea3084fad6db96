#pragma once

#include <stdexcept>
#include <string>

namespace mcbnc {

/// Bad caller input: unknown labels, mismatched node sets, malformed files.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A graph violates a structural invariant (cycle, missing consistent extension).
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A Delete operator was requested whose validity condition does not hold.
class OperatorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation called on a state it is not defined for (e.g. pruning an empty CPDAG).
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mcbnc
