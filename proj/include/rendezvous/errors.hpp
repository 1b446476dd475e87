#pragma once

#include <stdexcept>
#include <string>

#include "rendezvous/rational.hpp"

namespace rendezvous {

/// Two values that must agree (trajectory spans, segment junctions) do not.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A program returned an action that breaks the Action invariants.
class ProgramFault : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation that needs a communication-free program was given one that
/// reacts to pebbles.
class ModelMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The worst-case sweep could not resolve a regime (non-affine rendezvous
/// time, or a signature boundary it could not pin down).
class RegimeRefinementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A sweep run did not reach rendezvous before its horizon.
class HorizonExceeded : public std::runtime_error {
public:
    HorizonExceeded(const std::string& what, Rational placement)
        : std::runtime_error(what), placement_(std::move(placement)) {}
    const Rational& placement() const { return placement_; }

private:
    Rational placement_;
};

/// The gap adversary could not fit the slow agent's excursion into the gap.
class ConstructionFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rendezvous
