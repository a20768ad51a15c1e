#pragma once

#include <stdexcept>
#include <string>

namespace rankstore {

/// Invalid arguments, shape mismatches and violated construction preconditions.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inversion of the zero element.
class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An input violated a mathematical precondition (e.g. dependent evaluation points).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No repair plan could be found within the searched space.
class PlanSearchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A repair plan produced an inconsistent reconstruction. Signals a bug, never bad data.
class RepairFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A locally repairable symbol lost another member of its group.
class LocalRepairImpossible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal invariant broken (e.g. singular system for a code that passed the MDS check).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rankstore
