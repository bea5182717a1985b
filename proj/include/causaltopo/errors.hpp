#pragma once

#include <stdexcept>
#include <string>

namespace causaltopo {

/// Base of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input data violates a structural precondition (exit code 1 in the CLI).
struct ValidationError : Error {
  using Error::Error;
};

/// A documented size cap was exceeded (exit code 3 in the CLI).
struct CapError : Error {
  using Error::Error;
};

/// Malformed file contents or bad usage (exit code 2 in the CLI).
struct SchemaError : Error {
  using Error::Error;
};

#define CAUSALTOPO_ERROR(NAME, BASE)                      \
  struct NAME : BASE {                                    \
    explicit NAME(const std::string& what) : BASE(what) {} \
  }

CAUSALTOPO_ERROR(CycleError, ValidationError);
CAUSALTOPO_ERROR(UnknownElement, ValidationError);
CAUSALTOPO_ERROR(DuplicateElement, ValidationError);
CAUSALTOPO_ERROR(NoBottom, ValidationError);
CAUSALTOPO_ERROR(MissingBottom, ValidationError);
CAUSALTOPO_ERROR(MissingJoins, ValidationError);
CAUSALTOPO_ERROR(OutOfCarrier, ValidationError);
CAUSALTOPO_ERROR(CoverNotOpen, ValidationError);
CAUSALTOPO_ERROR(DimensionMismatch, ValidationError);
CAUSALTOPO_ERROR(UnknownEvent, ValidationError);
CAUSALTOPO_ERROR(DuplicateEvent, ValidationError);
CAUSALTOPO_ERROR(EmptyGenerator, ValidationError);
CAUSALTOPO_ERROR(SeparationFailure, ValidationError);
CAUSALTOPO_ERROR(NotT1, ValidationError);
CAUSALTOPO_ERROR(AxiomError, ValidationError);
CAUSALTOPO_ERROR(CapExceeded, CapError);
CAUSALTOPO_ERROR(SizeCapExceeded, CapError);

#undef CAUSALTOPO_ERROR

}  // namespace causaltopo
