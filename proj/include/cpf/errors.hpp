#pragma once

#include <stdexcept>
#include <string>

namespace cpf {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input: bad instance files, invalid construction data, unsupported queries.
struct InputError : Error {
    using Error::Error;
};

// A documented operation precondition does not hold for the given arguments.
struct PreconditionError : Error {
    using Error::Error;
};

// An exhaustive-search size guard was exceeded; the oracle refuses to run.
struct GuardError : Error {
    using Error::Error;
};

}  // namespace cpf
