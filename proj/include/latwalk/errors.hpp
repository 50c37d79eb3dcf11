#pragma once

#include <stdexcept>
#include <string>

namespace latwalk {

// Caller violated a precondition (bad input, unresolvable reference, ...).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computation would exceed the configured memory budget.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact data failed a consistency check that should be impossible
// (e.g. a closed form evaluated to a non-integer).
struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A modular computation hit a prime dividing some denominator; retry
// with a different prime.
struct RetryablePrimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace latwalk
