#pragma once

#include <stdexcept>
#include <string>

namespace ranklab {

/// Base class for every error this library raises.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parameter or configuration value outside its documented bounds.
struct param_error : error {
    using error::error;
};

/// Bad input data: duplicate ids, unknown ids, malformed records.
struct input_error : error {
    using error::error;
};

/// File-level problems. Subtypes let callers tell the cases apart.
struct io_error : error {
    using error::error;
};
struct file_missing_error : io_error {
    using io_error::io_error;
};
struct malformed_file_error : io_error {
    using io_error::io_error;
};
struct version_mismatch_error : io_error {
    using io_error::io_error;
};

/// Numeric evaluation left the representable range.
struct domain_error : error {
    using error::error;
};

}  // namespace ranklab
