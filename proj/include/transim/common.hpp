// common.hpp — Error taxonomy shared across the simulator.
//
// SchemaError carries the config field path that failed validation (CLI exit
// code 2); ValidityError marks a physically inadmissible request (exit 3).

#pragma once

#include <stdexcept>
#include <string>

namespace transim {

// Config file or CLI input does not match the documented schema.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string field_path, const std::string& what)
        : std::runtime_error(field_path + ": " + what), field_path_(std::move(field_path)) {}
    const std::string& field_path() const noexcept { return field_path_; }

private:
    std::string field_path_;
};

// Physics validity violated (resolved-sideband, adiabaticity, ...).
class ValidityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested Hilbert space exceeds the configured ceiling.
class ResourceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// State invariant broke during time evolution; message names the invariant
// and the time at which it failed.
class IntegrationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A least-squares fit could not produce a usable result.
class FitError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Count statistics are inconsistent with the estimator's assumptions.
class EstimatorError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace transim
