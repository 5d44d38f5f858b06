// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace chorder {

/// Malformed or dimensionally inconsistent input.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation (e.g. a covariance
/// that is not positive definite).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An exhaustive search would exceed its configured cap.
class EnumerationTooLarge : public std::length_error {
public:
    EnumerationTooLarge(double count, double cap)
        : std::length_error("enumeration too large: " + std::to_string(count) + " candidates exceeds cap " +
                            std::to_string(cap)),
          count_(count), cap_(cap) {}

    double count() const noexcept { return count_; }
    double cap() const noexcept { return cap_; }

private:
    double count_;
    double cap_;
};

} // namespace chorder
