// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file error.hpp
 * @brief Exception hierarchy shared by all modules.
 *
 * The CLI maps PreconditionError and its subclasses to exit status 2,
 * everything else to exit status 1.
 */

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>

namespace stoq {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

/** Malformed input: wrong dimensions, bad indices, unknown names. */
class InputError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "input_error"; }
};

/** Problem size exceeds a dense or brute-force cap. */
class CapacityError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "capacity_error"; }
};

/** A documented precondition or promise does not hold. */
class PreconditionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "precondition_error"; }
};

/** Iterative method ran out of iterations; carries the last iterate. */
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_value, Eigen::VectorXd last_vector)
        : Error(what), last_value_(last_value), last_vector_(std::move(last_vector)) {}
    const char* kind() const noexcept override { return "convergence_error"; }
    double last_value() const { return last_value_; }
    const Eigen::VectorXd& last_vector() const { return last_vector_; }

private:
    double last_value_;
    Eigen::VectorXd last_vector_;
};

/** Post-selected sampler exhausted its restart budget. */
class PostSelectionError : public Error {
public:
    PostSelectionError(const std::string& what, double success_rate, long long attempts)
        : Error(what), success_rate_(success_rate), attempts_(attempts) {}
    const char* kind() const noexcept override { return "postselection_error"; }
    double success_rate() const { return success_rate_; }
    long long attempts() const { return attempts_; }

private:
    double success_rate_;
    long long attempts_;
};

/** Row sums of G fall outside [1/4, 1]: the rescaling is malformed. */
class ScalingError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "scaling_error"; }
};

}  // namespace stoq
