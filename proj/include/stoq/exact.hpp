// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file exact.hpp
 * @brief Reference spectra for small systems: dense diagonalization and power iteration.
 */

#pragma once

#include "stoq/gmatrix.hpp"
#include "stoq/hamiltonian.hpp"

#include <string>

namespace stoq {

struct SpectralSummary {
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    double gap = 0.0;
    /** Unit-norm, sign fixed so the largest-magnitude entry is positive.
     *  Empty for Hamiltonians with a non-negligible imaginary part. */
    Eigen::VectorXd ground_vector;
    std::string method = "dense";
};

inline constexpr int kDenseCap = 14;

/** Dense symmetric eigensolve of H. Deterministic. CapacityError above `cap`. */
SpectralSummary diagonalize_dense(const LocalHamiltonian& h, int cap = kDenseCap);

/** Flip the sign so that the largest-magnitude entry is positive. */
void sign_fix(Eigen::VectorXd& v);

struct PowerResult {
    double mu = 0.0;
    Eigen::VectorXd vector;
    int iterations = 0;
};

/**
 * Power iteration on G from the uniform positive vector using the row oracle.
 * Converged once the relative change in the Rayleigh quotient stays below tol
 * for 10 consecutive iterations. ConvergenceError carries the last iterate.
 */
PowerResult largest_eigenvalue_power(const GMatrix& g, double tol = 1e-13, int max_iters = 200000,
                                     int cap = 22);

/** Largest eigenvalue of a dense symmetric matrix. */
double largest_eigenvalue_dense(const RMat& g);

enum class Decision { yes, no, promise_violated };
const char* to_string(Decision d);

/** lambda <= 0 -> yes, lambda >= delta -> no, in between -> promise_violated. */
Decision decide_lhmin(const LocalHamiltonian& h, double delta, int cap = kDenseCap);

/** Tolerance used when comparing lambda against 0 in decide_lhmin. */
inline constexpr double kDecisionTol = 1e-10;

}  // namespace stoq
