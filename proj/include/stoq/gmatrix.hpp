// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file gmatrix.hpp
 * @brief The nonnegative matrix G = (I - H/scale)/2 behind element and row oracles.
 *
 * norm_shift uses scale C = sum ||H_S||. walk_shift uses
 * q = 2 max(1, 2^k binom(n,k) p1), enlarged when needed so that every row sum
 * stays inside [1/4, 1] (duplicate or extra terms can exceed the binomial count).
 */

#pragma once

#include "stoq/hamiltonian.hpp"

#include <utility>
#include <vector>

namespace stoq {

enum class GMode { norm_shift, walk_shift };

const char* to_string(GMode m);
GMode gmode_from_string(const std::string& s);

/** q = 2 max(1, 2^k binom(n,k) p1) */
double walk_q(int n, int k, double p1);

class GMatrix {
public:
    GMatrix(LocalHamiltonian source, GMode mode, double scale);

    const LocalHamiltonian& source() const { return source_; }
    GMode mode() const { return mode_; }
    int n() const { return source_.n(); }
    double scale() const { return scale_; }

    /** G_{x,y}, clamped into [0,1] against round-off below the stoquastic tolerance. */
    double element(Bits x, Bits y) const;
    /** Nonzero entries of row x, sorted by column. */
    std::vector<std::pair<Bits, double>> row(Bits x) const;
    /** B_x = sum_y G_{x,y} computed from the sparse row. */
    double row_sum(Bits x) const;
    RMat dense(int cap = 14) const;

private:
    LocalHamiltonian source_;
    GMode mode_;
    double scale_;
    std::vector<RMat> sym_;  ///< symmetrized real part of each term
};

/**
 * Build G from a stoquastic H. Throws NotStoquasticError with the report
 * attached otherwise. scale_override > 0 replaces the automatic divisor; it
 * must still keep elements in [0,1] (and row sums in [1/4,1] for walk_shift),
 * else ScalingError.
 */
GMatrix to_g_matrix(const LocalHamiltonian& h, GMode mode, double scale_override = 0.0);

}  // namespace stoq
