// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file models.hpp
 * @brief Standard instance generators.
 *
 * Chains are open unless `periodic` is set. The Heisenberg antiferromagnet is
 * returned un-rotated; apply bipartite_basis_change with a proper coloring to
 * make it stoquastic.
 */

#pragma once

#include "stoq/hamiltonian.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace stoq {

struct ModelParams {
    int n = 2;
    double J = 1.0;  ///< coupling
    double h = 1.0;  ///< transverse field
    double p = 1.0;  ///< XX weight for ferro_xy
    double q = 1.0;  ///< YY weight for ferro_xy, 0 <= q <= p
    bool periodic = false;
    std::vector<int> dims;  ///< lattice extents for ising_3d_classical
    std::uint64_t seed = 0;
};

/** H = -J sum Z_i Z_{i+1} - h sum X_i */
LocalHamiltonian transverse_ising(const ModelParams& p);
/** H = J sum (XX + YY + ZZ) on chain bonds */
LocalHamiltonian heisenberg_afm(const ModelParams& p);
/** H = -sum (p XX + q YY) on chain bonds */
LocalHamiltonian ferro_xy(const ModelParams& p);
/** Diagonal Ising model on a cubic grid with couplings drawn from {-1,0,+1}. */
LocalHamiltonian ising_3d_classical(const ModelParams& p);

/** Dispatch by name; unknown names raise InputError. */
LocalHamiltonian model_builder(const std::string& name, const ModelParams& p);
std::vector<std::string> model_names();

/**
 * Random termwise-stoquastic 2-local Hamiltonian: one 2-qubit term per bond of
 * a random graph plus 1-qubit fields, off-diagonals nonpositive.
 */
LocalHamiltonian random_stoquastic(int n, std::uint64_t seed, int extra_bonds = -1);

/** Proper 2-coloring of a chain: qubit i gets color i mod 2. */
std::vector<bool> chain_coloring(int n);

}  // namespace stoq
