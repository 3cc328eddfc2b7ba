// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file walk.hpp
 * @brief Post-selected random walks driven by F = G ⊗ I + (I - B) ⊗ X.
 *
 * A walker at (x, 0) moves to (y, 0) with probability G_{x,y} and leaks to
 * (x, 1) with probability 1 - B_x. Leaked walks are restarted with fresh
 * randomness; since walks are independent this samples the same conditional
 * distribution as joint post-selection on all w walks.
 */

#pragma once

#include "stoq/exact.hpp"
#include "stoq/gmatrix.hpp"
#include "stoq/rng.hpp"

#include <cstdint>
#include <vector>

namespace stoq {

struct WalkParams {
    long L = 1;
    long w = 1;
    std::uint64_t seed = 0;
    long long max_restarts = 1000000;  ///< per walk slot
    double r_gap = 0.0;
    double c = 1.0;
};

/** r = 1 / (log2 mu0 - log2 mu1), the gap parameter of the auto-sizing rule. */
double gap_r(double mu0, double mu1);
/** L = ceil(5 n r / 2) */
long auto_L(int n, double r_gap);
/** w = ceil(2 n^{2c} ln 6) */
long auto_w(int n, double c);
WalkParams auto_params(int n, double r_gap, double c, std::uint64_t seed);

struct WalkState {
    Bits x = 0;
    int anc = 0;
};

struct WalkOutcome {
    double mu_est = 0.0;
    std::vector<Bits> samples;  ///< x_L of each clean walk, in slot order
    long long attempts = 0;
    double success_rate = 0.0;
    bool flag_ok = false;
    /** leak_histogram[t-1] counts attempts that leaked at step t. */
    std::vector<long long> leak_histogram;
    double mean_leak_step = 0.0;
};

/** B_x from the sparse row; ScalingError outside [1/4, 1]. */
double row_sum(const GMatrix& g, Bits x);

/** One step of F from (x, 0). ScalingError when 1 - B_x < -1e-12. */
WalkState step(const GMatrix& g, WalkState s, SplitMix64& rng);

/** Collect w clean walks of length L. PostSelectionError when a slot runs out of restarts. */
WalkOutcome run_postselected(const GMatrix& g, const WalkParams& p);

/** Exact per-walk survival probability 1^T G^L 1 / 2^n from dense G. */
double exact_survival(const RMat& g, long L);

/** sum G^{L+1} / sum G^L: the clean-walk expectation of mu_est. */
double exact_expected_mu(const RMat& g, long L);

/** Normalized column sums of G^L: the law of x_L given a clean walk. */
Eigen::VectorXd exact_final_distribution(const RMat& g, long L);

struct GappedDecision {
    Decision decision = Decision::no;
    double mu_plus = 0.5;
    double mu_minus = 0.0;
    double threshold = 0.0;
    double q = 0.0;
    WalkParams params;
    WalkOutcome outcome;
};

/**
 * Decide lambda(H) <= 0 versus lambda(H) >= 1/p2 from a walk estimate of mu(G).
 * w_override > 0 replaces the auto-sized number of walks.
 */
GappedDecision decide_gapped_lhmin(const LocalHamiltonian& h, double p2, double r_gap, double c,
                                   std::uint64_t seed, long w_override = 0,
                                   long long max_restarts = 1000000);

}  // namespace stoq
