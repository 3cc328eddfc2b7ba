// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file clock.hpp
 * @brief Clock Hamiltonian of a reversible Toffoli verifier.
 *
 * Wires: coins [0, r), ancillas [r, r+k_anc), witness [r+k_anc, n).
 * Clock qubit t = 1..T sits at wire n + t - 1; time tau is the unary string
 * with clocks 1..tau set.
 *
 * A gate control of -1 is hardwired true, so NOT is {-1,-1,t} and CNOT is {c,-1,t}.
 */

#pragma once

#include "stoq/hamiltonian.hpp"

#include <string>
#include <vector>

namespace stoq {

struct Gate {
    int c1 = -1;
    int c2 = -1;
    int target = 0;
};

struct ReversibleCircuit {
    int r = 0;
    int k_anc = 0;
    int s = 0;
    int q_out = 0;
    std::vector<Gate> gates;

    int n() const { return r + k_anc + s; }
    int T() const { return static_cast<int>(gates.size()); }
    /** InputError on out-of-range or repeated wires, or an empty gate list. */
    void validate() const;
    /** Wires a gate touches, sorted. */
    std::vector<int> wires(int gate) const;
};

/** Apply gate g to a classical wire assignment. */
Bits apply_gate(const Gate& g, Bits state);
/** Run the first `upto` gates (all when upto < 0). */
Bits run_circuit(const ReversibleCircuit& c, Bits input, int upto = -1);
/** Assemble the wire assignment from coin, ancilla (zero) and witness bits. */
Bits initial_state(const ReversibleCircuit& c, Bits coins, Bits witness);

inline constexpr int kCoinCap = 20;

/** Fraction of coin strings for which q_out ends at 1. */
double acceptance_probability(const ReversibleCircuit& c, Bits witness);

/** M_z = acceptance_probability(z) for every witness string z (s <= 12). */
std::vector<double> acceptance_operator(const ReversibleCircuit& c);

/** Permutation matrix of a gate on its sorted wires. */
RMat gate_matrix(const ReversibleCircuit& c, int gate);

struct ClockInstance {
    LocalHamiltonian hamiltonian;  ///< H_in + H_out + H_prop + H_clock
    LocalHamiltonian h_in, h_out, h_prop, h_clock;
    int T = 0;
    int n_comp = 0;
    std::vector<std::string> labels;  ///< "coin", "anc", "witness" or "clock" per qubit
};

/** PreconditionError when T < 2. */
ClockInstance build_clock_hamiltonian(const ReversibleCircuit& c);

/**
 * (T+1)^{-1/2} sum_tau |unary tau> ⊗ R_tau...R_1 |psi_0>, with coins in |+>
 * when coins_superposed, else the classical string `coins`.
 */
Eigen::VectorXd build_history_state(const ReversibleCircuit& c, Bits witness, bool coins_superposed,
                                    Bits coins = 0, int cap = 14);

}  // namespace stoq
