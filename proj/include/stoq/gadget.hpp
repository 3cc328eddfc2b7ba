// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file gadget.hpp
 * @brief Perturbative gadgets: k-local -> 3-local -> triple-X -> 2-local.
 *
 * Every reduction returns the compiled Hamiltonian split into an unperturbed
 * mediator part H0 and a perturbation V, together with the scalar shift Omega
 * such that lambda(compiled) - Omega approximates lambda(input).
 *
 * Mediator qubits are appended after the highest existing index, so inside any
 * term that touches a mediator the mediator occupies the highest local bit.
 */

#pragma once

#include "stoq/hamiltonian.hpp"

#include <limits>
#include <string>
#include <vector>

namespace stoq {

/** C ⊗ D + h.c. with C on c_support and D on d_support (disjoint). */
struct OpPair {
    std::vector<int> c_support;
    RMat C;
    std::vector<int> d_support;
    RMat D;
    int source_term = -1;
};

struct DecomposeOptions {
    /** Terms with at most this many qubits go to the residual untouched (after the shift). */
    int keep_locality = 2;
    /** Split the diagonal of Omega_S I - H_S into pairs too, so diagonal terms are reduced as well. */
    bool split_diagonal = false;
    /** Keep entries that flip every qubit of the term in the residual. */
    bool keep_full_flip = false;
    /** For 3-local terms, put one unflipped qubit of each entry in D so that C carries every flip. */
    bool flip_aware = false;
};

/**
 * H = Omega I + residual - sum_a (C_a ⊗ D_a + h.c.).
 * Per term, Omega_S is the largest diagonal entry, so N = Omega_S I - H_S is
 * entrywise nonnegative; each elementary entry of N becomes one pair, split
 * across the first ceil(j/2) and the remaining support qubits unless flip_aware.
 */
struct Decomposition {
    std::vector<OpPair> pairs;
    double omega = 0.0;
    LocalHamiltonian residual;
};

Decomposition decompose_target(const LocalHamiltonian& h, const DecomposeOptions& opt = {});

/** Rebuild Omega I + residual - sum(C ⊗ D + h.c.) as a LocalHamiltonian on h.n qubits. */
LocalHamiltonian reconstruct(const Decomposition& d, int n);

struct MediatorGroup {
    std::string kind;            ///< "subdivision", "triple_x" or "kkr"
    std::vector<int> mediators;  ///< mediator qubit indices
    std::vector<int> data;       ///< data qubits coupled to them
    int source_term = -1;
};

struct GadgetResult {
    std::string stage;
    int n_data = 0;
    LocalHamiltonian compiled;
    LocalHamiltonian unperturbed;   ///< H0: mediator penalties
    LocalHamiltonian perturbation;  ///< V: couplings plus carried-over terms
    double omega_shift = 0.0;
    std::vector<MediatorGroup> mediator_map;
    double verified_error = std::numeric_limits<double>::quiet_NaN();
    double target_lambda = std::numeric_limits<double>::quiet_NaN();
    double compiled_lambda = std::numeric_limits<double>::quiet_NaN();
    bool verified = false;
    std::vector<double> deltas;  ///< Delta per subdivision pass, or the delta used
};

inline constexpr int kVerifyCap = 12;

/**
 * Fill verified_error = |lambda(compiled) - Omega - lambda(target)| when the
 * compiled system has at most `cap` qubits.
 */
void verify(GadgetResult& r, const LocalHamiltonian& target, int cap = kVerifyCap);

/** Estimate of ||V|| used by the subdivision precondition, excluding the sqrt(Delta) factor. */
double subdivision_v_estimate(const Decomposition& d);

/**
 * One subdivision pass: one mediator per pair. PreconditionError when
 * Delta < 100 * subdivision_v_estimate.
 */
GadgetResult subdivision_reduce(const LocalHamiltonian& h, double Delta, const DecomposeOptions& opt = {},
                                bool run_verify = true);

/** True when every 3-local term only has entries flipping all three qubits (plus a constant diagonal). */
bool is_normalized_3local(const LocalHamiltonian& h);

/**
 * Repeated subdivision until every 3-local term flips all three qubits, at
 * most three passes. Delta1 <= 0 picks max(400, 100 * estimate); later passes
 * use max(Delta_p^2, 100 * estimate).
 */
GadgetResult normalize_3local(const LocalHamiltonian& h, double Delta1 = 0.0, bool run_verify = true);

struct TripleXScalings {
    double omega, delta_x, delta_z;
};
/** omega = d^-4, Delta_x = d^-5, Delta_z = d^-6 */
TripleXScalings triple_x_scalings(double delta);
/** Second-order shift for one triple, sum_j ||B_j||^2 with B B^dag + B^dag B = ||B||^2 I. */
double triple_x_shift(const TripleXScalings& s, const double b_norm_sq_sum);

/** H_M on three mediators as a term list (one -h XXX term, three ZZ terms, one constant). */
std::vector<LocalTerm> triple_x_mediator_terms(const std::vector<int>& m, const TripleXScalings& s);

/**
 * One mediator triple per flip-all-three entry pair, B_j = s|r_j><c_j| so that
 * B_j^2 = 0. Terms already of the form -h XXX pass through to V unchanged.
 */
GadgetResult triple_x_reduce(const LocalHamiltonian& h, double delta, bool run_verify = true);

/** True when every 3-local term is -h XXX with h >= 0 plus a constant. */
bool is_triple_x_form(const LocalHamiltonian& h);

GadgetResult kkr_3to2_reduce(const LocalHamiltonian& h, double delta, bool run_verify = true);

/**
 * normalize -> triple-X(delta) -> KKR(delta_kkr), with delta_kkr <= 0 meaning
 * delta. Each stage is verified against its own input when small enough, and
 * a final "full" entry against h. The KKR stage inherits mediator XXX terms of
 * strength delta^-5 / 2 from the triple-X stage, so a chain through both is
 * only accurate for delta_kkr far below delta.
 */
std::vector<GadgetResult> full_chain(const LocalHamiltonian& h, double delta, double delta_kkr = 0.0,
                                     bool run_verify = true);

struct SelfEnergyReport {
    double z = 0.0;
    RMat sigma1;  ///< V_{--}
    RMat sigma2;  ///< V_{-+} G_+ V_{+-}
    RMat sigma3;  ///< V_{-+} G_+ V_{++} G_+ V_{+-}
    RMat sigma4;
    double sigma4_norm = 0.0;
    double second_order_shift = 0.0;  ///< analytic Omega when known, else NaN
    double high_gap = 0.0;            ///< lowest eigenvalue of H0 on the high subspace
};

/**
 * Dense self-energy orders on the span of `low_basis` (orthonormal columns in
 * the kernel of H0). PreconditionError when z is not below the high spectrum.
 */
SelfEnergyReport self_energy(const LocalHamiltonian& h0, const LocalHamiltonian& v, const RMat& low_basis,
                             double z, int max_order = 4, int cap = kVerifyCap);

/**
 * Low-energy basis of a gadget result: data basis states tensored with the
 * mediator ground state (|0> for subdivision, (|000>+|111>)/sqrt2 for triple-X).
 * Columns are ordered by data index. KKR is unsupported (two-fold mediator ground space).
 */
RMat gadget_low_basis(const GadgetResult& r);

/** Self-energy of a triple-X result with the analytic shift filled in. */
SelfEnergyReport triple_x_self_energy(const GadgetResult& r, double z, int max_order = 4);

/** Locality contract check for a stage; returns an empty string when satisfied. */
std::string check_locality_contract(const GadgetResult& r, int input_locality);

}  // namespace stoq
