// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file hamiltonian.hpp
 * @brief k-local qubit Hamiltonians, matrix-element oracles and stoquasticity checks.
 *
 * Bit convention: qubit i is bit i of a basis index, qubit 0 least significant.
 * Inside a term, local bit i refers to qubit support[i].
 */

#pragma once

#include "stoq/error.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace stoq {

using Bits = std::uint64_t;
using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

inline constexpr double kHermTol = 1e-12;
inline constexpr double kStoqTol = 1e-12;
inline constexpr double kImagTol = 1e-12;
inline constexpr int kMaxQubits = 62;

/** Gather the bits of x at positions `support` into a compact local index. */
inline Bits extract_bits(Bits x, const std::vector<int>& support) {
    Bits out = 0;
    for (std::size_t i = 0; i < support.size(); ++i) out |= ((x >> support[i]) & 1u) << i;
    return out;
}

/** Scatter a local index back onto positions `support`. */
inline Bits deposit_bits(Bits local, const std::vector<int>& support) {
    Bits out = 0;
    for (std::size_t i = 0; i < support.size(); ++i) out |= ((local >> i) & 1u) << support[i];
    return out;
}

inline Bits support_mask(const std::vector<int>& support) {
    Bits m = 0;
    for (int q : support) m |= Bits{1} << q;
    return m;
}

struct LocalTerm {
    std::vector<int> support;  ///< sorted, distinct
    CMat matrix;               ///< 2^j x 2^j, Hermitian

    LocalTerm() = default;
    LocalTerm(std::vector<int> s, CMat m) : support(std::move(s)), matrix(std::move(m)) {}
    LocalTerm(std::vector<int> s, const RMat& m) : support(std::move(s)), matrix(m.cast<cplx>()) {}
};

/** Spectral norm of a Hermitian matrix via a dense eigensolve. */
double hermitian_norm(const CMat& m);

class LocalHamiltonian {
public:
    LocalHamiltonian() = default;
    /** Validates support ranges, locality and Hermiticity. Throws InputError. */
    LocalHamiltonian(int n, int k, std::vector<LocalTerm> terms);

    int n() const { return n_; }
    int k() const { return k_; }
    const std::vector<LocalTerm>& terms() const { return terms_; }
    const std::vector<double>& term_norms() const { return norms_; }
    /** C = sum of term spectral norms, an upper bound on ||H||. */
    double norm_bound() const { return norm_bound_; }
    /** p1: the largest term norm. */
    double max_term_norm() const;
    /** Largest support size actually used. */
    int max_support() const;
    /** True when every term has imaginary parts below kImagTol. */
    bool is_real() const;

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<LocalTerm> terms_;
    std::vector<double> norms_;
    double norm_bound_ = 0.0;
};

/** <x|H|y> summed over terms without materializing the full matrix. */
cplx matrix_element(const LocalHamiltonian& h, Bits x, Bits y);

/** Nonzero entries of row x, sorted by column, duplicates merged. */
std::vector<std::pair<Bits, cplx>> row(const LocalHamiltonian& h, Bits x);

/** Full 2^n x 2^n matrix. Throws CapacityError above `cap` qubits. */
CMat dense_matrix(const LocalHamiltonian& h, int cap = 14);

/** Real part of dense_matrix; callers check is_real() first when it matters. */
RMat dense_real(const LocalHamiltonian& h, int cap = 14);

/** Embed a term matrix acting on `support` into an n-qubit dense matrix. */
CMat embed(int n, const std::vector<int>& support, const CMat& m);

struct Violation {
    Bits x = 0;
    Bits y = 0;
    cplx value;
    int term = -1;  ///< term index for termwise findings, -1 for a full scan
};

struct StoquasticReport {
    bool is_stoquastic = false;
    bool is_termwise_stoquastic = false;
    bool full_scan = false;  ///< is_stoquastic came from a full 2^n scan
    std::vector<Violation> violations;
};

class NotStoquasticError : public PreconditionError {
public:
    NotStoquasticError(const std::string& what, StoquasticReport report)
        : PreconditionError(what), report_(std::move(report)) {}
    const char* kind() const noexcept override { return "not_stoquastic"; }
    const StoquasticReport& report() const { return report_; }

private:
    StoquasticReport report_;
};

/**
 * termwise=true scans each term matrix. A termwise-stoquastic H is
 * stoquastic; otherwise a full scan decides is_stoquastic when n <= full_cap.
 * termwise=false always runs the full scan (InputError above full_cap).
 */
StoquasticReport check_stoquastic(const LocalHamiltonian& h, bool termwise, int full_cap = 14);

/** Conjugate every term by the product of Z over qubits with coloring[i] set. */
LocalHamiltonian bipartite_basis_change(const LocalHamiltonian& h, const std::vector<bool>& coloring);

/**
 * The term A ⊗ B with A on sa and B on sb (disjoint). Supports may interleave;
 * the result lives on their sorted union.
 */
LocalTerm product_term(const std::vector<int>& sa, const RMat& a, const std::vector<int>& sb, const RMat& b);

/** Concatenate term lists; n and k are taken as the maxima. */
LocalHamiltonian merge(const LocalHamiltonian& a, const LocalHamiltonian& b);

// Single-qubit building blocks, shared by model and gadget builders.
RMat pauli_x();
RMat pauli_z();
CMat pauli_y();
RMat sigma_plus();   ///< |1><0|
RMat sigma_minus();  ///< |0><1|
RMat proj0();
RMat proj1();

/** Kronecker product with `low` on the low local bits: (high ⊗ low). */
CMat kron(const CMat& high, const CMat& low);

}  // namespace stoq
