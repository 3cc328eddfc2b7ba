// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file amproto.hpp
 * @brief Binary ensembles of G, the counting set Omega and a simulated
 *        hashing lower-bound protocol between a verifier and a prover.
 *
 * A string s of kbits = (m + n) L bits holds L t-blocks of m bits (low bits
 * first) followed by L x-blocks of n bits. F(s) = prod_i member(t_i, x_i, x_{i+1})
 * with x_{L+1} = x_1.
 */

#pragma once

#include "stoq/gmatrix.hpp"
#include "stoq/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stoq {

/**
 * G(t) with t uniform over m-bit strings averages to G once every element is
 * truncated to m binary digits. The digit selected by t is the one at position
 * j = 1 + (number of trailing zeros of t); t = 0 selects nothing.
 */
class BinaryEnsemble {
public:
    BinaryEnsemble(GMatrix g, int m);

    int m() const { return m_; }
    int n() const { return g_.n(); }
    const GMatrix& g() const { return g_; }
    /** floor(G_{x,y} 2^m), capped at 2^m - 1. */
    std::uint64_t numerator(Bits x, Bits y) const;
    bool member(std::uint64_t t, Bits x, Bits y) const;
    /** 2^-m sum_t member(t, x, y), by enumeration. */
    double average(Bits x, Bits y) const;

private:
    GMatrix g_;
    int m_;
};

struct CountingInstance {
    BinaryEnsemble ensemble;
    int L = 2;
    double mu_plus = 1.0;
    double mu_minus = 0.0;

    int n() const { return ensemble.n(); }
    int m() const { return ensemble.m(); }
    int kbits() const { return (m() + n()) * L; }
    /** log2 LARGE = L (m + log2 mu_plus) */
    double log2_large() const;
    /** log2 SMALL = L (m + log2 mu_minus) + n */
    double log2_small() const;
    /** b = ceil(log2 LARGE) + 3 */
    int hash_bits() const;
    /** InputError when s has bits beyond kbits. */
    bool eval_F(Bits s) const;
};

/** Validates L >= 2 even, m >= 1, 0 < mu_minus < mu_plus <= 1 and kbits <= 64. */
CountingInstance make_counting_instance(const GMatrix& g, int m, int L, double mu_plus, double mu_minus);

/** L = 2 n p1 and mu_minus = mu_plus 2^{-1/p1}, for which LARGE = 2^n SMALL. */
CountingInstance separated_instance(const GMatrix& g, int m, int p1, double mu_plus);

inline constexpr int kOmegaCap = 26;

/** |Omega| by enumerating all 2^kbits strings. CapacityError above kOmegaCap. */
std::uint64_t count_omega_bruteforce(const CountingInstance& c, int cap = kOmegaCap);

/** Tr(N^L) over the integer numerator matrix; equals |Omega|. CapacityError above 12 qubits or on overflow. */
std::uint64_t count_omega_trace(const CountingInstance& c);

/** All members of Omega in increasing order. */
std::vector<Bits> enumerate_omega(const CountingInstance& c, int cap = kOmegaCap);

/**
 * kbits linear maps GF(2)^kbits -> GF(2)^b. rows[j][i] is row i of h_j,
 * packed into the low b bits; h_j(s) is the XOR of the rows selected by s.
 */
struct HashEnsemble {
    int kbits = 0;
    int b = 0;
    std::vector<std::vector<Bits>> rows;

    Bits apply(int j, Bits s) const;
};

HashEnsemble make_hash_ensemble(int kbits, int b, std::uint64_t seed);

/**
 * Some s with h(s) = y for the map given by `rows`, or nullopt. Free
 * variables are zero, or uniform when rng is given.
 */
std::optional<Bits> solve_preimage(const std::vector<Bits>& rows, int b, Bits y, SplitMix64* rng = nullptr);

enum class Prover { honest, always_claim, random_preimage };
const char* to_string(Prover p);
Prover prover_from_string(const std::string& s);

struct TranscriptEntry {
    Bits query = 0;
    bool answered = false;  ///< prover returned a claimed pre-image
    int j = -1;
    Bits s = 0;
    bool hash_ok = false;
    bool member = false;
};

struct TrialRecord {
    std::uint64_t seed = 0;
    int hits = 0;
    int queries = 0;
    double hit_fraction = 0.0;
    bool accepted = false;
    std::vector<TranscriptEntry> transcript;
};

struct ProtocolResult {
    int accepts = 0;
    int rejects = 0;
    bool short_circuit = false;  ///< b > kbits: plain sampling of Omega, no prover
    int kbits = 0;
    int b = 0;
    double threshold = 0.0;
    std::vector<TrialRecord> trials;
};

/**
 * Run `trials` independent executions, each with `queries` verifier samples.
 * The hashed run accepts when the hit fraction reaches 2^{-(n+5)/2}, the
 * geometric midpoint of 1/(8k) and k/2^{n+2}. The short-circuit run compares
 * the density of Omega with sqrt(LARGE SMALL)/2^kbits.
 */
ProtocolResult run_gs_protocol(const CountingInstance& c, Prover prover, int trials, std::uint64_t seed,
                               int queries = 64, bool record_transcript = true);

}  // namespace stoq
