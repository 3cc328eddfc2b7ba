// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

#include "stoq/amproto.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace stoq {

BinaryEnsemble::BinaryEnsemble(GMatrix g, int m) : g_(std::move(g)), m_(m) {
    if (m < 1 || m > 30) throw InputError("digit count m must be in [1, 30]");
}

std::uint64_t BinaryEnsemble::numerator(Bits x, Bits y) const {
    const double scaled = std::ldexp(g_.element(x, y), m_);
    // Truncate toward zero; the guard absorbs round-off on exactly representable values.
    const auto num = static_cast<std::uint64_t>(std::floor(scaled + 1e-12));
    return std::min(num, (std::uint64_t{1} << m_) - 1);
}

bool BinaryEnsemble::member(std::uint64_t t, Bits x, Bits y) const {
    if (t == 0) return false;
    const int j = std::countr_zero(t) + 1;
    if (j > m_) return false;
    return (numerator(x, y) >> (m_ - j)) & 1;
}

double BinaryEnsemble::average(Bits x, Bits y) const {
    std::uint64_t acc = 0;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << m_); ++t) acc += member(t, x, y) ? 1 : 0;
    return std::ldexp(static_cast<double>(acc), -m_);
}

double CountingInstance::log2_large() const { return L * (m() + std::log2(mu_plus)); }

double CountingInstance::log2_small() const { return L * (m() + std::log2(mu_minus)) + n(); }

int CountingInstance::hash_bits() const {
    // Nudge down so an exact power of two is not pushed up by round-off.
    return static_cast<int>(std::ceil(log2_large() - 1e-9)) + 3;
}

bool CountingInstance::eval_F(Bits s) const {
    const int k = kbits();
    if (k < 64 && (s >> k) != 0) throw InputError("string longer than kbits");
    const int nn = n(), mm = m();
    const Bits xmask = (Bits{1} << nn) - 1;
    const Bits tmask = (Bits{1} << mm) - 1;
    auto x_at = [&](int i) { return (s >> (L * mm + (i % L) * nn)) & xmask; };
    for (int i = 0; i < L; ++i)
        if (!ensemble.member((s >> (i * mm)) & tmask, x_at(i), x_at(i + 1))) return false;
    return true;
}

CountingInstance make_counting_instance(const GMatrix& g, int m, int L, double mu_plus, double mu_minus) {
    if (L < 2 || L % 2 != 0) throw InputError("L must be even and at least 2");
    if (!(mu_minus > 0.0 && mu_minus < mu_plus && mu_plus <= 1.0))
        throw InputError("need 0 < mu_minus < mu_plus <= 1");
    CountingInstance c{BinaryEnsemble(g, m), L, mu_plus, mu_minus};
    if (c.kbits() > 63) throw CapacityError("(m + n) L above 63 bits");
    return c;
}

CountingInstance separated_instance(const GMatrix& g, int m, int p1, double mu_plus) {
    if (p1 < 1) throw InputError("p1 must be positive");
    return make_counting_instance(g, m, 2 * g.n() * p1, mu_plus, mu_plus * std::exp2(-1.0 / p1));
}

std::vector<Bits> enumerate_omega(const CountingInstance& c, int cap) {
    if (c.kbits() > cap) throw CapacityError("Omega enumeration above the bit cap");
    std::vector<Bits> out;
    const Bits total = Bits{1} << c.kbits();
    for (Bits s = 0; s < total; ++s)
        if (c.eval_F(s)) out.push_back(s);
    return out;
}

std::uint64_t count_omega_bruteforce(const CountingInstance& c, int cap) {
    if (c.kbits() > cap) throw CapacityError("Omega enumeration above the bit cap");
    std::uint64_t count = 0;
    const Bits total = Bits{1} << c.kbits();
    for (Bits s = 0; s < total; ++s) count += c.eval_F(s) ? 1 : 0;
    return count;
}

std::uint64_t count_omega_trace(const CountingInstance& c) {
    if (c.n() > 8) throw CapacityError("integer trace above 8 qubits");
    const std::size_t d = std::size_t{1} << c.n();
    std::vector<std::uint64_t> num(d * d), acc(d * d, 0), next(d * d);
    for (std::size_t x = 0; x < d; ++x) {
        acc[x * d + x] = 1;
        for (std::size_t y = 0; y < d; ++y) num[x * d + y] = c.ensemble.numerator(x, y);
    }
    auto mul_add = [](std::uint64_t a, std::uint64_t b, std::uint64_t& into) {
        std::uint64_t p;
        if (__builtin_mul_overflow(a, b, &p) || __builtin_add_overflow(into, p, &into))
            throw CapacityError("|Omega| overflows 64 bits");
    };
    for (int step = 0; step < c.L; ++step) {
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k) {
                if (acc[i * d + k] == 0) continue;
                for (std::size_t j = 0; j < d; ++j)
                    if (num[k * d + j] != 0) mul_add(acc[i * d + k], num[k * d + j], next[i * d + j]);
            }
        acc.swap(next);
    }
    std::uint64_t tr = 0;
    for (std::size_t i = 0; i < d; ++i)
        if (__builtin_add_overflow(tr, acc[i * d + i], &tr)) throw CapacityError("|Omega| overflows 64 bits");
    return tr;
}

Bits HashEnsemble::apply(int j, Bits s) const {
    const auto& r = rows.at(static_cast<std::size_t>(j));
    Bits out = 0;
    while (s != 0) {
        const int i = std::countr_zero(s);
        out ^= r[static_cast<std::size_t>(i)];
        s &= s - 1;
    }
    return out;
}

HashEnsemble make_hash_ensemble(int kbits, int b, std::uint64_t seed) {
    if (kbits < 1 || kbits > 63 || b < 1 || b > 63) throw InputError("hash dimensions out of range");
    HashEnsemble h{kbits, b, {}};
    SplitMix64 rng(seed);
    h.rows.assign(static_cast<std::size_t>(kbits), std::vector<Bits>(static_cast<std::size_t>(kbits)));
    for (auto& mat : h.rows)
        for (auto& r : mat) r = rng.bits(b);
    return h;
}

std::optional<Bits> solve_preimage(const std::vector<Bits>& rows, int b, Bits y, SplitMix64* rng) {
    // Elimination with a combination mask tracked per pivot.
    std::vector<Bits> vec(static_cast<std::size_t>(b), 0), comb(static_cast<std::size_t>(b), 0);
    std::vector<bool> has(static_cast<std::size_t>(b), false);
    std::vector<Bits> kernel;
    auto reduce = [&](Bits& v, Bits& cm) {
        for (int p = b - 1; p >= 0; --p)
            if (((v >> p) & 1) && has[static_cast<std::size_t>(p)]) {
                v ^= vec[static_cast<std::size_t>(p)];
                cm ^= comb[static_cast<std::size_t>(p)];
            }
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Bits v = rows[i], cm = Bits{1} << i;
        reduce(v, cm);
        if (v == 0) {
            kernel.push_back(cm);
            continue;
        }
        const int p = 63 - std::countl_zero(v);
        has[static_cast<std::size_t>(p)] = true;
        vec[static_cast<std::size_t>(p)] = v;
        comb[static_cast<std::size_t>(p)] = cm;
    }
    Bits v = y, sol = 0;
    reduce(v, sol);
    if (v != 0) return std::nullopt;
    if (rng != nullptr)
        for (Bits k : kernel)
            if ((*rng)() & 1) sol ^= k;
    return sol;
}

const char* to_string(Prover p) {
    switch (p) {
        case Prover::honest: return "honest";
        case Prover::always_claim: return "always_claim";
        case Prover::random_preimage: return "random_preimage";
    }
    return "?";
}

Prover prover_from_string(const std::string& s) {
    if (s == "honest") return Prover::honest;
    if (s == "always_claim") return Prover::always_claim;
    if (s == "random_preimage") return Prover::random_preimage;
    throw InputError("unknown prover: " + s);
}

namespace {

struct Claim {
    int j = -1;
    Bits s = 0;
};

/** First (j, s) in order j then s that hits each image point. */
std::vector<Claim> honest_table(const HashEnsemble& h, const std::vector<Bits>& omega) {
    std::vector<Claim> table(std::size_t{1} << h.b);
    for (int j = 0; j < h.kbits; ++j)
        for (Bits s : omega) {
            Claim& c = table[h.apply(j, s)];
            if (c.j < 0) c = {j, s};
        }
    return table;
}

}  // namespace

ProtocolResult run_gs_protocol(const CountingInstance& c, Prover prover, int trials, std::uint64_t seed,
                               int queries, bool record_transcript) {
    if (trials < 1 || queries < 1) throw InputError("trials and queries must be positive");
    ProtocolResult res;
    res.kbits = c.kbits();
    res.b = c.hash_bits();
    res.short_circuit = res.b > res.kbits;
    if (res.kbits > kOmegaCap) throw CapacityError("instance above the exhaustive prover cap");
    res.threshold = res.short_circuit
                        ? std::exp2(0.5 * (c.log2_large() + c.log2_small()) - res.kbits)
                        : std::exp2(-0.5 * (c.n() + 5));

    std::vector<Bits> omega;
    if (!res.short_circuit && prover == Prover::honest) omega = enumerate_omega(c);

    for (int trial = 0; trial < trials; ++trial) {
        TrialRecord rec;
        rec.seed = derive_seed(seed, {static_cast<std::uint64_t>(trial)});
        rec.queries = queries;
        SplitMix64 qrng(derive_seed(rec.seed, "query"));
        if (res.short_circuit) {
            for (int q = 0; q < queries; ++q) {
                TranscriptEntry e;
                e.query = qrng.bits(res.kbits);
                e.s = e.query;
                e.hash_ok = true;
                e.member = c.eval_F(e.s);
                rec.hits += e.member ? 1 : 0;
                if (record_transcript) rec.transcript.push_back(e);
            }
        } else {
            const HashEnsemble h = make_hash_ensemble(res.kbits, res.b, derive_seed(rec.seed, "hash"));
            SplitMix64 prng(derive_seed(rec.seed, "prover"));
            std::vector<Claim> table;
            if (prover == Prover::honest) table = honest_table(h, omega);
            for (int q = 0; q < queries; ++q) {
                TranscriptEntry e;
                e.query = qrng.bits(res.b);
                Claim claim;
                if (prover == Prover::honest) {
                    claim = table[e.query];
                } else if (prover == Prover::always_claim) {
                    if (auto s = solve_preimage(h.rows[0], h.b, e.query)) claim = {0, *s};
                } else {
                    const int j = static_cast<int>(prng.below(static_cast<std::uint64_t>(h.kbits)));
                    if (auto s = solve_preimage(h.rows[static_cast<std::size_t>(j)], h.b, e.query, &prng))
                        claim = {j, *s};
                }
                if (claim.j >= 0) {
                    e.answered = true;
                    e.j = claim.j;
                    e.s = claim.s;
                    e.hash_ok = h.apply(claim.j, claim.s) == e.query;
                    e.member = c.eval_F(claim.s);
                }
                rec.hits += (e.hash_ok && e.member) ? 1 : 0;
                if (record_transcript) rec.transcript.push_back(e);
            }
        }
        rec.hit_fraction = static_cast<double>(rec.hits) / queries;
        rec.accepted = rec.hit_fraction >= res.threshold;
        (rec.accepted ? res.accepts : res.rejects) += 1;
        res.trials.push_back(std::move(rec));
    }
    return res;
}

}  // namespace stoq
