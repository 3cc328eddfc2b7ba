// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

#include "stoq/models.hpp"

#include <random>
#include <set>

namespace stoq {

namespace {

std::vector<std::pair<int, int>> chain_bonds(int n, bool periodic) {
    std::vector<std::pair<int, int>> b;
    for (int i = 0; i + 1 < n; ++i) b.emplace_back(i, i + 1);
    if (periodic && n > 2) b.emplace_back(0, n - 1);
    return b;
}

LocalTerm two_body(int a, int b, const CMat& m) {
    if (a > b) std::swap(a, b);
    return LocalTerm({a, b}, m);
}

void require_n(const ModelParams& p, int min_n) {
    if (p.n < min_n) throw InputError("model needs more qubits");
}

}  // namespace

LocalHamiltonian transverse_ising(const ModelParams& p) {
    require_n(p, 1);
    std::vector<LocalTerm> terms;
    const CMat zz = kron(pauli_z().cast<cplx>(), pauli_z().cast<cplx>());
    for (auto [a, b] : chain_bonds(p.n, p.periodic)) terms.push_back(two_body(a, b, -p.J * zz));
    for (int i = 0; i < p.n; ++i) terms.emplace_back(std::vector<int>{i}, RMat(-p.h * pauli_x()));
    return LocalHamiltonian(p.n, p.n >= 2 ? 2 : 1, std::move(terms));
}

LocalHamiltonian heisenberg_afm(const ModelParams& p) {
    require_n(p, 2);
    const CMat x = pauli_x().cast<cplx>(), y = pauli_y(), z = pauli_z().cast<cplx>();
    const CMat bond = p.J * (kron(x, x) + kron(y, y) + kron(z, z));
    std::vector<LocalTerm> terms;
    for (auto [a, b] : chain_bonds(p.n, p.periodic)) terms.push_back(two_body(a, b, bond));
    return LocalHamiltonian(p.n, 2, std::move(terms));
}

LocalHamiltonian ferro_xy(const ModelParams& p) {
    require_n(p, 2);
    if (p.q < 0 || p.q > p.p) throw InputError("ferro_xy requires 0 <= q <= p");
    const CMat x = pauli_x().cast<cplx>(), y = pauli_y();
    const CMat bond = -(p.p * kron(x, x) + p.q * kron(y, y));
    std::vector<LocalTerm> terms;
    for (auto [a, b] : chain_bonds(p.n, p.periodic)) terms.push_back(two_body(a, b, bond));
    return LocalHamiltonian(p.n, 2, std::move(terms));
}

LocalHamiltonian ising_3d_classical(const ModelParams& p) {
    std::vector<int> d = p.dims.empty() ? std::vector<int>{2, 2, 2} : p.dims;
    if (d.size() != 3 || d[0] < 1 || d[1] < 1 || d[2] < 1)
        throw InputError("ising_3d_classical needs three positive extents");
    const int n = d[0] * d[1] * d[2];
    if (n > kMaxQubits) throw InputError("lattice too large");
    auto site = [&](int i, int j, int k) { return i + d[0] * (j + d[1] * k); };
    std::mt19937_64 rng(p.seed);
    std::uniform_int_distribution<int> coupling(-1, 1);
    const CMat zz = kron(pauli_z().cast<cplx>(), pauli_z().cast<cplx>());
    std::vector<LocalTerm> terms;
    for (int k = 0; k < d[2]; ++k)
        for (int j = 0; j < d[1]; ++j)
            for (int i = 0; i < d[0]; ++i) {
                const int s = site(i, j, k);
                const int nb[3] = {i + 1 < d[0] ? site(i + 1, j, k) : -1,
                                   j + 1 < d[1] ? site(i, j + 1, k) : -1,
                                   k + 1 < d[2] ? site(i, j, k + 1) : -1};
                for (int t : nb) {
                    if (t < 0) continue;
                    const int jc = coupling(rng);
                    if (jc != 0) terms.push_back(two_body(s, t, static_cast<double>(jc) * zz));
                }
            }
    return LocalHamiltonian(n, 2, std::move(terms));
}

std::vector<std::string> model_names() {
    return {"transverse_ising", "heisenberg_afm", "ferro_xy", "ising_3d_classical"};
}

LocalHamiltonian model_builder(const std::string& name, const ModelParams& p) {
    if (name == "transverse_ising") return transverse_ising(p);
    if (name == "heisenberg_afm") return heisenberg_afm(p);
    if (name == "ferro_xy") return ferro_xy(p);
    if (name == "ising_3d_classical") return ising_3d_classical(p);
    throw InputError("unknown model: " + name);
}

LocalHamiltonian random_stoquastic(int n, std::uint64_t seed, int extra_bonds) {
    if (n < 2) throw InputError("random_stoquastic needs n >= 2");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::set<std::pair<int, int>> bonds;
    // A spanning path keeps the instance connected, hence G irreducible.
    for (int i = 0; i + 1 < n; ++i) bonds.emplace(i, i + 1);
    const int extra = extra_bonds >= 0 ? extra_bonds : n / 2;
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int e = 0; e < extra; ++e) {
        int a = pick(rng), b = pick(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        bonds.emplace(a, b);
    }
    std::vector<LocalTerm> terms;
    for (auto [a, b] : bonds) {
        RMat m = RMat::Zero(4, 4);
        for (int r = 0; r < 4; ++r) {
            m(r, r) = 2.0 * u(rng) - 1.0;
            for (int c = r + 1; c < 4; ++c) {
                // Sparse off-diagonals, all nonpositive.
                const double v = u(rng) < 0.6 ? -u(rng) : 0.0;
                m(r, c) = m(c, r) = v;
            }
        }
        terms.emplace_back(std::vector<int>{a, b}, m);
    }
    for (int i = 0; i < n; ++i) {
        RMat f(2, 2);
        const double off = -0.2 - 0.8 * u(rng);
        f << 2.0 * u(rng) - 1.0, off, off, 2.0 * u(rng) - 1.0;
        terms.emplace_back(std::vector<int>{i}, f);
    }
    return LocalHamiltonian(n, 2, std::move(terms));
}

std::vector<bool> chain_coloring(int n) {
    std::vector<bool> c(n);
    for (int i = 0; i < n; ++i) c[i] = (i % 2) == 1;
    return c;
}

}  // namespace stoq
