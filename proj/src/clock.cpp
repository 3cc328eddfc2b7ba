// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

#include "stoq/clock.hpp"

#include <algorithm>
#include <cmath>

namespace stoq {

void ReversibleCircuit::validate() const {
    if (r < 0 || k_anc < 0 || s < 0) throw InputError("wire counts must be nonnegative");
    if (n() < 1 || n() > 40) throw InputError("circuit needs between 1 and 40 wires");
    if (gates.empty()) throw InputError("circuit needs at least one gate");
    if (q_out < 0 || q_out >= n()) throw InputError("q_out out of range");
    for (const auto& g : gates) {
        if (g.target < 0 || g.target >= n()) throw InputError("gate target out of range");
        for (int c : {g.c1, g.c2}) {
            if (c < -1 || c >= n()) throw InputError("gate control out of range");
            if (c == g.target) throw InputError("gate control equals its target");
        }
        if (g.c1 >= 0 && g.c1 == g.c2) throw InputError("gate controls must be distinct");
    }
}

std::vector<int> ReversibleCircuit::wires(int gate) const {
    const Gate& g = gates.at(static_cast<std::size_t>(gate));
    std::vector<int> w{g.target};
    if (g.c1 >= 0) w.push_back(g.c1);
    if (g.c2 >= 0) w.push_back(g.c2);
    std::sort(w.begin(), w.end());
    return w;
}

Bits apply_gate(const Gate& g, Bits state) {
    const bool a = g.c1 < 0 || ((state >> g.c1) & 1);
    const bool b = g.c2 < 0 || ((state >> g.c2) & 1);
    return (a && b) ? state ^ (Bits{1} << g.target) : state;
}

Bits run_circuit(const ReversibleCircuit& c, Bits input, int upto) {
    const int stop = upto < 0 ? c.T() : std::min(upto, c.T());
    for (int i = 0; i < stop; ++i) input = apply_gate(c.gates[static_cast<std::size_t>(i)], input);
    return input;
}

Bits initial_state(const ReversibleCircuit& c, Bits coins, Bits witness) {
    return (coins & ((Bits{1} << c.r) - 1)) | ((witness & ((Bits{1} << c.s) - 1)) << (c.r + c.k_anc));
}

double acceptance_probability(const ReversibleCircuit& c, Bits witness) {
    c.validate();
    if (c.r > kCoinCap) throw CapacityError("coin count above the brute-force cap");
    if (c.s < 64 && (witness >> c.s) != 0) throw InputError("witness longer than s bits");
    long long acc = 0;
    const Bits coins = Bits{1} << c.r;
    for (Bits cs = 0; cs < coins; ++cs)
        if ((run_circuit(c, initial_state(c, cs, witness)) >> c.q_out) & 1) ++acc;
    return static_cast<double>(acc) / static_cast<double>(coins);
}

std::vector<double> acceptance_operator(const ReversibleCircuit& c) {
    if (c.s > 12) throw CapacityError("witness count above 12");
    std::vector<double> m(std::size_t{1} << c.s);
    for (Bits z = 0; z < m.size(); ++z) m[z] = acceptance_probability(c, z);
    return m;
}

RMat gate_matrix(const ReversibleCircuit& c, int gate) {
    const Gate& g = c.gates.at(static_cast<std::size_t>(gate));
    const std::vector<int> w = c.wires(gate);
    const auto dim = Eigen::Index{1} << w.size();
    RMat m = RMat::Zero(dim, dim);
    for (Bits l = 0; l < static_cast<Bits>(dim); ++l) {
        const Bits out = extract_bits(apply_gate(g, deposit_bits(l, w)), w);
        m(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(l)) = 1.0;
    }
    return m;
}

namespace {

/** |a><b| on `bits` clock qubits. */
RMat ket_bra(int bits, Bits a, Bits b) {
    const auto dim = Eigen::Index{1} << bits;
    RMat m = RMat::Zero(dim, dim);
    m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = 1.0;
    return m;
}

LocalHamiltonian build(int n, std::vector<LocalTerm> terms) {
    int k = 0;
    for (const auto& t : terms) k = std::max(k, static_cast<int>(t.support.size()));
    return LocalHamiltonian(n, k, std::move(terms));
}

}  // namespace

ClockInstance build_clock_hamiltonian(const ReversibleCircuit& c) {
    c.validate();
    const int T = c.T();
    if (T < 2) throw PreconditionError("clock construction needs T >= 2");
    const int n = c.n();
    const int N = n + T;
    auto clk = [n](int t) { return n + t - 1; };

    ClockInstance ci;
    ci.T = T;
    ci.n_comp = n;
    for (int i = 0; i < c.r; ++i) ci.labels.push_back("coin");
    for (int i = 0; i < c.k_anc; ++i) ci.labels.push_back("anc");
    for (int i = 0; i < c.s; ++i) ci.labels.push_back("witness");
    for (int t = 1; t <= T; ++t) ci.labels.push_back("clock");

    const RMat minus = 0.5 * (RMat(2, 2) << 1, -1, -1, 1).finished();
    std::vector<LocalTerm> in, out, prop, clock;
    for (int i = 0; i < c.r; ++i) in.push_back(product_term({i}, minus, {clk(1)}, proj0()));
    for (int j = 0; j < c.k_anc; ++j) in.push_back(product_term({c.r + j}, proj1(), {clk(1)}, proj0()));
    out.push_back(product_term({c.q_out}, proj0(), {clk(T)}, proj1()));
    for (int t = 2; t <= T; ++t) clock.emplace_back(std::vector<int>{clk(t - 1), clk(t)}, ket_bra(2, 2, 2));

    for (int t = 1; t <= T; ++t) {
        // Local clock index: earliest clock qubit is the low bit.
        std::vector<int> cw;
        Bits before = 0, after = 0;
        if (t == 1) {
            cw = {clk(1), clk(2)};
            before = 0b00;  // |00>_{1,2}
            after = 0b01;   // |10>_{1,2}
        } else if (t < T) {
            cw = {clk(t - 1), clk(t), clk(t + 1)};
            before = 0b001;  // |100>_{t-1,t,t+1}
            after = 0b011;   // |110>
        } else {
            cw = {clk(T - 1), clk(T)};
            before = 0b01;  // |10>_{T-1,T}
            after = 0b11;   // |11>
        }
        const int cb = static_cast<int>(cw.size());
        const std::vector<int> gw = c.wires(t - 1);
        const RMat id = RMat::Identity(Eigen::Index{1} << gw.size(), Eigen::Index{1} << gw.size());
        const RMat diag = ket_bra(cb, before, before) + ket_bra(cb, after, after);
        const RMat hop = ket_bra(cb, after, before) + ket_bra(cb, before, after);
        LocalTerm d = product_term(gw, id, cw, diag);
        LocalTerm h = product_term(gw, gate_matrix(c, t - 1), cw, hop);
        prop.emplace_back(d.support, RMat(d.matrix.real() - h.matrix.real()));
    }

    ci.h_in = build(N, in);
    ci.h_out = build(N, out);
    ci.h_prop = build(N, prop);
    ci.h_clock = build(N, clock);
    std::vector<LocalTerm> all = in;
    all.insert(all.end(), out.begin(), out.end());
    all.insert(all.end(), prop.begin(), prop.end());
    all.insert(all.end(), clock.begin(), clock.end());
    ci.hamiltonian = build(N, std::move(all));
    return ci;
}

Eigen::VectorXd build_history_state(const ReversibleCircuit& c, Bits witness, bool coins_superposed, Bits coins,
                                    int cap) {
    c.validate();
    const int n = c.n(), T = c.T();
    if (n + T > cap) throw CapacityError("history state above the qubit cap");
    Eigen::VectorXd eta = Eigen::VectorXd::Zero(Eigen::Index{1} << (n + T));
    const Bits ncoin = coins_superposed ? (Bits{1} << c.r) : 1;
    const double amp = 1.0 / std::sqrt(static_cast<double>(ncoin) * (T + 1));
    for (Bits cs = 0; cs < ncoin; ++cs) {
        Bits state = initial_state(c, coins_superposed ? cs : coins, witness);
        for (int tau = 0; tau <= T; ++tau) {
            if (tau > 0) state = apply_gate(c.gates[static_cast<std::size_t>(tau - 1)], state);
            const Bits unary = ((Bits{1} << tau) - 1) << n;
            eta(static_cast<Eigen::Index>(state | unary)) += amp;
        }
    }
    return eta;
}

}  // namespace stoq
