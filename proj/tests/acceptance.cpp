// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion. With an argument k it
// runs only criterion k. The exit status is nonzero when any criterion fails.

#include "oracle.hpp"
#include "stoq/amproto.hpp"
#include "stoq/clock.hpp"
#include "stoq/cli.hpp"
#include "stoq/exact.hpp"
#include "stoq/gadget.hpp"
#include "stoq/json_io.hpp"
#include "stoq/models.hpp"
#include "stoq/walk.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace stoq;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    Verdict() { detail.precision(9); }

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [miss: " << what << "]";
        }
    }
};

using Criterion = std::function<void(Verdict&)>;

// ---- shared oracles ----

/** Eigenvalues of a real symmetric matrix, descending, with eigenvectors. */
struct Eig {
    Eigen::VectorXd values;
    RMat vectors;
};

Eig eig_desc(const RMat& g) {
    Eigen::SelfAdjointEigenSolver<RMat> es(g);
    const Eigen::Index d = g.rows();
    Eig e{Eigen::VectorXd(d), RMat(d, d)};
    for (Eigen::Index i = 0; i < d; ++i) {
        e.values(i) = es.eigenvalues()(d - 1 - i);
        e.vectors.col(i) = es.eigenvectors().col(d - 1 - i);
    }
    return e;
}

/** sum_{x,y} G^L_{x,y} / mu0^L from the spectral decomposition; scaled to avoid underflow. */
double sum_power_scaled(const Eig& e, long L) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < e.values.size(); ++i) {
        const double o = e.vectors.col(i).sum();
        s += std::pow(e.values(i) / e.values(0), static_cast<double>(L)) * o * o;
    }
    return s;
}

// ---- criterion 1 ----

void stoquasticity_suite(Verdict& v) {
    ModelParams p;
    p.n = 6;
    v.require(check_stoquastic(transverse_ising(p), false).is_stoquastic, "transverse Ising");
    for (auto [pp, qq] : {std::pair{1.0, 0.0}, {1.0, 0.5}, {1.0, 1.0}, {2.0, 0.3}}) {
        p.p = pp;
        p.q = qq;
        v.require(check_stoquastic(ferro_xy(p), false).is_stoquastic, "ferro XY");
    }
    const auto afm = heisenberg_afm(p);
    v.require(check_stoquastic(bipartite_basis_change(afm, chain_coloring(p.n)), false).is_stoquastic,
              "rotated Heisenberg");
    ModelParams two;
    two.n = 2;
    const auto rep = check_stoquastic(heisenberg_afm(two), false);
    const bool exact = !rep.is_stoquastic && rep.violations.size() == 1 && rep.violations[0].x == 0b01 &&
                       rep.violations[0].y == 0b10 && rep.violations[0].value == cplx(2.0);
    v.require(exact, "plain Heisenberg (01,10) violation");
    v.require(!check_stoquastic(afm, false).is_stoquastic, "plain Heisenberg n=6 must fail");
    v.detail << "violation (01,10) = 2";
}

// ---- criterion 2 ----

void perron_frobenius(Verdict& v) {
    double worst = 1.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const int n = 2 + static_cast<int>(seed % 7);
        const auto s = diagonalize_dense(random_stoquastic(n, seed));
        worst = std::min(worst, s.ground_vector.minCoeff());
    }
    v.detail << "min entry over 100 instances " << worst;
    v.require(worst >= -1e-10, "negative ground-vector entry");
}

// ---- criterion 3 ----

/** Uniform projector -J/2^n plus weak seeded Z fields: a gapped instance with nonuniform row sums. */
LocalHamiltonian projector_instance(int n, std::uint64_t seed, double eps, double& row_bound) {
    const auto dim = Eigen::Index{1} << n;
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    std::vector<LocalTerm> t{LocalTerm(all, RMat(RMat::Constant(dim, dim, -1.0 / static_cast<double>(dim))))};
    SplitMix64 rng(seed);
    row_bound = 1.0;
    for (int i = 0; i < n; ++i) {
        const double f = eps * (2.0 * rng.uniform() - 1.0);
        row_bound += std::abs(f);
        t.emplace_back(std::vector<int>{i}, RMat(f * pauli_z()));
    }
    return LocalHamiltonian(n, n, std::move(t));
}

void walk_vs_oracle(Verdict& v) {
    constexpr long kWalks = 10000;
    constexpr int kRuns = 30;
    constexpr double kBudget = 2e8;  // expected attempts per run we are willing to simulate
    for (int n : {2, 4, 6}) {
        double R = 0.0;
        const auto h = projector_instance(n, 1000 + static_cast<std::uint64_t>(n), 0.05, R);
        const GMatrix g = to_g_matrix(h, GMode::walk_shift, 2.0 * R);
        const RMat d = g.dense();
        const Eig e = eig_desc(d);
        const double mu0 = e.values(0), mu1 = e.values(1);
        const double r = 1.0 / (std::log2(mu0) - std::log2(mu1));
        const long L = static_cast<long>(std::ceil(5.0 * n * r / 2.0));
        const double survival =
            std::pow(mu0, static_cast<double>(L)) * sum_power_scaled(e, L) / static_cast<double>(d.rows());
        const double expected_attempts = static_cast<double>(kWalks) / survival;
        v.detail << " n=" << n << ": L=" << L << " survival=" << survival;
        if (expected_attempts > kBudget) {
            v.detail << " expected attempts/run " << expected_attempts << " exceed budget";
            v.require(false, "n=" + std::to_string(n) + " post-selection infeasible");
            continue;
        }
        int good = 0;
        Eigen::VectorXd hist = Eigen::VectorXd::Zero(d.rows());
        for (int run = 0; run < kRuns; ++run) {
            WalkParams p;
            p.L = L;
            p.w = kWalks;
            p.seed = derive_seed(77, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(run)});
            try {
                const auto out = run_postselected(g, p);
                if (std::abs(out.mu_est - mu0) <= 0.02) ++good;
                for (Bits x : out.samples) hist(static_cast<Eigen::Index>(x)) += 1.0;
            } catch (const PostSelectionError&) {
            }
        }
        v.detail << " hits=" << good << "/" << kRuns;
        v.require(3 * good >= 2 * kRuns, "n=" + std::to_string(n) + " too few runs within 0.02");
        if (n == 4) {
            RMat gl = RMat::Identity(d.rows(), d.cols());
            for (long t = 0; t < L; ++t) gl = gl * d;
            Eigen::VectorXd law = gl.colwise().sum().transpose();
            law /= law.sum();
            hist /= hist.sum();
            const double tv = 0.5 * (hist - law).cwiseAbs().sum();
            v.detail << " TV=" << tv;
            v.require(tv <= 0.02, "n=4 total variation");
        }
    }
}

// ---- criterion 4 ----

void gap_ratio(Verdict& v) {
    for (int n : {4, 6, 8}) {
        ModelParams p;
        p.n = n;
        p.h = 1.5;
        std::vector<LocalHamiltonian> insts{transverse_ising(p), random_stoquastic(n, 40 + n)};
        for (const auto& h : insts) {
            const GMatrix g = to_g_matrix(h, GMode::walk_shift);
            const Eig e = eig_desc(g.dense());
            const double mu0 = e.values(0), mu1 = e.values(1);
            const double r = 1.0 / (std::log2(mu0) - std::log2(mu1));
            const long L = static_cast<long>(std::ceil(5.0 * n * r / 2.0));
            const double ratio = mu0 * sum_power_scaled(e, L + 1) / sum_power_scaled(e, L);
            const double err = std::abs(ratio - mu0);
            v.detail << " n=" << n << " L=" << L << " err=" << err;
            v.require(err <= 4.0 * std::ldexp(1.0, -n), "n=" + std::to_string(n) + " ratio off");
        }
    }
}

// ---- criterion 5 ----

LocalHamiltonian xxx_target() {
    const RMat x = oracle::op(3, {{0, oracle::X()}, {1, oracle::X()}, {2, oracle::X()}}).real();
    return LocalHamiltonian(3, 3, {LocalTerm({0, 1, 2}, RMat(-6.0 * x))});
}

LocalHamiltonian sigma_target() {
    RMat m = RMat::Zero(8, 8);
    m(0, 7) = m(7, 0) = -3.0;
    return LocalHamiltonian(3, 3, {LocalTerm({0, 1, 2}, m), LocalTerm({0}, RMat(-0.5 * pauli_x()))});
}

constexpr double kNoPin = std::numeric_limits<double>::quiet_NaN();

bool close_to_pin(double got, double pin) {
    return std::isnan(pin) || std::abs(got - pin) <= 1e-6 * std::max(1.0, std::abs(pin));
}

void gadget_chain(Verdict& v) {
    const std::vector<double> deltas{0.3, 0.2, 0.1};
    struct Target {
        const char* name;
        LocalHamiltonian h;
        // Pinned verified errors per stage (normalize, triplex, kkr) and delta; NaN when never green.
        std::vector<std::vector<double>> pins;
    };
    std::vector<Target> targets{
        {"xxx", xxx_target(), {{0, 0, 0}, {0, 0, 0}, {2.78605792, 1.21780381, 0.110105646}}},
        {"sigma", sigma_target(), {{0, 0, 0}, {0.273677022, 0.0732425865, 0.0176445979}, {kNoPin, kNoPin, kNoPin}}},
    };
    for (const auto& tg : targets) {
        std::vector<std::vector<double>> errs(3);
        for (double d : deltas) {
            const auto stages = full_chain(tg.h, d);
            int input_loc = tg.h.max_support();
            for (int s = 0; s < 3; ++s) {
                const auto& r = stages[s];
                v.require(check_stoquastic(r.compiled, true).is_termwise_stoquastic,
                          std::string(tg.name) + " " + r.stage + " not termwise stoquastic");
                v.require(check_locality_contract(r, input_loc).empty(),
                          std::string(tg.name) + " " + r.stage + " locality contract");
                input_loc = r.compiled.max_support();
                v.require(r.verified, std::string(tg.name) + " " + r.stage + " unverified");
                errs[s].push_back(r.verified_error);
            }
        }
        for (int s = 0; s < 3; ++s) {
            const char* stage = s == 0 ? "normalize" : s == 1 ? "triplex" : "kkr";
            v.detail << " " << tg.name << "/" << stage << "=";
            for (std::size_t i = 0; i < errs[s].size(); ++i) v.detail << (i ? "," : "") << errs[s][i];
            const bool identity = std::all_of(errs[s].begin(), errs[s].end(), [](double e) { return e == 0.0; });
            const bool decreasing = errs[s][0] > errs[s][1] && errs[s][1] > errs[s][2];
            v.require(identity || decreasing, std::string(tg.name) + "/" + stage + " error not decreasing");
            for (std::size_t i = 0; i < errs[s].size(); ++i)
                v.require(close_to_pin(errs[s][i], tg.pins[s][i]), std::string(tg.name) + "/" + stage + " pin");
        }
    }
    for (double d : deltas) {
        const auto r = triple_x_reduce(sigma_target(), d, false);
        const auto se = triple_x_self_energy(r, -3.0);
        const double o2 = hermitian_norm((se.sigma2 - se.second_order_shift * RMat::Identity(8, 8)).cast<cplx>());
        const double n3 = hermitian_norm(se.sigma3.cast<cplx>());
        v.detail << " d=" << d << " |S2-Om|=" << o2 << " |S3|/|S4|=" << n3 / se.sigma4_norm;
        v.require(o2 <= 10.0 * std::pow(d, 4), "order-2 self-energy off the shift");
        v.require(n3 >= 0.5 / d * se.sigma4_norm, "order-4 not small against order 3");
    }
}

// ---- criterion 6 ----

ReversibleCircuit random_circuit(SplitMix64& rng) {
    ReversibleCircuit c;
    c.r = static_cast<int>(rng.below(3));
    c.k_anc = 1 + static_cast<int>(rng.below(2));
    c.s = 1 + static_cast<int>(rng.below(2));
    const int n = c.n();
    const int T = 2 + static_cast<int>(rng.below(4));
    c.q_out = c.r + static_cast<int>(rng.below(static_cast<std::uint64_t>(c.k_anc + c.s)));
    for (int g = 0; g < T; ++g) {
        Gate gate;
        gate.target = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const int kind = static_cast<int>(rng.below(3));
        auto other = [&](int avoid1, int avoid2) {
            int w;
            do { w = static_cast<int>(rng.below(static_cast<std::uint64_t>(n))); } while (w == avoid1 || w == avoid2);
            return w;
        };
        if (kind >= 1 && n >= 2) gate.c1 = other(gate.target, -2);
        if (kind == 2 && n >= 3) gate.c2 = other(gate.target, gate.c1);
        c.gates.push_back(gate);
    }
    return c;
}

void clock_construction(Verdict& v) {
    SplitMix64 rng(2026);
    int accepting = 0, rejecting = 0;
    double worst_accept_excess = -1.0, c_min = 1e300;
    while (accepting + rejecting < 20) {
        const ReversibleCircuit c = random_circuit(rng);
        if (c.n() + c.T() > 10) continue;
        try {
            c.validate();
        } catch (const InputError&) {
            continue;
        }
        const auto acc = acceptance_operator(c);
        const double best = *std::max_element(acc.begin(), acc.end());
        const bool is_acc = best >= 0.9, is_rej = best <= 0.1;
        if ((is_acc && accepting >= 10) || (is_rej && rejecting >= 10) || (!is_acc && !is_rej)) continue;
        const auto ci = build_clock_hamiltonian(c);
        v.require(check_stoquastic(ci.hamiltonian, true).is_stoquastic, "clock Hamiltonian not stoquastic");
        v.require(ci.hamiltonian.max_support() <= 6, "clock Hamiltonian above 6-local");
        for (Bits z = 0; z < acc.size(); ++z) {
            const Eigen::VectorXd eta = build_history_state(c, z, true);
            const double ep = eta.dot(dense_real(ci.h_prop) * eta), ec = eta.dot(dense_real(ci.h_clock) * eta);
            v.require(std::abs(ep) <= 1e-10 && std::abs(ec) <= 1e-10, "history state energy");
        }
        const double lam = diagonalize_dense(ci.hamiltonian).lambda0;
        const double T = c.T();
        if (is_acc) {
            ++accepting;
            const double eps = 1.0 - best;
            worst_accept_excess = std::max(worst_accept_excess, lam - eps);
            v.require(lam <= eps + 1e-10, "accepting circuit energy above epsilon");
        } else {
            ++rejecting;
            c_min = std::min(c_min, lam * T * T * T / (1.0 - best));
        }
    }
    constexpr double kPinnedC = 1.5;  // measured minimum 1.584 on this family
    v.detail << "accepting=" << accepting << " rejecting=" << rejecting << " max(lambda-eps)=" << worst_accept_excess
             << " min lambda T^3/(1-eps)=" << c_min << " pinned c=" << kPinnedC;
    v.require(c_min >= kPinnedC && c_min > 0.0, "soundness constant below pin");
}

// ---- criterion 7 ----

void counting_identities(Verdict& v) {
    struct Case {
        LocalHamiltonian h;
        int m, L;
    };
    RMat dense = -0.5 * RMat::Ones(4, 4);
    dense.diagonal().setConstant(0.5);
    std::vector<Case> cases{{LocalHamiltonian(2, 2, {LocalTerm({0, 1}, dense)}), 2, 4},
                            {LocalHamiltonian(1, 1, {LocalTerm({0}, RMat(-pauli_x()))}), 3, 6},
                            {random_stoquastic(2, 5), 3, 4},
                            {random_stoquastic(3, 6), 2, 2},
                            {random_stoquastic(2, 7), 4, 2}};
    int checked = 0;
    for (const auto& cs : cases) {
        const GMatrix g = to_g_matrix(cs.h, GMode::norm_shift);
        const auto ci = make_counting_instance(g, cs.m, cs.L, 1.0, 0.25);
        const auto brute = count_omega_bruteforce(ci);
        // Oracle: 2^{mL} Tr(Gm^L) with Gm the m-digit truncation of G, in exact integer arithmetic.
        const auto dim = g.dense().rows();
        const double scale = std::ldexp(1.0, cs.m);
        std::vector<std::vector<unsigned long long>> num(dim, std::vector<unsigned long long>(dim));
        for (Eigen::Index x = 0; x < dim; ++x)
            for (Eigen::Index y = 0; y < dim; ++y)
                num[x][y] = static_cast<unsigned long long>(
                    std::min(std::floor(g.dense()(x, y) * scale + 1e-12), scale - 1.0));
        auto p = num;
        for (int t = 1; t < cs.L; ++t) {
            auto q = p;
            for (Eigen::Index x = 0; x < dim; ++x)
                for (Eigen::Index y = 0; y < dim; ++y) {
                    unsigned long long s = 0;
                    for (Eigen::Index z = 0; z < dim; ++z) s += p[x][z] * num[z][y];
                    q[x][y] = s;
                }
            p = q;
        }
        unsigned long long tr = 0;
        for (Eigen::Index x = 0; x < dim; ++x) tr += p[x][x];
        v.require(brute == tr, "Omega size differs from the trace");
        v.require(count_omega_trace(ci) == brute, "library trace count differs");
        const BinaryEnsemble& e = ci.ensemble;
        for (Bits x = 0; x < static_cast<Bits>(dim); ++x)
            for (Bits y = 0; y < static_cast<Bits>(dim); ++y)
                v.require(e.average(x, y) == static_cast<double>(num[x][y]) / scale, "ensemble average");
        ++checked;
    }
    // Dyadic G is reproduced exactly by the ensemble average.
    const GMatrix gx = to_g_matrix(LocalHamiltonian(1, 1, {LocalTerm({0}, RMat(-pauli_x()))}), GMode::norm_shift, 2.0);
    const BinaryEnsemble ex(gx, 3);
    for (Bits x = 0; x < 2; ++x)
        for (Bits y = 0; y < 2; ++y) v.require(ex.average(x, y) == gx.element(x, y), "dyadic reconstruction");
    for (int p1 : {1, 2, 3}) {
        const auto s = separated_instance(gx, 2, p1, 0.9);
        v.require(std::abs(s.log2_large() - s.log2_small() - s.n()) < 1e-12, "LARGE = 2^n SMALL");
    }
    v.detail << checked << " brute-forced instances";
}

// ---- criterion 8 ----

void protocol_separation(Verdict& v) {
    RMat dm = -0.5 * RMat::Ones(4, 4);
    dm.diagonal().setConstant(0.5);
    RMat sm(2, 2);
    sm << 1.0, 0.0, 0.0, 0.5;
    const std::vector<LocalHamiltonian> dense{LocalHamiltonian(2, 2, {LocalTerm({0, 1}, dm)}),
                                              LocalHamiltonian(2, 1,
                                                               {LocalTerm({0}, RMat(-pauli_x())),
                                                                LocalTerm({1}, RMat(-pauli_x()))})};
    const std::vector<LocalHamiltonian> sparse{LocalHamiltonian(2, 1, {LocalTerm({0}, sm)}),
                                               LocalHamiltonian(2, 1, {LocalTerm({1}, sm)})};
    constexpr int kSeeds = 50;
    auto rate = [&](const LocalHamiltonian& h, Prover p) {
        const auto ci = make_counting_instance(to_g_matrix(h, GMode::norm_shift), 2, 4, 1.0, 0.25);
        int acc = 0;
        for (std::uint64_t s = 0; s < kSeeds; ++s) acc += run_gs_protocol(ci, p, 1, s, 64, false).accepts;
        return static_cast<double>(acc) / kSeeds;
    };
    for (std::size_t i = 0; i < dense.size(); ++i) {
        const double r = rate(dense[i], Prover::honest);
        v.detail << " dense" << i << " honest=" << r;
        v.require(r >= 2.0 / 3.0, "honest prover rejected on a dense instance");
    }
    for (std::size_t i = 0; i < sparse.size(); ++i)
        for (Prover p : {Prover::always_claim, Prover::random_preimage}) {
            const double r = rate(sparse[i], p);
            v.detail << " sparse" << i << " " << to_string(p) << "=" << r;
            v.require(r <= 1.0 / 3.0, "cheating prover accepted on a sparse instance");
        }
}

// ---- criterion 9 ----

std::string run_cli_capture(const std::vector<std::string>& args) {
    std::vector<std::string> full{"stoqham"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : full) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::to_string(code) + "\n" + out.str();
}

void determinism(Verdict& v) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("stoqham_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto put = [&](const std::string& name, const std::string& text) {
        const fs::path p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    };
    ModelParams mp;
    mp.n = 3;
    mp.h = 0.8;
    const std::string ti = put("ti.json", to_json(transverse_ising(mp)).dump());
    const std::string sig = put("sig.json", to_json(sigma_target()).dump());
    const std::string circ =
        put("c.json", R"({"r":1,"k_anc":1,"s":1,"q_out":1,"gates":[[0,2,1],[-1,-1,0],[-1,-1,0]]})");
    const std::vector<std::vector<std::string>> commands{
        {"models", "--model", "ising_3d_classical", "--seed", "9"},
        {"exact", "--input", ti, "--method", "power", "--vector"},
        {"walk", "--input", ti, "--L", "8", "--w", "400", "--seed", "5", "--samples"},
        {"compare", "--input", ti, "--L", "8", "--w", "400", "--seed", "5"},
        {"gadget", "--input", sig, "--stage", "triplex", "--delta", "0.2", "--self-energy", "--hamiltonians"},
        {"clock", "--input", circ, "--lambda"},
        {"amproto", "--input", ti, "--m", "2", "--L", "2", "--trials", "6", "--seed", "3", "--transcript",
         "--prover", "random_preimage"},
    };
    int identical = 0;
    for (const auto& cmd : commands) {
        const std::string a = run_cli_capture(cmd), b = run_cli_capture(cmd);
        const bool ok = a == b && a.rfind("0\n", 0) == 0;
        if (ok) ++identical;
        v.require(ok, cmd[0] + " output differs or failed");
    }
    fs::remove_all(dir);
    v.detail << identical << "/" << commands.size() << " subcommands byte-identical";
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, Criterion>> criteria{
        {"stoquasticity suite", stoquasticity_suite},
        {"Perron-Frobenius nonnegativity", perron_frobenius},
        {"walk estimate versus exact oracle", walk_vs_oracle},
        {"spectral-gap ratio", gap_ratio},
        {"gadget chain", gadget_chain},
        {"clock construction", clock_construction},
        {"counting identities", counting_identities},
        {"protocol completeness and soundness", protocol_separation},
        {"determinism", determinism},
    };
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (only != 0 && only != id) continue;
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(v);
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!v.pass) ++failures;
        std::printf("%s criterion %d (%s): %s [%.2f s]\n", v.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                    v.detail.str().c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
