// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

#include "oracle.hpp"
#include "stoq/gmatrix.hpp"
#include "stoq/models.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace stoq;
using Catch::Matchers::WithinAbs;
using oracle::op;

namespace {

LocalHamiltonian single(int n, std::vector<int> s, const CMat& m) {
    const int k = static_cast<int>(s.size());
    return LocalHamiltonian(n, k, {LocalTerm(std::move(s), m)});
}

/** Dense reference for the library's term layout: local bit i sits on support[i]. */
CMat reference_dense(const LocalHamiltonian& h) {
    const int n = h.n();
    CMat out = CMat::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (const auto& t : h.terms()) {
        // Expand the term matrix in the basis of single-qubit units |a><b|.
        const int j = static_cast<int>(t.support.size());
        for (Eigen::Index r = 0; r < t.matrix.rows(); ++r)
            for (Eigen::Index c = 0; c < t.matrix.cols(); ++c) {
                if (t.matrix(r, c) == cplx(0.0)) continue;
                std::map<int, CMat> ops;
                for (int i = 0; i < j; ++i) {
                    CMat u = CMat::Zero(2, 2);
                    u((r >> i) & 1, (c >> i) & 1) = 1.0;
                    ops[t.support[static_cast<std::size_t>(i)]] = u;
                }
                out += t.matrix(r, c) * op(n, ops);
            }
    }
    return out;
}

CMat random_hermitian(int dim, std::mt19937_64& rng, bool real) {
    std::normal_distribution<double> g;
    CMat a(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) a(r, c) = cplx(g(rng), real ? 0.0 : g(rng));
    return 0.5 * (a + a.adjoint());
}

LocalHamiltonian random_local(int n, int k, int terms, std::uint64_t seed, bool real) {
    std::mt19937_64 rng(seed);
    std::vector<LocalTerm> ts;
    for (int t = 0; t < terms; ++t) {
        std::vector<int> q(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i)] = i;
        std::shuffle(q.begin(), q.end(), rng);
        const int j = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(k));
        std::vector<int> s(q.begin(), q.begin() + j);
        std::sort(s.begin(), s.end());
        ts.emplace_back(s, random_hermitian(1 << j, rng, real));
    }
    return LocalHamiltonian(n, k, std::move(ts));
}

}  // namespace

TEST_CASE("construction validates terms") {
    const CMat x = pauli_x().cast<cplx>();
    CHECK_THROWS_AS(single(2, {2}, x), InputError);
    CHECK_THROWS_AS(LocalHamiltonian(3, 2, {LocalTerm({1, 0}, kron(x, x))}), InputError);
    CHECK_THROWS_AS(LocalHamiltonian(3, 1, {LocalTerm({0, 1}, kron(x, x))}), InputError);
    CHECK_THROWS_AS(single(2, {0}, kron(x, x)), InputError);
    CMat bad = x;
    bad(0, 1) = 2.0;
    CHECK_THROWS_AS(single(1, {0}, bad), InputError);
    CHECK_NOTHROW(single(1, {0}, x));
}

TEST_CASE("norm bound dominates the dense norm") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto h = random_local(5, 3, 6, seed, seed % 2 == 0);
        const auto ev = oracle::eigenvalues(reference_dense(h));
        const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
        CHECK(h.norm_bound() >= norm - 1e-10);
    }
}

TEST_CASE("matrix_element examples") {
    const auto mx = single(1, {0}, -pauli_x().cast<cplx>());
    CHECK(matrix_element(mx, 0, 1) == cplx(-1.0));
    const CMat zz = -kron(pauli_z().cast<cplx>(), pauli_z().cast<cplx>());
    const auto hzz = single(2, {0, 1}, zz);
    CHECK(matrix_element(hzz, 0b00, 0b00) == cplx(-1.0));
    CHECK(matrix_element(hzz, 0b01, 0b01) == cplx(1.0));
    CHECK(matrix_element(hzz, 0b00, 0b11) == cplx(0.0));
    CHECK_THROWS_AS(matrix_element(hzz, 0b100, 0), InputError);

    ModelParams p;
    p.n = 2;
    const auto ti = transverse_ising(p);
    const CMat ref = -op(2, {{0, oracle::X()}}) - op(2, {{1, oracle::X()}}) - op(2, {{0, oracle::Z()}, {1, oracle::Z()}});
    CHECK(matrix_element(ti, 0b00, 0b01) == ref(0, 1));
    CHECK(ref(0, 1) == cplx(-1.0));
}

TEST_CASE("oracles agree with an independent dense build") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto h = random_local(5, 3, 5, seed, seed % 3 == 0);
        const CMat ref = reference_dense(h);
        CHECK((dense_matrix(h) - ref).cwiseAbs().maxCoeff() < 1e-12);
        for (Bits x = 0; x < 32; ++x) {
            const auto r = row(h, x);
            CHECK(std::is_sorted(r.begin(), r.end(), [](auto& a, auto& b) { return a.first < b.first; }));
            cplx sum_row = 0.0, sum_ref = 0.0;
            for (const auto& [y, v] : r) {
                CHECK(std::abs(v - matrix_element(h, x, y)) < 1e-12);
                sum_row += v;
            }
            for (Bits y = 0; y < 32; ++y) {
                CHECK(std::abs(matrix_element(h, x, y) - ref(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y))) < 1e-12);
                sum_ref += ref(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
            }
            CHECK(std::abs(sum_row - sum_ref) < 1e-12);
        }
    }
}

TEST_CASE("stoquasticity examples") {
    ModelParams p;
    p.n = 4;
    CHECK(check_stoquastic(transverse_ising(p), true).is_stoquastic);
    CHECK(check_stoquastic(transverse_ising(p), false).is_stoquastic);

    p.n = 2;
    const auto afm = heisenberg_afm(p);
    const auto rep = check_stoquastic(afm, false);
    CHECK_FALSE(rep.is_stoquastic);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].x == 0b01);
    CHECK(rep.violations[0].y == 0b10);
    CHECK(rep.violations[0].value == cplx(2.0));

    p.p = 1.0;
    p.q = 0.5;
    CHECK(check_stoquastic(ferro_xy(p), true).is_termwise_stoquastic);
    p.q = 1.5;
    CHECK_THROWS_AS(ferro_xy(p), InputError);

    // +0.5 X and -1 X on the same qubit: stoquastic only as a sum.
    const CMat x = pauli_x().cast<cplx>();
    const LocalHamiltonian split(1, 1, {LocalTerm({0}, CMat(0.5 * x)), LocalTerm({0}, CMat(-1.0 * x))});
    const auto r2 = check_stoquastic(split, true);
    CHECK_FALSE(r2.is_termwise_stoquastic);
    CHECK(r2.is_stoquastic);

    const LocalHamiltonian imag(1, 1, {LocalTerm({0}, pauli_y())});
    CHECK_FALSE(check_stoquastic(imag, false).is_stoquastic);
}

TEST_CASE("full scan flags every positive off-diagonal of random instances") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto h = random_local(4, 2, 4, seed, true);
        const CMat ref = reference_dense(h);
        bool expect = true;
        for (Eigen::Index r = 0; r < ref.rows(); ++r)
            for (Eigen::Index c = 0; c < ref.cols(); ++c)
                if (r != c && ref(r, c).real() > 1e-12) expect = false;
        const auto rep = check_stoquastic(h, false);
        CHECK(rep.is_stoquastic == expect);
        if (rep.is_termwise_stoquastic) CHECK(rep.is_stoquastic);
    }
}

TEST_CASE("bipartite basis change") {
    ModelParams p;
    p.n = 2;
    const auto afm = heisenberg_afm(p);
    const auto rot = bipartite_basis_change(afm, {false, true});
    CHECK(check_stoquastic(rot, false).is_stoquastic);
    CHECK(matrix_element(rot, 0b01, 0b10) == -matrix_element(afm, 0b01, 0b10));

    const auto same = bipartite_basis_change(afm, {false, false});
    for (std::size_t t = 0; t < afm.terms().size(); ++t) CHECK(same.terms()[t].matrix == afm.terms()[t].matrix);

    p.n = 4;
    const auto afm4 = heisenberg_afm(p);
    const auto rot4 = bipartite_basis_change(afm4, chain_coloring(4));
    CHECK(check_stoquastic(rot4, true).is_stoquastic);
    const auto e1 = oracle::eigenvalues(reference_dense(afm4));
    const auto e2 = oracle::eigenvalues(reference_dense(rot4));
    CHECK((e1 - e2).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS_AS(bipartite_basis_change(afm4, {true}), InputError);

    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const auto h = random_local(6, 2, 6, seed, false);
        std::vector<bool> col(6);
        for (int i = 0; i < 6; ++i) col[static_cast<std::size_t>(i)] = ((seed >> i) & 1) != 0;
        const auto a = oracle::eigenvalues(reference_dense(h));
        const auto b = oracle::eigenvalues(reference_dense(bipartite_basis_change(h, col)));
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("model builders") {
    ModelParams p;
    p.n = 2;
    CHECK_THAT(oracle::lambda_min(dense_matrix(transverse_ising(p))), WithinAbs(-std::sqrt(5.0), 1e-12));
    p.p = p.q = 1.0;
    CHECK_THAT(oracle::lambda_min(dense_matrix(ferro_xy(p))), WithinAbs(-2.0, 1e-12));
    const CMat ref = -(op(2, {{0, oracle::X()}, {1, oracle::X()}}) + op(2, {{0, oracle::Y()}, {1, oracle::Y()}}));
    CHECK((dense_matrix(ferro_xy(p)) - ref).cwiseAbs().maxCoeff() < 1e-14);

    ModelParams c;
    c.seed = 7;
    const auto ising = ising_3d_classical(c);
    CHECK(ising.n() == 8);
    CHECK(check_stoquastic(ising, true).is_stoquastic);
    const CMat d = dense_matrix(ising);
    CHECK((d - CMat(d.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
    for (const auto& t : ising.terms()) {
        const double j = -t.matrix(0, 0).real();
        CHECK((j == 1.0 || j == -1.0));
    }
    CHECK_THROWS_AS(model_builder("nope", p), InputError);
    for (const auto& name : model_names()) CHECK_NOTHROW(model_builder(name, p));
}

TEST_CASE("G matrix examples") {
    const auto mx = single(1, {0}, -pauli_x().cast<cplx>());
    const GMatrix g = to_g_matrix(mx, GMode::norm_shift);
    CHECK(g.scale() == 1.0);
    CHECK(g.element(0, 1) == 0.5);
    CHECK_THAT(oracle::lambda_max_real(g.dense()), WithinAbs(1.0, 1e-14));

    CHECK(walk_q(2, 2, 1.0) == 8.0);
    CHECK(walk_q(3, 1, 0.1) == 2.0);

    const LocalHamiltonian zero(2, 1, {});
    const GMatrix gz = to_g_matrix(zero, GMode::walk_shift);
    for (Bits x = 0; x < 4; ++x) CHECK(gz.row_sum(x) == 0.5);

    const GMatrix g2 = to_g_matrix(mx, GMode::walk_shift, 2.0);
    CHECK(g2.element(0, 0) == 0.5);
    CHECK(g2.element(0, 1) == 0.25);
    CHECK(g2.row_sum(0) == 0.75);
    CHECK_THROWS_AS(to_g_matrix(mx, GMode::walk_shift, 0.5), ScalingError);

    ModelParams p;
    p.n = 2;
    CHECK_THROWS_AS(to_g_matrix(heisenberg_afm(p), GMode::norm_shift), NotStoquasticError);
}

TEST_CASE("G matrix invariants on random stoquastic instances") {
    std::mt19937_64 rng(99);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const int n = 3 + static_cast<int>(seed % 5);
        const auto h = random_stoquastic(n, seed);
        for (GMode mode : {GMode::norm_shift, GMode::walk_shift}) {
            const GMatrix g = to_g_matrix(h, mode);
            const Bits dim = Bits{1} << n;
            for (int s = 0; s < 1000; ++s) {
                const Bits x = rng() % dim, y = rng() % dim;
                const double e = g.element(x, y);
                CHECK(e >= 0.0);
                CHECK(e <= 1.0);
                CHECK(e == g.element(y, x));
            }
            const double max_nnz = oracle::binom(n, 2) * 4 + 1;
            for (Bits x = 0; x < dim; ++x) {
                const auto r = g.row(x);
                CHECK(static_cast<double>(r.size()) <= max_nnz);
                double brute = 0.0, sparse = 0.0;
                for (Bits y = 0; y < dim; ++y) brute += g.element(x, y);
                for (const auto& [y, v] : r) sparse += v;
                CHECK_THAT(sparse, WithinAbs(brute, 1e-12));
                if (mode == GMode::walk_shift) {
                    CHECK(sparse >= 0.25 - 1e-12);
                    CHECK(sparse <= 1.0 + 1e-12);
                }
            }
            // G = (I - H/scale)/2 against the reference dense H.
            const RMat expect = 0.5 * (RMat::Identity(dim, dim) - reference_dense(h).real() / g.scale());
            CHECK((g.dense() - expect).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("stoquastic off-diagonals are real and nonpositive") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const int n = 2 + static_cast<int>(seed % 9);
        const auto h = random_stoquastic(n, seed + 100);
        const Bits dim = Bits{1} << n;
        for (Bits x = 0; x < dim; ++x)
            for (const auto& [y, v] : row(h, x))
                if (y != x) {
                    CHECK(v.real() <= 1e-12);
                    CHECK(v.imag() == 0.0);
                }
    }
}
