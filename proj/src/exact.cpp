// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

#include "stoq/exact.hpp"

#include <Eigen/Sparse>

#include <cmath>

namespace stoq {

void sign_fix(Eigen::VectorXd& v) {
    if (v.size() == 0) return;
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v(imax) < 0) v = -v;
}

SpectralSummary diagonalize_dense(const LocalHamiltonian& h, int cap) {
    if (h.n() > cap) throw CapacityError("dense diagonalization above the qubit cap");
    SpectralSummary s;
    if (h.is_real()) {
        Eigen::SelfAdjointEigenSolver<RMat> es(dense_real(h, cap));
        const auto& ev = es.eigenvalues();
        s.lambda0 = ev(0);
        s.lambda1 = ev.size() > 1 ? ev(1) : ev(0);
        s.ground_vector = es.eigenvectors().col(0);
        s.ground_vector.normalize();
        sign_fix(s.ground_vector);
    } else {
        Eigen::SelfAdjointEigenSolver<CMat> es(dense_matrix(h, cap), Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        s.lambda0 = ev(0);
        s.lambda1 = ev.size() > 1 ? ev(1) : ev(0);
    }
    s.gap = std::max(0.0, s.lambda1 - s.lambda0);
    return s;
}

double largest_eigenvalue_dense(const RMat& g) {
    Eigen::SelfAdjointEigenSolver<RMat> es(g, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(es.eigenvalues().size() - 1);
}

PowerResult largest_eigenvalue_power(const GMatrix& g, double tol, int max_iters, int cap) {
    if (g.n() > cap) throw CapacityError("power iteration above the qubit cap");
    const auto dim = Eigen::Index{1} << g.n();
    std::vector<Eigen::Triplet<double>> trip;
    for (Bits x = 0; x < static_cast<Bits>(dim); ++x)
        for (const auto& [y, v] : g.row(x))
            trip.emplace_back(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y), v);
    Eigen::SparseMatrix<double, Eigen::RowMajor> sp(dim, dim);
    sp.setFromTriplets(trip.begin(), trip.end());

    Eigen::VectorXd v = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    double mu = 0.0;
    int quiet = 0;
    for (int it = 1; it <= max_iters; ++it) {
        Eigen::VectorXd w = sp * v;
        const double next = v.dot(w);
        const double nw = w.norm();
        if (nw == 0.0) return {0.0, v, it};  // nilpotent on the start vector, mu = 0
        const double rel = std::abs(next - mu) / std::max(std::abs(next), 1e-300);
        mu = next;
        v = w / nw;
        quiet = rel < tol ? quiet + 1 : 0;
        if (quiet >= 10) return {mu, v, it};
    }
    throw ConvergenceError("power iteration did not converge", mu, v);
}

const char* to_string(Decision d) {
    switch (d) {
        case Decision::yes: return "yes";
        case Decision::no: return "no";
        default: return "promise_violated";
    }
}

Decision decide_lhmin(const LocalHamiltonian& h, double delta, int cap) {
    if (!(delta > 0.0)) throw InputError("delta must be positive");
    const double lambda = diagonalize_dense(h, cap).lambda0;
    if (lambda <= kDecisionTol) return Decision::yes;
    if (lambda >= delta - kDecisionTol) return Decision::no;
    return Decision::promise_violated;
}

}  // namespace stoq
