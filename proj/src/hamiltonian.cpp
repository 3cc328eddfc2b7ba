// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

#include "stoq/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>

namespace stoq {

double hermitian_norm(const CMat& m) {
    if (m.size() == 0) return 0.0;
    // Exact paths keep norms like ||X|| = 1 free of eigensolver round-off.
    const CMat off = m - CMat(m.diagonal().asDiagonal());
    if (off.cwiseAbs().maxCoeff() == 0.0) return m.diagonal().cwiseAbs().maxCoeff();
    if (m.rows() == 2) {
        const double a = m(0, 0).real(), d = m(1, 1).real();
        const double r = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
        return std::abs(0.5 * (a + d)) + r;
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

LocalHamiltonian::LocalHamiltonian(int n, int k, std::vector<LocalTerm> terms)
    : n_(n), k_(k), terms_(std::move(terms)) {
    if (n < 0 || n > kMaxQubits) throw InputError("qubit count out of range");
    if (k < 0) throw InputError("locality must be nonnegative");
    norms_.reserve(terms_.size());
    for (std::size_t t = 0; t < terms_.size(); ++t) {
        const auto& term = terms_[t];
        const auto& s = term.support;
        std::ostringstream where;
        where << "term " << t << ": ";
        if (static_cast<int>(s.size()) > k)
            throw InputError(where.str() + "support exceeds locality bound");
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] < 0 || s[i] >= n) throw InputError(where.str() + "support index out of range");
            if (i > 0 && s[i] <= s[i - 1])
                throw InputError(where.str() + "support must be sorted and distinct");
        }
        const Eigen::Index dim = Eigen::Index{1} << s.size();
        if (term.matrix.rows() != dim || term.matrix.cols() != dim)
            throw InputError(where.str() + "matrix dimension does not match support");
        if (!term.matrix.allFinite()) throw InputError(where.str() + "matrix has non-finite entries");
        const double herm = (term.matrix - term.matrix.adjoint()).cwiseAbs().maxCoeff();
        if (herm > kHermTol) throw InputError(where.str() + "matrix is not Hermitian");
        norms_.push_back(hermitian_norm(term.matrix));
        norm_bound_ += norms_.back();
    }
}

double LocalHamiltonian::max_term_norm() const {
    double p1 = 0.0;
    for (double v : norms_) p1 = std::max(p1, v);
    return p1;
}

int LocalHamiltonian::max_support() const {
    int j = 0;
    for (const auto& t : terms_) j = std::max(j, static_cast<int>(t.support.size()));
    return j;
}

bool LocalHamiltonian::is_real() const {
    for (const auto& t : terms_)
        if (t.matrix.imag().cwiseAbs().maxCoeff() > kImagTol) return false;
    return true;
}

static void check_index(const LocalHamiltonian& h, Bits x) {
    if (h.n() < 64 && (x >> h.n()) != 0) throw InputError("basis index has bits beyond n");
}

cplx matrix_element(const LocalHamiltonian& h, Bits x, Bits y) {
    check_index(h, x);
    check_index(h, y);
    cplx acc = 0.0;
    for (const auto& t : h.terms()) {
        if (((x ^ y) & ~support_mask(t.support)) != 0) continue;
        acc += t.matrix(static_cast<Eigen::Index>(extract_bits(x, t.support)),
                        static_cast<Eigen::Index>(extract_bits(y, t.support)));
    }
    return acc;
}

std::vector<std::pair<Bits, cplx>> row(const LocalHamiltonian& h, Bits x) {
    check_index(h, x);
    std::vector<std::pair<Bits, cplx>> raw;
    for (const auto& t : h.terms()) {
        const Bits outside = x & ~support_mask(t.support);
        const auto lx = static_cast<Eigen::Index>(extract_bits(x, t.support));
        for (Eigen::Index c = 0; c < t.matrix.cols(); ++c) {
            const cplx v = t.matrix(lx, c);
            if (v == cplx(0.0)) continue;
            raw.emplace_back(outside | deposit_bits(static_cast<Bits>(c), t.support), v);
        }
    }
    std::stable_sort(raw.begin(), raw.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Bits, cplx>> out;
    for (const auto& e : raw) {
        if (!out.empty() && out.back().first == e.first)
            out.back().second += e.second;
        else
            out.push_back(e);
    }
    return out;
}

CMat embed(int n, const std::vector<int>& support, const CMat& m) {
    if (n > 14) throw CapacityError("dense embedding above 14 qubits");
    const Bits dim = Bits{1} << n;
    const Bits mask = support_mask(support);
    CMat out = CMat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (Bits x = 0; x < dim; ++x) {
        const auto lx = static_cast<Eigen::Index>(extract_bits(x, support));
        const Bits outside = x & ~mask;
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (m(lx, c) == cplx(0.0)) continue;
            const Bits y = outside | deposit_bits(static_cast<Bits>(c), support);
            out(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) += m(lx, c);
        }
    }
    return out;
}

CMat dense_matrix(const LocalHamiltonian& h, int cap) {
    if (h.n() > cap) throw CapacityError("dense matrix requested above the qubit cap");
    const auto dim = Eigen::Index{1} << h.n();
    CMat out = CMat::Zero(dim, dim);
    for (const auto& t : h.terms()) {
        const Bits mask = support_mask(t.support);
        for (Bits x = 0; x < static_cast<Bits>(dim); ++x) {
            const auto lx = static_cast<Eigen::Index>(extract_bits(x, t.support));
            const Bits outside = x & ~mask;
            for (Eigen::Index c = 0; c < t.matrix.cols(); ++c) {
                const cplx v = t.matrix(lx, c);
                if (v == cplx(0.0)) continue;
                out(static_cast<Eigen::Index>(x),
                    static_cast<Eigen::Index>(outside | deposit_bits(static_cast<Bits>(c), t.support))) += v;
            }
        }
    }
    return out;
}

RMat dense_real(const LocalHamiltonian& h, int cap) { return dense_matrix(h, cap).real(); }

static bool offdiag_violates(const cplx& v) {
    return v.real() > kStoqTol || std::abs(v.imag()) > kImagTol;
}

StoquasticReport check_stoquastic(const LocalHamiltonian& h, bool termwise, int full_cap) {
    StoquasticReport rep;
    rep.is_termwise_stoquastic = true;
    std::vector<Violation> term_viol;
    for (std::size_t t = 0; t < h.terms().size(); ++t) {
        const auto& term = h.terms()[t];
        for (Eigen::Index r = 0; r < term.matrix.rows(); ++r)
            for (Eigen::Index c = r + 1; c < term.matrix.cols(); ++c)
                if (offdiag_violates(term.matrix(r, c))) {
                    rep.is_termwise_stoquastic = false;
                    term_viol.push_back({deposit_bits(static_cast<Bits>(r), term.support),
                                         deposit_bits(static_cast<Bits>(c), term.support),
                                         term.matrix(r, c), static_cast<int>(t)});
                }
    }

    const bool need_full = !termwise || !rep.is_termwise_stoquastic;
    if (!need_full) {
        rep.is_stoquastic = true;
        return rep;
    }
    if (h.n() > full_cap) {
        if (!termwise) throw InputError("full stoquasticity scan above the qubit cap");
        // Not termwise stoquastic and too large to scan: undecided, report as not stoquastic.
        rep.is_stoquastic = false;
        rep.violations = std::move(term_viol);
        return rep;
    }
    rep.full_scan = true;
    rep.is_stoquastic = true;
    const Bits dim = Bits{1} << h.n();
    for (Bits x = 0; x < dim; ++x)
        for (const auto& [y, v] : row(h, x))
            if (y > x && offdiag_violates(v)) {
                rep.is_stoquastic = false;
                rep.violations.push_back({x, y, v, -1});
            }
    if (termwise && rep.violations.empty()) rep.violations = std::move(term_viol);
    return rep;
}

LocalHamiltonian bipartite_basis_change(const LocalHamiltonian& h, const std::vector<bool>& coloring) {
    if (static_cast<int>(coloring.size()) != h.n()) throw InputError("coloring length must equal n");
    std::vector<LocalTerm> out;
    out.reserve(h.terms().size());
    for (const auto& t : h.terms()) {
        Bits flip = 0;
        for (std::size_t i = 0; i < t.support.size(); ++i)
            if (coloring[t.support[i]]) flip |= Bits{1} << i;
        CMat m = t.matrix;
        if (flip != 0) {
            for (Eigen::Index r = 0; r < m.rows(); ++r)
                for (Eigen::Index c = 0; c < m.cols(); ++c)
                    if (std::popcount((static_cast<Bits>(r) ^ static_cast<Bits>(c)) & flip) & 1)
                        m(r, c) = -m(r, c);
        }
        out.emplace_back(t.support, std::move(m));
    }
    return LocalHamiltonian(h.n(), h.k(), std::move(out));
}

LocalHamiltonian merge(const LocalHamiltonian& a, const LocalHamiltonian& b) {
    std::vector<LocalTerm> terms = a.terms();
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    return LocalHamiltonian(std::max(a.n(), b.n()), std::max(a.k(), b.k()), std::move(terms));
}

LocalTerm product_term(const std::vector<int>& sa, const RMat& a, const std::vector<int>& sb, const RMat& b) {
    std::vector<int> u = sa;
    u.insert(u.end(), sb.begin(), sb.end());
    std::sort(u.begin(), u.end());
    if (std::adjacent_find(u.begin(), u.end()) != u.end()) throw InputError("product_term supports overlap");
    // Position of each union qubit inside sa or sb.
    std::vector<int> pos_a(sa.size()), pos_b(sb.size());
    for (std::size_t i = 0; i < sa.size(); ++i)
        pos_a[i] = static_cast<int>(std::lower_bound(u.begin(), u.end(), sa[i]) - u.begin());
    for (std::size_t i = 0; i < sb.size(); ++i)
        pos_b[i] = static_cast<int>(std::lower_bound(u.begin(), u.end(), sb[i]) - u.begin());
    const auto dim = Eigen::Index{1} << u.size();
    RMat m = RMat::Zero(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) {
            const auto ra = static_cast<Eigen::Index>(extract_bits(static_cast<Bits>(r), pos_a));
            const auto ca = static_cast<Eigen::Index>(extract_bits(static_cast<Bits>(c), pos_a));
            const auto rb = static_cast<Eigen::Index>(extract_bits(static_cast<Bits>(r), pos_b));
            const auto cb = static_cast<Eigen::Index>(extract_bits(static_cast<Bits>(c), pos_b));
            m(r, c) = a(ra, ca) * b(rb, cb);
        }
    return LocalTerm(u, m);
}

RMat pauli_x() { return (RMat(2, 2) << 0, 1, 1, 0).finished(); }
RMat pauli_z() { return (RMat(2, 2) << 1, 0, 0, -1).finished(); }
CMat pauli_y() {
    CMat y(2, 2);
    y << 0, cplx(0, -1), cplx(0, 1), 0;
    return y;
}
RMat sigma_plus() { return (RMat(2, 2) << 0, 0, 1, 0).finished(); }
RMat sigma_minus() { return (RMat(2, 2) << 0, 1, 0, 0).finished(); }
RMat proj0() { return (RMat(2, 2) << 1, 0, 0, 0).finished(); }
RMat proj1() { return (RMat(2, 2) << 0, 0, 0, 1).finished(); }

CMat kron(const CMat& high, const CMat& low) {
    CMat out(high.rows() * low.rows(), high.cols() * low.cols());
    for (Eigen::Index i = 0; i < high.rows(); ++i)
        for (Eigen::Index j = 0; j < high.cols(); ++j)
            out.block(i * low.rows(), j * low.cols(), low.rows(), low.cols()) = high(i, j) * low;
    return out;
}

}  // namespace stoq
