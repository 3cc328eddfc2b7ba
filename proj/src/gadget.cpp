// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

#include "stoq/gadget.hpp"

#include "stoq/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace stoq {

namespace {

constexpr double kEntryTol = 1e-12;

RMat real_part(const LocalTerm& t) { return t.matrix.real(); }

/** Basis projector |r><c| of dimension 2^bits. */
RMat elementary(int bits, Bits r, Bits c) {
    const auto dim = Eigen::Index{1} << bits;
    RMat m = RMat::Zero(dim, dim);
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = 1.0;
    return m;
}

LocalTerm constant_term(double c) { return LocalTerm(std::vector<int>{}, RMat(RMat::Constant(1, 1, c))); }

LocalHamiltonian build(int n, std::vector<LocalTerm> terms) {
    int k = 0;
    for (const auto& t : terms) k = std::max(k, static_cast<int>(t.support.size()));
    return LocalHamiltonian(n, k, std::move(terms));
}

int ceil_half(int j) { return (j + 1) / 2; }

}  // namespace

Decomposition decompose_target(const LocalHamiltonian& h, const DecomposeOptions& opt) {
    if (opt.keep_locality < 1) throw InputError("keep_locality must be at least 1");
    const StoquasticReport rep = check_stoquastic(h, true);
    if (!rep.is_termwise_stoquastic)
        throw NotStoquasticError("decomposition needs a termwise-stoquastic Hamiltonian", rep);

    Decomposition d;
    std::vector<LocalTerm> residual;
    for (std::size_t ti = 0; ti < h.terms().size(); ++ti) {
        const auto& term = h.terms()[ti];
        const int j = static_cast<int>(term.support.size());
        const RMat m = real_part(term);
        if (j <= opt.keep_locality) {
            residual.emplace_back(term.support, m);
            continue;
        }
        const double om = m.diagonal().maxCoeff();
        d.omega += om;
        const RMat nmat = om * RMat::Identity(m.rows(), m.cols()) - m;
        RMat kept = RMat::Zero(m.rows(), m.cols());

        const int a = ceil_half(j);
        auto add_pair = [&](Bits r, Bits c, double w) {
            // Local positions for C and D. With flip_aware, D is one qubit the entry leaves unflipped.
            std::vector<int> cpos, dpos;
            int dq = -1;
            if (opt.flip_aware && j == 3)
                for (int i = j - 1; i >= 0 && dq < 0; --i)
                    if ((((r ^ c) >> i) & 1u) == 0) dq = i;
            for (int i = 0; i < j; ++i) {
                const bool in_d = dq >= 0 ? i == dq : i >= a;
                (in_d ? dpos : cpos).push_back(i);
            }
            std::vector<int> sa, sb;
            for (int i : cpos) sa.push_back(term.support[i]);
            for (int i : dpos) sb.push_back(term.support[i]);
            const double s = std::sqrt(w);
            auto part = [&](const std::vector<int>& pos) {
                return RMat(s * elementary(static_cast<int>(pos.size()), extract_bits(r, pos), extract_bits(c, pos)));
            };
            d.pairs.push_back({sa, part(cpos), sb, part(dpos),
                               static_cast<int>(ti)});
        };

        for (Eigen::Index r = 0; r < nmat.rows(); ++r)
            for (Eigen::Index c = r; c < nmat.cols(); ++c) {
                double v = 0.5 * (nmat(r, c) + nmat(c, r));
                if (std::abs(v) <= kEntryTol) continue;
                const auto br = static_cast<Bits>(r), bc = static_cast<Bits>(c);
                if (r == c) {
                    if (opt.split_diagonal)
                        add_pair(br, br, v / 2.0);
                    else
                        kept(r, r) = v;
                } else if (opt.keep_full_flip && std::popcount(br ^ bc) == j) {
                    kept(r, c) = kept(c, r) = v;
                } else {
                    add_pair(br, bc, v);
                }
            }
        if (!kept.isZero(0.0)) residual.emplace_back(term.support, RMat(-kept));
    }
    d.residual = LocalHamiltonian(h.n(), h.k(), std::move(residual));
    return d;
}

LocalHamiltonian reconstruct(const Decomposition& d, int n) {
    std::vector<LocalTerm> terms = d.residual.terms();
    terms.push_back(constant_term(d.omega));
    for (const auto& p : d.pairs) {
        LocalTerm cd = product_term(p.c_support, p.C, p.d_support, p.D);
        const RMat sym = cd.matrix.real() + cd.matrix.real().transpose();
        terms.emplace_back(cd.support, RMat(-sym));
    }
    return build(n, std::move(terms));
}

double subdivision_v_estimate(const Decomposition& d) {
    double est = d.residual.norm_bound();
    for (const auto& p : d.pairs) {
        const double nc = p.C.norm() > 0 ? hermitian_norm((p.C.transpose() * p.C).cast<cplx>()) : 0.0;
        const double nd = p.D.norm() > 0 ? hermitian_norm((p.D * p.D.transpose()).cast<cplx>()) : 0.0;
        est += std::pow(std::sqrt(nc) + std::sqrt(nd), 2) + nc + nd;
    }
    return est;
}

void verify(GadgetResult& r, const LocalHamiltonian& target, int cap) {
    if (r.compiled.n() > cap || target.n() > cap) return;
    r.target_lambda = diagonalize_dense(target, cap).lambda0;
    r.compiled_lambda = diagonalize_dense(r.compiled, cap).lambda0;
    r.verified_error = std::abs(r.compiled_lambda - r.omega_shift - r.target_lambda);
    r.verified = true;
}

GadgetResult subdivision_reduce(const LocalHamiltonian& h, double Delta, const DecomposeOptions& opt,
                                bool run_verify) {
    if (!(Delta > 0.0)) throw InputError("Delta must be positive");
    const Decomposition dec = decompose_target(h, opt);
    GadgetResult res;
    res.stage = "subdivide";
    res.n_data = h.n();
    res.deltas = {Delta};
    if (dec.pairs.empty()) {
        res.compiled = h;
        res.perturbation = h;
        res.unperturbed = LocalHamiltonian(h.n(), 0, {});
        if (run_verify) verify(res, h);
        return res;
    }
    const double est = subdivision_v_estimate(dec);
    if (Delta < 100.0 * est) {
        std::ostringstream os;
        os << "Delta = " << Delta << " is below 100 * ||V|| estimate (" << est << ")";
        throw PreconditionError(os.str());
    }
    const int n_total = h.n() + static_cast<int>(dec.pairs.size());
    if (n_total > kMaxQubits) throw CapacityError("too many mediator qubits");
    const double sq = std::sqrt(Delta);
    const RMat sp = sigma_plus(), sm = sigma_minus();

    std::vector<LocalTerm> h0, v = dec.residual.terms();
    for (std::size_t a = 0; a < dec.pairs.size(); ++a) {
        const auto& p = dec.pairs[a];
        const std::vector<int> med{h.n() + static_cast<int>(a)};
        h0.emplace_back(med, RMat(Delta * proj1()));
        v.emplace_back(p.c_support, RMat(p.C.transpose() * p.C));
        v.emplace_back(p.d_support, RMat(p.D * p.D.transpose()));
        LocalTerm c1 = product_term(p.c_support, p.C, med, sp);
        LocalTerm c2 = product_term(p.c_support, p.C.transpose(), med, sm);
        v.emplace_back(c1.support, RMat(-sq * (c1.matrix.real() + c2.matrix.real())));
        LocalTerm d1 = product_term(p.d_support, p.D.transpose(), med, sp);
        LocalTerm d2 = product_term(p.d_support, p.D, med, sm);
        v.emplace_back(d1.support, RMat(-sq * (d1.matrix.real() + d2.matrix.real())));
        std::vector<int> data = p.c_support;
        data.insert(data.end(), p.d_support.begin(), p.d_support.end());
        res.mediator_map.push_back({"subdivision", med, data, p.source_term});
    }
    res.unperturbed = build(n_total, h0);
    res.perturbation = build(n_total, v);
    std::vector<LocalTerm> all = v;
    all.insert(all.end(), h0.begin(), h0.end());
    res.compiled = build(n_total, std::move(all));
    res.omega_shift = -dec.omega;
    if (run_verify) verify(res, h);
    return res;
}

namespace {

/** Off-diagonal entries only flip all three qubits and the diagonal is constant. */
bool full_flip_only(const RMat& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        if (std::abs(m(r, r) - m(0, 0)) > kEntryTol) return false;
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (r == c) continue;
            if (std::popcount(static_cast<Bits>(r ^ c)) != 3 && std::abs(m(r, c)) > kEntryTol) return false;
        }
    }
    return true;
}

/** -h XXX plus a constant: every full-flip entry equals -h <= 0. */
bool is_xxx(const RMat& m, double& h) {
    if (!full_flip_only(m)) return false;
    h = -m(0, 7);
    if (h < -kEntryTol) return false;
    for (Eigen::Index r = 0; r < 8; ++r)
        if (std::abs(m(r, r ^ 7) + h) > kEntryTol * std::max(1.0, std::abs(h))) return false;
    return true;
}

}  // namespace

bool is_normalized_3local(const LocalHamiltonian& h) {
    for (const auto& t : h.terms()) {
        if (t.support.size() > 3) return false;
        if (t.support.size() == 3 && !full_flip_only(real_part(t))) return false;
    }
    return true;
}

bool is_triple_x_form(const LocalHamiltonian& h) {
    for (const auto& t : h.terms()) {
        if (t.support.size() > 3) return false;
        double hx = 0.0;
        if (t.support.size() == 3 && !is_xxx(real_part(t), hx)) return false;
    }
    return true;
}

GadgetResult normalize_3local(const LocalHamiltonian& h, double Delta1, bool run_verify) {
    if (h.max_support() > 3) throw InputError("normalize_3local needs a 3-local Hamiltonian");
    DecomposeOptions opt;
    opt.keep_locality = 2;
    opt.split_diagonal = true;
    opt.keep_full_flip = true;
    opt.flip_aware = true;

    GadgetResult res;
    res.stage = "normalize";
    res.n_data = h.n();
    LocalHamiltonian cur = h;
    std::vector<LocalTerm> penalties;
    double prev = 0.0;
    for (int pass = 0; pass < 3 && !is_normalized_3local(cur); ++pass) {
        const double est = subdivision_v_estimate(decompose_target(cur, opt));
        double Delta = 0.0;
        if (pass == 0)
            Delta = Delta1 > 0.0 ? Delta1 : std::max(400.0, 100.0 * est);
        else
            Delta = std::max(prev * prev, 100.0 * est);
        GadgetResult step = subdivision_reduce(cur, Delta, opt, false);
        prev = Delta;
        res.deltas.push_back(Delta);
        res.omega_shift += step.omega_shift;
        res.mediator_map.insert(res.mediator_map.end(), step.mediator_map.begin(), step.mediator_map.end());
        penalties.insert(penalties.end(), step.unperturbed.terms().begin(), step.unperturbed.terms().end());
        cur = step.compiled;
    }
    if (!is_normalized_3local(cur)) throw Error("normalization did not terminate within three passes");
    res.compiled = cur;
    res.unperturbed = build(cur.n(), penalties);
    // Perturbation = compiled minus one copy of each penalty term.
    std::vector<LocalTerm> rest;
    std::vector<bool> used(penalties.size(), false);
    for (const auto& t : cur.terms()) {
        bool matched = false;
        for (std::size_t i = 0; i < penalties.size() && !matched; ++i)
            if (!used[i] && penalties[i].support == t.support && penalties[i].matrix == t.matrix)
                used[i] = matched = true;
        if (!matched) rest.push_back(t);
    }
    res.perturbation = build(cur.n(), rest);
    if (run_verify) verify(res, h);
    return res;
}

TripleXScalings triple_x_scalings(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0,1)");
    return {std::pow(delta, -4), std::pow(delta, -5), std::pow(delta, -6)};
}

double triple_x_shift(const TripleXScalings& s, const double b_norm_sq_sum) {
    return -0.25 * s.omega * s.omega * b_norm_sq_sum * (1.0 / s.delta_z + 1.0 / (s.delta_z + s.delta_x));
}

namespace {

RMat zz_penalty(double delta_z) {
    // -(1/4) Delta_z (Z Z - I)
    RMat zz = kron(pauli_z().cast<cplx>(), pauli_z().cast<cplx>()).real();
    return -0.25 * delta_z * (zz - RMat::Identity(4, 4));
}

RMat xxx() {
    const CMat x = pauli_x().cast<cplx>();
    return kron(x, kron(x, x)).real();
}

struct Triple {
    std::vector<int> data;  ///< three data qubits
    RMat b[3];              ///< 2x2 operators, scaled
    double anticomm = 0.0;  ///< sum_j c_j where B_j B_j^T + B_j^T B_j = c_j I
};

}  // namespace

std::vector<LocalTerm> triple_x_mediator_terms(const std::vector<int>& m, const TripleXScalings& s) {
    std::vector<LocalTerm> t;
    t.emplace_back(m, RMat(-0.5 * s.delta_x * xxx()));
    t.push_back(constant_term(0.5 * s.delta_x));
    t.emplace_back(std::vector<int>{m[0], m[1]}, zz_penalty(s.delta_z));
    t.emplace_back(std::vector<int>{m[1], m[2]}, zz_penalty(s.delta_z));
    t.emplace_back(std::vector<int>{m[0], m[2]}, zz_penalty(s.delta_z));
    return t;
}

GadgetResult triple_x_reduce(const LocalHamiltonian& h, double delta, bool run_verify) {
    if (h.max_support() > 3) throw InputError("triple_x_reduce needs a 3-local Hamiltonian");
    const TripleXScalings s = triple_x_scalings(delta);
    std::vector<LocalTerm> v;
    std::vector<Triple> triples;
    std::vector<int> source;
    for (std::size_t ti = 0; ti < h.terms().size(); ++ti) {
        const auto& t = h.terms()[ti];
        if (t.support.size() < 3) {
            v.push_back(t);
            continue;
        }
        const RMat m = real_part(t);
        if (!full_flip_only(m)) throw InputError("unnormalized input: 3-local term is not of flip-all-three type");
        if (m(0, 0) != 0.0) v.push_back(constant_term(m(0, 0)));
        double hx = 0.0;
        if (is_xxx(m, hx)) {
            // Already in triple-X form; the KKR stage handles it.
            v.emplace_back(t.support, RMat(m - m(0, 0) * RMat::Identity(8, 8)));
            continue;
        }
        for (Bits r = 0; r < 8; ++r) {
            const Bits c = r ^ 7;
            if (r > c) continue;
            const double coeff = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            if (coeff > kEntryTol) throw InputError("unnormalized input: positive off-diagonal");
            if (coeff >= -kEntryTol) continue;
            // -h(|r><c| + h.c.) = -3 (B1 B2 B3 + h.c.) with B_j = s |r_j><c_j|, s^3 = h/3.
            const double sc = std::cbrt(-coeff / 3.0);
            Triple tr;
            tr.data = t.support;
            for (int j = 0; j < 3; ++j) tr.b[j] = sc * elementary(1, (r >> j) & 1, (c >> j) & 1);
            tr.anticomm = 3.0 * sc * sc;
            triples.push_back(tr);
            source.push_back(static_cast<int>(ti));
        }
    }

    GadgetResult res;
    res.stage = "triplex";
    res.n_data = h.n();
    res.deltas = {delta};
    int next = h.n();
    std::vector<LocalTerm> h0;
    const RMat sp = sigma_plus(), sm = sigma_minus();
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const auto& tr = triples[i];
        const std::vector<int> m{next, next + 1, next + 2};
        next += 3;
        const auto mt = triple_x_mediator_terms(m, s);
        h0.insert(h0.end(), mt.begin(), mt.end());
        for (int j = 0; j < 3; ++j) {
            const std::vector<int> d{tr.data[j]}, mj{m[j]};
            LocalTerm up = product_term(d, tr.b[j], mj, sp);
            LocalTerm dn = product_term(d, tr.b[j].transpose(), mj, sm);
            v.emplace_back(up.support, RMat(-s.omega * (up.matrix.real() + dn.matrix.real())));
        }
        res.omega_shift += triple_x_shift(s, tr.anticomm);
        res.mediator_map.push_back({"triple_x", m, tr.data, source[i]});
    }
    if (next > kMaxQubits) throw CapacityError("too many mediator qubits");
    res.unperturbed = build(next, h0);
    res.perturbation = build(next, v);
    std::vector<LocalTerm> all = v;
    all.insert(all.end(), h0.begin(), h0.end());
    res.compiled = build(next, std::move(all));
    if (run_verify) verify(res, h);
    return res;
}

GadgetResult kkr_3to2_reduce(const LocalHamiltonian& h, double delta, bool run_verify) {
    if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0,1)");
    if (h.max_support() > 3) throw InputError("kkr_3to2_reduce needs a 3-local Hamiltonian");
    const double omega = std::pow(delta, -2), dz = std::pow(delta, -3);
    GadgetResult res;
    res.stage = "kkr";
    res.n_data = h.n();
    res.deltas = {delta};
    std::vector<LocalTerm> h0, v;
    int next = h.n();
    const RMat xx = kron(pauli_x().cast<cplx>(), pauli_x().cast<cplx>()).real();
    for (std::size_t ti = 0; ti < h.terms().size(); ++ti) {
        const auto& t = h.terms()[ti];
        if (t.support.size() < 3) {
            v.push_back(t);
            continue;
        }
        const RMat m = real_part(t);
        double hx = 0.0;
        if (!is_xxx(m, hx)) throw InputError("B_j not of X form: 3-local term is not -h XXX");
        if (m(0, 0) != 0.0) v.push_back(constant_term(m(0, 0)));
        if (hx <= kEntryTol) continue;
        const double b = std::cbrt(hx / 6.0);
        const std::vector<int> med{next, next + 1, next + 2};
        next += 3;
        h0.emplace_back(std::vector<int>{med[0], med[1]}, zz_penalty(dz));
        h0.emplace_back(std::vector<int>{med[1], med[2]}, zz_penalty(dz));
        h0.emplace_back(std::vector<int>{med[0], med[2]}, zz_penalty(dz));
        for (int j = 0; j < 3; ++j) v.emplace_back(std::vector<int>{t.support[j], med[j]}, RMat(-omega * b * xx));
        res.omega_shift += -3.0 * b * b / delta;
        res.mediator_map.push_back({"kkr", med, t.support, static_cast<int>(ti)});
    }
    if (next > kMaxQubits) throw CapacityError("too many mediator qubits");
    res.unperturbed = build(next, h0);
    res.perturbation = build(next, v);
    std::vector<LocalTerm> all = v;
    all.insert(all.end(), h0.begin(), h0.end());
    res.compiled = build(next, std::move(all));
    if (run_verify) verify(res, h);
    return res;
}

std::vector<GadgetResult> full_chain(const LocalHamiltonian& h, double delta, double delta_kkr, bool run_verify) {
    if (delta_kkr <= 0.0) delta_kkr = delta;
    std::vector<GadgetResult> out;
    out.push_back(normalize_3local(h, 0.0, run_verify));
    out.push_back(triple_x_reduce(out.back().compiled, delta, run_verify));
    out.push_back(kkr_3to2_reduce(out.back().compiled, delta_kkr, run_verify));
    GadgetResult total;
    total.stage = "full";
    total.n_data = h.n();
    total.compiled = out.back().compiled;
    total.unperturbed = out.back().unperturbed;
    total.perturbation = out.back().perturbation;
    total.deltas = {delta, delta_kkr};
    for (const auto& r : out) {
        total.omega_shift += r.omega_shift;
        total.mediator_map.insert(total.mediator_map.end(), r.mediator_map.begin(), r.mediator_map.end());
    }
    if (run_verify) verify(total, h);
    out.push_back(std::move(total));
    return out;
}

SelfEnergyReport self_energy(const LocalHamiltonian& h0, const LocalHamiltonian& v, const RMat& low_basis, double z,
                             int max_order, int cap) {
    if (max_order < 1 || max_order > 4) throw InputError("max_order must be in [1,4]");
    const int n = std::max(h0.n(), v.n());
    if (n > cap) throw CapacityError("self-energy dense algebra above the qubit cap");
    const auto dim = Eigen::Index{1} << n;
    if (low_basis.rows() != dim) throw InputError("low basis dimension mismatch");
    const RMat H0 = dense_real(build(n, h0.terms()), cap);
    const RMat V = dense_real(build(n, v.terms()), cap);
    const RMat& P = low_basis;
    if ((H0 * P).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, H0.cwiseAbs().maxCoeff()))
        throw InputError("low basis is not in the kernel of H0");

    const RMat Q = RMat::Identity(dim, dim) - P * P.transpose();
    const RMat Hq = Q * H0 * Q;
    Eigen::SelfAdjointEigenSolver<RMat> es(Hq);
    const auto& ev = es.eigenvalues();
    const RMat& U = es.eigenvectors();
    SelfEnergyReport rep;
    rep.z = z;
    rep.second_order_shift = std::numeric_limits<double>::quiet_NaN();
    rep.high_gap = std::numeric_limits<double>::infinity();
    // Eigenvectors mostly inside the low space carry the spurious zeros of Q H0 Q.
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        if ((P.transpose() * U.col(i)).norm() > 0.5) continue;
        rep.high_gap = std::min(rep.high_gap, ev(i));
        inv(i) = 1.0 / (z - ev(i));
    }
    if (!(z < rep.high_gap - 1e-9 * std::max(1.0, std::abs(rep.high_gap)))) {
        std::ostringstream os;
        os << "z = " << z << " is not below the high-energy spectrum (starts at " << rep.high_gap << ")";
        throw PreconditionError(os.str());
    }
    const RMat G = Q * U * inv.asDiagonal() * U.transpose() * Q;
    const RMat GV = G * V;
    rep.sigma1 = P.transpose() * V * P;
    RMat chain = GV * P;  // (G V)^k P
    if (max_order >= 2) rep.sigma2 = P.transpose() * V * chain;
    if (max_order >= 3) {
        chain = GV * chain;
        rep.sigma3 = P.transpose() * V * chain;
    }
    if (max_order >= 4) {
        chain = GV * chain;
        rep.sigma4 = P.transpose() * V * chain;
        Eigen::SelfAdjointEigenSolver<RMat> e4(0.5 * (rep.sigma4 + rep.sigma4.transpose()), Eigen::EigenvaluesOnly);
        const auto& ev = e4.eigenvalues();
        rep.sigma4_norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    }
    return rep;
}

RMat gadget_low_basis(const GadgetResult& r) {
    const int n = r.compiled.n();
    if (n > kVerifyCap) throw CapacityError("low basis above the qubit cap");
    // Mediator configurations with amplitudes, built group by group.
    std::vector<std::pair<Bits, double>> configs{{0, 1.0}};
    for (const auto& g : r.mediator_map) {
        if (g.kind == "subdivision") continue;  // mediator stays |0>
        if (g.kind != "triple_x") throw InputError("low basis only defined for subdivision and triple-X results");
        const Bits all = support_mask(g.mediators);
        std::vector<std::pair<Bits, double>> next;
        for (const auto& [cfg, amp] : configs) {
            next.emplace_back(cfg, amp / std::sqrt(2.0));
            next.emplace_back(cfg | all, amp / std::sqrt(2.0));
        }
        configs = std::move(next);
    }
    const auto data_dim = Eigen::Index{1} << r.n_data;
    RMat P = RMat::Zero(Eigen::Index{1} << n, data_dim);
    for (Eigen::Index x = 0; x < data_dim; ++x)
        for (const auto& [cfg, amp] : configs) P(static_cast<Eigen::Index>(static_cast<Bits>(x) | cfg), x) = amp;
    return P;
}

SelfEnergyReport triple_x_self_energy(const GadgetResult& r, double z, int max_order) {
    if (r.stage != "triplex") throw InputError("triple_x_self_energy needs a triple-X result");
    SelfEnergyReport rep = self_energy(r.unperturbed, r.perturbation, gadget_low_basis(r), z, max_order);
    rep.second_order_shift = r.omega_shift;
    return rep;
}

std::string check_locality_contract(const GadgetResult& r, int input_locality) {
    const int got = r.compiled.max_support();
    std::ostringstream os;
    if (r.stage == "subdivide") {
        const int bound = std::max(2, ceil_half(input_locality) + 1);
        if (got > bound) os << "subdivision output is " << got << "-local, bound " << bound;
    } else if (r.stage == "normalize") {
        if (got > 3 || !is_normalized_3local(r.compiled))
            os << "normalized output has a non flip-all-three 3-local term";
    } else if (r.stage == "triplex") {
        if (got > 3 || !is_triple_x_form(r.compiled)) os << "triple-X output has a 3-local term other than -h XXX";
    } else if (r.stage == "kkr" || r.stage == "full") {
        if (got > 2) os << r.stage << " output is " << got << "-local";
    }
    return os.str();
}

}  // namespace stoq
