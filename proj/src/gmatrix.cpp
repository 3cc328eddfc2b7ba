// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

#include "stoq/gmatrix.hpp"

#include <algorithm>
#include <cmath>

namespace stoq {

const char* to_string(GMode m) { return m == GMode::norm_shift ? "norm_shift" : "walk_shift"; }

GMode gmode_from_string(const std::string& s) {
    if (s == "norm_shift") return GMode::norm_shift;
    if (s == "walk_shift") return GMode::walk_shift;
    throw InputError("unknown G mode: " + s);
}

double walk_q(int n, int k, double p1) {
    const int kk = std::min(k, n);
    double binom = 1.0;
    for (int i = 0; i < kk; ++i) binom = binom * (n - i) / (i + 1);
    return 2.0 * std::max(1.0, std::ldexp(binom, kk) * p1);
}

GMatrix::GMatrix(LocalHamiltonian source, GMode mode, double scale)
    : source_(std::move(source)), mode_(mode), scale_(scale) {
    sym_.reserve(source_.terms().size());
    for (const auto& t : source_.terms()) {
        const RMat re = t.matrix.real();
        sym_.push_back(0.5 * (re + re.transpose()));
    }
}

double GMatrix::element(Bits x, Bits y) const {
    double h = 0.0;
    const auto& terms = source_.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (((x ^ y) & ~support_mask(terms[i].support)) != 0) continue;
        h += sym_[i](static_cast<Eigen::Index>(extract_bits(x, terms[i].support)),
                     static_cast<Eigen::Index>(extract_bits(y, terms[i].support)));
    }
    const double g = (x == y ? 0.5 : 0.0) - h / (2.0 * scale_);
    return std::clamp(g, 0.0, 1.0);
}

std::vector<std::pair<Bits, double>> GMatrix::row(Bits x) const {
    std::vector<std::pair<Bits, double>> raw;
    raw.emplace_back(x, 0.0);
    const auto& terms = source_.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& s = terms[i].support;
        const Bits outside = x & ~support_mask(s);
        const auto lx = static_cast<Eigen::Index>(extract_bits(x, s));
        for (Eigen::Index c = 0; c < sym_[i].cols(); ++c) {
            const double v = sym_[i](lx, c);
            if (v == 0.0) continue;
            raw.emplace_back(outside | deposit_bits(static_cast<Bits>(c), s), v);
        }
    }
    std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Bits, double>> out;
    for (const auto& e : raw) {
        if (!out.empty() && out.back().first == e.first)
            out.back().second += e.second;
        else
            out.push_back(e);
    }
    // Convert accumulated H entries into G entries in place.
    std::vector<std::pair<Bits, double>> g;
    g.reserve(out.size());
    for (const auto& [y, h] : out) {
        const double v = std::clamp((y == x ? 0.5 : 0.0) - h / (2.0 * scale_), 0.0, 1.0);
        if (v != 0.0) g.emplace_back(y, v);
    }
    return g;
}

double GMatrix::row_sum(Bits x) const {
    double s = 0.0;
    for (const auto& e : row(x)) s += e.second;
    return s;
}

RMat GMatrix::dense(int cap) const {
    if (n() > cap) throw CapacityError("dense G requested above the qubit cap");
    const auto dim = Eigen::Index{1} << n();
    RMat g = RMat::Zero(dim, dim);
    for (Bits x = 0; x < static_cast<Bits>(dim); ++x)
        for (const auto& [y, v] : row(x)) g(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = v;
    return g;
}

GMatrix to_g_matrix(const LocalHamiltonian& h, GMode mode, double scale_override) {
    StoquasticReport rep = check_stoquastic(h, true);
    if (!rep.is_stoquastic) throw NotStoquasticError("G requires a stoquastic Hamiltonian", std::move(rep));

    // R bounds |sum_y H_{x,y}| and |H_{x,x}| for every x.
    double row_bound = 0.0;
    for (const auto& t : h.terms()) row_bound += t.matrix.cwiseAbs().rowwise().sum().maxCoeff();

    double scale = 0.0;
    if (scale_override > 0.0) {
        scale = scale_override;
        if (mode == GMode::norm_shift && scale < h.norm_bound() * (1.0 - 1e-12))
            throw ScalingError("scale below sum of term norms: elements may leave [0,1]");
        if (mode == GMode::walk_shift && scale < 2.0 * row_bound * (1.0 - 1e-12))
            throw ScalingError("walk scale too small: row sums may leave [1/4, 1]");
    } else if (mode == GMode::norm_shift) {
        scale = h.norm_bound() > 0.0 ? h.norm_bound() : 1.0;
    } else {
        scale = std::max(walk_q(h.n(), h.k(), h.max_term_norm()), 2.0 * row_bound);
    }
    return GMatrix(h, mode, scale);
}

}  // namespace stoq
