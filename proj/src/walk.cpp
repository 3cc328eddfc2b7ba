// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

#include "stoq/walk.hpp"

#include <cmath>
#include <sstream>

namespace stoq {

double gap_r(double mu0, double mu1) {
    if (!(mu0 > 0.0) || !(mu1 >= 0.0) || !(mu0 > mu1)) throw InputError("gap_r needs mu0 > mu1 >= 0");
    if (mu1 == 0.0) return 0.0;
    return 1.0 / (std::log2(mu0) - std::log2(mu1));
}

long auto_L(int n, double r_gap) {
    if (!(r_gap >= 0.0)) throw InputError("r_gap must be nonnegative");
    return std::max(1L, static_cast<long>(std::ceil(5.0 * n * r_gap / 2.0)));
}

long auto_w(int n, double c) {
    if (!(c > 0.0)) throw InputError("c must be positive");
    return std::max(1L, static_cast<long>(std::ceil(2.0 * std::pow(static_cast<double>(n), 2.0 * c) * std::log(6.0))));
}

WalkParams auto_params(int n, double r_gap, double c, std::uint64_t seed) {
    WalkParams p;
    p.L = auto_L(n, r_gap);
    p.w = auto_w(n, c);
    p.seed = seed;
    p.r_gap = r_gap;
    p.c = c;
    return p;
}

namespace {

constexpr double kLeakTol = 1e-12;

struct Row {
    std::vector<Bits> ys;
    std::vector<double> cdf;  ///< cumulative G_{x,y}; the remainder is the leak bucket
    double b = 0.0;
};

Row make_row(const GMatrix& g, Bits x) {
    Row r;
    double acc = 0.0;
    for (const auto& [y, v] : g.row(x)) {
        acc += v;
        r.ys.push_back(y);
        r.cdf.push_back(acc);
    }
    r.b = acc;
    if (1.0 - acc < -kLeakTol) {
        std::ostringstream os;
        os << "row sum " << acc << " exceeds 1 at x=" << x;
        throw ScalingError(os.str());
    }
    return r;
}

WalkState advance(const Row& r, WalkState s, SplitMix64& rng) {
    const double u = rng.uniform();
    for (std::size_t i = 0; i < r.cdf.size(); ++i)
        if (u < r.cdf[i]) return {r.ys[i], 0};
    return {s.x, 1};
}

/** Rows cached up front for small n; on demand otherwise. */
class RowCache {
public:
    explicit RowCache(const GMatrix& g) : g_(g) {
        if (g.n() <= 16) {
            rows_.reserve(std::size_t{1} << g.n());
            for (Bits x = 0; x < (Bits{1} << g.n()); ++x) rows_.push_back(make_row(g, x));
        }
    }
    const Row& ref(Bits x, Row& scratch) const {
        if (!rows_.empty()) return rows_[x];
        scratch = make_row(g_, x);
        return scratch;
    }

private:
    const GMatrix& g_;
    std::vector<Row> rows_;
};

}  // namespace

double row_sum(const GMatrix& g, Bits x) {
    const double b = g.row_sum(x);
    if (b < 0.25 - kLeakTol || b > 1.0 + kLeakTol) {
        std::ostringstream os;
        os << "row sum " << b << " outside [1/4, 1] at x=" << x;
        throw ScalingError(os.str());
    }
    return b;
}

WalkState step(const GMatrix& g, WalkState s, SplitMix64& rng) {
    if (s.anc != 0) throw PreconditionError("step called on a leaked walker");
    return advance(make_row(g, s.x), s, rng);
}

WalkOutcome run_postselected(const GMatrix& g, const WalkParams& p) {
    if (p.L < 1 || p.w < 1) throw InputError("walk needs L >= 1 and w >= 1");
    if (p.max_restarts < 1) throw InputError("max_restarts must be positive");
    const RowCache cache(g);
    WalkOutcome out;
    out.samples.reserve(static_cast<std::size_t>(p.w));
    out.leak_histogram.assign(static_cast<std::size_t>(p.L), 0);
    long long leaked = 0;
    double leak_step_sum = 0.0;
    double b_sum = 0.0;
    Row scratch;

    for (long i = 0; i < p.w; ++i) {
        bool clean = false;
        for (long long a = 0; a < p.max_restarts && !clean; ++a) {
            SplitMix64 rng(derive_seed(p.seed, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(a)}));
            WalkState s{rng.bits(g.n()), 0};
            ++out.attempts;
            long t = 1;
            for (; t <= p.L; ++t) {
                s = advance(cache.ref(s.x, scratch), s, rng);
                if (s.anc) break;
            }
            if (s.anc) {
                ++out.leak_histogram[static_cast<std::size_t>(t - 1)];
                ++leaked;
                leak_step_sum += static_cast<double>(t);
                continue;
            }
            clean = true;
            out.samples.push_back(s.x);
            b_sum += row_sum(g, s.x);
        }
        if (!clean) {
            const double rate = static_cast<double>(out.samples.size()) / static_cast<double>(out.attempts);
            std::ostringstream os;
            os << "walk slot " << i << " exhausted " << p.max_restarts << " restarts";
            throw PostSelectionError(os.str(), rate, out.attempts);
        }
    }
    out.flag_ok = true;
    out.mu_est = b_sum / static_cast<double>(p.w);
    out.success_rate = static_cast<double>(p.w) / static_cast<double>(out.attempts);
    out.mean_leak_step = leaked > 0 ? leak_step_sum / static_cast<double>(leaked) : 0.0;
    return out;
}

namespace {

/** 1^T G^L as a row vector, renormalized each step; log of the scale returned. */
Eigen::VectorXd ones_times_power(const RMat& g, long L, double& log_scale) {
    Eigen::VectorXd v = Eigen::VectorXd::Ones(g.rows());
    log_scale = 0.0;
    for (long t = 0; t < L; ++t) {
        v = g.transpose() * v;
        const double s = v.sum();
        if (s <= 0.0) return v;
        v /= s;
        log_scale += std::log(s);
    }
    return v;
}

}  // namespace

double exact_survival(const RMat& g, long L) {
    double ls = 0.0;
    const Eigen::VectorXd v = ones_times_power(g, L, ls);
    return std::exp(ls + std::log(v.sum()) - std::log(static_cast<double>(g.rows())));
}

double exact_expected_mu(const RMat& g, long L) {
    double ls = 0.0;
    const Eigen::VectorXd v = ones_times_power(g, L, ls);
    return (g.transpose() * v).sum() / v.sum();
}

Eigen::VectorXd exact_final_distribution(const RMat& g, long L) {
    double ls = 0.0;
    Eigen::VectorXd v = ones_times_power(g, L, ls);
    return v / v.sum();
}

GappedDecision decide_gapped_lhmin(const LocalHamiltonian& h, double p2, double r_gap, double c,
                                   std::uint64_t seed, long w_override, long long max_restarts) {
    if (!(p2 > 0.0)) throw InputError("p2 must be positive");
    const GMatrix g = to_g_matrix(h, GMode::walk_shift);
    GappedDecision d;
    d.q = g.scale();
    d.mu_plus = 0.5;
    d.mu_minus = 0.5 * (1.0 - 1.0 / (d.q * p2));
    d.threshold = 0.5 * (d.mu_plus + d.mu_minus);
    d.params = auto_params(h.n(), r_gap, c, seed);
    if (w_override > 0) d.params.w = w_override;
    d.params.max_restarts = max_restarts;
    d.outcome = run_postselected(g, d.params);
    d.decision = d.outcome.mu_est >= d.threshold ? Decision::yes : Decision::no;
    return d;
}

}  // namespace stoq
