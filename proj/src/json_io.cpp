// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

#include "stoq/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace stoq {

Json vector_to_json(const Eigen::VectorXd& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Json matrix_to_json(const RMat& m) {
    Json a = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        a.push_back(std::move(row));
    }
    return a;
}

namespace {

RMat matrix_from_json(const Json& a, Eigen::Index dim, const std::string& where) {
    if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != dim)
        throw InputError(where + ": matrix must have " + std::to_string(dim) + " rows");
    RMat m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const Json& row = a[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
            throw InputError(where + ": matrix row has the wrong length");
        for (Eigen::Index c = 0; c < dim; ++c) {
            const Json& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number()) throw InputError(where + ": matrix entries must be numbers");
            m(r, c) = v.get<double>();
        }
    }
    return m;
}

const Json& unwrap_hamiltonian(const Json& j) {
    if (j.is_object() && j.contains("terms")) return j;
    if (j.is_object() && j.contains("hamiltonian")) return j.at("hamiltonian");
    if (j.is_object() && j.contains("result") && j.at("result").is_object() &&
        j.at("result").contains("hamiltonian"))
        return j.at("result").at("hamiltonian");
    throw InputError("document holds no Hamiltonian");
}

int get_int(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw InputError(std::string("missing integer field '") + key + "'");
    return j.at(key).get<int>();
}

}  // namespace

Json to_json(const LocalHamiltonian& h) {
    Json terms = Json::array();
    for (const auto& t : h.terms()) {
        Json jt;
        jt["support"] = t.support;
        jt["matrix_re"] = matrix_to_json(t.matrix.real());
        const RMat im = t.matrix.imag();
        // Any set bit, including a signed zero, keeps the imaginary part for exact round trips.
        if (std::any_of(im.data(), im.data() + im.size(), [](double v) { return v != 0.0 || std::signbit(v); }))
            jt["matrix_im"] = matrix_to_json(im);
        terms.push_back(std::move(jt));
    }
    return Json{{"n", h.n()}, {"k", h.k()}, {"terms", std::move(terms)}};
}

LocalHamiltonian hamiltonian_from_json(const Json& doc) {
    try {
        const Json& j = unwrap_hamiltonian(doc);
        const int n = get_int(j, "n");
        if (!j.at("terms").is_array()) throw InputError("'terms' must be an array");
        int k = 0;
        std::vector<LocalTerm> terms;
        std::size_t idx = 0;
        for (const Json& jt : j.at("terms")) {
            const std::string where = "term " + std::to_string(idx++);
            if (!jt.is_object() || !jt.contains("support") || !jt.contains("matrix_re"))
                throw InputError(where + ": needs 'support' and 'matrix_re'");
            const auto support = jt.at("support").get<std::vector<int>>();
            if (support.size() > 20) throw InputError(where + ": support too large");
            const auto dim = Eigen::Index{1} << support.size();
            const RMat re = matrix_from_json(jt.at("matrix_re"), dim, where);
            const RMat im = jt.contains("matrix_im") ? matrix_from_json(jt.at("matrix_im"), dim, where)
                                                     : RMat::Zero(dim, dim);
            CMat m(dim, dim);
            for (Eigen::Index r = 0; r < dim; ++r)
                for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = cplx(re(r, c), im(r, c));
            k = std::max(k, static_cast<int>(support.size()));
            terms.emplace_back(support, std::move(m));
        }
        if (j.contains("k")) k = std::max(k, get_int(j, "k"));
        return LocalHamiltonian(n, k, std::move(terms));
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed Hamiltonian JSON: ") + e.what());
    }
}

Json to_json(const ReversibleCircuit& c) {
    Json gates = Json::array();
    for (const auto& g : c.gates) gates.push_back({g.c1, g.c2, g.target});
    return Json{{"r", c.r}, {"k_anc", c.k_anc}, {"s", c.s}, {"q_out", c.q_out}, {"gates", std::move(gates)}};
}

ReversibleCircuit circuit_from_json(const Json& doc) {
    try {
        const Json& j = doc.contains("circuit") ? doc.at("circuit") : doc;
        ReversibleCircuit c;
        c.r = get_int(j, "r");
        c.k_anc = get_int(j, "k_anc");
        c.s = get_int(j, "s");
        c.q_out = get_int(j, "q_out");
        if (!j.contains("gates") || !j.at("gates").is_array()) throw InputError("missing 'gates' array");
        for (const Json& g : j.at("gates")) {
            const auto v = g.get<std::vector<int>>();
            if (v.size() != 3) throw InputError("each gate is [c1, c2, target]");
            c.gates.push_back({v[0], v[1], v[2]});
        }
        c.validate();
        return c;
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed circuit JSON: ") + e.what());
    }
}

Json to_json(const StoquasticReport& r) {
    Json v = Json::array();
    for (const auto& x : r.violations)
        v.push_back({{"x", x.x}, {"y", x.y}, {"real", x.value.real()}, {"imag", x.value.imag()}, {"term", x.term}});
    return Json{{"is_stoquastic", r.is_stoquastic},
                {"is_termwise_stoquastic", r.is_termwise_stoquastic},
                {"full_scan", r.full_scan},
                {"violations", std::move(v)}};
}

Json to_json(const SpectralSummary& s, bool with_vector) {
    Json j{{"lambda0", s.lambda0}, {"lambda1", s.lambda1}, {"gap", s.gap}, {"method", s.method}};
    if (with_vector && s.ground_vector.size() > 0) j["ground_vector"] = vector_to_json(s.ground_vector);
    return j;
}

Json to_json(const WalkOutcome& o, bool with_samples) {
    Json j{{"mu_est", o.mu_est},
           {"attempts", o.attempts},
           {"success_rate", o.success_rate},
           {"flag_ok", o.flag_ok},
           {"mean_leak_step", o.mean_leak_step},
           {"leak_histogram", o.leak_histogram}};
    if (with_samples) j["samples"] = o.samples;
    return j;
}

Json to_json(const GadgetResult& r, bool with_hamiltonians) {
    Json groups = Json::array();
    for (const auto& g : r.mediator_map)
        groups.push_back(
            {{"kind", g.kind}, {"mediators", g.mediators}, {"data", g.data}, {"source_term", g.source_term}});
    Json j{{"stage", r.stage},
           {"n_data", r.n_data},
           {"n_total", r.compiled.n()},
           {"locality", r.compiled.max_support()},
           {"omega_shift", r.omega_shift},
           {"deltas", r.deltas},
           {"verified", r.verified},
           {"verified_error", r.verified_error},
           {"target_lambda", r.target_lambda},
           {"compiled_lambda", r.compiled_lambda},
           {"mediator_map", std::move(groups)}};
    if (with_hamiltonians) {
        j["hamiltonian"] = to_json(r.compiled);
        j["unperturbed"] = to_json(r.unperturbed);
        j["perturbation"] = to_json(r.perturbation);
    }
    return j;
}

Json to_json(const SelfEnergyReport& s) {
    return Json{{"z", s.z},
                {"high_gap", s.high_gap},
                {"second_order_shift", s.second_order_shift},
                {"sigma4_norm", s.sigma4_norm},
                {"sigma1", matrix_to_json(s.sigma1)},
                {"sigma2", matrix_to_json(s.sigma2)},
                {"sigma3", matrix_to_json(s.sigma3)},
                {"sigma4", matrix_to_json(s.sigma4)}};
}

Json to_json(const ProtocolResult& r, bool with_transcript) {
    Json trials = Json::array();
    for (const auto& t : r.trials) {
        Json jt{{"seed", t.seed},
                {"hits", t.hits},
                {"queries", t.queries},
                {"hit_fraction", t.hit_fraction},
                {"accepted", t.accepted}};
        if (with_transcript) {
            Json tr = Json::array();
            for (const auto& e : t.transcript)
                tr.push_back({{"query", e.query},
                              {"answered", e.answered},
                              {"j", e.j},
                              {"s", e.s},
                              {"hash_ok", e.hash_ok},
                              {"member", e.member}});
            jt["transcript"] = std::move(tr);
        }
        trials.push_back(std::move(jt));
    }
    return Json{{"accepts", r.accepts},
                {"rejects", r.rejects},
                {"short_circuit", r.short_circuit},
                {"kbits", r.kbits},
                {"b", r.b},
                {"threshold", r.threshold},
                {"trials", std::move(trials)}};
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("invalid JSON in " + path + ": " + e.what());
    }
}

}  // namespace stoq
