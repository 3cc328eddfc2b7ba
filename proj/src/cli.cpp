// Copyright 2026 The stoqham Authors
// SPDX-License-Identifier: Apache-2.0

#include "stoq/cli.hpp"

#include "stoq/json_io.hpp"
#include "stoq/models.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>

namespace stoq {

namespace {

constexpr const char* kVersion = "1.0.0";

struct Binding {
    std::string key;
    CLI::Option* opt;
    std::function<void(const Json&)> set;
    std::function<Json()> get;
};

std::string key_to_flag(std::string key) {
    for (char& ch : key)
        if (ch == '_') ch = '-';
    return "--" + key;
}

/** One subcommand with its options mirrored as config-file keys. */
class Command {
public:
    Command(CLI::App& parent, const std::string& name, const std::string& desc)
        : name_(name), app_(parent.add_subcommand(name, desc)) {
        app_->add_option("--config", config_, "JSON file of parameters; flags override it");
        app_->add_option("-o,--output", output_, "write the result JSON here instead of stdout");
        app_->add_option("--metadata", metadata_, "metadata path (default <output>.meta.json)");
    }

    template <class T>
    void option(const std::string& key, T& var, const std::string& desc) {
        CLI::Option* o = app_->add_option(key_to_flag(key), var, desc)->capture_default_str();
        bind(key, o, var);
    }

    void flag(const std::string& key, bool& var, const std::string& desc) {
        const std::string f = key_to_flag(key);
        CLI::Option* o = app_->add_flag(f + ",!--no-" + f.substr(2), var, desc);
        bind(key, o, var);
    }

    bool parsed() const { return app_->parsed(); }
    const std::string& name() const { return name_; }
    const std::string& output() const { return output_; }
    const std::string& metadata() const { return metadata_; }

    /** Fill options not given on the command line from the config file. */
    void apply_config() {
        if (config_.empty()) return;
        const Json j = read_json_file(config_);
        if (!j.is_object()) throw InputError("config file must hold a JSON object");
        for (const auto& [key, value] : j.items()) {
            auto it = std::find_if(bindings_.begin(), bindings_.end(), [&](const Binding& b) { return b.key == key; });
            if (it == bindings_.end()) throw InputError("unknown config key '" + key + "' for " + name_);
            if (it->opt->count() > 0) continue;
            try {
                it->set(value);
            } catch (const Json::exception& e) {
                throw InputError("config key '" + key + "' has the wrong type");
            }
        }
    }

    Json resolved() const {
        Json j = Json::object();
        for (const auto& b : bindings_) j[b.key] = b.get();
        return j;
    }

private:
    template <class T>
    void bind(const std::string& key, CLI::Option* o, T& var) {
        bindings_.push_back({key, o, [&var](const Json& v) { var = v.get<T>(); }, [&var] { return Json(var); }});
    }

    std::string name_;
    CLI::App* app_;
    std::string config_, output_, metadata_;
    std::vector<Binding> bindings_;
};

struct Outcome {
    Json result;
    int status = 0;
};

LocalHamiltonian load_hamiltonian(const std::string& path) {
    if (path.empty()) throw InputError("--input is required");
    return hamiltonian_from_json(read_json_file(path));
}

/** Top two eigenvalues of dense G, largest first. */
std::pair<double, double> top_two(const GMatrix& g) {
    Eigen::SelfAdjointEigenSolver<RMat> es(g.dense(), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const Eigen::Index d = ev.size();
    return {ev(d - 1), d > 1 ? ev(d - 2) : 0.0};
}

Json g_json(const GMatrix& g) { return Json{{"mode", to_string(g.mode())}, {"scale", g.scale()}}; }

// ---- models ----
struct ModelsArgs {
    std::string model = "transverse_ising";
    ModelParams mp;
    bool rotate = false;
    bool list = false;
};

Outcome run_models(const ModelsArgs& a) {
    if (a.list) return {Json{{"models", model_names()}}};
    LocalHamiltonian h = model_builder(a.model, a.mp);
    if (a.rotate) h = bipartite_basis_change(h, chain_coloring(h.n()));
    return {Json{{"model", a.model},
                 {"stoquastic", check_stoquastic(h, true).is_stoquastic},
                 {"hamiltonian", to_json(h)}}};
}

// ---- check ----
struct CheckArgs {
    std::string input;
    bool termwise = true;
    int full_cap = 14;
};

Outcome run_check(const CheckArgs& a) {
    const LocalHamiltonian h = load_hamiltonian(a.input);
    Json r = to_json(check_stoquastic(h, a.termwise, a.full_cap));
    r["n"] = h.n();
    r["k"] = h.k();
    return {r};
}

// ---- exact ----
struct ExactArgs {
    std::string input;
    std::string method = "dense";
    std::string gmode = "norm_shift";
    double delta = 0.0;
    bool vector = false;
    double tol = 1e-13;
    int max_iters = 200000;
};

Outcome run_exact(const ExactArgs& a) {
    const LocalHamiltonian h = load_hamiltonian(a.input);
    Outcome o;
    const bool stoq = check_stoquastic(h, true).is_stoquastic;
    if (a.method == "dense") {
        o.result["spectrum"] = to_json(diagonalize_dense(h), a.vector);
        if (stoq) {
            const GMatrix g = to_g_matrix(h, gmode_from_string(a.gmode));
            Json jg = g_json(g);
            jg["mu"] = largest_eigenvalue_dense(g.dense());
            o.result["g"] = jg;
        }
    } else if (a.method == "power") {
        const GMatrix g = to_g_matrix(h, gmode_from_string(a.gmode));
        const PowerResult p = largest_eigenvalue_power(g, a.tol, a.max_iters);
        Json jg = g_json(g);
        jg["mu"] = p.mu;
        jg["iterations"] = p.iterations;
        o.result["g"] = jg;
        o.result["lambda_est"] = g.scale() * (1.0 - 2.0 * p.mu);
        if (a.vector) o.result["vector"] = vector_to_json(p.vector);
    } else {
        throw InputError("unknown method: " + a.method);
    }
    if (a.delta > 0.0) {
        const Decision d = decide_lhmin(h, a.delta);
        o.result["decision"] = to_string(d);
        if (d == Decision::promise_violated) o.status = 2;
    }
    return o;
}

// ---- walk / compare ----
struct WalkArgs {
    std::string input;
    std::string gmode = "walk_shift";
    long L = 0;
    long w = 0;
    double c = 1.0;
    double r_gap = 0.0;
    std::uint64_t seed = 0;
    long long max_restarts = 1000000;
    double p2 = 0.0;
    bool samples = false;
    double tolerance = 0.02;
};

WalkParams resolve_walk(const WalkArgs& a, const GMatrix& g) {
    double r = a.r_gap;
    if (r <= 0.0) {
        const auto [mu0, mu1] = top_two(g);
        r = gap_r(mu0, mu1);
    }
    WalkParams p = auto_params(g.n(), r, a.c, a.seed);
    if (a.L > 0) p.L = a.L;
    if (a.w > 0) p.w = a.w;
    p.max_restarts = a.max_restarts;
    return p;
}

Json params_json(const WalkParams& p) {
    return Json{{"L", p.L},       {"w", p.w},       {"r_gap", p.r_gap},
                {"c", p.c},       {"seed", p.seed}, {"max_restarts", p.max_restarts}};
}

Outcome run_walk(const WalkArgs& a) {
    const LocalHamiltonian h = load_hamiltonian(a.input);
    const GMatrix g = to_g_matrix(h, gmode_from_string(a.gmode));
    const WalkParams p = resolve_walk(a, g);
    Outcome o;
    if (a.p2 > 0.0) {
        const GappedDecision d = decide_gapped_lhmin(h, a.p2, p.r_gap, p.c, p.seed, a.w, p.max_restarts);
        o.result["params"] = params_json(d.params);
        o.result["decision"] = Json{{"decision", to_string(d.decision)},
                                    {"mu_plus", d.mu_plus},
                                    {"mu_minus", d.mu_minus},
                                    {"threshold", d.threshold},
                                    {"q", d.q}};
        o.result["outcome"] = to_json(d.outcome, a.samples);
        return o;
    }
    const WalkOutcome w = run_postselected(g, p);
    o.result["params"] = params_json(p);
    o.result["g"] = g_json(g);
    o.result["outcome"] = to_json(w, a.samples);
    o.result["lambda_est"] = g.scale() * (1.0 - 2.0 * w.mu_est);
    return o;
}

Outcome run_compare(const WalkArgs& a) {
    const LocalHamiltonian h = load_hamiltonian(a.input);
    const GMatrix g = to_g_matrix(h, gmode_from_string(a.gmode));
    const WalkParams p = resolve_walk(a, g);
    const WalkOutcome w = run_postselected(g, p);
    const RMat dense = g.dense();
    const double mu = largest_eigenvalue_dense(dense);
    const double diff = std::abs(w.mu_est - mu);
    Json r;
    r["params"] = params_json(p);
    r["g"] = g_json(g);
    r["walk"] = to_json(w, false);
    r["exact"] = Json{{"mu", mu},
                      {"expected_mu", exact_expected_mu(dense, p.L)},
                      {"survival", exact_survival(dense, p.L)},
                      {"lambda0", diagonalize_dense(h).lambda0}};
    r["abs_diff"] = diff;
    r["tolerance"] = a.tolerance;
    r["within_tolerance"] = diff <= a.tolerance;
    return {r};
}

// ---- gadget ----
struct GadgetArgs {
    std::string input;
    std::string stage = "full";
    double delta = 0.1;
    double Delta = 0.0;
    double delta_kkr = 0.0;
    bool verify = true;
    bool self_energy = false;
    double z = 0.0;
    bool hamiltonians = true;
};

Json stage_json(const GadgetResult& r, int input_locality, bool with_h) {
    Json j = to_json(r, with_h);
    j["termwise_stoquastic"] = check_stoquastic(r.compiled, true).is_termwise_stoquastic;
    j["locality_contract"] = check_locality_contract(r, input_locality);
    return j;
}

Outcome run_gadget(const GadgetArgs& a) {
    const LocalHamiltonian h = load_hamiltonian(a.input);
    const int loc = h.max_support();
    if (a.stage == "full") {
        const auto stages = full_chain(h, a.delta, a.delta_kkr, a.verify);
        Json r = to_json(stages.back(), a.hamiltonians);
        Json js = Json::array();
        int in_loc = loc;
        for (std::size_t i = 0; i + 1 < stages.size(); ++i) {
            js.push_back(stage_json(stages[i], in_loc, false));
            in_loc = stages[i].compiled.max_support();
        }
        r["stages"] = std::move(js);
        return {r};
    }
    GadgetResult g;
    if (a.stage == "subdivide" || a.stage == "subdivision") {
        double Delta = a.Delta;
        if (Delta <= 0.0) Delta = std::max(400.0, 100.0 * subdivision_v_estimate(decompose_target(h)));
        g = subdivision_reduce(h, Delta, {}, a.verify);
    } else if (a.stage == "normalize") {
        g = normalize_3local(h, a.Delta, a.verify);
    } else if (a.stage == "triplex") {
        g = triple_x_reduce(h, a.delta, a.verify);
    } else if (a.stage == "kkr") {
        g = kkr_3to2_reduce(h, a.delta, a.verify);
    } else {
        throw InputError("unknown stage: " + a.stage);
    }
    Json r = stage_json(g, loc, a.hamiltonians);
    if (a.self_energy) {
        if (a.stage != "triplex" && g.stage != "subdivide")
            throw InputError("self-energy is available for the subdivide and triplex stages");
        const SelfEnergyReport s = a.stage == "triplex"
                                       ? triple_x_self_energy(g, a.z)
                                       : self_energy(g.unperturbed, g.perturbation, gadget_low_basis(g), a.z);
        r["self_energy"] = to_json(s);
    }
    return {r};
}

// ---- clock ----
struct ClockArgs {
    std::string input;
    bool lambda = false;
};

Outcome run_clock(const ClockArgs& a) {
    if (a.input.empty()) throw InputError("--input is required");
    const ReversibleCircuit c = circuit_from_json(read_json_file(a.input));
    const ClockInstance ci = build_clock_hamiltonian(c);
    Json r;
    r["T"] = ci.T;
    r["n_comp"] = ci.n_comp;
    r["labels"] = ci.labels;
    r["locality"] = ci.hamiltonian.max_support();
    r["stoquastic"] = check_stoquastic(ci.hamiltonian, true).is_stoquastic;
    if (c.s <= 12 && c.r <= kCoinCap) {
        const std::vector<double> m = acceptance_operator(c);
        r["acceptance"] = m;
        r["max_acceptance"] = *std::max_element(m.begin(), m.end());
    }
    if (a.lambda) r["lambda"] = diagonalize_dense(ci.hamiltonian, 12).lambda0;
    r["hamiltonian"] = to_json(ci.hamiltonian);
    return {r};
}

// ---- amproto ----
struct AmArgs {
    std::string input;
    std::string gmode = "norm_shift";
    int m = 2;
    int L = 4;
    double mu_plus = 1.0;
    double mu_minus = 0.25;
    std::string prover = "honest";
    int trials = 64;
    int queries = 64;
    std::uint64_t seed = 0;
    bool transcript = false;
};

Outcome run_amproto(const AmArgs& a) {
    const LocalHamiltonian h = load_hamiltonian(a.input);
    const GMatrix g = to_g_matrix(h, gmode_from_string(a.gmode));
    const CountingInstance ci = make_counting_instance(g, a.m, a.L, a.mu_plus, a.mu_minus);
    const ProtocolResult p =
        run_gs_protocol(ci, prover_from_string(a.prover), a.trials, a.seed, a.queries, a.transcript);
    Json r;
    r["instance"] = Json{{"n", ci.n()},
                         {"m", ci.m()},
                         {"L", ci.L},
                         {"kbits", ci.kbits()},
                         {"b", ci.hash_bits()},
                         {"mu_plus", ci.mu_plus},
                         {"mu_minus", ci.mu_minus},
                         {"log2_large", ci.log2_large()},
                         {"log2_small", ci.log2_small()}};
    if (ci.n() <= 8) r["omega_size"] = count_omega_trace(ci);
    r["accept_rate"] = static_cast<double>(p.accepts) / a.trials;
    r["protocol"] = to_json(p, a.transcript);
    return {r};
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

void emit(const Json& doc, const std::string& path, std::ostream& out) {
    const std::string text = doc.dump(2) + "\n";
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path);
    f << text;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stoquastic Hamiltonian toolkit", "stoqham"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    ModelsArgs ma;
    Command models(app, "models", "build a standard model Hamiltonian");
    models.option("model", ma.model, "transverse_ising, heisenberg_afm, ferro_xy or ising_3d_classical");
    models.option("n", ma.mp.n, "number of qubits");
    models.option("J", ma.mp.J, "coupling");
    models.option("field", ma.mp.h, "transverse field h");
    models.option("p", ma.mp.p, "XX weight (ferro_xy)");
    models.option("q", ma.mp.q, "YY weight (ferro_xy)");
    models.flag("periodic", ma.mp.periodic, "close the chain");
    models.option("dims", ma.mp.dims, "lattice extents (ising_3d_classical)");
    models.option("seed", ma.mp.seed, "random seed");
    models.flag("rotate", ma.rotate, "conjugate by Z on odd sites");
    models.flag("list", ma.list, "list model names");

    CheckArgs ca;
    Command check(app, "check", "test stoquasticity");
    check.option("input", ca.input, "Hamiltonian JSON");
    check.flag("termwise", ca.termwise, "scan term matrices first");
    check.option("full_cap", ca.full_cap, "qubit cap for the full scan");

    ExactArgs ea;
    Command exact(app, "exact", "exact spectrum and mu(G)");
    exact.option("input", ea.input, "Hamiltonian JSON");
    exact.option("method", ea.method, "dense or power");
    exact.option("gmode", ea.gmode, "norm_shift or walk_shift");
    exact.option("delta", ea.delta, "decide lambda <= 0 vs lambda >= delta when positive");
    exact.flag("vector", ea.vector, "include the ground vector");
    exact.option("tol", ea.tol, "power iteration tolerance");
    exact.option("max_iters", ea.max_iters, "power iteration limit");

    WalkArgs wa;
    auto walk_opts = [&wa](Command& c) {
        c.option("input", wa.input, "Hamiltonian JSON");
        c.option("gmode", wa.gmode, "norm_shift or walk_shift");
        c.option("L", wa.L, "walk length (0 = auto)");
        c.option("w", wa.w, "number of clean walks (0 = auto)");
        c.option("c", wa.c, "exponent in the auto walk count");
        c.option("r_gap", wa.r_gap, "gap parameter (0 = from the dense spectrum)");
        c.option("seed", wa.seed, "random seed");
        c.option("max_restarts", wa.max_restarts, "restart budget per walk");
    };
    Command walk(app, "walk", "post-selected random-walk estimate of mu(G)");
    walk_opts(walk);
    walk.option("p2", wa.p2, "decide lambda <= 0 vs lambda >= 1/p2 when positive");
    walk.flag("samples", wa.samples, "include final walk positions");
    Command compare(app, "compare", "walk estimate against the exact oracle");
    walk_opts(compare);
    compare.option("tolerance", wa.tolerance, "allowed |mu_est - mu|");

    GadgetArgs ga;
    Command gadget(app, "gadget", "perturbative gadget compilation");
    gadget.option("input", ga.input, "Hamiltonian JSON");
    gadget.option("stage", ga.stage, "subdivide, normalize, triplex, kkr or full");
    gadget.option("delta", ga.delta, "small parameter of the triple-X and KKR stages");
    gadget.option("Delta", ga.Delta, "subdivision penalty (0 = auto)");
    gadget.option("delta_kkr", ga.delta_kkr, "KKR parameter in the full chain (0 = delta)");
    gadget.flag("verify", ga.verify, "compare ground energies by dense diagonalization");
    gadget.flag("self_energy", ga.self_energy, "report self-energy orders");
    gadget.option("z", ga.z, "self-energy evaluation point");
    gadget.flag("hamiltonians", ga.hamiltonians, "include compiled, H0 and V");

    ClockArgs cla;
    Command clock(app, "clock", "clock Hamiltonian of a Toffoli verifier");
    clock.option("input", cla.input, "circuit JSON");
    clock.flag("lambda", cla.lambda, "dense ground energy (at most 12 qubits)");

    AmArgs aa;
    Command amproto(app, "amproto", "counting set and hashing protocol");
    amproto.option("input", aa.input, "Hamiltonian JSON");
    amproto.option("gmode", aa.gmode, "norm_shift or walk_shift");
    amproto.option("m", aa.m, "binary digits per element");
    amproto.option("L", aa.L, "cycle length (even)");
    amproto.option("mu_plus", aa.mu_plus, "yes threshold on mu(G)");
    amproto.option("mu_minus", aa.mu_minus, "no threshold on mu(G)");
    amproto.option("prover", aa.prover, "honest, always_claim or random_preimage");
    amproto.option("trials", aa.trials, "independent protocol runs");
    amproto.option("queries", aa.queries, "verifier samples per run");
    amproto.option("seed", aa.seed, "random seed");
    amproto.flag("transcript", aa.transcript, "include message transcripts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    Command* cmds[] = {&models, &check, &exact, &walk, &compare, &gadget, &clock, &amproto};
    Command* cmd = nullptr;
    for (Command* c : cmds)
        if (c->parsed()) cmd = c;

    try {
        cmd->apply_config();
        Outcome o;
        const std::string& n = cmd->name();
        if (n == "models") o = run_models(ma);
        else if (n == "check") o = run_check(ca);
        else if (n == "exact") o = run_exact(ea);
        else if (n == "walk") o = run_walk(wa);
        else if (n == "compare") o = run_compare(wa);
        else if (n == "gadget") o = run_gadget(ga);
        else if (n == "clock") o = run_clock(cla);
        else o = run_amproto(aa);

        Json doc{{"command", n}, {"config", cmd->resolved()}, {"result", std::move(o.result)}};
        emit(doc, cmd->output(), out);
        std::string meta = cmd->metadata();
        if (meta.empty() && !cmd->output().empty()) meta = cmd->output() + ".meta.json";
        if (!meta.empty()) {
            Json argv_json = Json::array();
            for (int i = 0; i < argc; ++i) argv_json.push_back(argv[i]);
            emit(Json{{"command", n}, {"version", kVersion}, {"timestamp", utc_now()}, {"argv", argv_json}}, meta,
                 out);
        }
        return o.status;
    } catch (const Error& e) {
        const bool user = dynamic_cast<const InputError*>(&e) || dynamic_cast<const CapacityError*>(&e) ||
                          dynamic_cast<const PreconditionError*>(&e);
        err << "error: " << e.what() << "\n";
        try {
            emit(Json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}, cmd->output(), out);
        } catch (const Error&) {
        }
        return user ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        try {
            emit(Json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}, cmd->output(), out);
        } catch (const Error&) {
        }
        return 1;
    }
}

}  // namespace stoq
