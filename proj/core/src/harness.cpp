#include "rlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rlab/carriers.hpp"
#include "rlab/euler2d.hpp"
#include "rlab/rng.hpp"
#include "rlab/vlasov_poisson.hpp"

namespace rlab {

namespace fs = std::filesystem;

const char* ExperimentConfig::kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::certify_sweep: return "certify_sweep";
        case ExperimentKind::euler_strip_run: return "euler_strip_run";
        case ExperimentKind::euler_disc_certify: return "euler_disc_certify";
        case ExperimentKind::euler_domain_certify: return "euler_domain_certify";
        case ExperimentKind::vp_build_and_certify: return "vp_build_and_certify";
        case ExperimentKind::corollary1_sweep: return "corollary1_sweep";
    }
    return "unknown";
}

ExperimentKind ExperimentConfig::kind_from_name(const std::string& s) {
    for (ExperimentKind k :
         {ExperimentKind::certify_sweep, ExperimentKind::euler_strip_run,
          ExperimentKind::euler_disc_certify, ExperimentKind::euler_domain_certify,
          ExperimentKind::vp_build_and_certify, ExperimentKind::corollary1_sweep})
        if (s == kind_name(k)) return k;
    throw std::invalid_argument("unknown experiment kind: " + s);
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    std::vector<std::string> bad;
    auto take = [&](const char* key, auto& target, auto validate) {
        if (!j.contains(key)) return;
        try {
            using T = std::decay_t<decltype(target)>;
            if constexpr (std::is_unsigned_v<T>) {
                // nlohmann wraps negative integers silently; validate signed
                long long v = j.at(key).get<long long>();
                if (v < 0 || !validate(static_cast<T>(v))) {
                    bad.push_back(key);
                    return;
                }
                target = static_cast<T>(v);
            } else {
                target = j.at(key).get<T>();
                if (!validate(target)) bad.push_back(key);
            }
        } catch (...) {
            bad.push_back(key);
        }
    };
    auto positive = [](auto v) { return v > 0; };
    auto nonneg = [](auto v) { return v >= 0; };

    if (!j.contains("experiment")) {
        bad.push_back("experiment");
    } else {
        try {
            c.experiment = kind_from_name(j.at("experiment").get<std::string>());
        } catch (...) {
            bad.push_back("experiment");
        }
    }
    if (j.contains("seed")) {
        try {
            c.seed = j.at("seed").get<std::uint64_t>();
        } catch (...) {
            bad.push_back("seed");
        }
    }
    take("trials", c.trials, nonneg);
    take("bands", c.bands, positive);
    take("disc_radius", c.disc_radius, positive);
    take("L1", c.L1, positive);
    take("L2", c.L2, positive);
    if (j.contains("families")) {
        try {
            c.families = j.at("families").get<std::vector<std::string>>();
        } catch (...) {
            bad.push_back("families");
        }
    }
    if (j.contains("m_list")) {
        try {
            c.m_list = j.at("m_list").get<std::vector<double>>();
            for (double m : c.m_list)
                if (!(m > 0.0)) bad.push_back("m_list");
        } catch (...) {
            bad.push_back("m_list");
        }
    }
    take("N1", c.N1, positive);
    take("N2", c.N2, positive);
    take("T", c.T, positive);
    take("dt", c.dt, nonneg);
    take("sample_every", c.sample_every, positive);
    take("perturb_amplitude", c.perturb_amplitude, nonneg);
    take("shells", c.shells, positive);
    take("bump_amplitude", c.bump_amplitude, nonneg);
    take("vp_k", c.vp_k, [](double v) { return v > 1.0; });
    take("vp_kappa", c.vp_kappa, positive);
    take("vp_e0", c.vp_e0, [](double v) { return v < 0.0; });
    take("vp_nr", c.vp_nr, positive);
    take("vp_nv", c.vp_nv, positive);
    take("scheme_tolerance", c.scheme_tolerance, positive);
    take("mu_tolerance", c.mu_tolerance, positive);
    if (j.contains("output_dir")) {
        try {
            c.output_dir = j.at("output_dir").get<std::string>();
        } catch (...) {
            bad.push_back("output_dir");
        }
    }
    if (!bad.empty()) {
        std::string msg = "invalid config fields:";
        for (const auto& b : bad) msg += " " + b;
        throw std::invalid_argument(msg);
    }
    return c;
}

ExperimentConfig ExperimentConfig::load(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open config: " + file.string());
    nlohmann::json j = nlohmann::json::parse(in);
    return from_json(j);
}

nlohmann::ordered_json ExperimentConfig::to_json() const {
    nlohmann::ordered_json j;
    j["experiment"] = kind_name(experiment);
    j["seed"] = seed;
    j["trials"] = trials;
    j["bands"] = bands;
    j["disc_radius"] = disc_radius;
    j["L1"] = L1;
    j["L2"] = L2;
    j["families"] = families;
    j["m_list"] = m_list;
    j["N1"] = N1;
    j["N2"] = N2;
    j["T"] = T;
    j["dt"] = dt;
    j["sample_every"] = sample_every;
    j["perturb_amplitude"] = perturb_amplitude;
    j["shells"] = shells;
    j["bump_amplitude"] = bump_amplitude;
    j["vp_k"] = vp_k;
    j["vp_kappa"] = vp_kappa;
    j["vp_e0"] = vp_e0;
    j["vp_nr"] = vp_nr;
    j["vp_nv"] = vp_nv;
    j["scheme_tolerance"] = scheme_tolerance;
    j["mu_tolerance"] = mu_tolerance;
    j["output_dir"] = output_dir.string();
    return j;
}

fs::path resolve_output_dir(const ExperimentConfig& config) {
    if (const char* env = std::getenv("RLAB_OUT")) {
        return fs::path(env) / config.output_dir.filename();
    }
    return config.output_dir;
}

namespace {

std::string now_iso() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    return buf;
}

void write_text(const fs::path& p, const std::string& s) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << s;
}

void track(RunRecord& rec, const Certificate& c) {
    if (c.status == Certificate::Status::violated) ++rec.violation_count;
    rec.caveat_count += c.caveats.size();
    rec.min_slack = std::min(rec.min_slack, c.slack);
}

void write_trial(const fs::path& dir, std::size_t trial, const std::vector<Certificate>& cs) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : cs) arr.push_back(c.to_json());
    char name[32];
    std::snprintf(name, sizeof(name), "trial_%05zu.json", trial);
    write_text(dir / "certs" / name, arr.dump(2) + "\n");
}

StratifiedCarrier family_carrier(const std::string& fam, const ExperimentConfig& cfg,
                                 std::uint64_t master) {
    if (fam == "disc_radius2") return make_disc_radius2(cfg.bands, cfg.disc_radius);
    if (fam == "strip_x2") return make_strip_x2(cfg.bands, cfg.L1, cfg.L2);
    if (fam == "powerlaw_m1_d2")
        return make_powerlaw_shells(cfg.bands, 1.0, 2, 2.0 * cfg.disc_radius, cfg.disc_radius);
    if (fam == "powerlaw_m2_d3")
        return make_powerlaw_shells(cfg.bands, 2.0, 3, 2.0 * cfg.disc_radius, cfg.disc_radius);
    if (fam == "empirical") {
        CarrierPtr base = make_disc_shells(cfg.bands, cfg.disc_radius);
        RandomStream rs = RandomStream::for_trial(master, 0xFFFFFFFFULL);
        std::vector<double> sig(cfg.bands);
        for (auto& s : sig) s = rs.uniform(0.0, 3.0);
        std::sort(sig.begin(), sig.end());
        for (std::size_t i = 1; i < sig.size(); ++i)
            if (sig[i] <= sig[i - 1]) sig[i] = std::nextafter(sig[i - 1], 1e300);
        // scatter back so atom order is not sigma order
        RandomStream rs2 = RandomStream::for_trial(master, 0xFFFFFFFEULL);
        for (std::size_t i = sig.size(); i > 1; --i)
            std::swap(sig[i - 1], sig[rs2.uniform_index(i)]);
        return {base, SigmaField::empirical(base, sig)};
    }
    throw std::invalid_argument("unknown sigma family: " + fam);
}

// stable cross-platform string tag (FNV-1a) so per-family streams are fully
// specified by the documented generator
std::uint64_t family_tag(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

RunRecord run_certify_sweep(const ExperimentConfig& cfg, const fs::path& out) {
    RunRecord rec;
    rec.config = cfg;
    double max_oracle_gap = 0.0;
    std::size_t trial_file = 0;
    for (const std::string& fam : cfg.families) {
        std::uint64_t master = splitmix64_mix(cfg.seed ^ family_tag(fam));
        StratifiedCarrier sc = family_carrier(fam, cfg, master);
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            RandomStream rs = RandomStream::for_trial(master, t);
            AtomicFunction f = random_bumps(rs, sc.carrier);
            AtomicFunction q = random_bumps(rs, sc.carrier);
            if (l1_norm(q) <= 0.0 || l1_norm(f) <= 0.0) continue;
            std::vector<Certificate> cs;
            cs.push_back(certify_thm1(f, q, sc.sigma));
            cs.push_back(certify_refined(f, sc.sigma));
            cs.push_back(certify_remark3(f, q, sc.sigma));
            // oracle cross-check on the remark3 left-hand side
            LayerCakeOracle oc = oracle_layer_cake(f, q, sc.sigma);
            double lhs = cs.back().lhs;
            double gap = std::abs(lhs - oc.remark3_lhs) /
                         std::max({std::abs(lhs), std::abs(oc.remark3_lhs), 1e-12});
            max_oracle_gap = std::max(max_oracle_gap, gap);
            cs.back().component("oracle_remark3_lhs", oc.remark3_lhs);
            cs.back().component("oracle_relative_gap", gap);
            for (auto& c : cs) {
                c.component("family_tag", static_cast<double>(trial_file));
                track(rec, c);
                rec.certificates.push_back(c);
            }
            write_trial(out, trial_file, cs);
            ++trial_file;
        }
    }
    std::ostringstream note;
    note << "max_oracle_relative_gap=" << max_oracle_gap;
    rec.notes.push_back(note.str());
    return rec;
}

RunRecord run_corollary1(const ExperimentConfig& cfg, const fs::path& out) {
    RunRecord rec;
    rec.config = cfg;
    StratifiedCarrier sc = make_disc_radius2(cfg.bands, cfg.disc_radius);
    std::uint64_t master = splitmix64_mix(cfg.seed ^ 0xC0F01ULL);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        RandomStream rs = RandomStream::for_trial(master, t);
        AtomicFunction u = random_bumps(rs, sc.carrier);
        if (t == 0) u = schwarz_rearrange(u);  // the u = u* fixed-point case
        if (l1_norm(u) <= 0.0) continue;
        std::vector<Certificate> cs;
        for (double m : cfg.m_list) cs.push_back(certify_corollary1(u, m));
        for (auto& c : cs) {
            track(rec, c);
            rec.certificates.push_back(c);
        }
        write_trial(out, t, cs);
    }
    return rec;
}

VorticityField strip_initial(const ExperimentConfig& cfg) {
    VorticityField q = shear_field(cfg.N1, cfg.N2, cfg.L1, cfg.L2,
                                   [](double x2) { return std::max(1.0 - x2, 0.0); });
    // smooth positive interior bump
    const double cx = 0.5 * cfg.L1, cy = 0.5 * cfg.L2;
    const double sx = 0.08 * cfg.L1, sy = 0.08 * cfg.L2;
    for (std::size_t j = 0; j < cfg.N2; ++j)
        for (std::size_t i = 0; i < cfg.N1; ++i) {
            double dx1 = q.x1(i) - cx, dx2 = q.x2(j) - cy;
            q.at(i, j) += cfg.perturb_amplitude *
                          std::exp(-0.5 * (dx1 * dx1 / (sx * sx) + dx2 * dx2 / (sy * sy)));
        }
    return q;
}

RunRecord run_euler_strip(const ExperimentConfig& cfg, const fs::path& out) {
    RunRecord rec;
    rec.config = cfg;
    VorticityField q = shear_field(cfg.N1, cfg.N2, cfg.L1, cfg.L2,
                                   [](double x2) { return std::max(1.0 - x2, 0.0); });
    VorticityField w0 = strip_initial(cfg);
    double dt = cfg.dt;
    {
        StripSpectral sp(cfg.N1, cfg.N2, cfg.L1, cfg.L2);
        StreamSolution vel = sp.solve(w0);
        double dx = cfg.L1 / cfg.N1, dy = cfg.L2 / cfg.N2;
        double speed = vel.max_u / dx + vel.max_v / dy + 1e-12;
        double dt_cfl = 0.4 / speed;
        if (dt <= 0.0) dt = dt_cfl;
        std::ostringstream note;
        note << "cfl_dt_bound=" << dt_cfl << " dt=" << dt;
        rec.notes.push_back(note.str());
    }
    StripTrajectory traj = evolve_strip(w0, cfg.T, dt, cfg.sample_every);
    CarrierPtr carrier = make_rect_grid(cfg.N1, cfg.N2, cfg.L1, cfg.L2);
    AtomicFunction q_atoms = q.to_atoms(carrier);
    AtomicFunction in_atoms = w0.to_atoms(carrier);

    std::ostringstream csv;
    csv.precision(17);
    csv << "t,L1_dist_to_q,lhs,rhs,slack,mass_drift,momentum_drift\n";
    std::size_t trial = 0;
    for (const StripSample& s : traj.samples) {
        AtomicFunction wt = s.omega.to_atoms(carrier);
        Certificate c = certify_euler_symmetric(in_atoms, wt, q_atoms, EulerSteadyKind::Shear);
        c.component("t", s.t);
        c.component("mass_drift", s.mass_drift);
        c.component("momentum_drift", s.momentum_drift);
        c.component("mu_drift", s.mu_drift);
        double l1 = l1_distance(wt, q_atoms);
        csv << s.t << ',' << l1 << ',' << c.lhs << ',' << c.rhs << ',' << c.slack << ','
            << s.mass_drift << ',' << s.momentum_drift << '\n';
        track(rec, c);
        rec.certificates.push_back(c);
        write_trial(out, trial++, {c});
        if (s.mass_drift > cfg.scheme_tolerance) {
            std::ostringstream note;
            note << "mass drift " << s.mass_drift << " above tolerance at t=" << s.t;
            rec.notes.push_back(note.str());
        }
        if (s.momentum_drift > cfg.scheme_tolerance) {
            std::ostringstream note;
            note << "momentum drift " << s.momentum_drift << " above tolerance at t=" << s.t;
            rec.notes.push_back(note.str());
        }
        if (s.mu_drift > cfg.mu_tolerance) {
            std::ostringstream note;
            note << "distribution-function drift " << s.mu_drift << " above tolerance at t="
                 << s.t;
            rec.notes.push_back(note.str());
        }
    }
    fs::path traj_file = out / "trajectory.csv";
    write_text(traj_file, csv.str());
    rec.trajectory_files.push_back(traj_file);
    // field snapshots in the atom CSV format
    write_text(out / "snapshot_initial.csv", atoms_csv(in_atoms));
    write_text(out / "snapshot_final.csv",
               atoms_csv(traj.samples.back().omega.to_atoms(carrier)));
    std::ostringstream note;
    note << "cfl_max=" << traj.cfl_max << " steps=" << traj.steps;
    rec.notes.push_back(note.str());
    return rec;
}

RunRecord run_euler_disc(const ExperimentConfig& cfg, const fs::path& out) {
    RunRecord rec;
    rec.config = cfg;
    StratifiedCarrier sc = make_disc_radius2(cfg.shells, cfg.disc_radius);
    // q = (1 - |x|^2)_+ with exact band averages (q is affine in |x|^2)
    std::vector<double> qv(cfg.shells);
    for (std::size_t i = 0; i < cfg.shells; ++i)
        qv[i] = std::max(1.0 - sc.sigma.value(i), 0.0);
    AtomicFunction q(sc.carrier, qv);
    std::uint64_t master = splitmix64_mix(cfg.seed ^ 0xD15CULL);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        RandomStream rs = RandomStream::for_trial(master, t);
        AtomicFunction win = additive_perturbation(rs, q, cfg.bump_amplitude);
        Certificate c = certify_euler_symmetric(win, win, q, EulerSteadyKind::Radial);
        track(rec, c);
        rec.certificates.push_back(c);
        write_trial(out, t, {c});
    }
    return rec;
}

RunRecord run_euler_domain(const ExperimentConfig& cfg, const fs::path& out) {
    RunRecord rec;
    rec.config = cfg;
    RadialDiscMesh mesh = RadialDiscMesh::equal_area(cfg.shells, cfg.disc_radius);
    SteadyStateEulerDomain ss =
        build_psi0(mesh, [](double psi) { return std::max(1.0 - psi, 0.0); });
    AtomicFunction omega0(ss.carrier, ss.omega0);
    std::uint64_t master = splitmix64_mix(cfg.seed ^ 0xD03A11ULL);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        AtomicFunction omega = omega0;
        if (t == 0) {
            // worst equimeasurable case: values increasing in psi0
            std::vector<double> v = ss.omega0;
            std::sort(v.begin(), v.end());
            std::vector<std::uint32_t> order = ss.psi0_field.ascending_order();
            std::vector<double> w(v.size());
            for (std::size_t r = 0; r < order.size(); ++r) w[order[r]] = v[r];
            omega = AtomicFunction(ss.carrier, std::move(w));
        } else {
            RandomStream rs = RandomStream::for_trial(master, t);
            omega = equimeasurable_shuffle(rs, omega0);
        }
        Certificate c = certify_euler_domain(omega, ss);
        track(rec, c);
        rec.certificates.push_back(c);
        write_trial(out, t, {c});
    }
    std::ostringstream note;
    note << "picard_iterations=" << ss.residual_history.size()
         << " final_residual=" << ss.residual_history.back()
         << " psi0_min_slope_increment=" << ss.Psi0.min_slope_increment();
    rec.notes.push_back(note.str());
    return rec;
}

RunRecord run_vp(const ExperimentConfig& cfg, const fs::path& out) {
    RunRecord rec;
    rec.config = cfg;
    VpGridParams grid;
    grid.Nr = cfg.vp_nr;
    grid.Nv = cfg.vp_nv;
    SteadyStateVP ss = build_steady_vp(cfg.vp_k, cfg.vp_kappa, cfg.vp_e0, grid);
    {
        std::ostringstream note;
        note << "support_radius=" << ss.support_radius
             << " support_measure=" << ss.support_measure << " K=" << ss.K.value
             << " K_bound=" << ss.k_bound << " phi0=" << ss.phi.phi0;
        rec.notes.push_back(note.str());
        // steady-state bundle per the interface contract
        nlohmann::ordered_json bundle;
        bundle["k"] = ss.k;
        bundle["kappa"] = ss.kappa;
        bundle["e0"] = ss.cutoff_e0;
        bundle["phi_at_zero"] = ss.phi.phi0;
        bundle["support_measure"] = ss.support_measure;
        bundle["r_grid_size"] = ss.Nr;
        bundle["v_grid_size"] = ss.Nv;
        write_text(out / "steady_state.json", bundle.dump(2) + "\n");
        std::ofstream f0csv(out / "f0_atoms.csv", std::ios::binary);
        write_atoms_csv(f0csv, ss.f0);
    }
    std::uint64_t master = splitmix64_mix(cfg.seed ^ 0x3FULL);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        RandomStream rs = RandomStream::for_trial(master, t);
        AtomicFunction f = ss.f0;
        switch (t % 3) {
            case 0: {  // scaling
                double lam = rs.uniform(0.95, 1.05);
                std::vector<double> v = ss.f0.values();
                for (double& x : v) x *= lam;
                f = AtomicFunction(ss.carrier, std::move(v));
                break;
            }
            case 1:  // additive bump
                f = additive_perturbation(rs, ss.f0, cfg.bump_amplitude * ss.f0_sup);
                break;
            default: {  // measure-preserving transport along a noisy ordering
                std::vector<double> sig = ss.e0_field.values();
                double top = *std::max_element(sig.begin(), sig.end());
                for (double& s : sig) s += 0.02 * top * (rs.uniform() - 0.5);
                SigmaField noisy = SigmaField::empirical(ss.carrier, std::move(sig));
                Rearranged rr = sigma_rearrange_full(ss.f0, noisy);
                // fold split pieces back to the parent cells: value = measure-
                // weighted mean, preserving masses per cell
                std::vector<double> v(ss.carrier->size(), 0.0);
                for (std::size_t p = 0; p < rr.carrier->size(); ++p)
                    v[rr.parent[p]] += rr.carrier->weight[p] * rr.value.value(p);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] /= ss.carrier->weight[i];
                f = AtomicFunction(ss.carrier, std::move(v));
                break;
            }
        }
        Certificate c = certify_vp_global(ss, f);
        track(rec, c);
        rec.certificates.push_back(c);
        write_trial(out, t, {c});
    }
    return rec;
}

}  // namespace

RunRecord run_experiment(const ExperimentConfig& config) {
    fs::path out = resolve_output_dir(config);
    fs::create_directories(out);
    std::string started = now_iso();
    write_text(out / "config.json", config.to_json().dump(2) + "\n");

    RunRecord rec;
    switch (config.experiment) {
        case ExperimentKind::certify_sweep: rec = run_certify_sweep(config, out); break;
        case ExperimentKind::corollary1_sweep: rec = run_corollary1(config, out); break;
        case ExperimentKind::euler_strip_run: rec = run_euler_strip(config, out); break;
        case ExperimentKind::euler_disc_certify: rec = run_euler_disc(config, out); break;
        case ExperimentKind::euler_domain_certify: rec = run_euler_domain(config, out); break;
        case ExperimentKind::vp_build_and_certify: rec = run_vp(config, out); break;
    }
    rec.started_at = started;
    rec.finished_at = now_iso();
    return rec;
}

std::vector<fs::path> emit_report(const RunRecord& record) {
    fs::path out = resolve_output_dir(record.config);
    fs::create_directories(out);
    std::vector<fs::path> files;

    nlohmann::ordered_json summary;
    summary["experiment"] = ExperimentConfig::kind_name(record.config.experiment);
    summary["seed"] = record.config.seed;
    summary["certificates"] = record.certificates.size();
    summary["violations"] = record.violation_count;
    summary["caveats"] = record.caveat_count;
    summary["min_slack"] = record.min_slack;
    summary["notes"] = record.notes;
    write_text(out / "summary.json", summary.dump(2) + "\n");
    files.push_back(out / "summary.json");

    // slack histogram over slack / max(|rhs|, 1)
    std::ostringstream hist;
    hist << "bin_lo,bin_hi,count\n";
    if (!record.certificates.empty()) {
        std::vector<double> rel;
        rel.reserve(record.certificates.size());
        for (const auto& c : record.certificates)
            rel.push_back(c.slack / std::max(std::abs(c.rhs), 1.0));
        double lo = *std::min_element(rel.begin(), rel.end());
        double hi = *std::max_element(rel.begin(), rel.end());
        if (hi <= lo) hi = lo + 1.0;
        const int nb = 32;
        std::vector<std::size_t> count(nb, 0);
        for (double v : rel) {
            int b = static_cast<int>((v - lo) / (hi - lo) * nb);
            b = std::clamp(b, 0, nb - 1);
            ++count[static_cast<std::size_t>(b)];
        }
        hist.precision(17);
        for (int b = 0; b < nb; ++b)
            hist << lo + (hi - lo) * b / nb << ',' << lo + (hi - lo) * (b + 1) / nb << ','
                 << count[static_cast<std::size_t>(b)] << '\n';
    }
    write_text(out / "slack_histogram.csv", hist.str());
    files.push_back(out / "slack_histogram.csv");

    nlohmann::ordered_json rr;
    rr["started_at"] = record.started_at;
    rr["finished_at"] = record.finished_at;
    rr["violation_count"] = record.violation_count;
    rr["caveat_count"] = record.caveat_count;
    rr["min_slack"] = record.min_slack;
    nlohmann::ordered_json tf = nlohmann::ordered_json::array();
    for (const auto& p : record.trajectory_files) tf.push_back(p.string());
    rr["trajectory_files"] = tf;
    write_text(out / "run_record.json", rr.dump(2) + "\n");
    files.push_back(out / "run_record.json");
    return files;
}

}  // namespace rlab
