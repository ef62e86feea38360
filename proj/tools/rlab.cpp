// rlab: certificate sweeps and desk-scale runs for the rearrangement
// stability toolkit. Exit codes: 0 = no violations, 2 = violations found,
// 1 = execution error.

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rlab/harness.hpp"

namespace fs = std::filesystem;

namespace {

int run_config(const fs::path& config_path, std::initializer_list<const char*> expected) {
    rlab::ExperimentConfig cfg = rlab::ExperimentConfig::load(config_path);
    std::string kind = rlab::ExperimentConfig::kind_name(cfg.experiment);
    bool ok = false;
    for (const char* e : expected) ok = ok || kind == e;
    if (!ok) {
        std::cerr << "config experiment is '" << kind << "', not runnable by this subcommand\n";
        return 1;
    }
    rlab::RunRecord rec = rlab::run_experiment(cfg);
    rlab::emit_report(rec);
    std::cout << "certificates: " << rec.certificates.size()
              << "  violations: " << rec.violation_count << "  min slack: " << rec.min_slack
              << '\n';
    for (const auto& n : rec.notes) std::cout << "note: " << n << '\n';
    std::cout << "output: " << rlab::resolve_output_dir(cfg).string() << '\n';
    return rec.violation_count == 0 ? 0 : 2;
}

int report_dir(const fs::path& dir) {
    fs::path summary = dir / "summary.json";
    std::ifstream in(summary);
    if (!in) {
        std::cerr << "no summary.json under " << dir << '\n';
        return 1;
    }
    nlohmann::json j = nlohmann::json::parse(in);
    std::cout << j.dump(2) << '\n';
    std::size_t violations = j.value("violations", std::size_t{0});
    return violations == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rearrangement stability certificates"};
    app.require_subcommand(1);

    std::string config_path;
    std::string run_dir;

    auto* certify = app.add_subcommand("certify", "random-pair inequality sweep");
    certify->add_option("--config", config_path, "config JSON")->required();

    auto* euler = app.add_subcommand("euler", "2D Euler experiments");
    euler->require_subcommand(1);
    auto* strip = euler->add_subcommand("strip", "periodic strip evolution + certificates");
    strip->add_option("--config", config_path, "config JSON")->required();
    auto* disc = euler->add_subcommand("disc", "radial disc certificates");
    disc->add_option("--config", config_path, "config JSON")->required();
    auto* domain = euler->add_subcommand("domain", "stream-monotone certificates");
    domain->add_option("--config", config_path, "config JSON")->required();

    auto* vp = app.add_subcommand("vp", "Vlasov-Poisson build and certify");
    vp->add_option("--config", config_path, "config JSON")->required();

    auto* report = app.add_subcommand("report", "print a run summary");
    report->add_option("run_dir", run_dir, "run output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (certify->parsed())
            return run_config(config_path, {"certify_sweep", "corollary1_sweep"});
        if (euler->parsed()) {
            if (strip->parsed()) return run_config(config_path, {"euler_strip_run"});
            if (disc->parsed()) return run_config(config_path, {"euler_disc_certify"});
            if (domain->parsed()) return run_config(config_path, {"euler_domain_certify"});
        }
        if (vp->parsed()) return run_config(config_path, {"vp_build_and_certify"});
        if (report->parsed()) return report_dir(run_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
