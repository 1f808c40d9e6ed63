#include <algorithm>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tfsamp/bounds.hpp"
#include "tfsamp/geometry.hpp"
#include "tfsamp/harness.hpp"
#include "tfsamp/polyfock.hpp"
#include "tfsamp/specfun.hpp"
#include "tfsamp/tfcore.hpp"

namespace {

using json = nlohmann::json;
using tfsamp::BoundReport;

tfsamp::WindowSpec parse_window_arg(const std::string& s) {
    const auto pos = s.find(':');
    if (pos == std::string::npos)
        throw std::runtime_error("window: expected hermite:n or hat:S, got '" + s + "'");
    const std::string kind = s.substr(0, pos);
    const std::string val = s.substr(pos + 1);
    if (kind == "hermite") return tfsamp::WindowSpec::hermite(std::stoi(val));
    if (kind == "hat") return tfsamp::WindowSpec::hat(std::stod(val));
    throw std::runtime_error("window: unknown kind '" + kind + "'");
}

std::vector<std::complex<double>> complex_list(const json& arr) {
    std::vector<std::complex<double>> out;
    for (const json& e : arr) {
        if (e.is_array()) {
            if (e.size() != 2)
                throw std::runtime_error("poly: complex entries are [re, im] pairs");
            out.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            out.emplace_back(e.get<double>(), 0.0);
        }
    }
    return out;
}

tfsamp::PolyFunction parse_poly_file(const std::string& path) {
    const json j = json::parse(tfsamp::read_text_file(path));
    const json& comps = j.is_array() ? j : j.at("components");
    tfsamp::PolyFunction F;
    for (const json& comp : comps) F.components.push_back(complex_list(comp));
    return F;
}

json verdict_json(BoundReport::Verdict v) {
    switch (v) {
        case BoundReport::Verdict::pass: return "pass";
        case BoundReport::Verdict::fail: return "fail";
        default: return "informational";
    }
}

double input_or(const BoundReport& r, const std::string& key, double fallback) {
    const auto it = r.inputs.find(key);
    return it == r.inputs.end() ? fallback : it->second;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-frequency sampling toolkit"};
    app.require_subcommand(1);
    int rc = 0;

    // ---- constants ----
    auto* cmd_const =
        app.add_subcommand("constants", "Closed-form constants and theorem bounds");
    std::vector<double> nu_args;
    cmd_const->add_option("--nu", nu_args, "n R: local reproducing constant nu_n(R)")
        ->expected(2);
    std::string theorem;
    cmd_const->add_option("--theorem", theorem, "main|sunzhou|compact|planar")
        ->check(CLI::IsMember({"main", "sunzhou", "compact", "planar"}));
    int arg_n = 0;
    double arg_R = 1.0, arg_gamma = 1.0, arg_p = 2.0, arg_C = 1.0;
    std::string arg_window;
    cmd_const->add_option("--n", arg_n, "Hermite window order");
    cmd_const->add_option("--R", arg_R, "scale R");
    cmd_const->add_option("--gamma", arg_gamma, "density gamma");
    cmd_const->add_option("--p", arg_p, "Lebesgue exponent");
    cmd_const->add_option("--C", arg_C, "numerical constant C");
    cmd_const->add_option("--window", arg_window, "hermite:n or hat:S");
    cmd_const->callback([&] {
        if (!nu_args.empty()) {
            std::cout << std::setprecision(12)
                      << tfsamp::nu(static_cast<int>(nu_args[0]), nu_args[1]) << "\n";
            return;
        }
        if (theorem.empty())
            throw std::runtime_error("constants: provide --nu or --theorem");
        json j;
        if (theorem == "main") {
            const tfsamp::MainBound mb = tfsamp::thm_main_bound(
                arg_n, arg_R, arg_gamma, arg_p, {arg_C, 1.0, 1.0});
            j["nu"] = tfsamp::nu(arg_n, arg_R);
            j["sigma"] = mb.sigma;
            j["eta_log10"] = mb.eta.log10_value();
            if (mb.eta.linear_representable()) j["eta"] = mb.eta.linear();
            j["bound_log10"] = mb.bound.log10_value();
            if (mb.bound.linear_representable()) j["bound"] = mb.bound.linear();
        } else {
            if (arg_window.empty())
                throw std::runtime_error("constants: --theorem " + theorem +
                                         " needs --window");
            const tfsamp::WindowSpec w = parse_window_arg(arg_window);
            if (theorem == "sunzhou") {
                const tfsamp::SunZhouResult sz = tfsamp::sunzhou_check(w, arg_R);
                j["Delta"] = sz.Delta;
                j["condition_met"] = sz.condition_met;
                j["A"] = sz.A_lower;
                j["B"] = sz.B_upper;
            } else if (theorem == "compact") {
                const tfsamp::CompactFrameResult cf =
                    tfsamp::compact_frame_bounds(w, arg_R);
                j["R_g"] = cf.R_g;
                j["admissible"] = cf.admissible;
                j["A"] = std::isnan(cf.A) ? json() : json(cf.A);
                j["B"] = cf.B;
            } else {  // planar
                j["bound"] = tfsamp::planar_sampling_bound(w, arg_R, arg_gamma);
                j["gamma"] = arg_gamma;
                const tfsamp::CompactFrameResult cf =
                    tfsamp::compact_frame_bounds(w, arg_R);
                j["R_g"] = cf.R_g;
                j["A"] = std::isnan(cf.A) ? json() : json(cf.A);
            }
        }
        std::cout << j.dump(2) << "\n";
    });

    // ---- stft ----
    auto* cmd_stft = app.add_subcommand("stft", "Sample V_g f on a phase-plane grid");
    std::string stft_signal, stft_window, stft_out;
    double stft_trunc = 6.0, stft_step = 1.0 / 16.0;
    cmd_stft->add_option("--signal", stft_signal, "signal JSON file")->required();
    cmd_stft->add_option("--window", stft_window, "hermite:n or hat:S")->required();
    cmd_stft->add_option("--trunc", stft_trunc, "grid half-width T_z")->required();
    cmd_stft->add_option("--step", stft_step, "grid step")->required();
    cmd_stft->add_option("--out", stft_out, "output CSV path")->required();
    cmd_stft->callback([&] {
        const tfsamp::Signal f =
            tfsamp::parse_signal_json(tfsamp::read_text_file(stft_signal));
        const tfsamp::WindowSpec g = parse_window_arg(stft_window);
        const tfsamp::STFTGrid grid = tfsamp::stft_grid(f, g, stft_trunc, stft_step);
        std::ofstream out(stft_out);
        if (!out) throw std::runtime_error("cannot write file: " + stft_out);
        tfsamp::write_grid_csv(grid, out);
        json j;
        j["npts"] = grid.npts;
        j["l2"] = tfsamp::lp_norm(grid, 2.0);
        j["out"] = stft_out;
        std::cout << j.dump(2) << "\n";
    });

    // ---- remez ----
    auto* cmd_remez =
        app.add_subcommand("remez", "Sup-norm ratio check over a subregion");
    std::string remez_poly, remez_region;
    double remez_rho = 0.5, remez_R = 1.0, remez_kappa = 1.0, remez_c = 1.0;
    cmd_remez->add_option("--poly", remez_poly, "polyanalytic coefficient JSON file")
        ->required();
    cmd_remez->add_option("--region", remez_region, "region expression")->required();
    cmd_remez->add_option("--rho", remez_rho, "inner disc radius")->required();
    cmd_remez->add_option("--R", remez_R, "outer scale R")->required();
    cmd_remez->add_option("--kappa", remez_kappa, "measure-ratio constant");
    cmd_remez->add_option("--c", remez_c, "exponent constant");
    cmd_remez->callback([&] {
        const tfsamp::PolyFunction F = parse_poly_file(remez_poly);
        const tfsamp::Region omega = tfsamp::parse_region(remez_region);
        const BoundReport rep =
            tfsamp::remez_ratio(F, omega, remez_rho, remez_R, remez_kappa, remez_c);
        json j;
        j["m"] = input_or(rep, "m", 0.0);
        j["M"] = input_or(rep, "M", 0.0);
        j["sup_left"] = rep.empirical ? json(*rep.empirical) : json();
        j["sup_right"] = input_or(rep, "sup_omega", 0.0);
        j["c_hat"] = rep.inputs.count("c_hat") ? json(rep.inputs.at("c_hat")) : json();
        j["verdict"] = verdict_json(rep.verdict);
        std::cout << j.dump(2) << "\n";
        if (rep.verdict == BoundReport::Verdict::fail) rc = 1;
    });

    // ---- density ----
    auto* cmd_density = app.add_subcommand("density", "(gamma, R)-density of a region");
    std::string dens_region, dens_mode = "disc";
    double dens_R = 1.0, dens_raster = 0.0, dens_search = 0.0;
    cmd_density->add_option("--region", dens_region, "region expression")->required();
    cmd_density->add_option("--R", dens_R, "cell scale R")->required();
    cmd_density->add_option("--mode", dens_mode, "disc|square")
        ->check(CLI::IsMember({"disc", "square"}));
    cmd_density->add_option("--raster-step", dens_raster, "raster step (default R/64)");
    cmd_density->add_option("--search-halfwidth", dens_search,
                            "anchor scan half-width for aperiodic regions");
    cmd_density->callback([&] {
        const tfsamp::Region region = tfsamp::parse_region(dens_region);
        tfsamp::DensityQuery q;
        q.R = dens_R;
        q.mode = dens_mode == "square" ? tfsamp::CellMode::square
                                       : tfsamp::CellMode::disc;
        q.raster_step = dens_raster;
        q.search_halfwidth = dens_search;
        const tfsamp::DensityResult d = tfsamp::density_gamma(region, q);
        json j;
        j["gamma"] = d.gamma;
        j["raster_error"] = d.raster_error;
        j["anchors_scanned"] = d.anchors_scanned;
        j["argmin"] = {d.argmin.real(), d.argmin.imag()};
        std::cout << j.dump(2) << "\n";
    });

    // ---- sampling-ratio ----
    auto* cmd_ratio =
        app.add_subcommand("sampling-ratio", "Restriction-ratio experiment vs bound");
    std::string ratio_config;
    cmd_ratio->add_option("--config", ratio_config, "experiment config JSON")->required();
    cmd_ratio->callback([&] {
        const tfsamp::ExperimentConfig cfg =
            tfsamp::parse_config(tfsamp::read_text_file(ratio_config));
        const std::vector<BoundReport> reports = tfsamp::run_sampling_experiment(cfg);
        const std::string text = tfsamp::experiment_reports_json(cfg, reports);
        if (!cfg.output_path.empty()) {
            tfsamp::write_text_file(cfg.output_path, text);
            std::string csv_path = cfg.output_path;
            const std::string ext = ".json";
            if (csv_path.size() > ext.size() &&
                csv_path.compare(csv_path.size() - ext.size(), ext.size(), ext) == 0)
                csv_path.resize(csv_path.size() - ext.size());
            tfsamp::write_text_file(csv_path + ".csv", tfsamp::reports_csv(reports));
        }
        std::cout << text << "\n";
        for (const BoundReport& r : reports)
            if (r.verdict == BoundReport::Verdict::fail) rc = 1;
    });

    // ---- frame-bounds ----
    auto* cmd_frame =
        app.add_subcommand("frame-bounds", "Empirical frame bounds on a Hermite subspace");
    std::string frame_config;
    cmd_frame->add_option("--config", frame_config, "frame experiment config JSON")
        ->required();
    cmd_frame->callback([&] {
        const tfsamp::FrameExperiment exp =
            tfsamp::parse_frame_config(tfsamp::read_text_file(frame_config));
        const tfsamp::FrameBoundsResult res = tfsamp::empirical_frame_bounds(exp);
        std::cout << tfsamp::frame_result_json(exp, res) << "\n";
        if (!(res.verdict_A && res.verdict_B)) rc = 1;
    });

    // ---- calibrate ----
    auto* cmd_cal =
        app.add_subcommand("calibrate", "Minimal feasible C over stored reports");
    std::string cal_dir;
    cmd_cal->add_option("--reports", cal_dir, "directory of report JSON files")
        ->required();
    cmd_cal->callback([&] {
        std::vector<std::string> paths;
        for (const auto& entry : std::filesystem::directory_iterator(cal_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                paths.push_back(entry.path().string());
        }
        std::sort(paths.begin(), paths.end());
        std::vector<BoundReport> all;
        for (const std::string& path : paths) {
            try {
                std::vector<BoundReport> batch =
                    tfsamp::reports_from_json(tfsamp::read_text_file(path));
                all.insert(all.end(), batch.begin(), batch.end());
            } catch (const std::exception& e) {
                std::cerr << "skipping " << path << ": " << e.what() << "\n";
            }
        }
        const tfsamp::CalibrationConstants cal = tfsamp::calibrate_constants(all);
        json j;
        j["C"] = cal.C_numerical;
        j["observations"] = all.size();
        std::cout << j.dump(2) << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
