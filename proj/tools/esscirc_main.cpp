// esscirc: command line interface for the extended sine-skewed circular
// distribution library. See `esscirc --help` and the subcommand help texts.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "esscirc/esscirc.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace esscirc;

namespace {

struct ModelFlags {
    std::string family = "wc";
    double mu = 0.0;
    double conc = 0.0;
    double lambda = 0.0;
    int order = 0;
};

void add_model_flags(CLI::App* cmd, ModelFlags& f, bool with_lambda = true) {
    cmd->add_option("--family", f.family, "Base family: wc or vm")
        ->check(CLI::IsMember({"wc", "vm"}))
        ->required();
    cmd->add_option("--mu", f.mu, "Location (radians in [-pi, pi))");
    cmd->add_option("--conc", f.conc, "Concentration: rho for wc, kappa for vm")->required();
    if (with_lambda) cmd->add_option("--lambda", f.lambda, "Skewness in [-1, 1]");
    cmd->add_option("--m", f.order, "Skewing order (non-negative integer)")
        ->check(CLI::NonNegativeNumber);
}

BaseFamily parse_family(const std::string& name) {
    return name == "vm" ? BaseFamily::von_mises : BaseFamily::wrapped_cauchy;
}

EssModel build_model(const ModelFlags& f) {
    return {f.mu, make_base(parse_family(f.family), f.conc), f.lambda, f.order};
}

struct DataFlags {
    std::string path;
    std::string unit = "radians";
    std::optional<double> shift;
};

void add_data_flags(CLI::App* cmd, DataFlags& f) {
    cmd->add_option("--data", f.path, "Angle file (whitespace/comma separated)")->required();
    cmd->add_option("--unit", f.unit, "Input unit")->check(CLI::IsMember({"degrees", "radians"}));
    cmd->add_option("--shift", f.shift,
                    "Shift added after unit conversion (default: -pi for degrees, 0 otherwise)");
}

AngleDataset load_data(const DataFlags& f) {
    return ingest(f.path, f.unit == "degrees" ? AngleUnit::degrees : AngleUnit::radians, f.shift);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

json report_to_json(const FitReport& rep) {
    json j;
    j["family"] = std::string(family_name(rep.family));
    j["m"] = rep.order;
    j["n"] = rep.n;
    j["mu"] = rep.mu;
    j[rep.family == BaseFamily::von_mises ? "kappa" : "rho"] = rep.concentration;
    j["lambda"] = rep.lambda;
    j["loglik"] = rep.loglik;
    j["aic"] = rep.aic;
    j["boundary"] = rep.boundary;
    j["converged"] = rep.converged;
    j["info_singular"] = rep.info_singular;
    if (rep.tic_available) {
        j["tic"] = rep.tic;
        j["tic_penalty"] = rep.tic_penalty;
    } else {
        j["tic"] = nullptr;
        j["tic_penalty"] = nullptr;
    }
    if (rep.se_available) {
        j["se"] = {{"mu", rep.se[0]}, {"conc", rep.se[1]}, {"lambda", rep.se[2]}};
        j["se_robust"] = {{"mu", rep.se_robust[0]},
                          {"conc", rep.se_robust[1]},
                          {"lambda", rep.se_robust[2]}};
    } else {
        j["se"] = nullptr;
        j["se_note"] = rep.se_note;
    }
    if (rep.cov_available) {
        j["cov"] = json::array();
        for (const auto& row : rep.cov) j["cov"].push_back({row[0], row[1], row[2]});
    }
    return j;
}

std::vector<int> parse_order_grid(const std::string& text) {
    std::vector<int> grid;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const int lo = std::stoi(text.substr(0, dots));
        const int hi = std::stoi(text.substr(dots + 2));
        if (hi < lo) throw CLI::ValidationError("--m-grid", "range is empty");
        for (int m = lo; m <= hi; ++m) grid.push_back(m);
        return grid;
    }
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, ',')) grid.push_back(std::stoi(item));
    return grid;
}

std::ostream& open_sink(std::ofstream& file, const std::string& out) {
    if (out.empty() || out == "-") return std::cout;
    file.open(out);
    if (!file) throw std::runtime_error("cannot open output file " + out);
    return file;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extended sine-skewed circular distributions: densities, moments, sampling,\n"
                 "maximum likelihood fitting, order selection, and simulation campaigns."};
    app.require_subcommand(1);

    // density
    ModelFlags density_flags;
    int grid_n = 360;
    std::string out_path;
    auto* density_cmd = app.add_subcommand("density", "Tabulate the density as theta,density CSV");
    add_model_flags(density_cmd, density_flags);
    density_cmd->add_option("--grid", grid_n, "Number of grid points over [-pi, pi)")
        ->check(CLI::PositiveNumber);
    density_cmd->add_option("--out", out_path, "Output file (default stdout)");

    // moments
    ModelFlags moment_flags;
    int moment_p = 1;
    auto* moments_cmd = app.add_subcommand("moments", "Trigonometric moments and skewness as JSON");
    add_model_flags(moments_cmd, moment_flags);
    moments_cmd->add_option("--p", moment_p, "Moment order (integer)");

    // skew-range
    std::string range_family = "vm";
    int range_order = 0;
    auto* range_cmd = app.add_subcommand("skew-range", "Attainable skewness range for a given order");
    range_cmd->add_option("--family", range_family, "Base family (only vm supported)")
        ->check(CLI::IsMember({"vm"}));
    range_cmd->add_option("--m", range_order, "Skewing order")->check(CLI::NonNegativeNumber);

    // sample
    ModelFlags sample_flags;
    int sample_n = 0;
    std::uint64_t sample_seed = 1;
    auto* sample_cmd = app.add_subcommand("sample", "Draw exact samples, one radian per line");
    add_model_flags(sample_cmd, sample_flags);
    sample_cmd->add_option("--n", sample_n, "Number of draws")->required()->check(CLI::PositiveNumber);
    sample_cmd->add_option("--seed", sample_seed, "Random seed");
    sample_cmd->add_option("--out", out_path, "Output file (default stdout)");

    // fit
    DataFlags fit_data;
    std::string fit_family = "wc";
    int fit_order = 0;
    double fit_delta_lambda = 0.0;
    int fit_starts = 8;
    auto* fit_cmd = app.add_subcommand("fit", "Maximum likelihood fit, report as JSON");
    add_data_flags(fit_cmd, fit_data);
    fit_cmd->add_option("--family", fit_family, "Base family")->check(CLI::IsMember({"wc", "vm"}))->required();
    fit_cmd->add_option("--m", fit_order, "Skewing order")->check(CLI::NonNegativeNumber);
    fit_cmd->add_option("--delta-lambda", fit_delta_lambda,
                        "Shrink the skewness space to [-1+d, 1-d]");
    fit_cmd->add_option("--starts", fit_starts, "Multi-start count")->check(CLI::PositiveNumber);

    // select
    DataFlags select_data;
    std::string select_family = "wc";
    std::string select_grid = "0..4";
    bool select_json = false;
    auto* select_cmd = app.add_subcommand("select", "Fit a grid of orders and compare AIC/TIC");
    add_data_flags(select_cmd, select_data);
    select_cmd->add_option("--family", select_family, "Base family")
        ->check(CLI::IsMember({"wc", "vm"}))
        ->required();
    select_cmd->add_option("--m-grid", select_grid, "Order grid, e.g. 0..4 or 0,2,4");
    select_cmd->add_flag("--json", select_json, "Emit JSON instead of a table");

    // symmetry
    DataFlags symmetry_data;
    auto* symmetry_cmd =
        app.add_subcommand("symmetry", "Reflective symmetry test and sample statistics");
    add_data_flags(symmetry_cmd, symmetry_data);

    // simulate
    std::string sim_config;
    int sim_workers = 0;
    std::string sim_out = "simout";
    auto* simulate_cmd = app.add_subcommand("simulate", "Run a replicated sampling/fitting campaign");
    simulate_cmd->add_option("--config", sim_config, "Campaign config file (key = value)")->required();
    simulate_cmd->add_option("--workers", sim_workers,
                             "Worker threads (default: ESSCIRC_WORKERS or hardware)");
    simulate_cmd->add_option("--out", sim_out, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (density_cmd->parsed()) {
            const EssModel model = build_model(density_flags);
            std::ofstream file;
            auto& os = open_sink(file, out_path);
            os << "theta,density\n";
            for (int i = 0; i < grid_n; ++i) {
                const double t = -kPi + kTwoPi * i / grid_n;
                os << fmt(t) << ',' << fmt(model.density(t)) << '\n';
            }
        } else if (moments_cmd->parsed()) {
            const EssModel model = build_model(moment_flags);
            const TrigMoments tm = moments(model, moment_p);
            json j;
            j["p"] = tm.p;
            j["alpha"] = tm.alpha;
            j["beta"] = tm.beta;
            j["mean_direction"] = tm.mean_direction;
            j["mean_resultant_length"] = tm.mean_resultant_length;
            j["skewness"] = circular_skewness(model);
            std::cout << j.dump(2) << '\n';
        } else if (range_cmd->parsed()) {
            const SkewnessRange r = skewness_range_vm(range_order);
            std::printf("m=%d  range=(%.6f, %.6f)  kappa=%.6f  lambda=%+g (max), %+g (min)\n",
                        r.order, r.s_min, r.s_max, r.kappa, r.lambda_at_max, -r.lambda_at_max);
        } else if (sample_cmd->parsed()) {
            const EssModel model = build_model(sample_flags);
            RandomStream rng(sample_seed);
            std::ofstream file;
            auto& os = open_sink(file, out_path);
            for (int i = 0; i < sample_n; ++i) os << fmt(model.sample(rng)) << '\n';
        } else if (fit_cmd->parsed()) {
            const AngleDataset ds = load_data(fit_data);
            FitConfig cfg;
            cfg.family = parse_family(fit_family);
            cfg.order = fit_order;
            cfg.delta_lambda = fit_delta_lambda;
            cfg.starts = fit_starts;
            const FitReport rep = fit_mle(ds.angles, cfg);
            json j = report_to_json(rep);
            j["data"] = {{"file", ds.source}, {"n", ds.angles.size()}, {"transform", ds.transform}};
            std::cout << j.dump(2) << '\n';
        } else if (select_cmd->parsed()) {
            const AngleDataset ds = load_data(select_data);
            const auto grid = parse_order_grid(select_grid);
            const OrderSelection sel =
                select_order(ds.angles, parse_family(select_family), grid);
            if (select_json) {
                json j;
                j["grid"] = sel.grid;
                j["mll_order"] = sel.mll_order;
                j["tic_order"] = sel.tic_selection_available ? json(sel.tic_order) : json(nullptr);
                j["fits"] = json::array();
                for (std::size_t i = 0; i < sel.grid.size(); ++i) {
                    if (!sel.failures[i].empty())
                        j["fits"].push_back({{"m", sel.grid[i]}, {"error", sel.failures[i]}});
                    else
                        j["fits"].push_back(report_to_json(sel.fits[i]));
                }
                std::cout << j.dump(2) << '\n';
            } else {
                std::printf("%3s %12s %12s %12s %12s %12s\n", "m", "mu", "conc", "lambda", "AIC",
                            "TIC");
                for (std::size_t i = 0; i < sel.grid.size(); ++i) {
                    if (!sel.failures[i].empty()) {
                        std::printf("%3d  fit failed: %s\n", sel.grid[i], sel.failures[i].c_str());
                        continue;
                    }
                    const FitReport& r = sel.fits[i];
                    std::printf("%3d %12.6f %12.6f %12.6f %12.4f", sel.grid[i], r.mu,
                                r.concentration, r.lambda, r.aic);
                    if (r.tic_available)
                        std::printf(" %12.4f", r.tic);
                    else
                        std::printf(" %12s", "n/a");
                    std::printf("%s%s\n", sel.grid[i] == sel.mll_order ? "  <-AIC" : "",
                                (sel.tic_selection_available && sel.grid[i] == sel.tic_order)
                                    ? "  <-TIC"
                                    : "");
                }
            }
        } else if (symmetry_cmd->parsed()) {
            const AngleDataset ds = load_data(symmetry_data);
            const SymmetryTestResult res = symmetry_test(ds.angles);
            json j;
            j["statistic"] = res.statistic;
            j["p_value"] = res.p_value;
            j["n"] = res.stats.n;
            j["mean_direction"] = res.stats.mean_direction;
            j["mean_resultant_length"] = res.stats.mean_resultant_length;
            j["sample_skewness"] = res.stats.skewness;
            std::cout << j.dump(2) << '\n';
        } else if (simulate_cmd->parsed()) {
            const SimCampaign campaign = parse_campaign_file(sim_config);
            const int workers = sim_workers > 0 ? sim_workers : 0;
            const auto cells = run_campaign(campaign, workers);
            export_tables(campaign, cells, sim_out);
            std::cout << "wrote campaign outputs to " << sim_out << " ("
                      << cells.size() << " cells x " << campaign.replicates << " replicates)\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
