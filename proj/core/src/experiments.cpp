#include "esscirc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "esscirc/rng.hpp"

namespace esscirc {
namespace {

struct ReplicateOutcome {
    bool failed = false;
    std::array<double, 3> estimate{};  // at the true order
    std::array<double, 3> se{};
    bool se_available = false;
    bool boundary_true = false;
    double penalty_true = std::numeric_limits<double>::quiet_NaN();
    int selected_mll = -1;
    int selected_tic = -1;
    std::vector<bool> boundary;     // per grid order
    std::vector<double> penalties;  // per grid order, NaN when unavailable
};

PenaltyStats summarize_penalties(int order, const std::vector<double>& values) {
    PenaltyStats ps;
    ps.order = order;
    double sum = 0.0;
    for (double v : values) {
        if (std::isfinite(v)) {
            sum += v;
            ++ps.n_valid;
        } else {
            ++ps.n_excluded;
        }
    }
    if (ps.n_valid > 0) {
        ps.mean = sum / ps.n_valid;
        double ss = 0.0;
        for (double v : values)
            if (std::isfinite(v)) ss += (v - ps.mean) * (v - ps.mean);
        ps.sd = ps.n_valid > 1 ? std::sqrt(ss / (ps.n_valid - 1)) : 0.0;
    }
    return ps;
}

ReplicateOutcome run_replicate(const SimCampaign& cmp, double lambda, int n, int replicate) {
    ReplicateOutcome out;
    auto rng = RandomStream::derive(
        cmp.master_seed, {std::bit_cast<std::uint64_t>(lambda), static_cast<std::uint64_t>(n),
                          static_cast<std::uint64_t>(replicate)});
    const EssModel truth(cmp.mu, make_base(cmp.family, cmp.concentration), lambda,
                         cmp.true_order);
    const std::vector<double> data = truth.sample(static_cast<std::size_t>(n), rng);

    FitConfig cfg = cmp.fit;
    cfg.family = cmp.family;
    cfg.compute_information = cmp.compute_tic;

    try {
        cfg.order = cmp.true_order;
        const FitReport rep = fit_mle(data, cfg);
        out.estimate = {rep.mu, rep.concentration, rep.lambda};
        out.boundary_true = rep.boundary;
        if (rep.se_available) {
            out.se = rep.se;
            out.se_available = true;
        }
        if (rep.tic_available && !rep.info_singular) out.penalty_true = rep.tic_penalty;
    } catch (const std::exception&) {
        out.failed = true;
        return out;
    }

    if (cmp.fit_order_grid) {
        const std::size_t g = cmp.order_grid.size();
        out.boundary.assign(g, false);
        out.penalties.assign(g, std::numeric_limits<double>::quiet_NaN());
        double best_ll = -std::numeric_limits<double>::infinity();
        double best_tic = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < g; ++i) {
            cfg.order = cmp.order_grid[i];
            try {
                const FitReport rep = fit_mle(data, cfg);
                out.boundary[i] = rep.boundary;
                if (rep.tic_available && !rep.info_singular) {
                    out.penalties[i] = rep.tic_penalty;
                    if (rep.tic < best_tic) {
                        best_tic = rep.tic;
                        out.selected_tic = cmp.order_grid[i];
                    }
                }
                if (rep.loglik > best_ll) {
                    best_ll = rep.loglik;
                    out.selected_mll = cmp.order_grid[i];
                }
            } catch (const std::exception&) {
                // a failed per-order fit leaves its slots unavailable
            }
        }
    }
    return out;
}

CellSummary summarize_cell(const SimCampaign& cmp, double lambda, int n,
                           const std::vector<ReplicateOutcome>& reps) {
    CellSummary cell;
    cell.true_lambda = lambda;
    cell.n = n;
    cell.replicates = cmp.replicates;

    const std::array<double, 3> truth = {cmp.mu, cmp.concentration, lambda};
    std::array<double, 3> sum{}, sumsq_err{};
    std::vector<double> penalties_true;
    int ok = 0;
    long boundary_true = 0;
    for (const auto& r : reps) {
        if (r.failed) {
            ++cell.fit_failures;
            continue;
        }
        ++ok;
        for (int j = 0; j < 3; ++j) {
            sum[j] += r.estimate[j];
            const double e = r.estimate[j] - truth[j];
            sumsq_err[j] += e * e;
        }
        if (r.boundary_true) ++boundary_true;
        if (r.se_available) {
            for (int j = 0; j < 3; ++j) cell.mean_se[j] += r.se[j];
            ++cell.se_count;
        }
        penalties_true.push_back(r.penalty_true);
    }
    if (cell.se_count > 0)
        for (int j = 0; j < 3; ++j) cell.mean_se[j] /= cell.se_count;
    if (ok > 0) {
        for (int j = 0; j < 3; ++j) {
            cell.mean[j] = sum[j] / ok;
            cell.rmse[j] = std::sqrt(sumsq_err[j] / ok);
        }
        std::array<double, 3> ss{};
        for (const auto& r : reps) {
            if (r.failed) continue;
            for (int j = 0; j < 3; ++j) {
                const double d = r.estimate[j] - cell.mean[j];
                ss[j] += d * d;
            }
        }
        for (int j = 0; j < 3; ++j) cell.sd[j] = ok > 1 ? std::sqrt(ss[j] / (ok - 1)) : 0.0;
        cell.boundary_rate_true = static_cast<double>(boundary_true) / ok;
    }
    cell.penalty_true = summarize_penalties(cmp.true_order, penalties_true);

    if (cmp.fit_order_grid) {
        const std::size_t g = cmp.order_grid.size();
        cell.mll_counts.assign(g, 0);
        cell.tic_counts.assign(g, 0);
        cell.boundary_rate.assign(g, 0.0);
        std::vector<std::vector<double>> pens(g);
        std::vector<long> grid_ok(g, 0);
        for (const auto& r : reps) {
            if (r.failed) continue;
            for (std::size_t i = 0; i < g; ++i) {
                if (i < r.boundary.size()) {
                    ++grid_ok[i];
                    if (r.boundary[i]) cell.boundary_rate[i] += 1.0;
                    pens[i].push_back(r.penalties[i]);
                }
            }
            if (r.selected_mll >= 0) {
                const auto it = std::find(cmp.order_grid.begin(), cmp.order_grid.end(),
                                          r.selected_mll);
                ++cell.mll_counts[it - cmp.order_grid.begin()];
            }
            if (r.selected_tic >= 0) {
                const auto it = std::find(cmp.order_grid.begin(), cmp.order_grid.end(),
                                          r.selected_tic);
                ++cell.tic_counts[it - cmp.order_grid.begin()];
            } else {
                ++cell.tic_unavailable;
            }
        }
        for (std::size_t i = 0; i < g; ++i) {
            if (grid_ok[i] > 0) cell.boundary_rate[i] /= grid_ok[i];
            cell.penalties.push_back(summarize_penalties(cmp.order_grid[i], pens[i]));
        }
    }
    return cell;
}

}  // namespace

int default_worker_count() {
    if (const char* env = std::getenv("ESSCIRC_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<CellSummary> run_campaign(const SimCampaign& campaign, int workers) {
    if (campaign.replicates < 1) throw std::invalid_argument("run_campaign: replicates < 1");
    if (campaign.lambdas.empty() || campaign.sample_sizes.empty())
        throw std::invalid_argument("run_campaign: empty lambda or sample-size grid");
    if (workers <= 0) workers = campaign.workers > 0 ? campaign.workers : default_worker_count();

    std::vector<CellSummary> cells;
    for (double lambda : campaign.lambdas) {
        for (int n : campaign.sample_sizes) {
            std::vector<ReplicateOutcome> reps(campaign.replicates);
            std::atomic<int> next{0};
            auto worker = [&]() {
                for (;;) {
                    const int r = next.fetch_add(1);
                    if (r >= campaign.replicates) break;
                    reps[r] = run_replicate(campaign, lambda, n, r);
                }
            };
            std::vector<std::thread> pool;
            const int w = std::min(workers, campaign.replicates);
            pool.reserve(w);
            for (int i = 0; i < w; ++i) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
            cells.push_back(summarize_cell(campaign, lambda, n, reps));
        }
    }
    return cells;
}

std::vector<PenaltyStats> penalty_curve(const CellSummary& cell) {
    if (cell.penalties.empty())
        throw std::invalid_argument("penalty_curve: cell has no per-order fits");
    return cell.penalties;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

void export_tables(const SimCampaign& campaign, const std::vector<CellSummary>& cells,
                   const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const std::string fam(family_name(campaign.family));

    {
        std::ofstream out(dir / "estimates.csv");
        if (!out) throw std::runtime_error("export_tables: cannot write estimates.csv");
        out << "family,true_m,lambda,n,mean_mu,mean_conc,mean_lambda,"
               "rmse_mu,rmse_conc,rmse_lambda,sd_mu,sd_conc,sd_lambda,failures\n";
        for (const auto& c : cells) {
            out << fam << ',' << campaign.true_order << ',' << fmt(c.true_lambda) << ',' << c.n;
            for (double v : c.mean) out << ',' << fmt(v);
            for (double v : c.rmse) out << ',' << fmt(v);
            for (double v : c.sd) out << ',' << fmt(v);
            out << ',' << c.fit_failures << '\n';
        }
    }

    if (campaign.fit_order_grid) {
        {
            std::ofstream out(dir / "selection.csv");
            out << "family,true_m,lambda,n,criterion";
            for (int m : campaign.order_grid) out << ",m" << m;
            out << ",unavailable\n";
            for (const auto& c : cells) {
                out << fam << ',' << campaign.true_order << ',' << fmt(c.true_lambda) << ','
                    << c.n << ",mll";
                for (long v : c.mll_counts) out << ',' << v;
                out << ",0\n";
                out << fam << ',' << campaign.true_order << ',' << fmt(c.true_lambda) << ','
                    << c.n << ",tic";
                for (long v : c.tic_counts) out << ',' << v;
                out << ',' << c.tic_unavailable << '\n';
            }
        }
        {
            std::ofstream out(dir / "boundary.csv");
            out << "family,true_m,lambda,n";
            for (int m : campaign.order_grid) out << ",rate_m" << m;
            out << '\n';
            for (const auto& c : cells) {
                out << fam << ',' << campaign.true_order << ',' << fmt(c.true_lambda) << ','
                    << c.n;
                for (double v : c.boundary_rate) out << ',' << fmt(v);
                out << '\n';
            }
        }
        {
            std::ofstream out(dir / "penalty.csv");
            out << "family,true_m,lambda,n,m,mean,sd,n_valid,n_excluded\n";
            for (const auto& c : cells) {
                for (const auto& p : c.penalties)
                    out << fam << ',' << campaign.true_order << ',' << fmt(c.true_lambda) << ','
                        << c.n << ',' << p.order << ',' << fmt(p.mean) << ',' << fmt(p.sd) << ','
                        << p.n_valid << ',' << p.n_excluded << '\n';
            }
        }
        for (const auto& c : cells) {
            std::ostringstream name;
            name << "penalty_curve_" << fam << "_lambda" << fmt(c.true_lambda) << "_n" << c.n
                 << ".csv";
            std::ofstream out(dir / name.str());
            out << "m,mean,sd\n";
            for (const auto& p : c.penalties)
                out << p.order << ',' << fmt(p.mean) << ',' << fmt(p.sd) << '\n';
        }
    }

    {
        std::ofstream out(dir / "tables.txt");
        out << "Campaign: family=" << fam << " true_m=" << campaign.true_order
            << " mu=" << fmt(campaign.mu) << " conc=" << fmt(campaign.concentration)
            << " replicates=" << campaign.replicates << " seed=" << campaign.master_seed << "\n\n";
        out << "Parameter means and RMSEs at the true order\n";
        for (const auto& c : cells) {
            out << "  lambda=" << fmt(c.true_lambda) << " n=" << c.n << "  mean=("
                << fmt(c.mean[0]) << ", " << fmt(c.mean[1]) << ", " << fmt(c.mean[2])
                << ")  rmse=(" << fmt(c.rmse[0]) << ", " << fmt(c.rmse[1]) << ", "
                << fmt(c.rmse[2]) << ")  boundary_rate=" << fmt(c.boundary_rate_true)
                << "  failures=" << c.fit_failures << '\n';
        }
        if (campaign.fit_order_grid) {
            out << "\nSelection counts (rows: lambda, n; criterion -> counts per m)\n";
            for (const auto& c : cells) {
                out << "  lambda=" << fmt(c.true_lambda) << " n=" << c.n << "  mll:";
                for (long v : c.mll_counts) out << ' ' << v;
                out << "  tic:";
                for (long v : c.tic_counts) out << ' ' << v;
                out << "  (tic unavailable: " << c.tic_unavailable << ")\n";
            }
        }
    }
}

SimCampaign parse_campaign_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_campaign_file: cannot open " + path.string());

    SimCampaign cmp;
    cmp.lambdas.clear();
    cmp.sample_sizes.clear();
    cmp.order_grid.clear();

    auto parse_list = [](const std::string& s) {
        std::vector<double> out;
        std::string item;
        std::istringstream ss(s);
        while (std::getline(ss, item, ',')) {
            if (item.find_first_not_of(" \t") == std::string::npos) continue;
            out.push_back(std::stod(item));
        }
        return out;
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::runtime_error("parse_campaign_file: line " + std::to_string(lineno) +
                                         ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "family") {
                if (value == "vm" || value == "von_mises")
                    cmp.family = BaseFamily::von_mises;
                else if (value == "wc" || value == "wrapped_cauchy")
                    cmp.family = BaseFamily::wrapped_cauchy;
                else
                    throw std::runtime_error("unknown family '" + value + "'");
            } else if (key == "mu") {
                cmp.mu = std::stod(value);
            } else if (key == "conc" || key == "kappa" || key == "rho") {
                cmp.concentration = std::stod(value);
            } else if (key == "m_true") {
                cmp.true_order = std::stoi(value);
            } else if (key == "lambda") {
                cmp.lambdas = parse_list(value);
            } else if (key == "n") {
                for (double v : parse_list(value)) cmp.sample_sizes.push_back(static_cast<int>(v));
            } else if (key == "replicates") {
                cmp.replicates = std::stoi(value);
            } else if (key == "m_grid") {
                for (double v : parse_list(value)) cmp.order_grid.push_back(static_cast<int>(v));
            } else if (key == "seed") {
                cmp.master_seed = std::stoull(value);
            } else if (key == "fit_m_grid") {
                cmp.fit_order_grid = (value == "1" || value == "true" || value == "yes");
            } else if (key == "compute_tic") {
                cmp.compute_tic = (value == "1" || value == "true" || value == "yes");
            } else if (key == "workers") {
                cmp.workers = std::stoi(value);
            } else if (key == "delta_lambda") {
                cmp.fit.delta_lambda = std::stod(value);
            } else {
                throw std::runtime_error("unknown key '" + key + "'");
            }
        } catch (const std::runtime_error&) {
            throw;
        } catch (const std::exception&) {
            throw std::runtime_error("parse_campaign_file: line " + std::to_string(lineno) +
                                     ": bad value for '" + key + "'");
        }
    }

    if (cmp.lambdas.empty()) cmp.lambdas = {0.2, 0.5, 0.8};
    if (cmp.sample_sizes.empty()) cmp.sample_sizes = {100, 200, 500};
    if (cmp.order_grid.empty()) cmp.order_grid = {0, 1, 2, 3, 4};
    return cmp;
}

}  // namespace esscirc
