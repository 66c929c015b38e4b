#include "esscirc/experiments.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

using namespace esscirc;

namespace {

SimCampaign small_campaign() {
    SimCampaign c;
    c.family = BaseFamily::wrapped_cauchy;
    c.true_order = 1;
    c.concentration = 0.8;
    c.lambdas = {0.5};
    c.sample_sizes = {80};
    c.replicates = 24;
    c.order_grid = {0, 1, 2};
    c.master_seed = 31415;
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("campaign cells are reproducible and worker-count independent") {
    const SimCampaign c = small_campaign();
    const auto one = run_campaign(c, 1);
    const auto two = run_campaign(c, 4);
    REQUIRE(one.size() == 1);
    REQUIRE(two.size() == 1);
    for (int j = 0; j < 3; ++j) {
        CHECK(one[0].mean[j] == two[0].mean[j]);
        CHECK(one[0].rmse[j] == two[0].rmse[j]);
    }
    CHECK(one[0].mll_counts == two[0].mll_counts);
    CHECK(one[0].tic_counts == two[0].tic_counts);
}

TEST_CASE("restricting a campaign to one cell reproduces that cell") {
    SimCampaign full = small_campaign();
    full.lambdas = {0.2, 0.5};
    const auto cells = run_campaign(full, 2);
    REQUIRE(cells.size() == 2);

    SimCampaign restricted = full;
    restricted.lambdas = {0.5};
    const auto lone = run_campaign(restricted, 2);
    REQUIRE(lone.size() == 1);
    for (int j = 0; j < 3; ++j) CHECK(lone[0].mean[j] == cells[1].mean[j]);
    CHECK(lone[0].boundary_rate == cells[1].boundary_rate);
}

TEST_CASE("selection counts account for every replicate") {
    const auto cell = run_campaign(small_campaign(), 2)[0];
    long mll_total = 0, tic_total = 0;
    for (long v : cell.mll_counts) mll_total += v;
    for (long v : cell.tic_counts) tic_total += v;
    CHECK(mll_total + cell.fit_failures == cell.replicates);
    CHECK(tic_total + cell.tic_unavailable + cell.fit_failures == cell.replicates);
}

TEST_CASE("penalty curve requires per-order fits") {
    SimCampaign c = small_campaign();
    c.fit_order_grid = false;
    const auto cell = run_campaign(c, 2)[0];
    CHECK_THROWS_AS(penalty_curve(cell), std::invalid_argument);
    const auto with = run_campaign(small_campaign(), 2)[0];
    CHECK(penalty_curve(with).size() == 3);
}

TEST_CASE("exports are laid out as expected and byte-stable") {
    const SimCampaign c = small_campaign();
    const auto cells = run_campaign(c, 2);
    const auto dir = std::filesystem::temp_directory_path() / "esscirc_export_test";
    std::filesystem::remove_all(dir);
    export_tables(c, cells, dir);

    const std::string est = slurp(dir / "estimates.csv");
    // one header plus one row per cell; three mean and three rmse columns
    CHECK(est.find("mean_mu,mean_conc,mean_lambda") != std::string::npos);
    CHECK(est.find("rmse_mu,rmse_conc,rmse_lambda") != std::string::npos);
    CHECK(std::count(est.begin(), est.end(), '\n') == 2);
    CHECK(std::filesystem::exists(dir / "selection.csv"));
    CHECK(std::filesystem::exists(dir / "boundary.csv"));
    CHECK(std::filesystem::exists(dir / "penalty.csv"));
    CHECK(std::filesystem::exists(dir / "tables.txt"));

    // rerun with the same seed: byte-identical CSV
    const auto dir2 = std::filesystem::temp_directory_path() / "esscirc_export_test2";
    std::filesystem::remove_all(dir2);
    export_tables(c, run_campaign(c, 3), dir2);
    CHECK(slurp(dir / "estimates.csv") == slurp(dir2 / "estimates.csv"));
    CHECK(slurp(dir / "selection.csv") == slurp(dir2 / "selection.csv"));
    std::filesystem::remove_all(dir);
    std::filesystem::remove_all(dir2);
}

TEST_CASE("rmse shrinks as the sample grows") {
    SimCampaign c;
    c.family = BaseFamily::wrapped_cauchy;
    c.true_order = 1;
    c.concentration = 0.8;
    c.lambdas = {0.5};
    c.sample_sizes = {60, 500};
    c.replicates = 120;
    c.fit_order_grid = false;
    c.compute_tic = false;
    c.master_seed = 2718;
    const auto cells = run_campaign(c, 0);
    REQUIRE(cells.size() == 2);
    for (int j = 0; j < 3; ++j) CHECK(cells[1].rmse[j] < cells[0].rmse[j]);
    // boundary solutions thin out as the sample grows
    CHECK(cells[1].boundary_rate_true <= cells[0].boundary_rate_true);
}

TEST_CASE("campaign file parsing") {
    const auto path = std::filesystem::temp_directory_path() / "esscirc_campaign.cfg";
    {
        std::ofstream out(path);
        out << "# comment line\n"
               "family = vm\n"
               "mu = 0.25\n"
               "kappa = 2.0\n"
               "m_true = 2\n"
               "lambda = -0.2, -0.5, -0.8\n"
               "n = 100, 200\n"
               "replicates = 37\n"
               "m_grid = 0, 1, 2\n"
               "seed = 424242\n"
               "workers = 3\n";
    }
    const auto c = parse_campaign_file(path);
    CHECK(c.family == BaseFamily::von_mises);
    CHECK(c.mu == doctest::Approx(0.25));
    CHECK(c.concentration == doctest::Approx(2.0));
    CHECK(c.true_order == 2);
    CHECK(c.lambdas == std::vector<double>{-0.2, -0.5, -0.8});
    CHECK(c.sample_sizes == std::vector<int>{100, 200});
    CHECK(c.replicates == 37);
    CHECK(c.order_grid == std::vector<int>{0, 1, 2});
    CHECK(c.master_seed == 424242);
    CHECK(c.workers == 3);

    {
        std::ofstream out(path);
        out << "family vm\n";
    }
    CHECK_THROWS_AS(parse_campaign_file(path), std::runtime_error);
    {
        std::ofstream out(path);
        out << "replicates = soon\n";
    }
    CHECK_THROWS_AS(parse_campaign_file(path), std::runtime_error);
    std::filesystem::remove(path);
}
