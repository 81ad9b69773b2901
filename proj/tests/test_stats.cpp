#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/stats.hpp"

using namespace casimir;
using doctest::Approx;

namespace
{
//! Smooth attractive force magnitude in pN, about 1 nN at 62 nm
double model_pN(double z_nm)
{
    return 1000.0 * std::pow(62.0 / z_nm, 3);
}

std::vector<double> grid_nm()
{
    std::vector<double> z;
    for (double s = 62.0; s <= 350.0; s += 2.0)
        z.push_back(s);
    return z;
}

ScanSet synthetic(double d0, double noise, int n, std::uint64_t seed)
{
    auto const z = grid_nm();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, noise);
    std::vector<std::vector<double>> scans(n);
    for (auto& s : scans)
    {
        for (double zi : z)
            s.push_back(model_pN(zi + d0) + (noise > 0 ? g(rng) : 0.0));
    }
    return ScanSet(z, std::move(scans));
}
}  // namespace

TEST_CASE("mean and variance of the mean")
{
    ScanSet const s({100.0}, {{1.0}, {3.0}});
    CHECK(mean_force(s)[0] == 2.0);
    CHECK(variance_of_mean(s).max == Approx(1.0).epsilon(1e-15));

    ScanSet const two({100.0, 200.0}, {{1.0, 5.0}, {3.0, 5.0}, {2.0, 5.0}});
    auto const v = variance_of_mean(two);
    CHECK(v.s_mean[1] == 0.0);
    CHECK(v.max == v.s_mean[0]);
    CHECK_THROWS_AS(variance_of_mean(ScanSet({1.0}, {{1.0}})), DomainError);
}

TEST_CASE("sample statistics match a Monte Carlo spread")
{
    int const n = 27;
    double const sigma = 10.0;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(50.0, sigma);
    double sum = 0, sum2 = 0, s_mean_avg = 0;
    int const trials = 4000;
    for (int t = 0; t < trials; ++t)
    {
        std::vector<std::vector<double>> scans(n);
        for (auto& s : scans)
            s = {g(rng)};
        ScanSet const set({100.0}, std::move(scans));
        double const m = mean_force(set)[0];
        sum += m;
        sum2 += m * m;
        s_mean_avg += variance_of_mean(set).max / trials;
    }
    double const mean = sum / trials;
    double const spread = std::sqrt(sum2 / trials - mean * mean);
    CHECK(mean == Approx(50.0).epsilon(0.01));
    CHECK(spread == Approx(sigma / std::sqrt(double(n))).epsilon(0.05));
    CHECK(s_mean_avg == Approx(sigma / std::sqrt(double(n))).epsilon(0.05));
}

TEST_CASE("student threshold")
{
    CHECK(student_threshold(0.95, 27) == Approx(2.056).epsilon(0.001 / 2.056));
    CHECK(student_threshold(0.60, 27) == Approx(0.856).epsilon(0.001 / 0.856));
    CHECK(student_threshold(0.95, 2) == Approx(12.7062047361747).epsilon(1e-9));
    CHECK(student_threshold(0.95, 100000) == Approx(1.959963985).epsilon(1e-3));
    CHECK(student_threshold(0.99, 200000) == Approx(2.575829304).epsilon(1e-3));

    for (int n : {2, 5, 27, 1000})
    {
        double previous = 0.0;
        for (double beta : {0.1, 0.5, 0.6, 0.9, 0.95, 0.99})
        {
            double const t = student_threshold(beta, n);
            CHECK(t > previous);
            previous = t;
        }
    }
    for (double beta : {0.6, 0.95})
    {
        double previous = std::numeric_limits<double>::infinity();
        for (int n : {2, 3, 5, 10, 27, 100, 10000})
        {
            double const t = student_threshold(beta, n);
            CHECK(t < previous);
            previous = t;
        }
    }
    CHECK_THROWS_AS(student_threshold(1.0, 27), DomainError);
    CHECK_THROWS_AS(student_threshold(0.95, 1), DomainError);
}

TEST_CASE("incomplete beta")
{
    using detail::incomplete_beta;
    CHECK(incomplete_beta(1, 1, 0.3) == Approx(0.3).epsilon(1e-14));
    CHECK(incomplete_beta(2, 3, 0.4) == Approx(0.5248).epsilon(1e-12));
    CHECK(incomplete_beta(0.5, 0.5, 0.5) == Approx(0.5).epsilon(1e-12));
    CHECK(incomplete_beta(3, 2, 0.6) == Approx(1 - incomplete_beta(2, 3, 0.4)).epsilon(1e-12));
}

TEST_CASE("error components for a 27-scan measurement")
{
    double const syst[] = {1.7, 0.55, 0.31, 0.12};
    double const rnd = random_error(2.8, 0.95, 27);
    double const sys = systematic_error(syst);
    double const tot = total_error(rnd, sys);
    CHECK(rnd == Approx(5.8).epsilon(0.1 / 5.8));
    CHECK(sys == Approx(2.68).epsilon(1e-12));
    CHECK(tot == Approx(8.5).epsilon(0.1 / 8.5));
    CHECK(relative_error(tot, 485.8) == Approx(1.75e-2).epsilon(0.05 / 1.75));

    auto const [lo, hi] = confidence_interval(485.8, tot);
    CHECK(hi - lo == Approx(2 * tot));
    CHECK_THROWS_AS(confidence_interval(1.0, -1.0), DomainError);
    CHECK_THROWS_AS(relative_error(1.0, 0.0), DomainError);
    double const negative[] = {1.0, -0.1};
    CHECK_THROWS_AS(systematic_error(negative), DomainError);
}

TEST_CASE("confidence interval coverage")
{
    std::mt19937_64 rng(20260101);
    std::normal_distribution<double> g(100.0, 5.0);
    int const trials = 10000;
    int covered = 0;
    for (int t = 0; t < trials; ++t)
    {
        std::vector<std::vector<double>> scans(27);
        for (auto& s : scans)
            s = {g(rng)};
        ScanSet const set({100.0}, std::move(scans));
        auto const c = confidence(set, 0.95, {});
        auto const [lo, hi] = confidence_interval(mean_force(set)[0], c.total_error);
        covered += (lo <= 100.0 && 100.0 <= hi);
    }
    double const rate = double(covered) / trials;
    CHECK(rate > 0.93);
    CHECK(rate < 0.97);
}

TEST_CASE("rms deviation")
{
    std::vector<double> const a = {1.0, 2.0};
    CHECK(rms_deviation(a, a) == 0.0);
    std::vector<double> const b = {3.0, 4.0};
    std::vector<double> const zero = {0.0, 0.0};
    CHECK(rms_deviation(b, zero) == Approx(3.5355339059327378).epsilon(1e-15));
    std::vector<double> const shifted = {1.5, 2.5};
    CHECK(rms_deviation(a, shifted) == Approx(0.5));
    CHECK_THROWS_AS(rms_deviation(a, std::vector<double>{1.0}), DomainError);
}

TEST_CASE("offset fit")
{
    auto const exact = synthetic(0.0, 0.0, 2, 1);
    auto const same = fit_z0(exact, model_pN, 0.0, 1.0, 0.01);
    CHECK(same.z0_best == 0.0);
    CHECK(same.sigma_best == 0.0);

    for (double d0 : {-0.8, 0.4, 0.6})
    {
        auto const fit = fit_z0(synthetic(d0, 0.0, 2, 1), model_pN, 0.0, 1.0, 0.01);
        CHECK(std::abs(fit.z0_best - d0) <= 0.01 + 1e-12);
    }

    auto const fit = fit_z0(synthetic(0.4, 0.0, 2, 1), model_pN, 0.0, 1.0, 0.01,
                            {350, 210, 136});
    REQUIRE(fit.sigma_by_region.size() == 3);
    CHECK(fit.sigma_by_region[2].first == 136);
    // unimodal profile
    std::size_t k = 0;
    auto const& p = fit.profile;
    while (k + 1 < p.size() && p[k + 1].second < p[k].second)
        ++k;
    for (std::size_t j = k; j + 1 < p.size(); ++j)
        CHECK(p[j + 1].second >= p[j].second);

    CHECK_THROWS_AS(fit_z0(exact, model_pN, 0.0, 0.0, 0.01), DomainError);
    CHECK_THROWS_AS(fit_z0(exact, model_pN, 0.0, 1.0, 0.01, {10.0}), DomainError);
}

TEST_CASE("equivalence halfwidth grows with noise")
{
    auto const quiet = fit_z0(synthetic(0.0, 0.5, 27, 3), model_pN, 0.0, 1.0, 0.01);
    auto const loud = fit_z0(synthetic(0.0, 14.5, 27, 3), model_pN, 0.0, 1.0, 0.01);
    CHECK(quiet.equivalence_halfwidth <= loud.equivalence_halfwidth);
    CHECK(loud.equivalence_halfwidth <= 1.0);
}

TEST_CASE("excluding scans")
{
    auto const base = synthetic(0.0, 3.0, 10, 11);
    std::set<int> const both = {2, 7};
    ScanSet const direct(base.separations(), base.scans(), both);
    auto const stepwise = base.excluding({2}).excluding({7});
    CHECK(direct.n() == 8);
    CHECK(stepwise.n() == 8);
    CHECK(mean_force(direct) == mean_force(stepwise));
    CHECK(variance_of_mean(direct).s_mean == variance_of_mean(stepwise).s_mean);
    CHECK(confidence(direct, 0.95, {}).t_value == student_threshold(0.95, 8));
    CHECK(confidence(stepwise, 0.95, {}).t_value == confidence(direct, 0.95, {}).t_value);
    CHECK_THROWS_AS(base.excluding({11}), DomainError);
}

TEST_CASE("error budget")
{
    auto b62 = theory_error_budget(62, 0.15e-6, 95.65e-6, 0.15);
    CHECK(b62.items().front().value == Approx(0.88e-2).epsilon(0.01));
    double const before = b62.total();
    for (auto const& [label, v] : std::vector<std::pair<char const*, double>>{
             {"a", 0.5e-2}, {"b", 0.06e-2}, {"c", 0.02e-2}, {"d", 0.23e-2}})
        b62.add(label, v);
    CHECK(b62.total() == Approx(1.69e-2).epsilon(0.02 / 1.69));
    double sum = 0.0;
    for (auto const& i : b62.items())
        sum += i.value;
    CHECK(b62.total() == Approx(sum).epsilon(1e-15));
    double const full = b62.total();
    b62.remove("d");
    CHECK(b62.total() == Approx(full - 0.23e-2).epsilon(1e-14));
    b62.remove("a");
    b62.remove("b");
    b62.remove("c");
    CHECK(b62.total() == before);

    auto const b200 = theory_error_budget(
        200, 0.15e-6, 95.65e-6, 0.15,
        {{"grain", 0.5e-2}, {"pft", 0.21e-2}, {"diffraction", 0.026e-2}, {"patch", 0.0}});
    CHECK(b200.items().front().value == Approx(0.38e-2).epsilon(0.01 / 0.38));
    CHECK(b200.total() == Approx(1.1e-2).epsilon(0.02 / 1.1));
    CHECK_THROWS_AS(b62.add("neg", -1.0), DomainError);
}

TEST_CASE("scan file parsing")
{
    std::istringstream ok("# scans\nz_nm, scan_1, scan_2\n62, 1000, 1002\n64, 950, 951\n");
    auto const s = parse_scan_text(ok);
    CHECK(s.n() == 2);
    CHECK(s.separations()[1] == 64.0);
    CHECK(s.scans()[1][0] == 1002.0);

    std::istringstream short_row("z_nm, scan_1, scan_2\n62, 1000\n");
    try
    {
        parse_scan_text(short_row, "scans.csv");
        FAIL("expected a format error");
    }
    catch (FormatError const& e)
    {
        CHECK(std::string(e.what()).find("scans.csv:2") != std::string::npos);
    }
    std::istringstream bad("z_nm, scan_1\n62, 1000\n64, abc\n");
    CHECK_THROWS_AS(parse_scan_text(bad), FormatError);
    std::istringstream unordered("z_nm, scan_1\n64, 1000\n62, 1100\n");
    CHECK_THROWS_AS(parse_scan_text(unordered), FormatError);
    std::istringstream empty("z_nm, scan_1\n");
    CHECK_THROWS_AS(parse_scan_text(empty), FormatError);
}
