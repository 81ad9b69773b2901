#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/optics.hpp"
#include "test_paths.hpp"

using namespace casimir;
using doctest::Approx;

namespace
{
constexpr double wp = constants::gold_omega_p;

//! Drude Im eps sampled on a log grid
OpticalTable drude_table(double lo, double hi, int n)
{
    DrudeParams p;
    std::vector<OpticalSample> s;
    for (int i = 0; i < n; ++i)
    {
        double const w = lo * std::pow(hi / lo, double(i) / (n - 1));
        s.push_back({w, wp * wp * p.gamma / (w * (w * w + p.gamma * p.gamma))});
    }
    return OpticalTable(std::move(s), p);
}

std::vector<double> log_grid(double lo, double hi, int n)
{
    std::vector<double> v;
    for (int i = 0; i < n; ++i)
    {
        v.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
    }
    return v;
}
}  // namespace

TEST_CASE("closed-form permittivities")
{
    DrudeParams const gold;
    CHECK(drude_eps_imaginary(wp, {wp, 0.0}) == Approx(2.0).epsilon(1e-15));
    CHECK(drude_eps_imaginary(1.37e16, gold)
          == Approx(1.99613180932437541).epsilon(1e-14));
    CHECK(std::abs(drude_eps_imaginary(1e22, gold) - 1.0) < 1e-9);

    CHECK(plasma_eps_imaginary(wp, wp) == Approx(2.0).epsilon(1e-15));
    CHECK(plasma_eps_imaginary(wp / 2, wp) == Approx(5.0).epsilon(1e-15));
    CHECK(plasma_eps_imaginary(7.5e14, wp) == Approx(334.671111111111).epsilon(1e-13));

    InfraredParams const ir;
    CHECK(infrared_eps_imaginary(wp, ir) == Approx(3.4961).epsilon(1e-14));
    for (double xi : log_grid(1e11, 1e20, 50))
    {
        CHECK(infrared_eps_imaginary(xi, {wp, 0.0, 0.0})
              == Approx(plasma_eps_imaginary(xi, wp)).epsilon(1e-12));
    }
}

TEST_CASE("non-positive frequency is a domain error")
{
    CHECK_THROWS_AS(drude_eps_imaginary(0.0, {}), DomainError);
    CHECK_THROWS_AS(plasma_eps_imaginary(-1.0, wp), DomainError);
    CHECK_THROWS_AS(infrared_eps_imaginary(0.0, {}), DomainError);
    CHECK_THROWS_AS(kk_eps_imaginary(drude_table(1e12, 1e20, 50), 0.0), DomainError);
}

TEST_CASE("infrared closed form reports where it turns unphysical")
{
    InfraredParams const ir;
    try
    {
        infrared_eps_imaginary(1e12, ir);
        FAIL("expected a model-validity error");
    }
    catch (ModelValidityError const& e)
    {
        CHECK(std::string(e.what()).find("1e+12") != std::string::npos);
    }
}

TEST_CASE("nk rows to Im eps")
{
    std::vector<NkRow> rows = {{1e15, 1.0, 0.0}, {2e15, 3.0, 4.0}};
    auto t = table_from_nk(rows);
    CHECK(t.samples()[0].eps_im == 0.0);
    CHECK(t.samples()[1].eps_im == 24.0);

    std::vector<NkRow> unsorted = {{2e15, 1, 1}, {1e15, 1, 1}};
    CHECK_THROWS_AS(table_from_nk(unsorted), FormatError);
    std::vector<NkRow> dup = {{1e15, 1, 1}, {1e15, 1, 1}};
    CHECK_THROWS_AS(table_from_nk(dup), FormatError);
    std::vector<NkRow> negative = {{1e15, -1, 1}, {2e15, 1, 1}};
    CHECK_THROWS_AS(table_from_nk(negative), FormatError);
}

TEST_CASE("optical text parsing")
{
    std::istringstream ev("# gold\n1.0, 0.5, 7.0\n2.0, 0.4, 3.0\n");
    auto rows = parse_optical_text(ev);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].omega == Approx(1.52e15));

    std::istringstream rad("# units: rad_s\n1e15, 0.5, 7.0\n2e15, 0.4, 3.0\n");
    CHECK(parse_optical_text(rad)[1].omega == 2e15);

    std::istringstream bad("1.0, 0.5, 7.0\n2.0, x, 3.0\n");
    try
    {
        parse_optical_text(bad, "au.csv");
        FAIL("expected a format error");
    }
    catch (FormatError const& e)
    {
        CHECK(std::string(e.what()).find("au.csv:2") != std::string::npos);
    }

    std::istringstream unit("# units: THz\n1, 1, 1\n");
    CHECK_THROWS_AS(parse_optical_text(unit), FormatError);

    CHECK_THROWS_AS(read_optical_file("/nonexistent/optical.csv"), FormatError);
}

TEST_CASE("dispersion relation reproduces the Drude model")
{
    auto const table = drude_table(1e12, 1e20, 400);
    DrudeParams const gold;
    for (double xi : log_grid(1e14, 1e16, 21))
    {
        CHECK(kk_eps_imaginary(table, xi)
              == Approx(drude_eps_imaginary(xi, gold)).epsilon(1e-3));
    }
    CHECK(std::abs(kk_eps_imaginary(table, 1e22) - 1.0) < 1e-6);
}

TEST_CASE("rising tail is rejected")
{
    std::vector<OpticalSample> s = {{1e15, 10.0}, {2e15, 5.0}, {3e15, 6.0}};
    OpticalTable t(s, DrudeParams{});
    CHECK_THROWS_AS(kk_eps_imaginary(t, 1e15), ModelValidityError);
}

TEST_CASE("table interpolation")
{
    std::vector<OpticalSample> s = {{1e15, 8.0}, {4e15, 2.0}, {8e15, 0.0}, {9e15, 0.0}};
    OpticalTable t(s, DrudeParams{});
    // log-log midpoint between (1, 8) and (4, 2)
    CHECK(t.eps_im(2e15) == Approx(4.0).epsilon(1e-12));
    // linear where an end is zero
    CHECK(t.eps_im(6e15) == Approx(1.0).epsilon(1e-12));
    CHECK(t.eps_im(1e16) == 0.0);
}

TEST_CASE("grain adjustment")
{
    CHECK(grain_adjusted_c1(0.0039, 0.008) == Approx(0.0059).epsilon(1e-12));
    CHECK(grain_adjusted_c1(0.0039, 0.0) == 0.0039);
    CHECK_THROWS_AS(grain_adjusted_c1(-1, 0), DomainError);

    InfraredParams const ir;
    CHECK(reflectance_infrared({wp, 0, 0}, 1e15) == 0.0);
    CHECK(reflectance_infrared(ir, 2.42e15) == Approx(0.0507037721775268).epsilon(1e-12));
    CHECK(reflectance_infrared(ir, 2.42e15, 2.0)
          == Approx(2 * 0.0507037721775268).epsilon(1e-12));
    CHECK_THROWS_AS(reflectance_infrared(ir, wp / 3), RangeError);
}

TEST_CASE("model invariants")
{
    auto const tab = PermittivityModel::tabulated(read_optical_file(test::data_dir() / "au_optical_nk.csv"));
    std::vector<PermittivityModel> const models
        = {PermittivityModel::drude(), PermittivityModel::plasma(),
           PermittivityModel::infrared(), tab};
    auto const grid = log_grid(1e11, 1e20, 400);
    for (auto const& m : models)
    {
        CAPTURE(m.name());
        double previous = std::numeric_limits<double>::infinity();
        for (double xi : grid)
        {
            double const e = m(xi);
            CHECK(e > 1.0);
            CHECK(e < previous);
            previous = e;
        }
    }
}

TEST_CASE("gold models approach the plasma form at a hundredth of the plasma frequency")
{
    auto const tab = PermittivityModel::tabulated(read_optical_file(test::data_dir() / "au_optical_nk.csv"));
    std::vector<PermittivityModel> const models
        = {PermittivityModel::drude(), PermittivityModel::plasma(),
           PermittivityModel::infrared(), tab};
    double const xi = wp / 100;
    for (auto const& m : models)
    {
        CAPTURE(m.name());
        CHECK(m(xi) == Approx(plasma_eps_imaginary(xi, wp)).epsilon(0.1));
    }
}

TEST_CASE("resummed infrared branch joins the closed form")
{
    InfraredParams const ir;
    auto const m = PermittivityModel::infrared(ir);
    double const xs = PermittivityModel::infrared_switch(ir);
    double const below = m(xs * (1 - 1e-12));
    double const above = m(xs);
    CHECK(below == Approx(above).epsilon(2e-3));
    CHECK(m(xs * 10) == infrared_eps_imaginary(xs * 10, ir));
}

TEST_CASE("tabulated cache matches the direct transform")
{
    auto const table = read_optical_file(test::data_dir() / "au_optical_nk.csv");
    auto const m = PermittivityModel::tabulated(table);
    for (double xi : log_grid(1e12, 1e18, 37))
    {
        CHECK(m(xi) == Approx(kk_eps_imaginary(table, xi)).epsilon(1e-5));
    }
}

TEST_CASE("model names")
{
    CHECK(parse_model_kind("drude") == ModelKind::drude);
    CHECK(parse_model_kind("tabulated") == ModelKind::tabulated);
    CHECK_THROWS_AS(parse_model_kind("lorentz"), DomainError);
    CHECK(PermittivityModel::plasma().zero_frequency() == ZeroFrequencyLimit::plasma_like);
    CHECK(PermittivityModel::drude().zero_frequency() == ZeroFrequencyLimit::drude_like);
}
