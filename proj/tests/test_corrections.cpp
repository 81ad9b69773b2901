#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "casimir/corrections.hpp"
#include "casimir/errors.hpp"

using namespace casimir;
using namespace casimir::constants;
using doctest::Approx;

namespace
{

double zeta3_series()
{
    double s = 0.0;
    for (int n = 200000; n >= 1; --n)
    {
        double const x = n;
        s += 1.0 / (x * x * x);
    }
    // tail beyond N ~ 1 / (2 N^2)
    return s + 1.0 / (2.0 * 200000.0 * 200000.0);
}

PatchParams gold_patch()
{
    double const v[] = {5.47, 5.37, 5.31};
    auto p = grain_wavevectors(68 * nm, 121 * nm);
    p.sigma_v = patch_sigma(v);
    return p;
}
}  // namespace

TEST_CASE("zero-mode integral")
{
    CHECK(zeta3_series() == Approx(zeta3).epsilon(1e-12));
    CHECK(ideal_zero_mode_integral() == Approx(-zeta3_series()).epsilon(1e-8));
}

TEST_CASE("second alternative differs from the first by the ideal zero mode")
{
    for (double z : {62 * nm, 200 * nm})
    {
        SpherePlateGeometry const g{z};
        double const T = 300;
        auto const a = alt_thermal_1(g, T);
        auto const b = alt_thermal_2(g, T);
        double const k = k_boltzmann * T * g.R / (8 * z * z);
        CHECK(b.delta_abs - a.delta_abs == Approx(-k * zeta3).epsilon(1e-10));
        CHECK(a.kind == ThermalKind::alternative1);
        CHECK(b.kind == ThermalKind::alternative2);
    }
}

TEST_CASE("thermal corrections at room temperature")
{
    auto const t100 = thermal_correction_traditional({100 * nm}, 300);
    auto const t300 = thermal_correction_traditional({300 * nm}, 300);
    // attraction grows: negative corrections
    CHECK(t100.delta_abs < 0.0);
    CHECK(-t100.delta_rel == Approx(0.007e-2).epsilon(0.5));
    CHECK(-t300.delta_rel == Approx(0.1e-2).epsilon(0.5));

    auto const a62 = alt_thermal_1({62 * nm}, 300);
    auto const a350 = alt_thermal_1({350 * nm}, 300);
    CHECK(a62.delta_rel == Approx(1.1e-2).epsilon(0.5));
    CHECK(a350.delta_rel == Approx(8e-2).epsilon(0.5));
    for (double z : {62 * nm, 150 * nm, 350 * nm})
    {
        double const d2 = -alt_thermal_2({z}, 300).delta_rel;
        CHECK(d2 == Approx(2.15e-2).epsilon(0.5));
    }
}

TEST_CASE("thermal corrections at low temperature")
{
    SpherePlateGeometry const g{62 * nm};
    CHECK(std::abs(thermal_correction_traditional(g, 1.0).delta_rel) <= 1e-6);
    // the alternatives carry zero-frequency terms linear in T
    double const a1 = alt_thermal_1(g, 1.0).delta_rel;
    double const a2 = alt_thermal_1(g, 2.0).delta_rel;
    CHECK(a2 == Approx(2 * a1).epsilon(1e-3));
    double const b1 = alt_thermal_2(g, 1.0).delta_rel;
    double const b2 = alt_thermal_2(g, 2.0).delta_rel;
    CHECK(b2 == Approx(2 * b1).epsilon(1e-3));
    CHECK_THROWS_AS(thermal_correction_traditional(g, 0.0), DomainError);
}

TEST_CASE("patch potentials")
{
    double const v[] = {5.47, 5.37, 5.31};
    CHECK(patch_sigma(v) == Approx(80.8e-3).epsilon(1e-3));
    double const same[] = {5.0, 5.0, 5.0};
    CHECK(patch_sigma(same) == 0.0);
    double const d = 0.05;
    double const pair[] = {5.0, 5.0 + 2 * d};
    CHECK(patch_sigma(pair) == Approx(d).epsilon(1e-12));

    auto const p = gold_patch();
    CHECK(p.k_max * nm == Approx(0.092).epsilon(0.01));
    CHECK(p.k_min * nm == Approx(0.052).epsilon(0.01));
    auto const half = grain_wavevectors(50 * nm, 100 * nm);
    CHECK(half.k_max == Approx(2 * half.k_min).epsilon(1e-15));
    CHECK_THROWS_AS(grain_wavevectors(100 * nm, 50 * nm), DomainError);

    double const R = default_sphere_radius;
    double const f62 = patch_force(62 * nm, R, p);
    double const f100 = patch_force(100 * nm, R, p);
    CHECK(f62 / R == Approx(-1.15e-8).epsilon(0.03));
    CHECK(f100 / R == Approx(-1.25e-10).epsilon(0.03));
    CHECK(f100 / f62 < 0.02);

    double previous = 0.0;
    for (double z = 62 * nm; z <= 200 * nm; z += 2 * nm)
    {
        double const f = std::abs(patch_force(z, R, p));
        if (z > 62 * nm)
        {
            CHECK(f < previous);
        }
        previous = f;
    }

    auto flat = p;
    flat.sigma_v = 0.0;
    CHECK(patch_force(62 * nm, R, flat) == 0.0);
}

TEST_CASE("finite plate")
{
    double const R = default_sphere_radius;
    double const z = 350 * nm;
    CHECK(finite_size_factor_asymptotic(z, R, 5e-3) == Approx(1.0));
    double const deficit = finite_size_deficit_asymptotic(z, R, 5e-3);
    CHECK(deficit > 1.5e-17);
    CHECK(deficit < 3.5e-17);

    double previous = 0.0;
    for (double L : {2 * R, 5 * R, 10 * R, 100 * R, 1e4 * R})
    {
        double const b = finite_size_factor(z, R, L);
        CHECK(b > 0.0);
        CHECK(b <= 1.0);
        CHECK(b >= previous);
        previous = b;
    }
    CHECK_THROWS_AS(finite_size_factor(z, R, R / 2), DomainError);
    CHECK_THROWS_AS(finite_size_factor(0.0, R, 5e-3), DomainError);

    // the leading-order form holds for plates small against the sphere
    for (double ratio : {1e-2, 3e-3, 1e-3})
    {
        double const L = ratio * R;
        double const s = 1e-3 * L;
        double const leading = 8 * std::pow(s * R, 3) / std::pow(L, 6);
        CHECK(detail::finite_size_deficit_unchecked(s, R, L)
              == Approx(leading).epsilon(1e-2));
    }
}
