#include "casimir/corrections.hpp"

#include <cmath>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/numeric.hpp"
#include "casimir/quadrature.hpp"

namespace casimir
{
namespace
{
using namespace constants;

double zero_mode_prefactor(SpherePlateGeometry const& g, double T)
{
    return k_boltzmann * T * g.R / (8.0 * g.z * g.z);
}

struct TraditionalParts
{
    double delta;
    double F0;
};

TraditionalParts traditional_parts(SpherePlateGeometry const& g,
                                   double T,
                                   double omega_p,
                                   ForceOptions const& opts)
{
    auto const m = PermittivityModel::plasma(omega_p);
    double const F0 = casimir_force_T0(g, m, opts).force;
    double const FT = casimir_force_thermal(g, m, T, opts).force;
    return {FT - F0, F0};
}

void check_length_order(double z, double R, double L)
{
    if (!(z > 0.0) || !(R > z) || !(L > R))
    {
        throw DomainError("finite-size factor needs L > R > z > 0");
    }
}
}  // namespace

//---------------------------------------------------------------------------//
void PatchParams::validate() const
{
    if (!(sigma_v >= 0.0) || !(k_min > 0.0) || !(k_max > k_min))
    {
        throw DomainError("patch parameters need sigma_v >= 0 and "
                          "0 < k_min < k_max");
    }
}

std::string_view to_string(ThermalKind k)
{
    switch (k)
    {
        case ThermalKind::traditional:
            return "traditional";
        case ThermalKind::alternative1:
            return "alternative1";
        case ThermalKind::alternative2:
            return "alternative2";
    }
    return "unknown";
}

//---------------------------------------------------------------------------//
ThermalCorrection thermal_correction_traditional(SpherePlateGeometry const& g,
                                                 double T,
                                                 double omega_p,
                                                 ForceOptions const& opts)
{
    auto const p = traditional_parts(g, T, omega_p, opts);
    return {ThermalKind::traditional, p.delta, p.delta / std::abs(p.F0)};
}

ThermalCorrection alt_thermal_1(SpherePlateGeometry const& g,
                                double T,
                                double omega_p,
                                ForceOptions const& opts)
{
    auto const p = traditional_parts(g, T, omega_p, opts);
    double const J = kernel::zero_frequency_perp(g.z, omega_p);
    double const delta = p.delta - zero_mode_prefactor(g, T) * J;
    return {ThermalKind::alternative1, delta, delta / std::abs(p.F0)};
}

ThermalCorrection alt_thermal_2(SpherePlateGeometry const& g,
                                double T,
                                double omega_p,
                                ForceOptions const& opts)
{
    auto const p = traditional_parts(g, T, omega_p, opts);
    double const J = kernel::zero_frequency_perp(g.z, omega_p);
    double const k = zero_mode_prefactor(g, T);
    double const delta = p.delta - k * J + k * (-zeta3);
    return {ThermalKind::alternative2, delta, delta / std::abs(p.F0)};
}

double ideal_zero_mode_integral(double rel_tol)
{
    QuadOptions opts;
    opts.rel_tol = rel_tol;
    auto f = [](double y) { return y * std::log1p(-std::exp(-y)); };
    return require_converged(integrate_to_infinity(f, 0.0, opts),
                             "ideal zero-mode integral")
        .value;
}

//---------------------------------------------------------------------------//
double patch_force(double z, double R, PatchParams const& p)
{
    p.validate();
    if (!(z > 0.0) || !(R > 0.0))
    {
        throw DomainError("patch_force needs z > 0 and R > 0");
    }
    if (p.sigma_v == 0.0)
    {
        return 0.0;
    }
    // u = k z; e^-u / sinh(u) = 2 / (e^{2u} - 1)
    auto f = [](double u) { return -2.0 * u * u * std::exp(-2.0 * u) / std::expm1(-2.0 * u); };
    QuadOptions opts;
    opts.rel_tol = 1e-8;
    double const integral
        = require_converged(integrate(f, p.k_min * z, p.k_max * z, opts),
                            "patch-potential integral")
              .value
          / (z * z * z);
    return -4.0 * pi * epsilon_0 * p.sigma_v * p.sigma_v * R
           / (p.k_max * p.k_max - p.k_min * p.k_min) * integral;
}

double patch_sigma(std::span<double const> work_functions)
{
    if (work_functions.size() < 2)
    {
        throw DomainError("patch_sigma needs at least two work functions");
    }
    CompensatedSum sum;
    for (double v : work_functions)
    {
        sum += v;
    }
    double const mean = sum.value() / static_cast<double>(work_functions.size());
    CompensatedSum sq;
    for (double v : work_functions)
    {
        sq += (v - mean) * (v - mean);
    }
    return std::sqrt(sq.value()) / std::sqrt(2.0);
}

PatchParams grain_wavevectors(double lambda_min, double lambda_max)
{
    if (!(lambda_min > 0.0) || !(lambda_max > lambda_min))
    {
        throw DomainError("grain_wavevectors needs 0 < lambda_min < lambda_max");
    }
    return {0.0, 2.0 * pi / lambda_max, 2.0 * pi / lambda_min};
}

//---------------------------------------------------------------------------//
double detail::finite_size_deficit_unchecked(double z, double R, double L)
{
    double const a2 = (L / R) * (L / R);
    double const s = std::sqrt(1.0 + a2);
    // 1 - 1/s without cancellation for small L / R
    double const gap = a2 / (s * (s + 1.0));
    double const r = z / R;
    return r * r * r / (gap * gap * gap);
}

double finite_size_deficit(double z, double R, double L)
{
    check_length_order(z, R, L);
    return detail::finite_size_deficit_unchecked(z, R, L);
}

double finite_size_deficit_asymptotic(double z, double R, double L)
{
    check_length_order(z, R, L);
    double const l3 = L * L * L;
    return 8.0 * (z * z * z) * (R * R * R) / (l3 * l3);
}

double finite_size_factor(double z, double R, double L)
{
    return 1.0 - finite_size_deficit(z, R, L);
}

double finite_size_factor_asymptotic(double z, double R, double L)
{
    return 1.0 - finite_size_deficit_asymptotic(z, R, L);
}

}  // namespace casimir
