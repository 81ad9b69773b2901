#pragma once

#include <span>
#include <string_view>

#include "constants.hpp"
#include "lifshitz.hpp"

namespace casimir
{
//---------------------------------------------------------------------------//
//! Patch-potential spectrum with sharp cutoffs at grain-size wavevectors
struct PatchParams
{
    double sigma_v = 0;  //!< V
    double k_min = 0;    //!< 1/m
    double k_max = 0;    //!< 1/m

    void validate() const;
};

enum class ThermalKind
{
    traditional,
    alternative1,
    alternative2
};

std::string_view to_string(ThermalKind k);

/*!
 * Thermal correction Delta = F(z, T) - F(z) and its ratio to |F(z)|.
 *
 * Forces are attractive (negative), so a correction that strengthens the
 * attraction has a negative sign.
 */
struct ThermalCorrection
{
    ThermalKind kind;
    double delta_abs;  //!< N
    double delta_rel;  //!< delta_abs / |F(z)|
};

//---------------------------------------------------------------------------//
// Thermal corrections (plasma model for the traditional part)
//---------------------------------------------------------------------------//
ThermalCorrection
thermal_correction_traditional(SpherePlateGeometry const& g,
                               double T,
                               double omega_p = constants::gold_omega_p,
                               ForceOptions const& opts = {});

//! Traditional correction minus the plasma TE zero-frequency term
ThermalCorrection alt_thermal_1(SpherePlateGeometry const& g,
                                double T,
                                double omega_p = constants::gold_omega_p,
                                ForceOptions const& opts = {});

//! First alternative plus the ideal-metal TE zero-frequency term
ThermalCorrection alt_thermal_2(SpherePlateGeometry const& g,
                                double T,
                                double omega_p = constants::gold_omega_p,
                                ForceOptions const& opts = {});

//! int_0^inf y ln(1 - e^-y) dy by quadrature (closed form -zeta(3))
double ideal_zero_mode_integral(double rel_tol = 1e-12);

//---------------------------------------------------------------------------//
// Patch potentials
//---------------------------------------------------------------------------//
double patch_force(double z, double R, PatchParams const& p);

//! (1/sqrt 2) [sum (V_i - mean)^2]^(1/2) for work functions of equal-area
//! crystal planes
double patch_sigma(std::span<double const> work_functions);

//! k_max = 2 pi / lambda_min, k_min = 2 pi / lambda_max; sigma_v left 0
PatchParams grain_wavevectors(double lambda_min, double lambda_max);

//---------------------------------------------------------------------------//
// Finite plate
//---------------------------------------------------------------------------//
//! 1 - beta = (z/R)^3 (1 - 1/sqrt(1 + L^2/R^2))^-3; requires L > R > z > 0
double finite_size_deficit(double z, double R, double L);
//! Leading-order form 8 z^3 R^3 / L^6
double finite_size_deficit_asymptotic(double z, double R, double L);

//! beta = 1 - finite_size_deficit
double finite_size_factor(double z, double R, double L);
double finite_size_factor_asymptotic(double z, double R, double L);

namespace detail
{
//! Deficit without the ordering precondition on L and R
double finite_size_deficit_unchecked(double z, double R, double L);
}  // namespace detail

}  // namespace casimir
