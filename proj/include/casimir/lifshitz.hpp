#pragma once

#include <string>
#include <vector>

#include "constants.hpp"
#include "numeric.hpp"
#include "optics.hpp"

namespace casimir
{
//---------------------------------------------------------------------------//
//! Sphere above a plate, both bulk metal, separation measured between
//! zero roughness levels
struct SpherePlateGeometry
{
    double z;  //!< m
    double R = constants::default_sphere_radius;  //!< m

    //! Requires 0 < z and z / R < 0.1
    void validate() const;
};

//! Unit reflectivity in both polarizations
struct IdealMetal
{
};

struct ForcePoint
{
    double z = 0;            //!< m
    double force = 0;        //!< N
    double error = 0;        //!< estimated absolute numerical error, N
    std::string model;
    double temperature = 0;  //!< K
};

struct ForceOptions
{
    double rel_tol = 1e-9;        //!< frequency integral
    double inner_rel_tol = 1e-11; //!< wavevector integral
    double tail_rel_tol = 1e-9;   //!< Matsubara truncation
    int max_matsubara_terms = 2'000'000;
};

//---------------------------------------------------------------------------//
/*!
 * Force-distance relation on a strictly increasing separation grid.
 *
 * Interpolation is a cubic spline of ln|F| against ln z, continued linearly
 * outside the grid.
 */
class ForceCurve
{
  public:
    ForceCurve() = default;
    ForceCurve(std::vector<ForcePoint> points, double R);

    std::vector<ForcePoint> const& points() const { return points_; }
    double sphere_radius() const { return R_; }
    std::size_t size() const { return points_.size(); }

    double operator()(double z) const;

  private:
    std::vector<ForcePoint> points_;
    double R_ = 0;
    CubicSpline log_magnitude_;
};

//---------------------------------------------------------------------------//
// Reflection coefficients at imaginary frequency
//---------------------------------------------------------------------------//
double reflection_sq_parallel(double eps, double xi, double k_perp);
double reflection_sq_perp(double eps, double xi, double k_perp);

//! Zero-frequency TE reflectivity of the plasma model; y = 2 z q
double plasma_zero_frequency_perp_sq(double y, double z, double omega_p);

//---------------------------------------------------------------------------//
// Forces
//---------------------------------------------------------------------------//
double ideal_force(SpherePlateGeometry const& g);

ForcePoint casimir_force_T0(SpherePlateGeometry const& g,
                            PermittivityModel const& m,
                            ForceOptions const& opts = {});
ForcePoint casimir_force_T0(SpherePlateGeometry const& g,
                            IdealMetal,
                            ForceOptions const& opts = {});

//! casimir_force_T0 / ideal_force
double eta_c(SpherePlateGeometry const& g,
             PermittivityModel const& m,
             ForceOptions const& opts = {});

ForcePoint casimir_force_thermal(SpherePlateGeometry const& g,
                                 PermittivityModel const& m,
                                 double T,
                                 ForceOptions const& opts = {});
ForcePoint casimir_force_thermal(SpherePlateGeometry const& g,
                                 IdealMetal,
                                 double T,
                                 ForceOptions const& opts = {});

//! Forces at arbitrary separations, evaluated concurrently in input order
std::vector<ForcePoint> compute_forces(std::vector<double> const& z,
                                       double R,
                                       PermittivityModel const& m,
                                       double T = 0,
                                       ForceOptions const& opts = {});

/*!
 * Force curve over a separation grid at temperature T (T = 0 selects the
 * continuous frequency integral). Points are evaluated concurrently; the
 * result does not depend on scheduling.
 */
ForceCurve build_force_curve(std::vector<double> const& z,
                             double R,
                             PermittivityModel const& m,
                             double T = 0,
                             ForceOptions const& opts = {});

//! Relative error bound z / R of the proximity force approximation
double pft_error_bound(SpherePlateGeometry const& g);

//! c / (2 z)
double characteristic_frequency(double z);

//---------------------------------------------------------------------------//
// Dimensionless kernels (t = 2 z xi / c, y = 2 z q)
//---------------------------------------------------------------------------//
namespace kernel
{
//! int_0^inf y ln(1 - r^2 e^-y) dy for the given zero-frequency TE
//! reflectivity; the TM part is -zeta(3) and is not included
double zero_frequency_perp(double z, double omega_p, double rel_tol = 1e-12);
}  // namespace kernel

}  // namespace casimir
