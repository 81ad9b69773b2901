#pragma once

namespace casimir
{
namespace constants
{
//---------------------------------------------------------------------------//
// Physical constants (SI)
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double hbar = 1.0545718e-34;         // J s
inline constexpr double c_light = 2.99792458e8;       // m / s
inline constexpr double k_boltzmann = 1.380649e-23;   // J / K
inline constexpr double epsilon_0 = 8.8541878128e-12; // F / m
inline constexpr double zeta3 = 1.2020569031595942;   // Apery's constant

//! Conversion factor for photon energies quoted in eV, as used by optical
//! tables in this domain (rounded from 1.5193e15)
inline constexpr double ev_to_rad_per_s = 1.52e15;

//---------------------------------------------------------------------------//
// Gold defaults
inline constexpr double gold_omega_p = 1.37e16;  // rad / s
inline constexpr double gold_gamma = 5.32e13;    // rad / s
inline constexpr double gold_c1 = 0.0039;
inline constexpr double gold_c2 = 1.5;

//! Sphere radius of the AFM experiment [m]
inline constexpr double default_sphere_radius = 95.65e-6;

//---------------------------------------------------------------------------//
// Unit helpers
inline constexpr double nm = 1e-9;
inline constexpr double um = 1e-6;
inline constexpr double pN = 1e-12;

}  // namespace constants
}  // namespace casimir
