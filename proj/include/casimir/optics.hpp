#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "constants.hpp"

namespace casimir
{
//---------------------------------------------------------------------------//
// Parameter sets
//---------------------------------------------------------------------------//
//! Drude dielectric function 1 - wp^2 / (w (w + i gamma)) [rad/s]
struct DrudeParams
{
    double omega_p = constants::gold_omega_p;
    double gamma = constants::gold_gamma;

    void validate() const;
};

/*!
 * Infrared-optics permittivity with relaxation nu = wp (c1 + c2 w^2 / wp^2).
 *
 * c1 collects the frequency-independent scattering (grain boundaries,
 * impurities, phonons); c2 the electron-electron part.
 */
struct InfraredParams
{
    double omega_p = constants::gold_omega_p;
    double c1 = constants::gold_c1;
    double c2 = constants::gold_c2;

    void validate() const;
};

//! Im eps at a real angular frequency
struct OpticalSample
{
    double omega;
    double eps_im;
};

//! Tabulated complex refractive index row
struct NkRow
{
    double omega;  //!< rad/s
    double n;
    double k;
};

//---------------------------------------------------------------------------//
/*!
 * Samples of Im eps(w), strictly increasing in w, with a Drude extension
 * below the first sample and a w^-3 tail above the last.
 */
class OpticalTable
{
  public:
    OpticalTable(std::vector<OpticalSample> samples, DrudeParams extension);

    std::span<OpticalSample const> samples() const { return samples_; }
    DrudeParams const& low_freq_extension() const { return extension_; }

    //! Im eps(w) over the whole real axis (extensions included)
    double eps_im(double omega) const;

  private:
    std::vector<OpticalSample> samples_;
    DrudeParams extension_;

    double segment_eps_im(std::size_t i, double omega) const;
    friend double kk_eps_imaginary(OpticalTable const&, double);
};

//---------------------------------------------------------------------------//
// Closed-form permittivities on the imaginary axis
//---------------------------------------------------------------------------//
double drude_eps_imaginary(double xi, DrudeParams const& p);
double plasma_eps_imaginary(double xi, double omega_p);
double infrared_eps_imaginary(double xi, InfraredParams const& p);

//---------------------------------------------------------------------------//
// Tabulated data
//---------------------------------------------------------------------------//
OpticalTable table_from_nk(std::span<NkRow const> rows,
                           DrudeParams const& extension = {});

//! Dispersion relation: eps(i xi) = 1 + 2/pi int w Im eps(w) / (w^2 + xi^2)
double kk_eps_imaginary(OpticalTable const& table, double xi);

//! Parse "omega_or_energy, n, k" lines with an optional "# units:" directive
std::vector<NkRow>
parse_optical_text(std::istream& is, std::string const& source = "<stream>");

OpticalTable read_optical_file(std::filesystem::path const& path,
                               DrudeParams const& extension = {});

//---------------------------------------------------------------------------//
// Grain-size adjustment
//---------------------------------------------------------------------------//
//! Reflectance deficit 1 - R = kappa * nu(w) / wp in the infrared regime
double reflectance_infrared(InfraredParams const& p,
                            double omega,
                            double kappa = 1.0);

//! Divisor mapping a reflectance deficit change onto c1
inline constexpr double reflectance_to_c1_divisor = 4.0;

double grain_adjusted_c1(double c1, double reflectance_deficit_delta);

//---------------------------------------------------------------------------//
// Models
//---------------------------------------------------------------------------//
//! Zero-frequency behaviour used by the l = 0 Matsubara term
enum class ZeroFrequencyLimit
{
    drude_like,   //!< r_TM^2 = 1, r_TE^2 = 0
    plasma_like,  //!< r_TM^2 = 1, r_TE^2 from the plasma frequency
};

/*!
 * Dielectric permittivity eps(i xi) of one of the supported models.
 *
 * The tabulated variant computes the dispersion relation once on a dense
 * log grid at construction and interpolates afterwards; the cache is
 * immutable and shared between copies.
 *
 * The infrared closed form turns unphysical (eps <= 1) at very small xi
 * where the c1 term dominates. Below xi = 10 c1 wp the model switches to
 * its resummed Drude-like form 1 + wp^2 / (xi (xi + c1 wp)) + c2 wp / xi,
 * which agrees with the closed form to second order in c1 wp / xi.
 */
class PermittivityModel
{
  public:
    struct Drude
    {
        DrudeParams params;
    };
    struct Plasma
    {
        double omega_p;
    };
    struct Infrared
    {
        InfraredParams params;
    };
    struct Tabulated;

    static PermittivityModel drude(DrudeParams const& p = {});
    static PermittivityModel plasma(double omega_p = constants::gold_omega_p);
    static PermittivityModel infrared(InfraredParams const& p = {});
    static PermittivityModel tabulated(OpticalTable table);

    //! eps(i xi), > 1 for every xi > 0
    double operator()(double xi) const;

    std::string_view name() const;
    ZeroFrequencyLimit zero_frequency() const;
    //! Plasma frequency entering the zero-frequency TE term
    double omega_p() const;

    //! Switch frequency below which the infrared model is resummed
    static double infrared_switch(InfraredParams const& p)
    {
        return 30.0 * p.c1 * p.omega_p;
    }

  private:
    using Variant = std::variant<Drude, Plasma, Infrared,
                                 std::shared_ptr<Tabulated const>>;
    explicit PermittivityModel(Variant v) : model_(std::move(v)) {}

    Variant model_;
};

//! Model name to kind ("drude", "plasma", "infrared", "tabulated")
enum class ModelKind
{
    drude,
    plasma,
    infrared,
    tabulated
};
ModelKind parse_model_kind(std::string_view name);

}  // namespace casimir
