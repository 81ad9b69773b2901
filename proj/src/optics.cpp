#include "casimir/optics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/numeric.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/text_io.hpp"

namespace casimir
{
namespace
{
using constants::pi;

void require_positive_xi(double xi, char const* what)
{
    if (!(xi > 0.0))
    {
        throw DomainError(std::string(what)
                          + ": imaginary frequency must be positive, got "
                          + std::to_string(xi));
    }
}

//! Im eps of the Drude model at real frequency
double drude_im(double omega, DrudeParams const& p)
{
    return p.omega_p * p.omega_p * p.gamma
           / (omega * (omega * omega + p.gamma * p.gamma));
}

// Dispersion-relation pieces: each returns int w Im eps / (w^2 + xi^2) dw
// over its frequency range, without the 2/pi prefactor.

//! Drude region [0, w0]
double kk_low(DrudeParams const& p, double w0, double xi)
{
    double const wp2 = p.omega_p * p.omega_p;
    double const g = p.gamma;
    if (std::abs(xi - g) > 1e-3 * std::max(xi, g))
    {
        // Partial fractions of gamma / ((w^2 + g^2)(w^2 + xi^2))
        return wp2 * (std::atan(w0 / g) - (g / xi) * std::atan(w0 / xi))
               / (xi * xi - g * g);
    }
    auto integrand = [&](double w) {
        return wp2 * g / ((w * w + g * g) * (w * w + xi * xi));
    };
    QuadOptions opts;
    opts.rel_tol = 1e-12;
    return require_converged(integrate(integrand, 0.0, w0, opts),
                             "Drude extension")
        .value;
}

//! w^-3 tail [wN, inf) with Im eps = e_N (wN / w)^3
double kk_tail(double wN, double eN, double xi)
{
    double const x = xi / wN;
    // int_wN^inf dw / (w^2 (w^2 + xi^2)) = (x - atan x) / xi^3
    if (x < 0.05)
    {
        double const x2 = x * x;
        return eN * (1.0 / 3 - x2 / 5 + x2 * x2 / 7 - x2 * x2 * x2 / 9);
    }
    return eN * (x - std::atan(x)) / (x * x * x);
}
}  // namespace

//---------------------------------------------------------------------------//
void DrudeParams::validate() const
{
    if (!(omega_p > 0.0) || !(gamma >= 0.0))
    {
        throw DomainError("Drude parameters need omega_p > 0 and gamma >= 0");
    }
}

void InfraredParams::validate() const
{
    if (!(omega_p > 0.0) || !(c1 >= 0.0) || !(c2 >= 0.0))
    {
        throw DomainError("infrared parameters need omega_p > 0, c1, c2 >= 0");
    }
}

//---------------------------------------------------------------------------//
double drude_eps_imaginary(double xi, DrudeParams const& p)
{
    require_positive_xi(xi, "drude_eps_imaginary");
    return 1.0 + p.omega_p * p.omega_p / (xi * (xi + p.gamma));
}

double plasma_eps_imaginary(double xi, double omega_p)
{
    require_positive_xi(xi, "plasma_eps_imaginary");
    return 1.0 + omega_p * omega_p / (xi * xi);
}

double infrared_eps_imaginary(double xi, InfraredParams const& p)
{
    require_positive_xi(xi, "infrared_eps_imaginary");
    double const r = p.omega_p / xi;
    double const eps = 1.0 + r * r - r * r * r * (p.c1 - p.c2 / (r * r));
    if (!(eps > 1.0))
    {
        std::ostringstream msg;
        msg << "infrared permittivity is unphysical (eps = " << eps
            << " <= 1) at xi = " << xi << " rad/s";
        throw ModelValidityError(msg.str());
    }
    return eps;
}

//---------------------------------------------------------------------------//
// OpticalTable
//---------------------------------------------------------------------------//
OpticalTable::OpticalTable(std::vector<OpticalSample> samples,
                           DrudeParams extension)
    : samples_(std::move(samples)), extension_(extension)
{
    extension_.validate();
    if (samples_.size() < 2)
    {
        throw FormatError("optical table needs at least two samples");
    }
    for (std::size_t i = 0; i < samples_.size(); ++i)
    {
        auto const& s = samples_[i];
        if (!(s.omega > 0.0) || !(s.eps_im >= 0.0))
        {
            throw FormatError("optical sample " + std::to_string(i)
                              + " needs omega > 0 and Im eps >= 0");
        }
        if (i > 0 && !(s.omega > samples_[i - 1].omega))
        {
            throw FormatError("optical table frequencies must be strictly "
                              "increasing (sample "
                              + std::to_string(i) + ")");
        }
    }
}

//---------------------------------------------------------------------------//
//! Log-log interpolation inside segment [i, i+1]; linear if an end is zero
double OpticalTable::segment_eps_im(std::size_t i, double omega) const
{
    auto const& lo = samples_[i];
    auto const& hi = samples_[i + 1];
    if (lo.eps_im <= 0.0 || hi.eps_im <= 0.0)
    {
        double const t = (omega - lo.omega) / (hi.omega - lo.omega);
        return lo.eps_im + t * (hi.eps_im - lo.eps_im);
    }
    double const slope = std::log(hi.eps_im / lo.eps_im)
                         / std::log(hi.omega / lo.omega);
    return lo.eps_im * std::pow(omega / lo.omega, slope);
}

double OpticalTable::eps_im(double omega) const
{
    if (omega < samples_.front().omega)
    {
        return drude_im(omega, extension_);
    }
    if (omega >= samples_.back().omega)
    {
        double const r = samples_.back().omega / omega;
        return samples_.back().eps_im * r * r * r;
    }
    auto it = std::upper_bound(
        samples_.begin(), samples_.end(), omega, [](double w, auto const& s) {
            return w < s.omega;
        });
    return segment_eps_im(static_cast<std::size_t>(it - samples_.begin()) - 1,
                          omega);
}

//---------------------------------------------------------------------------//
OpticalTable table_from_nk(std::span<NkRow const> rows,
                           DrudeParams const& extension)
{
    if (rows.empty())
    {
        throw FormatError("optical data contains no rows");
    }
    std::vector<OpticalSample> samples;
    samples.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        auto const& r = rows[i];
        if (!(r.n >= 0.0) || !(r.k >= 0.0))
        {
            throw FormatError("optical row " + std::to_string(i + 1)
                              + ": negative refractive index component");
        }
        if (i > 0 && !(r.omega > rows[i - 1].omega))
        {
            throw FormatError("optical row " + std::to_string(i + 1)
                              + ": frequencies must be strictly increasing");
        }
        samples.push_back({r.omega, 2.0 * r.n * r.k});
    }
    return OpticalTable(std::move(samples), extension);
}

//---------------------------------------------------------------------------//
double kk_eps_imaginary(OpticalTable const& table, double xi)
{
    require_positive_xi(xi, "kk_eps_imaginary");
    auto const samples = table.samples();
    auto const& last = samples.back();
    auto const& prev = samples[samples.size() - 2];
    if (last.eps_im > 0.0 && !(last.eps_im < prev.eps_im))
    {
        throw ModelValidityError(
            "optical table tail is not decaying: Im eps rises from "
            + std::to_string(prev.eps_im) + " to "
            + std::to_string(last.eps_im)
            + " over the last two samples, so no w^-3 tail can be fitted");
    }

    CompensatedSum sum;
    sum += kk_low(table.low_freq_extension(), samples.front().omega, xi);

    QuadOptions opts;
    opts.rel_tol = 1e-10;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    {
        // Integrate in u = ln w: dw w Im eps / (w^2 + xi^2) = du w^2 Im eps
        // / (w^2 + xi^2)
        auto integrand = [&](double u) {
            double const w = std::exp(u);
            return w * w * table.segment_eps_im(i, w) / (w * w + xi * xi);
        };
        auto const r
            = integrate(integrand,
                        std::log(samples[i].omega),
                        std::log(samples[i + 1].omega),
                        opts);
        sum += require_converged(r, "dispersion relation").value;
    }
    sum += kk_tail(last.omega, last.eps_im, xi);
    return 1.0 + 2.0 / pi * sum.value();
}

//---------------------------------------------------------------------------//
std::vector<NkRow> parse_optical_text(std::istream& is, std::string const& source)
{
    double scale = constants::ev_to_rad_per_s;
    std::vector<NkRow> rows;
    auto on_comment = [&](std::string_view text, int line) {
        if (text.substr(0, 6) != "units:")
        {
            return;
        }
        auto const unit = trim(text.substr(6));
        if (!rows.empty())
        {
            throw FormatError(source + ":" + std::to_string(line)
                              + ": units directive must precede the data");
        }
        if (unit == "eV")
        {
            scale = constants::ev_to_rad_per_s;
        }
        else if (unit == "rad_s")
        {
            scale = 1.0;
        }
        else
        {
            throw FormatError(source + ":" + std::to_string(line)
                              + ": unknown unit '" + std::string(unit)
                              + "' (expected eV or rad_s)");
        }
    };
    auto on_data = [&](std::string_view text, int line) {
        auto const fields = split_fields(text);
        if (fields.size() != 3)
        {
            throw FormatError(source + ":" + std::to_string(line)
                              + ": expected 'omega_or_energy, n, k'");
        }
        NkRow row{scale * parse_number(fields[0], source, line),
                  parse_number(fields[1], source, line),
                  parse_number(fields[2], source, line)};
        if (row.n < 0.0 || row.k < 0.0)
        {
            throw FormatError(source + ":" + std::to_string(line)
                              + ": n and k must be non-negative");
        }
        if (!rows.empty() && !(row.omega > rows.back().omega))
        {
            throw FormatError(source + ":" + std::to_string(line)
                              + ": frequencies must be strictly increasing");
        }
        rows.push_back(row);
    };
    for_each_line(is, on_data, on_comment);
    if (rows.empty())
    {
        throw FormatError(source + ": no optical data rows");
    }
    return rows;
}

OpticalTable
read_optical_file(std::filesystem::path const& path, DrudeParams const& extension)
{
    auto is = open_input(path);
    auto const rows = parse_optical_text(is, path.string());
    return table_from_nk(rows, extension);
}

//---------------------------------------------------------------------------//
double reflectance_infrared(InfraredParams const& p, double omega, double kappa)
{
    p.validate();
    if (!(omega > 0.0) || !(omega < p.omega_p / 3.0))
    {
        throw RangeError("reflectance_infrared: omega = " + std::to_string(omega)
                         + " rad/s is outside the infrared-optics regime "
                           "(0, omega_p / 3)");
    }
    double const x = omega / p.omega_p;
    return kappa * (p.c1 + p.c2 * x * x);
}

double grain_adjusted_c1(double c1, double reflectance_deficit_delta)
{
    if (c1 < 0.0 || reflectance_deficit_delta < 0.0)
    {
        throw DomainError("grain_adjusted_c1: inputs must be non-negative");
    }
    return c1 + reflectance_deficit_delta / reflectance_to_c1_divisor;
}

//---------------------------------------------------------------------------//
// PermittivityModel
//---------------------------------------------------------------------------//
/*!
 * Tabulated model with eps(i xi) cached as a cubic spline of ln(eps - 1)
 * against ln(xi). Outside the grid the spline continues linearly, which
 * matches the 1/xi (Drude) and 1/xi^2 (tail) asymptotics.
 */
struct PermittivityModel::Tabulated
{
    static constexpr double xi_min = 1e6;
    static constexpr double xi_max = 1e22;
    static constexpr int points_per_decade = 32;

    OpticalTable table;
    CubicSpline log_eps_minus_one;

    explicit Tabulated(OpticalTable t) : table(std::move(t))
    {
        int const decades = static_cast<int>(
            std::lround(std::log10(xi_max / xi_min)));
        int const n = decades * points_per_decade + 1;
        std::vector<double> lx(n);
        std::vector<double> ly(n);
        for (int i = 0; i < n; ++i)
        {
            double const xi
                = xi_min * std::pow(10.0, double(i) / points_per_decade);
            lx[i] = std::log(xi);
            ly[i] = std::log(kk_eps_imaginary(table, xi) - 1.0);
        }
        log_eps_minus_one = CubicSpline(std::move(lx), std::move(ly));
    }

    double operator()(double xi) const
    {
        return 1.0 + std::exp(log_eps_minus_one(std::log(xi)));
    }
};

PermittivityModel PermittivityModel::drude(DrudeParams const& p)
{
    p.validate();
    return PermittivityModel(Drude{p});
}

PermittivityModel PermittivityModel::plasma(double omega_p)
{
    if (!(omega_p > 0.0))
    {
        throw DomainError("plasma frequency must be positive");
    }
    return PermittivityModel(Plasma{omega_p});
}

PermittivityModel PermittivityModel::infrared(InfraredParams const& p)
{
    p.validate();
    return PermittivityModel(Infrared{p});
}

PermittivityModel PermittivityModel::tabulated(OpticalTable table)
{
    return PermittivityModel(
        std::make_shared<Tabulated const>(std::move(table)));
}

double PermittivityModel::operator()(double xi) const
{
    struct Visitor
    {
        double xi;
        double operator()(Drude const& m) const
        {
            return drude_eps_imaginary(xi, m.params);
        }
        double operator()(Plasma const& m) const
        {
            return plasma_eps_imaginary(xi, m.omega_p);
        }
        double operator()(Infrared const& m) const
        {
            auto const& p = m.params;
            if (xi >= infrared_switch(p))
            {
                return infrared_eps_imaginary(xi, p);
            }
            require_positive_xi(xi, "infrared model");
            return 1.0 + p.omega_p * p.omega_p / (xi * (xi + p.c1 * p.omega_p))
                   + p.c2 * p.omega_p / xi;
        }
        double operator()(std::shared_ptr<Tabulated const> const& m) const
        {
            require_positive_xi(xi, "tabulated model");
            return (*m)(xi);
        }
    };
    return std::visit(Visitor{xi}, model_);
}

std::string_view PermittivityModel::name() const
{
    static constexpr std::string_view names[]
        = {"drude", "plasma", "infrared", "tabulated"};
    return names[model_.index()];
}

ZeroFrequencyLimit PermittivityModel::zero_frequency() const
{
    return std::holds_alternative<Plasma>(model_)
               ? ZeroFrequencyLimit::plasma_like
               : ZeroFrequencyLimit::drude_like;
}

double PermittivityModel::omega_p() const
{
    struct Visitor
    {
        double operator()(Drude const& m) const { return m.params.omega_p; }
        double operator()(Plasma const& m) const { return m.omega_p; }
        double operator()(Infrared const& m) const { return m.params.omega_p; }
        double operator()(std::shared_ptr<Tabulated const> const& m) const
        {
            return m->table.low_freq_extension().omega_p;
        }
    };
    return std::visit(Visitor{}, model_);
}

ModelKind parse_model_kind(std::string_view name)
{
    if (name == "drude")
        return ModelKind::drude;
    if (name == "plasma")
        return ModelKind::plasma;
    if (name == "infrared")
        return ModelKind::infrared;
    if (name == "tabulated")
        return ModelKind::tabulated;
    throw DomainError("unknown permittivity model '" + std::string(name)
                      + "' (expected drude, plasma, infrared or tabulated)");
}

}  // namespace casimir
