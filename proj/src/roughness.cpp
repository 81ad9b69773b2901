#include "casimir/roughness.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <numbers>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/numeric.hpp"
#include "casimir/text_io.hpp"

namespace casimir
{
namespace
{
constexpr double nm = 1e-9;

double fraction_sum(std::vector<double> const& v)
{
    CompensatedSum s;
    for (double x : v)
    {
        s += x;
    }
    return s.value();
}

void check_levels(std::vector<double> const& h, std::vector<double> const& v)
{
    if (h.empty() || h.size() != v.size())
    {
        throw DomainError("roughness histogram needs matching, non-empty "
                          "height and fraction lists");
    }
    for (std::size_t i = 0; i < h.size(); ++i)
    {
        if (!(v[i] >= 0.0))
        {
            throw DomainError("roughness histogram: negative fraction at "
                              "height "
                              + std::to_string(h[i]) + " nm");
        }
        if (i > 0 && !(h[i] > h[i - 1]))
        {
            throw DomainError(
                "roughness histogram: heights must be strictly increasing");
        }
    }
}

//! Read two-column numeric data
void read_pairs(std::istream& is,
                std::string const& source,
                std::vector<double>& a,
                std::vector<double>& b)
{
    for_each_line(is, [&](std::string_view text, int line) {
        auto const f = split_fields(text);
        if (f.size() != 2)
        {
            throw FormatError(source + ":" + std::to_string(line)
                              + ": expected two comma-separated values");
        }
        a.push_back(parse_number(f[0], source, line));
        b.push_back(parse_number(f[1], source, line));
    });
    if (a.empty())
    {
        throw FormatError(source + ": no data rows");
    }
}
}  // namespace

//---------------------------------------------------------------------------//
RoughnessHistogram::RoughnessHistogram(std::vector<double> heights,
                                       std::vector<double> fractions)
    : h_(std::move(heights)), v_(std::move(fractions))
{
    check_levels(h_, v_);
    double const sum = fraction_sum(v_);
    if (std::abs(sum - 1.0) > 1e-6)
    {
        throw DomainError("roughness histogram fractions sum to "
                          + std::to_string(sum) + ", expected 1");
    }
}

RoughnessHistogram RoughnessHistogram::normalized(std::vector<double> heights,
                                                  std::vector<double> fractions,
                                                  double tol)
{
    check_levels(heights, fractions);
    double const sum = fraction_sum(fractions);
    if (!(std::abs(sum - 1.0) <= tol * (1 + 1e-9)))
    {
        std::ostringstream msg;
        msg << "roughness histogram fractions sum to " << sum
            << ", more than " << tol << " away from 1";
        throw FormatError(msg.str());
    }
    for (double& v : fractions)
    {
        v /= sum;
    }
    return RoughnessHistogram(std::move(heights), std::move(fractions));
}

//---------------------------------------------------------------------------//
HeightProfile::HeightProfile(std::vector<double> positions,
                             std::vector<double> heights)
    : x_(std::move(positions)), h_(std::move(heights))
{
    if (x_.size() != h_.size() || x_.size() < 16)
    {
        throw DomainError("height profile needs at least 16 samples");
    }
    double const dx = x_[1] - x_[0];
    if (!(dx > 0.0))
    {
        throw DomainError("height profile positions must increase");
    }
    for (std::size_t i = 1; i < x_.size(); ++i)
    {
        double const expected = x_[0] + dx * static_cast<double>(i);
        if (std::abs(x_[i] - expected) > 1e-9 * std::abs(dx) * x_.size())
        {
            throw DomainError("height profile spacing is not uniform at sample "
                              + std::to_string(i));
        }
    }
}

//---------------------------------------------------------------------------//
DiffractionLookup::DiffractionLookup(std::vector<double> z_over_lcorr,
                                     std::vector<double> c_corr)
    : x_(std::move(z_over_lcorr)), c_(std::move(c_corr))
{
    if (x_.size() < 2 || x_.size() != c_.size())
    {
        throw DomainError("diffraction lookup needs at least two points");
    }
    for (std::size_t i = 1; i < x_.size(); ++i)
    {
        if (!(x_[i] > x_[i - 1]) || !(c_[i] >= c_[i - 1]))
        {
            throw DomainError("diffraction lookup must increase in both "
                              "columns");
        }
    }
}

double DiffractionLookup::operator()(double x) const
{
    if (!(x >= x_.front() && x <= x_.back()))
    {
        std::ostringstream msg;
        msg << "z / l_corr = " << x << " is outside the diffraction lookup "
            << "range [" << x_.front() << ", " << x_.back() << "]";
        throw RangeError(msg.str());
    }
    return linear_interpolate(x_, c_, x);
}

//---------------------------------------------------------------------------//
double zero_level(RoughnessHistogram const& h)
{
    CompensatedSum s;
    for (std::size_t i = 0; i < h.size(); ++i)
    {
        s += h.heights()[i] * h.fractions()[i];
    }
    return s.value();
}

double amplitude(RoughnessHistogram const& h)
{
    return h.heights().back() - zero_level(h);
}

RoughnessStats stochastic_stats(RoughnessHistogram const& h)
{
    double const H0 = zero_level(h);
    CompensatedSum var;
    for (std::size_t i = 0; i < h.size(); ++i)
    {
        double const d = H0 - h.heights()[i];
        var += d * d * h.fractions()[i];
    }
    double const delta = std::sqrt(std::max(var.value(), 0.0));
    return {H0, h.heights().back() - H0, delta, std::numbers::sqrt2 * delta};
}

//---------------------------------------------------------------------------//
double force_rough_averaged(double z,
                            RoughnessHistogram const& plate,
                            RoughnessHistogram const& sphere,
                            ForceFunction const& F)
{
    double const shift = (zero_level(plate) + zero_level(sphere)) * nm;
    auto const& hp = plate.heights();
    auto const& hs = sphere.heights();
    for (std::size_t i = 0; i < hp.size(); ++i)
    {
        for (std::size_t j = 0; j < hs.size(); ++j)
        {
            double const s = z + shift - (hp[i] + hs[j]) * nm;
            if (!(s > 0.0))
            {
                std::ostringstream msg;
                msg << "surfaces touch at z = " << z / nm
                    << " nm: plate level " << i << " (" << hp[i]
                    << " nm) and sphere level " << j << " (" << hs[j]
                    << " nm) give separation " << s / nm << " nm";
                throw ContactError(msg.str());
            }
        }
    }
    CompensatedSum sum;
    for (std::size_t i = 0; i < hp.size(); ++i)
    {
        for (std::size_t j = 0; j < hs.size(); ++j)
        {
            double const w = plate.fractions()[i] * sphere.fractions()[j];
            if (w == 0.0)
            {
                continue;
            }
            sum += w * F(z + shift - (hp[i] + hs[j]) * nm);
        }
    }
    return sum.value();
}

//---------------------------------------------------------------------------//
double roughness_factor(double z, double A_st)
{
    if (!(z > 0.0) || !(A_st >= 0.0) || !(A_st < z))
    {
        throw DomainError("roughness_factor needs 0 <= A_st < z");
    }
    double const r2 = (A_st / z) * (A_st / z);
    return 1.0 + 6.0 * r2 + 45.0 * r2 * r2;
}

double force_rough_multiplicative(double z, double A_st, double F_c)
{
    return F_c * roughness_factor(z, A_st);
}

double diffraction_factor(double z,
                          double A_st,
                          double l_corr,
                          DiffractionLookup const& lut)
{
    if (!(z > 0.0) || !(l_corr > 0.0) || !(A_st >= 0.0) || !(A_st < z))
    {
        throw DomainError("diffraction_factor needs z, l_corr > 0 and "
                          "0 <= A_st < z");
    }
    double const r = A_st / z;
    return 1.0 + 6.0 * lut(z / l_corr) * r * r;
}

//---------------------------------------------------------------------------//
double dominant_period(HeightProfile const& p)
{
    auto const& h = p.heights();
    std::size_t const n = h.size();
    CompensatedSum mean_sum;
    for (double x : h)
    {
        mean_sum += x;
    }
    double const mean = mean_sum.value() / static_cast<double>(n);

    double best = 0.0;
    std::size_t best_k = 0;
    for (std::size_t k = 1; k <= n / 2; ++k)
    {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j)
        {
            double const phase = -2.0 * std::numbers::pi
                                 * static_cast<double>((k * j) % n)
                                 / static_cast<double>(n);
            acc += (h[j] - mean) * std::polar(1.0, phase);
        }
        double const mag = std::abs(acc);
        if (mag > best)
        {
            best = mag;
            best_k = k;
        }
    }
    double scale = 0.0;
    for (double x : h)
    {
        scale = std::max(scale, std::abs(x - mean));
    }
    if (best_k == 0 || best <= 1e-12 * scale * static_cast<double>(n)
        || scale == 0.0)
    {
        throw DomainError("degenerate height profile: no nonzero Fourier "
                          "component");
    }
    return p.spacing() * static_cast<double>(n) / static_cast<double>(best_k);
}

//---------------------------------------------------------------------------//
HistogramRead parse_histogram_text(std::istream& is, std::string const& source)
{
    std::vector<double> h;
    std::vector<double> v;
    read_pairs(is, source, h, v);
    double const raw = fraction_sum(v);
    try
    {
        auto hist = RoughnessHistogram::normalized(h, v);
        return {std::move(hist), raw, std::abs(raw - 1.0) > 1e-12};
    }
    catch (Error const& e)
    {
        throw FormatError(source + ": " + e.what());
    }
}

HistogramRead read_histogram_file(std::filesystem::path const& path)
{
    auto is = open_input(path);
    return parse_histogram_text(is, path.string());
}

HeightProfile read_profile_file(std::filesystem::path const& path)
{
    auto is = open_input(path);
    std::vector<double> x;
    std::vector<double> h;
    read_pairs(is, path.string(), x, h);
    try
    {
        return HeightProfile(std::move(x), std::move(h));
    }
    catch (DomainError const& e)
    {
        throw FormatError(path.string() + ": " + e.what());
    }
}

DiffractionLookup read_diffraction_file(std::filesystem::path const& path)
{
    auto is = open_input(path);
    std::vector<double> x;
    std::vector<double> c;
    read_pairs(is, path.string(), x, c);
    try
    {
        return DiffractionLookup(std::move(x), std::move(c));
    }
    catch (DomainError const& e)
    {
        throw FormatError(path.string() + ": " + e.what());
    }
}

}  // namespace casimir
