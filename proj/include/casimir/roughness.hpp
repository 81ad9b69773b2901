#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace casimir
{
//---------------------------------------------------------------------------//
/*!
 * Height levels with the fraction of surface area at each level.
 *
 * Heights are in nm. Fractions must sum to 1 within 1e-6; use
 * \c normalized to accept slightly off data.
 */
class RoughnessHistogram
{
  public:
    RoughnessHistogram(std::vector<double> heights, std::vector<double> fractions);

    //! Rescale fractions to unit sum if they are within \c tol of it
    static RoughnessHistogram normalized(std::vector<double> heights,
                                         std::vector<double> fractions,
                                         double tol = 1e-3);

    std::vector<double> const& heights() const { return h_; }
    std::vector<double> const& fractions() const { return v_; }
    std::size_t size() const { return h_.size(); }

  private:
    std::vector<double> h_;
    std::vector<double> v_;
};

struct RoughnessStats
{
    double H0;        //!< zero roughness level, nm
    double A;         //!< max height minus H0, nm
    double delta_st;  //!< standard deviation of the heights, nm
    double A_st;      //!< sqrt(2) delta_st, nm
};

//! Heights sampled at uniform spacing along a line, nm
class HeightProfile
{
  public:
    HeightProfile(std::vector<double> positions, std::vector<double> heights);

    std::vector<double> const& positions() const { return x_; }
    std::vector<double> const& heights() const { return h_; }
    double spacing() const { return x_[1] - x_[0]; }

  private:
    std::vector<double> x_;
    std::vector<double> h_;
};

//! Diffraction coefficient c_corr tabulated against z / l_corr
class DiffractionLookup
{
  public:
    DiffractionLookup(std::vector<double> z_over_lcorr, std::vector<double> c_corr);

    double operator()(double z_over_lcorr) const;
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

  private:
    std::vector<double> x_;
    std::vector<double> c_;
};

//---------------------------------------------------------------------------//
double zero_level(RoughnessHistogram const& h);
double amplitude(RoughnessHistogram const& h);
RoughnessStats stochastic_stats(RoughnessHistogram const& h);

using ForceFunction = std::function<double(double)>;

/*!
 * Force averaged over the separations z + 2 H0 - h_i - h_j between the
 * height levels of plate and sphere, weighted by v_i v_j. z in m.
 */
double force_rough_averaged(double z,
                            RoughnessHistogram const& plate,
                            RoughnessHistogram const& sphere,
                            ForceFunction const& F);

//! 1 + 6 (A/z)^2 + 45 (A/z)^4 for stochastic roughness; z and A_st in m
double roughness_factor(double z, double A_st);
double force_rough_multiplicative(double z, double A_st, double F_c);

//! 1 + 6 c_corr(z / l_corr) (A/z)^2; z, A_st, l_corr in m
double diffraction_factor(double z,
                          double A_st,
                          double l_corr,
                          DiffractionLookup const& lut);

//! Period (nm) of the strongest nonzero Fourier component
double dominant_period(HeightProfile const& p);

//---------------------------------------------------------------------------//
// Files
//---------------------------------------------------------------------------//
struct HistogramRead
{
    RoughnessHistogram histogram;
    double raw_sum;      //!< sum of the fractions as read
    bool renormalized;   //!< true if the fractions were rescaled
};

HistogramRead parse_histogram_text(std::istream& is,
                                   std::string const& source = "<stream>");
HistogramRead read_histogram_file(std::filesystem::path const& path);
HeightProfile read_profile_file(std::filesystem::path const& path);
DiffractionLookup read_diffraction_file(std::filesystem::path const& path);

}  // namespace casimir
