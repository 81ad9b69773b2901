#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lifshitz.hpp"

namespace casimir
{
//---------------------------------------------------------------------------//
/*!
 * Repeated force scans on a shared separation grid.
 *
 * Separations are in nm and forces are magnitudes of the attractive force
 * in pN. Scan ids are 1-based in file order; excluded scans are ignored by
 * every statistic.
 */
class ScanSet
{
  public:
    ScanSet(std::vector<double> separations,
            std::vector<std::vector<double>> scans,
            std::set<int> excluded = {});

    std::vector<double> const& separations() const { return z_; }
    std::vector<std::vector<double>> const& scans() const { return scans_; }
    std::set<int> const& excluded() const { return excluded_; }

    //! Copy with additional scans excluded
    ScanSet excluding(std::set<int> const& ids) const;

    //! Number of scans entering the statistics
    int n() const { return static_cast<int>(active_.size()); }
    std::vector<std::size_t> const& active() const { return active_; }

  private:
    std::vector<double> z_;
    std::vector<std::vector<double>> scans_;
    std::set<int> excluded_;
    std::vector<std::size_t> active_;
};

struct VarianceOfMean
{
    std::vector<double> s_mean;  //!< standard deviation of the mean per point
    double max = 0;
};

struct ConfidenceResult
{
    double s_mean;
    double t_value;
    double random_error;
    double systematic_error;
    double total_error;
    double beta;
};

struct FitResult
{
    double z0_best;                //!< nm
    double sigma_best;             //!< pN
    double equivalence_halfwidth;  //!< nm
    //! (upper edge of region in nm, sigma in pN) at the best offset
    std::vector<std::pair<double, double>> sigma_by_region;
    //! sigma at every probed offset
    std::vector<std::pair<double, double>> profile;
};

struct BudgetItem
{
    std::string label;
    double value;  //!< relative
};

//! Relative contributions combined by a linear sum
class ErrorBudget
{
  public:
    void add(std::string label, double value);
    void remove(std::string const& label);

    std::vector<BudgetItem> const& items() const { return items_; }
    double total() const;

  private:
    std::vector<BudgetItem> items_;
};

//---------------------------------------------------------------------------//
// Experimental errors
//---------------------------------------------------------------------------//
std::vector<double> mean_force(ScanSet const& s);
VarianceOfMean variance_of_mean(ScanSet const& s);

//! Two-sided Student quantile t_p(n - 1) with p = (1 + beta) / 2
double student_threshold(double beta, int n);

double random_error(double s_mean_max, double beta, int n);
double systematic_error(std::span<double const> contributions);
double total_error(double random, double systematic);
std::pair<double, double> confidence_interval(double mean, double total_error);
double relative_error(double total_error, double mean_at_z);

//! Random, systematic and total error using the largest s_mean of the set
ConfidenceResult confidence(ScanSet const& s,
                            double beta,
                            std::span<double const> systematic);

//---------------------------------------------------------------------------//
// Theory versus experiment
//---------------------------------------------------------------------------//
//! Closed separation interval, nm
struct Region
{
    double lo;
    double hi;
};

double rms_deviation(std::span<double const> theory,
                     std::span<double const> experiment);

//! Theory magnitude |F(z)| in pN from a curve evaluated at z_i (nm)
double rms_deviation(ForceCurve const& theory,
                     std::span<double const> separations_nm,
                     std::span<double const> exp_mean,
                     Region region);

//! Theory as a function of separation (nm) returning |F| in pN
using TheoryFunction = std::function<double(double)>;

/*!
 * Grid search over separation offsets d in [-halfwidth, halfwidth].
 *
 * Regions are given by their upper edges in nm; each covers the grid from
 * its first point up to that edge.
 */
FitResult fit_z0(ScanSet const& exp,
                 TheoryFunction const& theory,
                 double z0_nominal,
                 double halfwidth,
                 double step,
                 std::vector<double> const& region_edges = {});

//! delta1 = delta_R / R + 3 delta_z / z plus extra contributions
ErrorBudget theory_error_budget(double z_nm,
                                double delta_R,
                                double R,
                                double delta_z_nm,
                                std::vector<BudgetItem> const& extra = {});

//---------------------------------------------------------------------------//
// Files
//---------------------------------------------------------------------------//
ScanSet parse_scan_text(std::istream& is, std::string const& source = "<stream>");
ScanSet read_scan_file(std::filesystem::path const& path);

namespace detail
{
//! Regularized incomplete beta function I_x(a, b)
double incomplete_beta(double a, double b, double x);
}  // namespace detail

}  // namespace casimir
