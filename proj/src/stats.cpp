#include "casimir/stats.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/numeric.hpp"
#include "casimir/text_io.hpp"

namespace casimir
{
namespace
{
//! Continued fraction for I_x(a, b), modified Lentz
double beta_continued_fraction(double a, double b, double x)
{
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    double const qab = a + b;
    double const qap = a + 1.0;
    double const qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny)
        d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 100000; ++m)
    {
        double const m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny)
            d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny)
            d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        double const del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps)
        {
            return h;
        }
    }
    throw NumericalError("incomplete beta continued fraction did not converge",
                         h,
                         std::numeric_limits<double>::infinity());
}

double log_beta(double a, double b)
{
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

void check_beta(double beta)
{
    if (!(beta > 0.0 && beta < 1.0))
    {
        throw DomainError("confidence level must lie in (0, 1), got "
                          + std::to_string(beta));
    }
}

double theory_pN(ForceCurve const& curve, double z_nm)
{
    return std::abs(curve(z_nm * 1e-9)) / 1e-12;
}
}  // namespace

//---------------------------------------------------------------------------//
double detail::incomplete_beta(double a, double b, double x)
{
    if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0))
    {
        throw DomainError("incomplete_beta needs a, b > 0 and x in [0, 1]");
    }
    if (x == 0.0 || x == 1.0)
    {
        return x;
    }
    double const front = std::exp(a * std::log(x) + b * std::log1p(-x)
                                  - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0))
    {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

//---------------------------------------------------------------------------//
// ScanSet
//---------------------------------------------------------------------------//
ScanSet::ScanSet(std::vector<double> separations,
                 std::vector<std::vector<double>> scans,
                 std::set<int> excluded)
    : z_(std::move(separations))
    , scans_(std::move(scans))
    , excluded_(std::move(excluded))
{
    if (z_.empty())
    {
        throw DomainError("scan set has no separations");
    }
    for (std::size_t i = 1; i < z_.size(); ++i)
    {
        if (!(z_[i] > z_[i - 1]))
        {
            throw DomainError("scan separations must be strictly increasing");
        }
    }
    for (std::size_t k = 0; k < scans_.size(); ++k)
    {
        if (scans_[k].size() != z_.size())
        {
            throw DomainError("scan " + std::to_string(k + 1)
                              + " does not match the separation grid");
        }
        if (!excluded_.count(static_cast<int>(k + 1)))
        {
            active_.push_back(k);
        }
    }
    for (int id : excluded_)
    {
        if (id < 1 || id > static_cast<int>(scans_.size()))
        {
            throw DomainError("excluded scan id " + std::to_string(id)
                              + " does not exist");
        }
    }
    if (active_.empty())
    {
        throw DomainError("scan set is empty after exclusions");
    }
}

ScanSet ScanSet::excluding(std::set<int> const& ids) const
{
    auto all = excluded_;
    all.insert(ids.begin(), ids.end());
    return ScanSet(z_, scans_, std::move(all));
}

//---------------------------------------------------------------------------//
void ErrorBudget::add(std::string label, double value)
{
    if (!(value >= 0.0))
    {
        throw DomainError("error budget contribution '" + label
                          + "' must be non-negative");
    }
    items_.push_back({std::move(label), value});
}

void ErrorBudget::remove(std::string const& label)
{
    std::erase_if(items_, [&](auto const& i) { return i.label == label; });
}

double ErrorBudget::total() const
{
    CompensatedSum s;
    for (auto const& i : items_)
    {
        s += i.value;
    }
    return s.value();
}

//---------------------------------------------------------------------------//
std::vector<double> mean_force(ScanSet const& s)
{
    std::vector<double> mean(s.separations().size());
    for (std::size_t i = 0; i < mean.size(); ++i)
    {
        CompensatedSum sum;
        for (auto k : s.active())
        {
            sum += s.scans()[k][i];
        }
        mean[i] = sum.value() / s.n();
    }
    return mean;
}

VarianceOfMean variance_of_mean(ScanSet const& s)
{
    int const n = s.n();
    if (n < 2)
    {
        throw DomainError("variance of the mean needs at least two scans");
    }
    auto const mean = mean_force(s);
    VarianceOfMean result;
    result.s_mean.resize(mean.size());
    for (std::size_t i = 0; i < mean.size(); ++i)
    {
        CompensatedSum sq;
        for (auto k : s.active())
        {
            double const d = s.scans()[k][i] - mean[i];
            sq += d * d;
        }
        result.s_mean[i] = std::sqrt(sq.value() / (double(n) * (n - 1)));
        result.max = std::max(result.max, result.s_mean[i]);
    }
    return result;
}

//---------------------------------------------------------------------------//
double student_threshold(double beta, int n)
{
    check_beta(beta);
    if (n < 2)
    {
        throw DomainError("student_threshold needs n >= 2");
    }
    // With w = t^2 / (f + t^2), P(|T| < t) = I_w(1/2, f/2)
    double const a = 0.5;
    double const b = 0.5 * (n - 1);
    double lo = 0.0;
    double hi = 1.0;
    double w = 0.5;
    for (int it = 0; it < 200; ++it)
    {
        double const g = detail::incomplete_beta(a, b, w) - beta;
        if (g > 0.0)
            hi = w;
        else
            lo = w;
        double const dens = std::exp((a - 1.0) * std::log(w)
                                     + (b - 1.0) * std::log1p(-w)
                                     - log_beta(a, b));
        double next = w - g / dens;
        if (!(next > lo && next < hi))
        {
            next = 0.5 * (lo + hi);
        }
        if (std::abs(next - w) <= 1e-15 * w)
        {
            w = next;
            break;
        }
        w = next;
    }
    double const f = n - 1;
    return std::sqrt(f * w / (1.0 - w));
}

double random_error(double s_mean_max, double beta, int n)
{
    if (!(s_mean_max >= 0.0))
    {
        throw DomainError("random_error needs s_mean >= 0");
    }
    return s_mean_max * student_threshold(beta, n);
}

double systematic_error(std::span<double const> contributions)
{
    CompensatedSum s;
    for (double c : contributions)
    {
        if (!(c >= 0.0))
        {
            throw DomainError("systematic error contributions must be "
                              "non-negative");
        }
        s += c;
    }
    return s.value();
}

double total_error(double random, double systematic)
{
    if (!(random >= 0.0) || !(systematic >= 0.0))
    {
        throw DomainError("total_error needs non-negative components");
    }
    return random + systematic;
}

std::pair<double, double> confidence_interval(double mean, double total_error)
{
    if (!(total_error >= 0.0))
    {
        throw DomainError("confidence_interval needs a non-negative error");
    }
    return {mean - total_error, mean + total_error};
}

double relative_error(double total_error, double mean_at_z)
{
    if (mean_at_z == 0.0)
    {
        throw DomainError("relative_error: mean force is zero");
    }
    return total_error / std::abs(mean_at_z);
}

ConfidenceResult
confidence(ScanSet const& s, double beta, std::span<double const> systematic)
{
    ConfidenceResult r;
    r.beta = beta;
    r.s_mean = variance_of_mean(s).max;
    r.t_value = student_threshold(beta, s.n());
    r.random_error = r.s_mean * r.t_value;
    r.systematic_error = systematic_error(systematic);
    r.total_error = total_error(r.random_error, r.systematic_error);
    return r;
}

//---------------------------------------------------------------------------//
double rms_deviation(std::span<double const> theory,
                     std::span<double const> experiment)
{
    if (theory.size() != experiment.size())
    {
        throw DomainError("rms_deviation: theory and experiment grids differ");
    }
    if (theory.empty())
    {
        throw DomainError("rms_deviation: empty region");
    }
    CompensatedSum sq;
    for (std::size_t i = 0; i < theory.size(); ++i)
    {
        double const d = theory[i] - experiment[i];
        sq += d * d;
    }
    return std::sqrt(sq.value() / static_cast<double>(theory.size()));
}

double rms_deviation(ForceCurve const& theory,
                     std::span<double const> separations_nm,
                     std::span<double const> exp_mean,
                     Region region)
{
    if (separations_nm.size() != exp_mean.size())
    {
        throw DomainError("rms_deviation: separations and means differ in "
                          "length");
    }
    std::vector<double> th;
    std::vector<double> ex;
    for (std::size_t i = 0; i < separations_nm.size(); ++i)
    {
        double const z = separations_nm[i];
        if (z >= region.lo && z <= region.hi)
        {
            th.push_back(theory_pN(theory, z));
            ex.push_back(exp_mean[i]);
        }
    }
    return rms_deviation(th, ex);
}

//---------------------------------------------------------------------------//
FitResult fit_z0(ScanSet const& exp,
                 TheoryFunction const& theory,
                 double z0_nominal,
                 double halfwidth,
                 double step,
                 std::vector<double> const& region_edges)
{
    if (!(halfwidth > 0.0) || !(step > 0.0))
    {
        throw DomainError("fit_z0 needs halfwidth > 0 and step > 0");
    }
    auto const& z = exp.separations();
    auto const mean = mean_force(exp);
    int const nsteps = static_cast<int>(std::floor(halfwidth / step + 1e-9));

    auto residuals_at = [&](double d, std::size_t count) {
        std::vector<double> th(count);
        for (std::size_t i = 0; i < count; ++i)
        {
            th[i] = theory(z[i] + z0_nominal + d);
        }
        return rms_deviation(th, std::span(mean).first(count));
    };

    FitResult result;
    result.sigma_best = std::numeric_limits<double>::infinity();
    double d_best = 0.0;
    for (int k = -nsteps; k <= nsteps; ++k)
    {
        double const d = k * step;
        double const sigma = residuals_at(d, z.size());
        result.profile.emplace_back(z0_nominal + d, sigma);
        // Ties resolve toward the smallest |d| for symmetric profiles
        if (sigma < result.sigma_best
            || (sigma == result.sigma_best && std::abs(d) < std::abs(d_best)))
        {
            result.sigma_best = sigma;
            d_best = d;
        }
    }
    result.z0_best = z0_nominal + d_best;

    double const limit = 1.1 * result.sigma_best;
    double lo = result.z0_best;
    double hi = result.z0_best;
    for (auto const& [z0, sigma] : result.profile)
    {
        if (sigma <= limit)
        {
            lo = std::min(lo, z0);
            hi = std::max(hi, z0);
        }
    }
    result.equivalence_halfwidth = 0.5 * (hi - lo);

    for (double edge : region_edges)
    {
        auto const count = static_cast<std::size_t>(
            std::upper_bound(z.begin(), z.end(), edge) - z.begin());
        if (count == 0)
        {
            throw DomainError("fit_z0: region up to " + std::to_string(edge)
                              + " nm contains no separations");
        }
        result.sigma_by_region.emplace_back(edge, residuals_at(d_best, count));
    }
    return result;
}

//---------------------------------------------------------------------------//
ErrorBudget theory_error_budget(double z_nm,
                                double delta_R,
                                double R,
                                double delta_z_nm,
                                std::vector<BudgetItem> const& extra)
{
    if (!(z_nm > 0.0) || !(R > 0.0) || !(delta_R >= 0.0)
        || !(delta_z_nm >= 0.0))
    {
        throw DomainError("theory_error_budget needs z, R > 0 and "
                          "non-negative uncertainties");
    }
    ErrorBudget b;
    b.add("radius and separation", delta_R / R + 3.0 * delta_z_nm / z_nm);
    for (auto const& item : extra)
    {
        b.add(item.label, item.value);
    }
    return b;
}

//---------------------------------------------------------------------------//
ScanSet parse_scan_text(std::istream& is, std::string const& source)
{
    std::size_t columns = 0;
    std::vector<double> z;
    std::vector<std::vector<double>> scans;
    for_each_line(is, [&](std::string_view text, int line) {
        auto const f = split_fields(text);
        if (columns == 0)
        {
            if (f.size() < 2)
            {
                throw FormatError(source + ":" + std::to_string(line)
                                  + ": header must list z_nm and at least "
                                    "one scan");
            }
            columns = f.size();
            scans.resize(columns - 1);
            return;
        }
        if (f.size() != columns)
        {
            std::ostringstream msg;
            msg << source << ":" << line << ": expected " << columns
                << " fields, found " << f.size();
            throw FormatError(msg.str());
        }
        z.push_back(parse_number(f[0], source, line));
        if (z.size() > 1 && !(z.back() > z[z.size() - 2]))
        {
            throw FormatError(source + ":" + std::to_string(line)
                              + ": separations must be strictly increasing");
        }
        for (std::size_t k = 1; k < columns; ++k)
        {
            scans[k - 1].push_back(parse_number(f[k], source, line));
        }
    });
    if (z.empty())
    {
        throw FormatError(source + ": no scan data rows");
    }
    return ScanSet(std::move(z), std::move(scans));
}

ScanSet read_scan_file(std::filesystem::path const& path)
{
    auto is = open_input(path);
    return parse_scan_text(is, path.string());
}

}  // namespace casimir
