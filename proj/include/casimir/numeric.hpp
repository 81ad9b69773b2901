#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace casimir
{
//---------------------------------------------------------------------------//
//! Neumaier compensated summation
class CompensatedSum
{
  public:
    void add(double x)
    {
        double const t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
        {
            comp_ += (sum_ - t) + x;
        }
        else
        {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(double x)
    {
        this->add(x);
        return *this;
    }

    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

//---------------------------------------------------------------------------//
/*!
 * Natural cubic spline through strictly increasing abscissae.
 *
 * Outside the knot range the spline is continued linearly with the end
 * slopes.
 */
class CubicSpline
{
  public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    bool empty() const { return x_.empty(); }

  private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> m_;  // second derivatives at the knots

    double end_slope(bool front) const;
};

//---------------------------------------------------------------------------//
//! Piecewise-linear interpolation; x must lie within [xs.front(), xs.back()]
double linear_interpolate(std::span<double const> xs,
                          std::span<double const> ys,
                          double x);

}  // namespace casimir
