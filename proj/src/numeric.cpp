#include "casimir/numeric.hpp"

#include <algorithm>
#include <cassert>

#include "casimir/errors.hpp"

namespace casimir
{
//---------------------------------------------------------------------------//
CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y))
{
    std::size_t const n = x_.size();
    if (n < 2 || y_.size() != n)
    {
        throw DomainError("cubic spline needs at least two matching knots");
    }
    for (std::size_t i = 1; i < n; ++i)
    {
        if (!(x_[i] > x_[i - 1]))
        {
            throw DomainError("cubic spline knots must be strictly increasing");
        }
    }
    m_.assign(n, 0.0);
    if (n == 2)
    {
        return;
    }
    // Tridiagonal solve for natural end conditions (m_0 = m_{n-1} = 0)
    std::vector<double> diag(n, 0.0);
    std::vector<double> rhs(n, 0.0);
    std::vector<double> upper(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i)
    {
        double const h0 = x_[i] - x_[i - 1];
        double const h1 = x_[i + 1] - x_[i];
        diag[i] = 2.0 * (h0 + h1);
        upper[i] = h1;
        rhs[i] = 6.0
                 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    // Forward elimination over interior rows
    for (std::size_t i = 2; i + 1 < n; ++i)
    {
        double const lower = x_[i] - x_[i - 1];
        double const w = lower / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i)
    {
        m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
    }
}

//---------------------------------------------------------------------------//
double CubicSpline::end_slope(bool front) const
{
    if (front)
    {
        double const h = x_[1] - x_[0];
        return (y_[1] - y_[0]) / h - h * (2.0 * m_[0] + m_[1]) / 6.0;
    }
    std::size_t const n = x_.size();
    double const h = x_[n - 1] - x_[n - 2];
    return (y_[n - 1] - y_[n - 2]) / h + h * (m_[n - 2] + 2.0 * m_[n - 1]) / 6.0;
}

//---------------------------------------------------------------------------//
double CubicSpline::operator()(double x) const
{
    assert(!x_.empty());
    if (x <= x_.front())
    {
        return y_.front() + end_slope(true) * (x - x_.front());
    }
    if (x >= x_.back())
    {
        return y_.back() + end_slope(false) * (x - x_.back());
    }
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t const i = static_cast<std::size_t>(it - x_.begin()) - 1;
    double const h = x_[i + 1] - x_[i];
    double const a = (x_[i + 1] - x) / h;
    double const b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1]
           + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h
                 / 6.0;
}

//---------------------------------------------------------------------------//
double linear_interpolate(std::span<double const> xs,
                          std::span<double const> ys,
                          double x)
{
    assert(xs.size() == ys.size() && xs.size() >= 2);
    if (x <= xs.front())
    {
        return ys.front();
    }
    if (x >= xs.back())
    {
        return ys.back();
    }
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t const i = static_cast<std::size_t>(it - xs.begin()) - 1;
    double const t = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return ys[i] + t * (ys[i + 1] - ys[i]);
}

}  // namespace casimir
