#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "errors.hpp"

namespace casimir
{
//---------------------------------------------------------------------------//
struct QuadOptions
{
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    int max_subdivisions = 2000;
};

struct QuadResult
{
    double value = 0.0;
    double error = 0.0;  //!< Estimated absolute error
    int evaluations = 0;
    bool converged = true;

    QuadResult& operator+=(QuadResult const& other)
    {
        value += other.value;
        error += other.error;
        evaluations += other.evaluations;
        converged = converged && other.converged;
        return *this;
    }
};

namespace detail
{
// Kronrod 15-point nodes on [0, 1] of the symmetric rule; index 7 is the
// centre. Odd indices are shared with the embedded 7-point Gauss rule.
inline constexpr std::array<double, 8> gk15_nodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> gk15_weights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> g7_weights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel
{
    double a;
    double b;
    double value;
    double error;

    bool operator<(Panel const& other) const { return error < other.error; }
};

//! Single Gauss-Kronrod 15 panel with the QUADPACK error heuristic
template<class F>
Panel gk15(F& f, double a, double b)
{
    double const centre = 0.5 * (a + b);
    double const half = 0.5 * (b - a);
    double const fc = f(centre);
    double resk = fc * gk15_weights[7];
    double resg = fc * g7_weights[3];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (int j = 0; j < 7; ++j)
    {
        double const dx = half * gk15_nodes[j];
        f1[j] = f(centre - dx);
        f2[j] = f(centre + dx);
        resk += gk15_weights[j] * (f1[j] + f2[j]);
        resabs += gk15_weights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1)
        {
            resg += g7_weights[j / 2] * (f1[j] + f2[j]);
        }
    }
    double const reskh = 0.5 * resk;
    double resasc = gk15_weights[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
    {
        resasc += gk15_weights[j]
                  * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
    }
    double const ahalf = std::abs(half);
    resasc *= ahalf;
    resabs *= ahalf;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
    {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50 * eps))
    {
        err = std::max(50 * eps * resabs, err);
    }
    return {a, b, resk * half, err};
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Globally adaptive Gauss-Kronrod (7/15) integration over a finite interval.
 *
 * The panel with the largest error estimate is bisected until the summed
 * error satisfies max(abs_tol, rel_tol * |I|) or the subdivision budget is
 * exhausted, in which case \c converged is false.
 */
template<class F>
QuadResult integrate(F&& f, double a, double b, QuadOptions const& opts = {})
{
    QuadResult result;
    if (a == b)
    {
        return result;
    }
    std::priority_queue<detail::Panel> panels;
    auto first = detail::gk15(f, a, b);
    panels.push(first);
    result.evaluations = 15;
    double total = first.value;
    double total_err = first.error;
    int subdivisions = 0;
    auto target = [&] {
        return std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
    };
    while (total_err > target())
    {
        if (subdivisions >= opts.max_subdivisions)
        {
            result.converged = false;
            break;
        }
        auto worst = panels.top();
        panels.pop();
        double const mid = 0.5 * (worst.a + worst.b);
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        result.evaluations += 30;
        ++subdivisions;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        if (mid <= worst.a || mid >= worst.b)
        {
            // Interval cannot be split further in double precision
            result.converged = false;
            break;
        }
    }
    // Resum to avoid drift from the incremental updates
    total = 0.0;
    total_err = 0.0;
    while (!panels.empty())
    {
        total += panels.top().value;
        total_err += panels.top().error;
        panels.pop();
    }
    result.value = total;
    result.error = total_err;
    return result;
}

//---------------------------------------------------------------------------//
//! Integrate over [a, inf) via x = a + t / (1 - t)
template<class F>
QuadResult
integrate_to_infinity(F&& f, double a, QuadOptions const& opts = {})
{
    auto mapped = [&f, a](double t) {
        double const s = 1.0 - t;
        double const x = a + t / s;
        double const jac = 1.0 / (s * s);
        double const fx = f(x);
        return fx == 0.0 ? 0.0 : fx * jac;
    };
    return integrate(mapped, 0.0, 1.0, opts);
}

//---------------------------------------------------------------------------//
//! Throw NumericalError if the result did not converge
inline QuadResult const&
require_converged(QuadResult const& r, std::string const& what)
{
    if (!r.converged)
    {
        throw NumericalError(what + ": quadrature did not converge (estimate "
                                 + std::to_string(r.value) + ", error bound "
                                 + std::to_string(r.error) + ")",
                             r.value,
                             r.error);
    }
    return r;
}

}  // namespace casimir
