#include "casimir/lifshitz.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir
{
namespace
{
using namespace constants;

//! Squared TM and TE reflectivities at fixed t; eps = inf for an ideal metal
struct Reflectivity
{
    double eps;
    double t;

    bool ideal() const { return std::isinf(eps); }

    void operator()(double y, double& rp2, double& rs2) const
    {
        if (this->ideal())
        {
            rp2 = rs2 = 1.0;
            return;
        }
        double const em1 = eps - 1.0;
        double const ky = std::sqrt(y * y + em1 * t * t);
        double const s = y + ky;
        double const rs = em1 * t * t / (s * s);
        double const p = eps * y + ky;
        double const rp = em1 * ((eps + 1.0) * y * y - t * t) / (p * p);
        rp2 = rp * rp;
        rs2 = rs * rs;
    }
};

//! I(t) = int_t^inf y [ln(1 - rp^2 e^-y) + ln(1 - rs^2 e^-y)] dy
QuadResult mode_integral(Reflectivity const& r, double rel_tol)
{
    auto integrand = [&r](double y) {
        double rp2;
        double rs2;
        r(y, rp2, rs2);
        double const e = std::exp(-y);
        return y * (std::log1p(-rp2 * e) + std::log1p(-rs2 * e));
    };
    QuadOptions opts;
    opts.rel_tol = rel_tol;
    return require_converged(integrate_to_infinity(integrand, r.t, opts),
                             "wavevector integral");
}

double model_eps(PermittivityModel const& m, double t, double z)
{
    return m(c_light * t / (2.0 * z));
}

double t0_prefactor(SpherePlateGeometry const& g)
{
    return hbar * c_light * g.R / (16.0 * pi * g.z * g.z * g.z);
}

//! Frequency integral of I(t) over (0, inf)
template<class EpsFn>
ForcePoint
force_T0_impl(SpherePlateGeometry const& g, EpsFn&& eps_at, ForceOptions const& o)
{
    g.validate();
    double inner_error = 0.0;
    auto outer = [&](double t) {
        auto const r = mode_integral(Reflectivity{eps_at(t), t}, o.inner_rel_tol);
        inner_error += r.error;
        return r.value;
    };
    QuadOptions opts;
    opts.rel_tol = o.rel_tol;
    auto result = integrate(outer, 0.0, 1.0, opts);
    result += integrate_to_infinity(outer, 1.0, opts);
    double const pref = t0_prefactor(g);
    if (!result.converged)
    {
        throw NumericalError("frequency integral did not converge",
                             pref * result.value,
                             pref * result.error);
    }
    ForcePoint p;
    p.z = g.z;
    p.force = pref * result.value;
    // Inner errors enter the outer sum with quadrature weights of order the
    // panel width; the mean inner error is a fair proxy
    double const mean_inner
        = result.evaluations > 0 ? inner_error / result.evaluations : 0.0;
    p.error = pref * (result.error + mean_inner);
    return p;
}

//! Matsubara sum of I(t_l) with the l = 0 term supplied by the caller
template<class EpsFn>
ForcePoint thermal_impl(SpherePlateGeometry const& g,
                        double T,
                        double zero_term,
                        EpsFn&& eps_at,
                        ForceOptions const& o)
{
    g.validate();
    if (!(T > 0.0))
    {
        throw DomainError("temperature must be positive for the Matsubara sum");
    }
    double const pref = k_boltzmann * T * g.R / (4.0 * g.z * g.z);
    double const dt = 2.0 * g.z * (2.0 * pi * k_boltzmann * T / hbar) / c_light;

    CompensatedSum sum;
    sum += 0.5 * zero_term;
    double error = 0.0;
    double previous = 0.0;
    double tail = std::numeric_limits<double>::infinity();
    int l = 1;
    for (; l <= o.max_matsubara_terms; ++l)
    {
        double const t = l * dt;
        auto const r
            = mode_integral(Reflectivity{eps_at(t), t}, o.inner_rel_tol);
        sum += r.value;
        error += r.error;
        if (r.value == 0.0)
        {
            tail = 0.0;
            break;
        }
        if (l > 1)
        {
            double const rho = r.value / previous;
            if (rho > 0.0 && rho < 1.0)
            {
                tail = r.value * rho / (1.0 - rho);
                if (std::abs(tail) < o.tail_rel_tol * std::abs(sum.value()))
                {
                    break;
                }
            }
        }
        previous = r.value;
    }
    if (l > o.max_matsubara_terms)
    {
        std::ostringstream msg;
        msg << "Matsubara sum not converged after " << o.max_matsubara_terms
            << " terms";
        throw NumericalError(msg.str(), pref * sum.value(), pref * std::abs(tail));
    }
    ForcePoint p;
    p.z = g.z;
    p.force = pref * sum.value();
    p.error = pref * (std::abs(tail) + error);
    p.temperature = T;
    return p;
}
}  // namespace

//---------------------------------------------------------------------------//
void SpherePlateGeometry::validate() const
{
    if (!(z > 0.0) || !(R > 0.0))
    {
        throw DomainError("geometry needs z > 0 and R > 0");
    }
    if (!(z / R < 0.1))
    {
        std::ostringstream msg;
        msg << "separation " << z << " m is not small against the sphere radius "
            << R << " m (z / R must be below 0.1)";
        throw DomainError(msg.str());
    }
}

//---------------------------------------------------------------------------//
ForceCurve::ForceCurve(std::vector<ForcePoint> points, double R)
    : points_(std::move(points)), R_(R)
{
    if (points_.size() < 2)
    {
        throw DomainError("force curve needs at least two points");
    }
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < points_.size(); ++i)
    {
        auto const& p = points_[i];
        if (!(p.force < 0.0))
        {
            throw DomainError("force curve: non-attractive force at z = "
                              + std::to_string(p.z));
        }
        if (i > 0)
        {
            auto const& q = points_[i - 1];
            if (!(p.z > q.z))
            {
                throw DomainError(
                    "force curve: separations must be strictly increasing");
            }
            if (!(std::abs(p.force) < std::abs(q.force)))
            {
                throw DomainError("force curve: |F| must decrease with z");
            }
        }
        lx.push_back(std::log(p.z));
        ly.push_back(std::log(-p.force));
    }
    log_magnitude_ = CubicSpline(std::move(lx), std::move(ly));
}

double ForceCurve::operator()(double z) const
{
    if (!(z > 0.0))
    {
        throw ContactError("force curve evaluated at non-positive separation "
                           + std::to_string(z));
    }
    return -std::exp(log_magnitude_(std::log(z)));
}

//---------------------------------------------------------------------------//
double reflection_sq_parallel(double eps, double xi, double k_perp)
{
    double const kc = xi / c_light;
    double const q = std::sqrt(k_perp * k_perp + kc * kc);
    double const k = std::sqrt(k_perp * k_perp + eps * kc * kc);
    double const p = eps * q + k;
    double const r = (eps - 1.0) * ((eps + 1.0) * q * q - kc * kc) / (p * p);
    return r * r;
}

double reflection_sq_perp(double eps, double xi, double k_perp)
{
    double const kc = xi / c_light;
    double const q = std::sqrt(k_perp * k_perp + kc * kc);
    double const k = std::sqrt(k_perp * k_perp + eps * kc * kc);
    double const s = q + k;
    double const r = (eps - 1.0) * kc * kc / (s * s);
    return r * r;
}

double plasma_zero_frequency_perp_sq(double y, double z, double omega_p)
{
    double const w = 2.0 * z * omega_p / c_light;
    double const s = std::sqrt(y * y + w * w) + y;
    double const r = w * w / (s * s);
    return r * r;
}

//---------------------------------------------------------------------------//
double ideal_force(SpherePlateGeometry const& g)
{
    if (!(g.z > 0.0) || !(g.R > 0.0))
    {
        throw DomainError("ideal_force needs z > 0 and R > 0");
    }
    return -pi * pi * pi * hbar * c_light * g.R / (360.0 * g.z * g.z * g.z);
}

ForcePoint casimir_force_T0(SpherePlateGeometry const& g,
                            PermittivityModel const& m,
                            ForceOptions const& opts)
{
    auto p = force_T0_impl(
        g, [&](double t) { return model_eps(m, t, g.z); }, opts);
    p.model = m.name();
    return p;
}

ForcePoint
casimir_force_T0(SpherePlateGeometry const& g, IdealMetal, ForceOptions const& opts)
{
    auto p = force_T0_impl(
        g,
        [](double) { return std::numeric_limits<double>::infinity(); },
        opts);
    p.model = "ideal";
    return p;
}

double eta_c(SpherePlateGeometry const& g,
             PermittivityModel const& m,
             ForceOptions const& opts)
{
    return casimir_force_T0(g, m, opts).force / ideal_force(g);
}

//---------------------------------------------------------------------------//
ForcePoint casimir_force_thermal(SpherePlateGeometry const& g,
                                 PermittivityModel const& m,
                                 double T,
                                 ForceOptions const& opts)
{
    g.validate();
    double zero_term = -zeta3;
    if (m.zero_frequency() == ZeroFrequencyLimit::plasma_like)
    {
        zero_term += kernel::zero_frequency_perp(g.z, m.omega_p());
    }
    auto p = thermal_impl(
        g, T, zero_term, [&](double t) { return model_eps(m, t, g.z); }, opts);
    p.model = m.name();
    return p;
}

ForcePoint casimir_force_thermal(SpherePlateGeometry const& g,
                                 IdealMetal,
                                 double T,
                                 ForceOptions const& opts)
{
    auto p = thermal_impl(
        g,
        T,
        -2.0 * zeta3,
        [](double) { return std::numeric_limits<double>::infinity(); },
        opts);
    p.model = "ideal";
    return p;
}

//---------------------------------------------------------------------------//
std::vector<ForcePoint> compute_forces(std::vector<double> const& z,
                                       double R,
                                       PermittivityModel const& m,
                                       double T,
                                       ForceOptions const& opts)
{
    std::size_t const n = z.size();
    std::vector<ForcePoint> points(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++)
        {
            try
            {
                SpherePlateGeometry const g{z[i], R};
                points[i] = T > 0.0 ? casimir_force_thermal(g, m, T, opts)
                                    : casimir_force_T0(g, m, opts);
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned const nthreads = std::max(
        1u, std::min<unsigned>(std::thread::hardware_concurrency(), n));
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 1; i < nthreads; ++i)
        {
            pool.emplace_back(worker);
        }
        worker();
    }
    // Report the failure at the smallest separation regardless of scheduling
    for (auto const& e : errors)
    {
        if (e)
        {
            std::rethrow_exception(e);
        }
    }
    return points;
}

ForceCurve build_force_curve(std::vector<double> const& z,
                             double R,
                             PermittivityModel const& m,
                             double T,
                             ForceOptions const& opts)
{
    return ForceCurve(compute_forces(z, R, m, T, opts), R);
}

//---------------------------------------------------------------------------//
double pft_error_bound(SpherePlateGeometry const& g)
{
    if (!(g.z >= 0.0) || !(g.R > 0.0))
    {
        throw DomainError("pft_error_bound needs z >= 0 and R > 0");
    }
    return g.z / g.R;
}

double characteristic_frequency(double z)
{
    if (!(z > 0.0))
    {
        throw DomainError("characteristic_frequency needs z > 0");
    }
    return c_light / (2.0 * z);
}

//---------------------------------------------------------------------------//
double kernel::zero_frequency_perp(double z, double omega_p, double rel_tol)
{
    auto integrand = [&](double y) {
        double const r2 = plasma_zero_frequency_perp_sq(y, z, omega_p);
        return y * std::log1p(-r2 * std::exp(-y));
    };
    QuadOptions opts;
    opts.rel_tol = rel_tol;
    return require_converged(integrate_to_infinity(integrand, 0.0, opts),
                             "zero-frequency TE integral")
        .value;
}

}  // namespace casimir
