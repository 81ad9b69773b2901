#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>

#include <fmt/format.h>

#include "casimir/corrections.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/numeric.hpp"
#include "casimir/roughness.hpp"
#include "casimir/stats.hpp"

namespace casimir::cli
{
namespace
{
constexpr double nm = 1e-9;
constexpr double pN = 1e-12;

std::string pn(double force_N)
{
    return fmt::format("{:.4g}", force_N / pN);
}

std::string eta(double value)
{
    return fmt::format("{:.4f}", value);
}

//---------------------------------------------------------------------------//
PermittivityModel make_model(RunConfig const& cfg)
{
    switch (cfg.model)
    {
        case ModelKind::drude:
            return PermittivityModel::drude(cfg.drude);
        case ModelKind::plasma:
            return PermittivityModel::plasma(cfg.drude.omega_p);
        case ModelKind::infrared:
            return PermittivityModel::infrared(cfg.infrared);
        case ModelKind::tabulated:
            if (!cfg.optical)
            {
                throw FormatError("model 'tabulated' needs files.optical in "
                                  "the config");
            }
            return PermittivityModel::tabulated(
                read_optical_file(*cfg.optical, cfg.drude));
    }
    throw DomainError("unknown model");
}

struct Surfaces
{
    RoughnessHistogram plate;
    RoughnessHistogram sphere;
};

std::optional<Surfaces>
load_surfaces(RunConfig const& cfg, std::vector<std::string>& notes)
{
    if (!cfg.roughness_plate)
    {
        notes.push_back("no roughness histogram configured; surfaces treated "
                        "as smooth");
        return std::nullopt;
    }
    auto read = [&](std::filesystem::path const& p) {
        auto r = read_histogram_file(p);
        if (r.renormalized)
        {
            notes.push_back(fmt::format(
                "fractions in {} sum to {:.6f}; renormalized to 1",
                p.string(),
                r.raw_sum));
        }
        return r.histogram;
    };
    auto plate = read(*cfg.roughness_plate);
    auto sphere = cfg.roughness_sphere ? read(*cfg.roughness_sphere) : plate;
    return Surfaces{std::move(plate), std::move(sphere)};
}

//! Separations visited by the roughness average at z (m)
std::vector<double> shifted_separations(double z, Surfaces const& s)
{
    double const shift = (zero_level(s.plate) + zero_level(s.sphere)) * nm;
    std::vector<double> out;
    for (double hp : s.plate.heights())
    {
        for (double hs : s.sphere.heights())
        {
            out.push_back(z + shift - (hp + hs) * nm);
        }
    }
    return out;
}

//! Largest downward and upward shift of the averaged separations (m)
std::pair<double, double> shift_range(Surfaces const& s)
{
    auto const zs = shifted_separations(0.0, s);
    auto [lo, hi] = std::minmax_element(zs.begin(), zs.end());
    return {-*lo, *hi};
}

//---------------------------------------------------------------------------//
//! Memoized forces, filled concurrently ahead of use
class ForceCache
{
  public:
    ForceCache(PermittivityModel m, double R, double T)
        : model_(std::move(m)), R_(R), T_(T)
    {
    }

    void prefetch(std::vector<double> z)
    {
        std::erase_if(z, [&](double s) { return s <= 0.0 || cache_.count(s); });
        std::sort(z.begin(), z.end());
        z.erase(std::unique(z.begin(), z.end()), z.end());
        auto const points = compute_forces(z, R_, model_, T_);
        for (std::size_t i = 0; i < z.size(); ++i)
        {
            cache_.emplace(z[i], points[i]);
        }
    }

    ForcePoint const& at(double z)
    {
        auto it = cache_.find(z);
        if (it == cache_.end())
        {
            SpherePlateGeometry const g{z, R_};
            auto p = T_ > 0.0 ? casimir_force_thermal(g, model_, T_)
                              : casimir_force_T0(g, model_);
            it = cache_.emplace(z, p).first;
        }
        return it->second;
    }

    PermittivityModel const& model() const { return model_; }

  private:
    PermittivityModel model_;
    double R_;
    double T_;
    std::map<double, ForcePoint> cache_;
};

std::string header(std::string_view title, RunConfig const& cfg, std::string_view model)
{
    return fmt::format(
        "{}\nmodel: {}\ntemperature: {} K\nsphere radius: {} um\n\n",
        title,
        model,
        cfg.temperature,
        cfg.R / 1e-6);
}

std::string notes_text(std::vector<std::string> const& notes)
{
    std::string out;
    for (auto const& n : notes)
    {
        out += "note: " + n + "\n";
    }
    return out;
}

//! Log-spaced grid covering [lo, hi] with ratio at most 1 + step
std::vector<double> log_grid(double lo, double hi, double step)
{
    int const n = std::max(
        2, static_cast<int>(std::ceil(std::log(hi / lo) / std::log1p(step))) + 1);
    std::vector<double> z(n);
    for (int i = 0; i < n; ++i)
    {
        z[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    }
    return z;
}

//! Linear interpolation inside the grid; RangeError outside
double interpolate_mean(std::vector<double> const& z,
                        std::vector<double> const& mean,
                        double at)
{
    if (at < z.front() || at > z.back())
    {
        throw RangeError(fmt::format(
            "separation {} nm is outside the scan grid [{}, {}] nm",
            at,
            z.front(),
            z.back()));
    }
    return linear_interpolate(z, mean, at);
}
}  // namespace

//---------------------------------------------------------------------------//
CommandOutput cmd_force(RunConfig const& cfg, std::vector<double> const& z_nm)
{
    std::vector<std::string> notes;
    ForceCache cache(make_model(cfg), cfg.R, cfg.temperature);
    auto const surfaces = load_surfaces(cfg, notes);
    double const A_st
        = surfaces ? stochastic_stats(surfaces->plate).A_st * nm : 0.0;

    std::vector<double> wanted;
    for (double z : z_nm)
    {
        SpherePlateGeometry{z * nm, cfg.R}.validate();
        wanted.push_back(z * nm);
        if (surfaces)
        {
            auto const s = shifted_separations(z * nm, *surfaces);
            wanted.insert(wanted.end(), s.begin(), s.end());
        }
    }
    cache.prefetch(wanted);

    std::string csv = "z_nm,F_ideal_pN,F_model_pN,eta_c,eta_r,eta_cr,"
                      "F_final_pN,quad_error_pN\n";
    std::string table = fmt::format("{:>8} {:>11} {:>11} {:>7} {:>7} {:>7} "
                                    "{:>11} {:>10}\n",
                                    "z_nm",
                                    "F_ideal_pN",
                                    "F_model_pN",
                                    "eta_c",
                                    "eta_r",
                                    "eta_cr",
                                    "F_final_pN",
                                    "error_pN");
    for (double z : z_nm)
    {
        SpherePlateGeometry const g{z * nm, cfg.R};
        double const F0 = ideal_force(g);
        auto const& Fm = cache.at(z * nm);
        double eta_r = 1.0;
        double F_final = Fm.force;
        if (surfaces)
        {
            eta_r = roughness_factor(g.z, A_st);
            F_final = force_rough_averaged(
                g.z, surfaces->plate, surfaces->sphere, [&](double s) {
                    return cache.at(s).force;
                });
        }
        std::vector<std::string> const cells = {fmt::format("{:g}", z),
                                                pn(F0),
                                                pn(Fm.force),
                                                eta(Fm.force / F0),
                                                eta(eta_r),
                                                eta(F_final / F0),
                                                pn(F_final),
                                                fmt::format("{:.2e}", Fm.error / pN)};
        csv += fmt::format("{}\n", fmt::join(cells, ","));
        table += fmt::format("{:>8} {:>11} {:>11} {:>7} {:>7} {:>7} {:>11} "
                             "{:>10}\n",
                             cells[0],
                             cells[1],
                             cells[2],
                             cells[3],
                             cells[4],
                             cells[5],
                             cells[6],
                             cells[7]);
    }
    CommandOutput out;
    out.report = header("Casimir force", cfg, cache.model().name())
                 + fmt::format("stochastic roughness amplitude A_st: {:.4f} nm\n\n",
                               A_st / nm)
                 + table + notes_text(notes);
    out.files = {{"force.csv", csv}, {"force_report.txt", out.report}};
    return out;
}

//---------------------------------------------------------------------------//
CommandOutput cmd_analyze(RunConfig const& cfg, std::vector<double> const& z_nm)
{
    if (!cfg.scans)
    {
        throw FormatError("analyze needs files.scans in the config");
    }
    std::vector<std::string> notes;
    auto const scans = read_scan_file(*cfg.scans).excluding(cfg.exclude);
    auto const& z = scans.separations();
    auto const mean = mean_force(scans);
    auto const var = variance_of_mean(scans);
    auto const conf = confidence(scans, cfg.beta, cfg.systematic_pN);

    // Theory magnitude in pN on a dense grid over the searched separations
    auto const model = make_model(cfg);
    auto const surfaces = load_surfaces(cfg, notes);
    double const lo = (z.front() + cfg.z0_nm - cfg.z0_halfwidth_nm - 0.5) * nm;
    double const hi = (z.back() + cfg.z0_nm + cfg.z0_halfwidth_nm + 0.5) * nm;
    if (!(lo > 0.0))
    {
        throw DomainError("analysis window reaches non-positive separations");
    }
    constexpr double grid_step = 0.005;
    ForceCurve theory_curve;
    if (surfaces)
    {
        auto const [down, up] = shift_range(*surfaces);
        if (!(lo - down > 0.0))
        {
            throw ContactError(fmt::format(
                "roughness average reaches contact below {} nm", lo / nm));
        }
        auto const base = build_force_curve(
            log_grid(lo - down, hi + up, grid_step), cfg.R, model, cfg.temperature);
        std::vector<ForcePoint> rough;
        for (double s : log_grid(lo, hi, grid_step))
        {
            ForcePoint p;
            p.z = s;
            p.force = force_rough_averaged(
                s, surfaces->plate, surfaces->sphere, [&](double x) {
                    return base(x);
                });
            p.model = std::string(model.name());
            p.temperature = cfg.temperature;
            rough.push_back(p);
        }
        theory_curve = ForceCurve(std::move(rough), cfg.R);
    }
    else
    {
        theory_curve = build_force_curve(
            log_grid(lo, hi, grid_step), cfg.R, model, cfg.temperature);
    }
    auto theory = [&](double s_nm) { return -theory_curve(s_nm * nm) / pN; };

    auto regions = cfg.regions_nm;
    if (regions.empty())
    {
        regions.push_back(z.back());
    }
    auto const fit = fit_z0(scans,
                            theory,
                            cfg.z0_nm,
                            cfg.z0_halfwidth_nm,
                            cfg.z0_step_nm,
                            regions);

    std::string csv = "z_nm,mean_pN,s_mean_pN,ci_lo_pN,ci_hi_pN,"
                      "relative_error_percent,theory_pN,residual_pN\n";
    for (std::size_t i = 0; i < z.size(); ++i)
    {
        auto const [ci_lo, ci_hi] = confidence_interval(mean[i], conf.total_error);
        double const th = theory(z[i] + fit.z0_best);
        csv += fmt::format("{:g},{:.4g},{:.4g},{:.4g},{:.4g},{:.3f},{:.4g},{:.4g}\n",
                           z[i],
                           mean[i],
                           var.s_mean[i],
                           ci_lo,
                           ci_hi,
                           100.0 * relative_error(conf.total_error, mean[i]),
                           th,
                           th - mean[i]);
    }
    std::string profile = "z0_nm,sigma_pN\n";
    for (auto const& [z0, sigma] : fit.profile)
    {
        profile += fmt::format("{:.4f},{:.4g}\n", z0, sigma);
    }

    std::string excluded;
    for (int id : scans.excluded())
    {
        excluded += (excluded.empty() ? "" : ", ") + std::to_string(id);
    }
    std::string report = header("Force measurement analysis", cfg, model.name());
    report += fmt::format("scans used: {} (excluded: {})\n",
                          scans.n(),
                          excluded.empty() ? "none" : excluded);
    report += fmt::format("confidence level: {}\n", conf.beta);
    report += fmt::format("max s_mean: {:.4g} pN\n", conf.s_mean);
    report += fmt::format("Student t: {:.4f}\n", conf.t_value);
    report += fmt::format("random error: {:.4g} pN\n", conf.random_error);
    report += fmt::format("systematic error: {:.4g} pN\n", conf.systematic_error);
    report += fmt::format("total error: {:.4g} pN\n\n", conf.total_error);
    report += fmt::format("best z0: {:.4f} nm (searched {} +- {} nm, step {} nm)\n",
                          fit.z0_best,
                          cfg.z0_nm,
                          cfg.z0_halfwidth_nm,
                          cfg.z0_step_nm);
    report += fmt::format("rms deviation at best z0: {:.4g} pN\n", fit.sigma_best);
    report += fmt::format("z0 range within 10% of best rms: +- {:.4f} nm\n",
                          fit.equivalence_halfwidth);
    for (auto const& [edge, sigma] : fit.sigma_by_region)
    {
        report += fmt::format("rms deviation for z <= {:g} nm: {:.4g} pN\n",
                              edge,
                              sigma);
    }
    if (!z_nm.empty())
    {
        report += "\nrelative experimental error:\n";
        for (double at : z_nm)
        {
            double const m = interpolate_mean(z, mean, at);
            report += fmt::format("  z = {:g} nm: mean {:.4g} pN, {:.3f}%\n",
                                  at,
                                  m,
                                  100.0 * relative_error(conf.total_error, m));
        }
    }
    report += notes_text(notes);

    CommandOutput out;
    out.report = report;
    out.files = {{"analysis.csv", csv},
                 {"z0_profile.csv", profile},
                 {"analysis_report.txt", report}};
    return out;
}

//---------------------------------------------------------------------------//
CommandOutput cmd_budget(RunConfig const& cfg, std::vector<double> const& z_nm)
{
    std::vector<std::string> notes;
    auto const surfaces = load_surfaces(cfg, notes);
    std::optional<DiffractionLookup> lut;
    if (cfg.diffraction)
    {
        lut = read_diffraction_file(*cfg.diffraction);
    }
    std::optional<PatchParams> patch;
    if (cfg.work_functions_V.size() >= 2)
    {
        patch = grain_wavevectors(cfg.lambda_min, cfg.lambda_max);
        patch->sigma_v = patch_sigma(cfg.work_functions_V);
    }
    std::optional<ForceCache> cache;
    if (patch)
    {
        cache.emplace(make_model(cfg), cfg.R, cfg.temperature);
        std::vector<double> zs;
        for (double z : z_nm)
        {
            zs.push_back(z * nm);
        }
        cache->prefetch(zs);
    }

    std::string csv = "z_nm,contribution,percent\n";
    std::string report = "Theoretical error budget\n";
    report += fmt::format("sphere radius: {} +- {} um; separation uncertainty "
                          "{} nm\n",
                          cfg.R / 1e-6,
                          cfg.delta_R / 1e-6,
                          cfg.delta_z_nm);
    for (double z : z_nm)
    {
        SpherePlateGeometry const g{z * nm, cfg.R};
        g.validate();
        std::vector<BudgetItem> extra;
        extra.push_back({"grain variation", cfg.grain_bound});
        extra.push_back({"proximity force", pft_error_bound(g)});
        if (surfaces && lut)
        {
            double const A_st = stochastic_stats(surfaces->plate).A_st * nm;
            double const x = g.z / cfg.l_corr;
            if (x >= lut->x_min() && x <= lut->x_max())
            {
                double const d = std::abs(diffraction_factor(g.z, A_st, cfg.l_corr, *lut)
                                          - roughness_factor(g.z, A_st));
                extra.push_back({"diffraction", d});
            }
            else
            {
                notes.push_back(fmt::format(
                    "z = {:g} nm: z / l_corr = {:.3f} outside the diffraction "
                    "lookup; contribution set to 0",
                    z,
                    x));
                extra.push_back({"diffraction", 0.0});
            }
        }
        if (patch)
        {
            double const Fp = patch_force(g.z, g.R, *patch);
            double const Fc = cache->at(g.z).force;
            extra.push_back({"patch potentials", std::abs(Fp / Fc)});
        }
        extra.push_back({"finite plate", finite_size_deficit(g.z, g.R, cfg.L)});

        auto const budget
            = theory_error_budget(z, cfg.delta_R, cfg.R, cfg.delta_z_nm, extra);
        report += fmt::format("\nz = {:g} nm\n", z);
        for (auto const& item : budget.items())
        {
            csv += fmt::format("{:g},{},{:.4f}\n", z, item.label, 100.0 * item.value);
            report += fmt::format("  {:<24} {:>9.4f} %\n", item.label, 100.0 * item.value);
        }
        csv += fmt::format("{:g},total,{:.4f}\n", z, 100.0 * budget.total());
        report += fmt::format("  {:<24} {:>9.4f} %\n", "total", 100.0 * budget.total());
    }
    report += notes_text(notes);
    CommandOutput out;
    out.report = report;
    out.files = {{"budget.csv", csv}, {"budget_report.txt", report}};
    return out;
}

//---------------------------------------------------------------------------//
CommandOutput cmd_roughness(RunConfig const& cfg)
{
    if (!cfg.roughness_plate)
    {
        throw FormatError("roughness needs files.roughness_plate in the config");
    }
    std::vector<std::string> notes;
    auto const surfaces = load_surfaces(cfg, notes);
    std::string csv = "surface,H0_nm,A_nm,delta_st_nm,A_st_nm\n";
    std::string report = "Roughness statistics\n";
    auto add = [&](std::string_view label, RoughnessHistogram const& h) {
        auto const s = stochastic_stats(h);
        csv += fmt::format("{},{:.4f},{:.4f},{:.4f},{:.4f}\n",
                           label, s.H0, s.A, s.delta_st, s.A_st);
        report += fmt::format("\n{}\n  zero level H0: {:.4f} nm\n  amplitude A: "
                              "{:.4f} nm\n  delta_st: {:.4f} nm\n  A_st: {:.4f} "
                              "nm\n",
                              label, s.H0, s.A, s.delta_st, s.A_st);
    };
    add("plate", surfaces->plate);
    if (cfg.roughness_sphere)
    {
        add("sphere", surfaces->sphere);
    }
    if (cfg.profile)
    {
        double const period = dominant_period(read_profile_file(*cfg.profile));
        report += fmt::format("\ndominant period of profile: {:.4g} nm\n", period);
    }
    report += notes_text(notes);
    CommandOutput out;
    out.report = report;
    out.files = {{"roughness.csv", csv}, {"roughness_report.txt", report}};
    return out;
}

//---------------------------------------------------------------------------//
void write_outputs(std::filesystem::path const& dir, CommandOutput const& out)
{
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::pair<fs::path, fs::path>> staged;
    auto cleanup = [&] {
        for (auto const& [tmp, final_path] : staged)
        {
            std::error_code ec;
            fs::remove(tmp, ec);
        }
    };
    try
    {
        for (auto const& [name, contents] : out.files)
        {
            fs::path const final_path = dir / name;
            fs::path tmp = final_path;
            tmp += ".partial";
            staged.emplace_back(tmp, final_path);
            std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
            os << contents;
            os.close();
            if (!os)
            {
                throw FormatError("cannot write output file '" + tmp.string() + "'");
            }
        }
        for (auto const& [tmp, final_path] : staged)
        {
            fs::rename(tmp, final_path);
        }
    }
    catch (...)
    {
        cleanup();
        throw;
    }
}

}  // namespace casimir::cli
