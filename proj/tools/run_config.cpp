#include "run_config.hpp"

#include <cmath>
#include <istream>

#include "casimir/errors.hpp"
#include "casimir/text_io.hpp"

namespace casimir::cli
{
//---------------------------------------------------------------------------//
IniFile IniFile::parse(std::istream& is, std::string const& source)
{
    IniFile ini;
    ini.source_ = source;
    std::string section;
    for_each_line(is, [&](std::string_view text, int line) {
        auto const where = source + ":" + std::to_string(line);
        if (text.front() == '[')
        {
            if (text.back() != ']')
            {
                throw FormatError(where + ": unterminated section header");
            }
            section = std::string(trim(text.substr(1, text.size() - 2)));
            return;
        }
        auto const eq = text.find('=');
        if (eq == std::string_view::npos)
        {
            throw FormatError(where + ": expected 'key = value'");
        }
        auto const key = std::string(trim(text.substr(0, eq)));
        if (key.empty())
        {
            throw FormatError(where + ": empty key");
        }
        auto& entries = ini.sections_[section];
        if (entries.count(key))
        {
            throw FormatError(where + ": duplicate key '" + key + "'");
        }
        entries[key] = {std::string(trim(text.substr(eq + 1))), line};
    });
    return ini;
}

IniFile IniFile::load(std::filesystem::path const& path)
{
    auto is = open_input(path);
    return parse(is, path.string());
}

bool IniFile::has(std::string const& section, std::string const& key) const
{
    auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key);
}

IniFile::Entry const&
IniFile::entry(std::string const& section, std::string const& key) const
{
    if (!this->has(section, key))
    {
        throw FormatError(source_ + ": missing key '" + key + "' in section ["
                          + section + "]");
    }
    return sections_.at(section).at(key);
}

std::string const&
IniFile::raw(std::string const& section, std::string const& key) const
{
    return this->entry(section, key).value;
}

double IniFile::number(std::string const& section, std::string const& key) const
{
    auto const& e = this->entry(section, key);
    return parse_number(e.value, source_, e.line);
}

double IniFile::number(std::string const& section,
                       std::string const& key,
                       double fallback) const
{
    return this->has(section, key) ? this->number(section, key) : fallback;
}

std::vector<double>
IniFile::numbers(std::string const& section, std::string const& key) const
{
    if (!this->has(section, key))
    {
        return {};
    }
    auto const& e = this->entry(section, key);
    return parse_number_list(e.value, source_, e.line);
}

std::string IniFile::text(std::string const& section,
                          std::string const& key,
                          std::string const& fallback) const
{
    return this->has(section, key) ? this->raw(section, key) : fallback;
}

//---------------------------------------------------------------------------//
RunConfig RunConfig::load(std::filesystem::path const& path)
{
    auto const ini = IniFile::load(path);
    auto const base = path.parent_path();
    RunConfig c;

    c.R = ini.number("geometry", "sphere_radius_um", c.R * 1e6) * 1e-6;
    c.L = ini.number("geometry", "plate_radius_mm", c.L * 1e3) * 1e-3;
    c.z0_nm = ini.number("geometry", "z0_nm", c.z0_nm);
    c.z0_halfwidth_nm = ini.number("geometry", "z0_halfwidth_nm", c.z0_halfwidth_nm);
    c.z0_step_nm = ini.number("geometry", "z0_step_nm", c.z0_step_nm);

    c.model = parse_model_kind(ini.text("model", "kind", "tabulated"));
    c.drude.omega_p = ini.number("model", "omega_p", c.drude.omega_p);
    c.drude.gamma = ini.number("model", "gamma", c.drude.gamma);
    c.infrared.omega_p = c.drude.omega_p;
    c.infrared.c1 = ini.number("model", "c1", c.infrared.c1);
    c.infrared.c2 = ini.number("model", "c2", c.infrared.c2);
    c.temperature = ini.number("model", "temperature_K", c.temperature);

    auto file = [&](char const* key) -> std::optional<std::filesystem::path> {
        if (!ini.has("files", key))
        {
            return std::nullopt;
        }
        std::filesystem::path p = ini.raw("files", key);
        if (p.is_relative())
        {
            p = base / p;
        }
        if (!std::filesystem::exists(p))
        {
            throw FormatError("input file '" + p.string() + "' (files." + key
                              + ") does not exist");
        }
        return p;
    };
    c.optical = file("optical");
    c.roughness_plate = file("roughness_plate");
    c.roughness_sphere = file("roughness_sphere");
    c.scans = file("scans");
    c.diffraction = file("diffraction");
    c.profile = file("profile");

    c.beta = ini.number("stats", "beta", c.beta);
    c.systematic_pN = ini.numbers("stats", "systematic_pN");
    c.regions_nm = ini.numbers("stats", "regions_nm");
    for (double id : ini.numbers("stats", "exclude"))
    {
        if (id != std::floor(id) || id < 1)
        {
            throw FormatError(path.string()
                              + ": stats.exclude must list positive scan ids");
        }
        c.exclude.insert(static_cast<int>(id));
    }

    c.delta_R = ini.number("budget", "delta_R_um", c.delta_R * 1e6) * 1e-6;
    c.delta_z_nm = ini.number("budget", "delta_z_nm", c.delta_z_nm);
    c.grain_bound = ini.number("budget", "grain_bound", c.grain_bound);
    c.l_corr = ini.number("budget", "l_corr_nm", c.l_corr * 1e9) * 1e-9;

    c.work_functions_V = ini.numbers("patch", "work_functions_V");
    c.lambda_min = ini.number("patch", "lambda_min_nm", c.lambda_min * 1e9) * 1e-9;
    c.lambda_max = ini.number("patch", "lambda_max_nm", c.lambda_max * 1e9) * 1e-9;

    if (ini.has("output", "dir"))
    {
        std::filesystem::path p = ini.raw("output", "dir");
        c.output_dir = p.is_relative() ? base / p : p;
    }

    if (!(c.R > 0.0) || !(c.L > c.R) || !(c.z0_step_nm > 0.0)
        || !(c.z0_halfwidth_nm > 0.0) || !(c.temperature >= 0.0))
    {
        throw FormatError(path.string()
                          + ": geometry needs R > 0, L > R, positive z0 search "
                            "window and step, and temperature >= 0");
    }
    c.drude.validate();
    c.infrared.validate();
    return c;
}

}  // namespace casimir::cli
