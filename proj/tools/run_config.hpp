#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/optics.hpp"

namespace casimir::cli
{
//---------------------------------------------------------------------------//
//! Flat "key = value" entries grouped by "[section]"
class IniFile
{
  public:
    static IniFile parse(std::istream& is, std::string const& source);
    static IniFile load(std::filesystem::path const& path);

    bool has(std::string const& section, std::string const& key) const;
    std::string const& raw(std::string const& section, std::string const& key) const;

    double number(std::string const& section, std::string const& key) const;
    double number(std::string const& section,
                  std::string const& key,
                  double fallback) const;
    std::vector<double> numbers(std::string const& section,
                                std::string const& key) const;
    std::string text(std::string const& section,
                     std::string const& key,
                     std::string const& fallback) const;

  private:
    struct Entry
    {
        std::string value;
        int line;
    };
    std::string source_;
    std::map<std::string, std::map<std::string, Entry>> sections_;

    Entry const& entry(std::string const& section, std::string const& key) const;
};

//---------------------------------------------------------------------------//
struct RunConfig
{
    // geometry
    double R = constants::default_sphere_radius;  //!< m
    double L = 5e-3;                               //!< m
    double z0_nm = 0;
    double z0_halfwidth_nm = 1.0;
    double z0_step_nm = 0.01;

    // model
    ModelKind model = ModelKind::tabulated;
    DrudeParams drude;
    InfraredParams infrared;
    double temperature = 0;  //!< K

    // files
    std::optional<std::filesystem::path> optical;
    std::optional<std::filesystem::path> roughness_plate;
    std::optional<std::filesystem::path> roughness_sphere;
    std::optional<std::filesystem::path> scans;
    std::optional<std::filesystem::path> diffraction;
    std::optional<std::filesystem::path> profile;

    // stats
    double beta = 0.95;
    std::vector<double> systematic_pN;
    std::vector<double> regions_nm;
    std::set<int> exclude;

    // budget
    double delta_R = 0.15e-6;  //!< m
    double delta_z_nm = 0.15;
    double grain_bound = 0.005;
    double l_corr = 200e-9;  //!< m

    // patch
    std::vector<double> work_functions_V;
    double lambda_min = 68e-9;   //!< m
    double lambda_max = 121e-9;  //!< m

    std::optional<std::filesystem::path> output_dir;

    //! Load and check that every referenced file exists
    static RunConfig load(std::filesystem::path const& path);
};

}  // namespace casimir::cli
