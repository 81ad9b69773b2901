#pragma once

#include <string>
#include <vector>

#include "run_config.hpp"

namespace casimir::cli
{
//! Files to write (name, contents) and text for standard output
struct CommandOutput
{
    std::vector<std::pair<std::string, std::string>> files;
    std::string report;
};

CommandOutput cmd_force(RunConfig const& cfg, std::vector<double> const& z_nm);
CommandOutput cmd_analyze(RunConfig const& cfg, std::vector<double> const& z_nm);
CommandOutput cmd_budget(RunConfig const& cfg, std::vector<double> const& z_nm);
CommandOutput cmd_roughness(RunConfig const& cfg);

//! Write every file or none: contents go to temporaries that are renamed
//! once all writes succeed
void write_outputs(std::filesystem::path const& dir, CommandOutput const& out);

}  // namespace casimir::cli
