#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "casimir/errors.hpp"
#include "commands.hpp"
#include "run_config.hpp"

using namespace casimir;
using namespace casimir::cli;

namespace
{
enum ExitStatus
{
    success = 0,
    numerical_failure = 1,
    input_failure = 2,
};

struct Overrides
{
    std::string config;
    std::vector<double> z;
    std::optional<double> beta;
    std::optional<std::string> out;
    std::optional<std::string> model;
    std::optional<double> temperature;
};

void add_common(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--config", o.config, "Run configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "Directory for result tables and report");
}

RunConfig load_config(Overrides const& o)
{
    auto cfg = RunConfig::load(o.config);
    if (o.beta)
    {
        cfg.beta = *o.beta;
    }
    if (o.model)
    {
        cfg.model = parse_model_kind(*o.model);
    }
    if (o.temperature)
    {
        if (*o.temperature < 0.0)
        {
            throw DomainError("temperature must be non-negative");
        }
        cfg.temperature = *o.temperature;
    }
    if (o.out)
    {
        cfg.output_dir = *o.out;
    }
    return cfg;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Casimir force between a metal sphere and plate: force "
                 "tables, error budgets and measurement analysis"};
    app.require_subcommand(1);
    Overrides o;

    auto* force = app.add_subcommand("force", "Force table at given separations");
    add_common(force, o);
    force->add_option("--z", o.z, "Separations in nm")->delimiter(',');
    force->add_option("--model", o.model, "drude, plasma, infrared or tabulated")
        ->check(CLI::IsMember({"drude", "plasma", "infrared", "tabulated"}));
    force->add_option("--temperature", o.temperature, "Temperature in K (0: zero temperature)");

    auto* analyze = app.add_subcommand("analyze", "Compare measured scans with theory");
    add_common(analyze, o);
    analyze->add_option("--z", o.z, "Separations (nm) for relative errors")->delimiter(',');
    analyze->add_option("--beta", o.beta, "Confidence level");
    analyze->add_option("--model", o.model, "drude, plasma, infrared or tabulated")
        ->check(CLI::IsMember({"drude", "plasma", "infrared", "tabulated"}));
    analyze->add_option("--temperature", o.temperature, "Temperature in K");

    auto* budget = app.add_subcommand("budget", "Theoretical error budget");
    add_common(budget, o);
    budget->add_option("--z", o.z, "Separations in nm")->delimiter(',');
    budget->add_option("--model", o.model, "Model for the patch-force ratio")
        ->check(CLI::IsMember({"drude", "plasma", "infrared", "tabulated"}));

    auto* roughness = app.add_subcommand("roughness", "Roughness statistics");
    add_common(roughness, o);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? success : input_failure;
    }

    try
    {
        auto const cfg = load_config(o);
        CommandOutput out;
        if (force->parsed())
            out = cmd_force(cfg, o.z);
        else if (analyze->parsed())
            out = cmd_analyze(cfg, o.z);
        else if (budget->parsed())
            out = cmd_budget(cfg, o.z);
        else
            out = cmd_roughness(cfg);

        if (cfg.output_dir)
        {
            write_outputs(*cfg.output_dir, out);
        }
        std::cout << out.report;
        return success;
    }
    catch (NumericalError const& e)
    {
        std::cerr << "numerical error: " << e.what() << '\n';
        return numerical_failure;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return input_failure;
    }
}
