#pragma once

#include <filesystem>

namespace test
{
inline std::filesystem::path data_dir()
{
    return CASIMIR_DATA_DIR;
}

inline std::filesystem::path cli_path()
{
    return CASIMIR_CLI_PATH;
}
}  // namespace test
