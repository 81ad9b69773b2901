#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace casimir
{
//---------------------------------------------------------------------------//
// Helpers shared by the plain-text file readers
//---------------------------------------------------------------------------//
std::string_view trim(std::string_view s);

//! Split on commas, trimming each field
std::vector<std::string_view> split_fields(std::string_view line);

//! Parse a floating-point field; throws FormatError naming source and line
double parse_number(std::string_view field,
                    std::string const& source,
                    int line_number);

//! Parse a comma-separated list of numbers, optionally wrapped in [ ]
std::vector<double>
parse_number_list(std::string_view text, std::string const& source, int line);

//! Open for reading; throws FormatError naming the path if missing
std::ifstream open_input(std::filesystem::path const& path);

/*!
 * Visit data lines: blank lines are skipped and comment lines (first
 * non-blank character '#') are passed to \c on_comment without the marker.
 */
void for_each_line(std::istream& is,
                   std::function<void(std::string_view, int)> const& on_data,
                   std::function<void(std::string_view, int)> const& on_comment
                   = {});

}  // namespace casimir
