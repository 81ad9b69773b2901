#include "casimir/text_io.hpp"

#include <cerrno>
#include <cstdlib>
#include <istream>

#include "casimir/errors.hpp"

namespace casimir
{
//---------------------------------------------------------------------------//
std::string_view trim(std::string_view s)
{
    auto const first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
    {
        return {};
    }
    auto const last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

//---------------------------------------------------------------------------//
std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true)
    {
        auto const comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos)
        {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

//---------------------------------------------------------------------------//
double
parse_number(std::string_view field, std::string const& source, int line_number)
{
    std::string const text(trim(field));
    char* end = nullptr;
    errno = 0;
    double const value = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE)
    {
        throw FormatError(source + ":" + std::to_string(line_number)
                          + ": expected a number, got '" + text + "'");
    }
    return value;
}

//---------------------------------------------------------------------------//
std::vector<double>
parse_number_list(std::string_view text, std::string const& source, int line)
{
    text = trim(text);
    if (!text.empty() && text.front() == '[')
    {
        if (text.back() != ']')
        {
            throw FormatError(source + ":" + std::to_string(line)
                              + ": unterminated list");
        }
        text = trim(text.substr(1, text.size() - 2));
    }
    std::vector<double> values;
    if (text.empty())
    {
        return values;
    }
    for (auto field : split_fields(text))
    {
        values.push_back(parse_number(field, source, line));
    }
    return values;
}

//---------------------------------------------------------------------------//
std::ifstream open_input(std::filesystem::path const& path)
{
    std::ifstream is(path);
    if (!is)
    {
        throw FormatError("cannot open input file '" + path.string() + "'");
    }
    return is;
}

//---------------------------------------------------------------------------//
void for_each_line(std::istream& is,
                   std::function<void(std::string_view, int)> const& on_data,
                   std::function<void(std::string_view, int)> const& on_comment)
{
    std::string line;
    int number = 0;
    while (std::getline(is, line))
    {
        ++number;
        auto const text = trim(line);
        if (text.empty())
        {
            continue;
        }
        if (text.front() == '#')
        {
            if (on_comment)
            {
                on_comment(trim(text.substr(1)), number);
            }
            continue;
        }
        on_data(text, number);
    }
}

}  // namespace casimir
