#include "gaffine_cli/format.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace gaffine::cli {

std::string table_number(double v)
{
    if (std::isnan(v))
        return "nan";
    // Avoid printing "-0".
    if (v == 0.0)
        v = 0.0;
    return fmt::format("{:.9g}", v);
}

std::string file_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (v == 0.0)
        v = 0.0;
    return fmt::format("{}", v);
}

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t c = 0; c < header.size(); ++c)
        width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size() && c < width.size(); ++c)
            width[c] = std::max(width[c], r[c].size());

    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c > 0)
                out += "  ";
            out += fmt::format("{:>{}}", cells[c], width[c]);
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows)
        line(r);
    return out;
}

std::string render_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows)
{
    std::string out = fmt::format("{}\n", fmt::join(header, ","));
    for (const auto& r : rows)
        out += fmt::format("{}\n", fmt::join(r, ","));
    return out;
}

} // namespace gaffine::cli
