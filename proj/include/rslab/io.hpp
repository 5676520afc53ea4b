#pragma once

#include <string>
#include <vector>

namespace rslab {

/// Shortest decimal string that round-trips the double; deterministic across
/// runs, used for every report so byte-identical output follows from
/// identical values.
std::string num(double x);

struct CsvColumn {
    std::string name;
    const std::vector<double>* values;
};

std::string to_csv(const std::vector<CsvColumn>& columns);

/// Minimal line-plot SVG: one polyline per named series over a shared x axis.
std::string to_svg(const std::vector<double>& x, const std::vector<CsvColumn>& series,
                   const std::string& title);

void write_file(const std::string& path, const std::string& content);

}  // namespace rslab
