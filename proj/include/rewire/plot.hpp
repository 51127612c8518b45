#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace rewire {

struct PlotError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parsed CSV: '#' comment lines skipped, first remaining line is the
/// header.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column_index(const std::string& name) const;  // -1 if absent
  std::vector<double> column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::string& path);

/// Renders a CSV data file as a self-contained SVG. Kinds:
///   trace       - time-series panels (gamma_f, ks_D, max_degree) from a
///                 simulation trace
///   degree      - log-log degree/count scatter (columns degree,count)
///   tvd         - l vs tvd_avg with min/max whiskers
///   minwalk     - n vs l_min, one polyline per gamma
/// Throws PlotError listing the expected header on schema mismatch.
void write_plot(const CsvTable& data, const std::string& kind,
                std::ostream& out);
void write_plot(const CsvTable& data, const std::string& kind,
                const std::string& out_path);

}  // namespace rewire
