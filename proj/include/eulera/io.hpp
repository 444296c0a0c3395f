#pragma once
// Field persistence (EAF1 binary format), CSV tables with reproducible
// formatting, and minimal SVG log-log charts.

#include "eulera/field.hpp"

#include <string>
#include <vector>

namespace eulera {

// EAF1 layout: magic "EAF1", little-endian u32 n1, u32 n2, f64 L, then
// n1*n2 f64 nodal values row-major (x1 outer, x2 inner).
void write_eaf1(const std::string& path, const ScalarField& f);

struct RawField {
    Real L = 0;
    int n1 = 0, n2 = 0;
    MatrixXd v;
};

RawField read_eaf1(const std::string& path);

/// Attaches raw data to a grid; rejects shape or length mismatches.
ScalarField attach(const Grid& g, const RawField& raw);

/// Formats a double with full round-trip precision ("%.17g").
std::string fmt_full(Real x);

class CsvWriter {
  public:
    CsvWriter(std::string path, const std::vector<std::string>& header);
    void row(const std::vector<Real>& values);
    void row_mixed(const std::vector<std::string>& cells);
    void close();
    ~CsvWriter();

  private:
    std::string path_;
    std::string buf_;
    bool open_ = true;
};

struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<Real> x, y;  // positive values; plotted on log-log axes
};

void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<SvgSeries>& series);

void ensure_dir(const std::string& path);

}  // namespace eulera
