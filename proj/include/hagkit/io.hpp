#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hagkit/dynamics.hpp"
#include "hagkit/wavepacket.hpp"

namespace hagkit {

// Params JSON: {"epsilon": e, "q": [...], "p": [...],
//               "Q": {"re": [[...]], "im": [[...]]}, "P": {...}}
// Malformed text or missing fields throw IoError; shape consistency is left
// to validate().
ParameterSet parse_params_json(const std::string& text);
ParameterSet load_params(const std::string& path);
std::string params_to_json(const ParameterSet& ps);
std::string hash_hex(std::uint64_t h);

struct AxisSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 0;
};

// "min:max:count[,min:max:count...]"; throws DataError on bad syntax.
std::vector<AxisSpec> parse_grid(const std::string& text);
// Row-major expansion, last axis fastest.
std::vector<std::vector<double>> expand_grid(const std::vector<AxisSpec>& axes);

// Numeric CSV rows with exactly ncols columns. '#' lines and a leading
// non-numeric header line are skipped.
std::vector<std::vector<double>> read_csv_rows(const std::string& path, int ncols);

std::string format_double(double v);  // 17 significant digits

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}
    void meta(const std::string& key, const std::string& value);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);

private:
    std::ostream& os_;
};

struct CoefficientFile {
    std::uint64_t params_hash = 0;
    int K = 0;
    double bessel_defect = 0.0;
    double l2_residual = -1.0;  // negative when not computed
    double psi_norm2 = 0.0;
    std::string function;
    CoefficientVector coeffs;
};

void write_coefficients(const std::string& path, const CoefficientFile& f);
CoefficientFile read_coefficients(const std::string& path);

void write_trajectory_csv(std::ostream& os, const Trajectory& tr,
                          const std::vector<std::pair<std::string, std::string>>& meta);

}  // namespace hagkit
