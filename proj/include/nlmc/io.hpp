#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nlmc/coefficients.hpp"
#include "nlmc/invariant.hpp"
#include "nlmc/kernel.hpp"
#include "nlmc/montecarlo.hpp"

namespace nlmc {

// On-disk kernel definition: a UTF-8 JSON document
//   { "states": [...labels...], "kind": "affine",
//     "base":  N x N decimals, "coeff": N x N x N decimals }
// with coeff indexed [row][column][state], i.e. P_mu(i,j) = base[i][j] +
// sum_l coeff[i][j][l] * mu[l].
struct KernelFile {
    std::vector<std::string> states;
    AffineKernel kernel;
};

KernelFile parse_kernel_json(const std::string& text);
KernelFile load_kernel_file(const std::string& path);
std::string kernel_to_json(const AffineKernel& kernel, const std::vector<std::string>& labels);
void save_kernel_file(const std::string& path, const AffineKernel& kernel,
                      const std::vector<std::string>& labels);

// Shortest round-trip decimal rendering (via std::to_chars), so emitted CSVs
// are byte-stable.
std::string format_double(double v);

// CSV emitter. Header comment lines ('# key=value') carry the effective run
// configuration; timestamps and thread counts are deliberately excluded so a
// file is reproducible byte-for-byte from its own header.
class CsvWriter {
public:
    void config(const std::string& key, const std::string& value);
    void config(const std::string& key, double value) { config(key, format_double(value)); }
    void config(const std::string& key, std::uint64_t value) { config(key, std::to_string(value)); }
    void config(const std::string& key, int value) { config(key, std::to_string(value)); }
    void columns(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& cells);
    const std::string& str() const { return out_; }

private:
    std::string out_;
};

// Flat key=value block (one per line), the text form of a report.
std::string report_text(const CoefficientReport& report);
// One CSV row (plus header) with the same fields.
void report_csv(CsvWriter& csv, const CoefficientReport& report);

void decay_curve_csv(CsvWriter& csv, const DecayCurve& curve);
void lln_report_csv(CsvWriter& csv, const LLNReport& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace nlmc
