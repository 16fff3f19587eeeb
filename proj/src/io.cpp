#include "nlmc/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nlmc {

namespace {

using nlohmann::json;

std::vector<double> parse_matrix(const json& j, const char* name, std::size_t n) {
    if (!j.is_array() || j.size() != n)
        throw std::runtime_error(std::string("kernel file: '") + name + "' must be an array of " +
                                 std::to_string(n) + " rows");
    std::vector<double> out;
    out.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != n)
            throw std::runtime_error(std::string("kernel file: '") + name + "' row " +
                                     std::to_string(i + 1) + " must have " + std::to_string(n) +
                                     " entries");
        for (std::size_t k = 0; k < n; ++k) {
            if (!row[k].is_number())
                throw std::runtime_error(std::string("kernel file: '") + name + "' row " +
                                         std::to_string(i + 1) + ", field " + std::to_string(k + 1) +
                                         " is not a number");
            out.push_back(row[k].get<double>());
        }
    }
    return out;
}

}  // namespace

KernelFile parse_kernel_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("kernel file: ") + e.what());
    }
    if (!doc.is_object()) throw std::runtime_error("kernel file: top level must be an object");
    if (!doc.contains("kind") || !doc["kind"].is_string() || doc["kind"] != "affine")
        throw std::runtime_error("kernel file: field 'kind' must be the string \"affine\"");
    if (!doc.contains("states") || !doc["states"].is_array() || doc["states"].empty())
        throw std::runtime_error("kernel file: field 'states' must be a non-empty array of labels");

    std::vector<std::string> labels;
    std::set<std::string> seen;
    for (const auto& s : doc["states"]) {
        if (!s.is_string()) throw std::runtime_error("kernel file: state labels must be strings");
        std::string label = s.get<std::string>();
        if (!seen.insert(label).second)
            throw std::runtime_error("kernel file: duplicate state label '" + label + "'");
        labels.push_back(std::move(label));
    }
    std::size_t n = labels.size();

    if (!doc.contains("base")) throw std::runtime_error("kernel file: missing field 'base'");
    std::vector<double> base = parse_matrix(doc["base"], "base", n);

    if (!doc.contains("coeff")) throw std::runtime_error("kernel file: missing field 'coeff'");
    const json& jc = doc["coeff"];
    if (!jc.is_array() || jc.size() != n)
        throw std::runtime_error("kernel file: 'coeff' must be an array of " + std::to_string(n) +
                                 " matrices");
    std::vector<double> coeff;
    coeff.reserve(n * n * n);
    for (std::size_t i = 0; i < n; ++i) {
        std::string name = "coeff[" + std::to_string(i + 1) + "]";
        std::vector<double> block = parse_matrix(jc[i], name.c_str(), n);
        coeff.insert(coeff.end(), block.begin(), block.end());
    }

    return KernelFile{std::move(labels), AffineKernel(n, std::move(base), std::move(coeff))};
}

KernelFile load_kernel_file(const std::string& path) {
    try {
        return parse_kernel_json(read_file(path));
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string kernel_to_json(const AffineKernel& kernel, const std::vector<std::string>& labels) {
    std::size_t n = kernel.n_states();
    if (labels.size() != n) throw std::invalid_argument("kernel_to_json: wrong label count");
    json doc;
    doc["states"] = labels;
    doc["kind"] = "affine";
    json base = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < n; ++j) row.push_back(kernel.base_at(i, j));
        base.push_back(std::move(row));
    }
    doc["base"] = std::move(base);
    json coeff = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json mat = json::array();
        for (std::size_t j = 0; j < n; ++j) {
            json row = json::array();
            for (std::size_t l = 0; l < n; ++l) row.push_back(kernel.coeff_at(i, j, l));
            mat.push_back(std::move(row));
        }
        coeff.push_back(std::move(mat));
    }
    doc["coeff"] = std::move(coeff);
    return doc.dump(2) + "\n";
}

void save_kernel_file(const std::string& path, const AffineKernel& kernel,
                      const std::vector<std::string>& labels) {
    write_file(path, kernel_to_json(kernel, labels));
}

void CsvWriter::config(const std::string& key, const std::string& value) {
    out_ += "# " + key + "=" + value + "\n";
}

void CsvWriter::columns(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out_ += ',';
        out_ += names[i];
    }
    out_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ += ',';
        out_ += cells[i];
    }
    out_ += '\n';
}

std::string report_text(const CoefficientReport& r) {
    std::ostringstream os;
    os << "k=" << r.k << "\n";
    os << "alpha_k=" << format_double(r.alpha_k) << "\n";
    os << "lambda_k=" << format_double(r.lambda_k) << "\n";
    os << "lambda_1=" << format_double(r.lambda_1) << "\n";
    os << "regime=" << to_string(r.regime) << "\n";
    os << "grid_resolution=" << r.meta.grid_resolution << "\n";
    os << "sample_count=" << r.meta.sample_count << "\n";
    os << "seed=" << r.meta.seed << "\n";
    os << "evaluations=" << r.meta.evaluations << "\n";
    os << "tie_tol=" << format_double(r.meta.tie_tol) << "\n";
    os << "min_sep=" << format_double(r.meta.min_sep) << "\n";
    os << "alpha_extremum_on_vertices=" << (r.meta.alpha_extremum_on_vertices ? "true" : "false")
       << "\n";
    return os.str();
}

void report_csv(CsvWriter& csv, const CoefficientReport& r) {
    csv.columns({"k", "alpha_k", "lambda_k", "lambda_1", "regime", "grid_resolution",
                 "sample_count", "seed", "evaluations", "alpha_extremum_on_vertices"});
    csv.row({std::to_string(r.k), format_double(r.alpha_k), format_double(r.lambda_k),
             format_double(r.lambda_1), std::string(to_string(r.regime)),
             std::to_string(r.meta.grid_resolution), std::to_string(r.meta.sample_count),
             std::to_string(r.meta.seed), std::to_string(r.meta.evaluations),
             r.meta.alpha_extremum_on_vertices ? "true" : "false"});
}

void decay_curve_csv(CsvWriter& csv, const DecayCurve& curve) {
    csv.columns({"n", "empirical_tv", "bound"});
    for (const auto& row : curve.rows)
        csv.row({std::to_string(row.n), format_double(row.empirical_tv), format_double(row.bound)});
}

void lln_report_csv(CsvWriter& csv, const LLNReport& r) {
    csv.config("n_steps", r.n_steps);
    csv.config("n_paths", r.n_paths);
    csv.config("grand_mean", r.grand_mean);
    csv.config("sample_std", r.sample_std);
    csv.config("target", r.target);
    csv.config("abs_error", r.abs_error);
    csv.config("z_score", r.z_score);
    if (!r.warning.empty()) csv.config("warning", r.warning);
    csv.columns({"path", "sample_mean"});
    for (std::size_t p = 0; p < r.sample_means.size(); ++p)
        csv.row({std::to_string(p), format_double(r.sample_means[p])});
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace nlmc
