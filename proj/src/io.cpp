#include "hagkit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hagkit/errors.hpp"

namespace hagkit {

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RVec read_vector(const json& j, const char* name) {
    if (!j.contains(name) || !j[name].is_array()) throw IoError(std::string("field '") + name + "' must be an array");
    const auto& a = j[name];
    RVec v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_number()) throw IoError(std::string("field '") + name + "' must hold numbers");
        v(i) = a[i].get<double>();
    }
    return v;
}

RMat read_matrix(const json& j, const std::string& name) {
    if (!j.is_array()) throw IoError("'" + name + "' must be a 2-D array");
    const std::size_t rows = j.size();
    std::size_t cols = rows ? (j[0].is_array() ? j[0].size() : 0) : 0;
    RMat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) throw IoError("'" + name + "' is ragged");
        for (std::size_t c = 0; c < cols; ++c) {
            if (!j[r][c].is_number()) throw IoError("'" + name + "' must hold numbers");
            m(r, c) = j[r][c].get<double>();
        }
    }
    return m;
}

CMat read_complex(const json& j, const char* name) {
    if (!j.contains(name) || !j[name].is_object()) throw IoError(std::string("field '") + name + "' must be an object");
    const auto& o = j[name];
    if (!o.contains("re") || !o.contains("im"))
        throw IoError(std::string("field '") + name + "' needs 're' and 'im'");
    const RMat re = read_matrix(o["re"], std::string(name) + ".re");
    const RMat im = read_matrix(o["im"], std::string(name) + ".im");
    if (re.rows() != im.rows() || re.cols() != im.cols())
        throw IoError(std::string("field '") + name + "': re and im shapes differ");
    CMat m(re.rows(), re.cols());
    m.real() = re;
    m.imag() = im;
    return m;
}

json complex_json(const CMat& m) {
    json re = json::array(), im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json a = json::array(), b = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            a.push_back(m(r, c).real());
            b.push_back(m(r, c).imag());
        }
        re.push_back(a);
        im.push_back(b);
    }
    return json{{"re", re}, {"im", im}};
}

}  // namespace

ParameterSet parse_params_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed params JSON: ") + e.what());
    }
    if (!j.is_object()) throw IoError("params JSON must be an object");
    if (!j.contains("epsilon") || !j["epsilon"].is_number()) throw IoError("field 'epsilon' must be a number");
    ParameterSet ps;
    ps.epsilon = j["epsilon"].get<double>();
    ps.q = read_vector(j, "q");
    ps.p = read_vector(j, "p");
    ps.Q = read_complex(j, "Q");
    ps.P = read_complex(j, "P");
    return ps;
}

ParameterSet load_params(const std::string& path) { return parse_params_json(slurp(path)); }

std::string params_to_json(const ParameterSet& ps) {
    json j;
    j["epsilon"] = ps.epsilon;
    j["q"] = std::vector<double>(ps.q.data(), ps.q.data() + ps.q.size());
    j["p"] = std::vector<double>(ps.p.data(), ps.p.data() + ps.p.size());
    j["Q"] = complex_json(ps.Q);
    j["P"] = complex_json(ps.P);
    return j.dump(2);
}

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<AxisSpec> parse_grid(const std::string& text) {
    std::vector<AxisSpec> axes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        AxisSpec a;
        char c1 = 0, c2 = 0;
        std::istringstream is(item);
        if (!(is >> a.min >> c1 >> a.max >> c2 >> a.count) || c1 != ':' || c2 != ':' || !(is >> std::ws).eof())
            throw DataError("bad grid axis '" + item + "', expected min:max:count");
        if (!(a.min < a.max) || a.count < 2)
            throw DataError("grid axis '" + item + "' needs min < max and count >= 2");
        axes.push_back(a);
    }
    if (axes.empty()) throw DataError("empty grid specification");
    return axes;
}

std::vector<std::vector<double>> expand_grid(const std::vector<AxisSpec>& axes) {
    std::size_t total = 1;
    for (const auto& a : axes) total *= static_cast<std::size_t>(a.count);
    std::vector<std::vector<double>> rows(total, std::vector<double>(axes.size()));
    for (std::size_t t = 0; t < total; ++t) {
        std::size_t r = t;
        for (std::size_t k = axes.size(); k-- > 0;) {
            const auto& a = axes[k];
            const std::size_t i = r % a.count;
            r /= a.count;
            rows[t][k] = a.min + (a.max - a.min) * double(i) / (a.count - 1);
        }
    }
    return rows;
}

std::vector<std::vector<double>> read_csv_rows(const std::string& path, int ncols) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first_data = true;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            while (end && (*end == ' ' || *end == '\t')) ++end;
            if (end == cell.c_str() || (end && *end != '\0')) {
                numeric = false;
                break;
            }
            row.push_back(v);
        }
        if (!numeric) {
            if (first_data) {
                first_data = false;
                continue;  // header
            }
            throw IoError(path + ":" + std::to_string(lineno) + ": non-numeric cell");
        }
        first_data = false;
        if (static_cast<int>(row.size()) != ncols)
            throw IoError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(ncols) +
                          " columns, found " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvWriter::meta(const std::string& key, const std::string& value) {
    os_ << "# " << key << ": " << value << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
    os_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << format_double(values[i]);
    os_ << "\n";
}

void write_coefficients(const std::string& path, const CoefficientFile& f) {
    json j;
    j["format"] = "hagkit-coefficients";
    j["params_hash"] = hash_hex(f.params_hash);
    j["dimension"] = f.coeffs.set.dim();
    j["K"] = f.K;
    j["function"] = f.function;
    j["bessel_defect"] = f.bessel_defect;
    j["psi_norm2"] = f.psi_norm2;
    if (f.l2_residual >= 0.0) j["l2_residual"] = f.l2_residual;
    json idx = json::array(), re = json::array(), im = json::array();
    for (std::size_t i = 0; i < f.coeffs.set.size(); ++i) {
        idx.push_back(f.coeffs.set[i].entries());
        re.push_back(f.coeffs.coeffs[i].real());
        im.push_back(f.coeffs.coeffs[i].imag());
    }
    j["indices"] = idx;
    j["re"] = re;
    j["im"] = im;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    // 17 digits so the coefficients round-trip
    out << j.dump(1) << "\n";
    if (!out) throw IoError("write to '" + path + "' failed");
}

CoefficientFile read_coefficients(const std::string& path) {
    json j;
    try {
        j = json::parse(slurp(path));
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed coefficient file: ") + e.what());
    }
    try {
        CoefficientFile f;
        if (j.value("format", "") != "hagkit-coefficients") throw IoError("not a coefficient file");
        f.params_hash = std::stoull(j.at("params_hash").get<std::string>(), nullptr, 16);
        const int d = j.at("dimension").get<int>();
        f.K = j.value("K", 0);
        f.function = j.value("function", "");
        f.bessel_defect = j.at("bessel_defect").get<double>();
        f.psi_norm2 = j.value("psi_norm2", 0.0);
        f.l2_residual = j.value("l2_residual", -1.0);
        std::vector<MultiIndex> idx;
        for (const auto& k : j.at("indices")) idx.emplace_back(k.get<std::vector<int>>());
        const auto re = j.at("re").get<std::vector<double>>();
        const auto im = j.at("im").get<std::vector<double>>();
        if (re.size() != idx.size() || im.size() != idx.size()) throw IoError("coefficient arrays differ in length");
        // keep the values aligned with the sorted set
        std::vector<std::pair<MultiIndex, cplx>> pairs;
        for (std::size_t i = 0; i < idx.size(); ++i) pairs.emplace_back(idx[i], cplx(re[i], im[i]));
        f.coeffs.set = IndexSet(d, idx);
        if (f.coeffs.set.size() != idx.size()) throw IoError("duplicate indices in coefficient file");
        f.coeffs.coeffs.assign(idx.size(), 0.0);
        for (const auto& [k, c] : pairs) f.coeffs.coeffs[f.coeffs.set.find(k)] = c;
        return f;
    } catch (const json::exception& e) {
        throw IoError(std::string("coefficient file schema error: ") + e.what());
    } catch (const StructuralError& e) {
        throw IoError(std::string("coefficient file: ") + e.what());
    }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr,
                          const std::vector<std::pair<std::string, std::string>>& meta) {
    CsvWriter w(os);
    for (const auto& [k, v] : meta) w.meta(k, v);
    w.meta("completed", tr.completed ? "true" : "false");
    if (!tr.diagnostic.empty()) w.meta("diagnostic", tr.diagnostic);
    w.meta("final_drift", format_double(tr.final_drift));
    if (tr.states.empty()) return;
    const int d = tr.states.front().params.dim();
    std::vector<std::string> cols{"t"};
    for (int j = 0; j < d; ++j) cols.push_back("q" + std::to_string(j + 1));
    for (int j = 0; j < d; ++j) cols.push_back("p" + std::to_string(j + 1));
    for (const char* m : {"Q", "P"})
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                const std::string base = std::string(m) + std::to_string(r + 1) + std::to_string(c + 1);
                cols.push_back(base + "_re");
                cols.push_back(base + "_im");
            }
    cols.push_back("S");
    cols.push_back("residual");
    w.header(cols);
    for (const auto& s : tr.states) {
        std::vector<double> row{s.t};
        for (int j = 0; j < d; ++j) row.push_back(s.params.q(j));
        for (int j = 0; j < d; ++j) row.push_back(s.params.p(j));
        for (const CMat* m : {&s.params.Q, &s.params.P})
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) {
                    row.push_back((*m)(r, c).real());
                    row.push_back((*m)(r, c).imag());
                }
        row.push_back(s.action);
        row.push_back(symplectic_residual(s.params));
        w.row(row);
    }
}

}  // namespace hagkit
