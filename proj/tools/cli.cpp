#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <regex>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hagkit/approximation.hpp"
#include "hagkit/bench.hpp"
#include "hagkit/dynamics.hpp"
#include "hagkit/errors.hpp"
#include "hagkit/io.hpp"
#include "hagkit/parallel.hpp"
#include "hagkit/special.hpp"
#include "support/acceptance.hpp"

namespace hagkit::cli {

namespace {

const cplx I(0.0, 1.0);

// Output goes to a file, or to the caller's stream for "-".
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw IoError("cannot write '" + path + "'");
            os_ = file_.get();
        }
    }
    std::ostream& stream() { return *os_; }
    void finish() {
        os_->flush();
        if (!*os_) throw IoError("write failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

Basis load_basis(const std::string& path, double tol) {
    ParameterSet ps = load_params(path);
    ValidationReport rep;
    try {
        rep = validate(ps, tol);
    } catch (const StructuralError& e) {
        throw IoError(std::string("params schema: ") + e.what());
    }
    if (!rep.passed) throw DataError("parameters fail validation\n" + rep.to_string());
    return Basis(std::move(ps), tol);
}

MultiIndex parse_index(const std::string& text, int d, const char* what) {
    MultiIndex k = parse_multi_index(text);
    if (k.dim() != d)
        throw DataError(std::string(what) + " has " + std::to_string(k.dim()) + " entries, parameters have d = " +
                        std::to_string(d));
    return k;
}

std::vector<std::vector<double>> read_points(const std::string& points, const std::string& grid, int ncols) {
    if (points.empty() == grid.empty()) throw DataError("give exactly one of --points or --grid");
    if (!points.empty()) return read_csv_rows(points, ncols);
    const auto axes = parse_grid(grid);
    if (static_cast<int>(axes.size()) != ncols)
        throw DataError("grid has " + std::to_string(axes.size()) + " axes, expected " + std::to_string(ncols));
    return expand_grid(axes);
}

std::vector<PhasePoint> to_phase_points(const std::vector<std::vector<double>>& rows, int d) {
    std::vector<PhasePoint> pts(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        pts[i].x = RVec(d);
        pts[i].xi = RVec(d);
        for (int j = 0; j < d; ++j) {
            pts[i].x(j) = rows[i][j];
            pts[i].xi(j) = rows[i][d + j];
        }
    }
    return pts;
}

std::string row_text(const std::vector<double>& row) {
    std::string s = "(";
    for (std::size_t j = 0; j < row.size(); ++j) s += (j ? ", " : "") + format_double(row[j]);
    return s + ")";
}

void check_finite(const std::vector<cplx>& vals, const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (!std::isfinite(vals[i].real()) || !std::isfinite(vals[i].imag()))
            throw NumericalError("non-finite value at point " + std::to_string(i) + " " + row_text(rows[i]));
}

std::vector<std::string> coord_names(int d, bool phase) {
    std::vector<std::string> c;
    for (int j = 0; j < d; ++j) c.push_back("x" + std::to_string(j + 1));
    if (phase)
        for (int j = 0; j < d; ++j) c.push_back("xi" + std::to_string(j + 1));
    return c;
}

void write_table(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& meta,
                 const std::vector<std::string>& coords, const std::vector<std::vector<double>>& rows,
                 const std::vector<cplx>& vals, bool real_only) {
    CsvWriter w(os);
    for (const auto& [k, v] : meta) w.meta(k, v);
    std::vector<std::string> cols = coords;
    if (real_only) {
        cols.push_back("value");
    } else {
        cols.push_back("re");
        cols.push_back("im");
    }
    w.header(cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<double> r = rows[i];
        r.push_back(vals[i].real());
        if (!real_only) r.push_back(vals[i].imag());
        w.row(r);
    }
}

std::vector<std::pair<std::string, std::string>> base_meta(const std::string& cmd, const Basis& b, double tol) {
    return {{"hagkit", cmd},
            {"params_hash", hash_hex(params_hash(b.params()))},
            {"dimension", std::to_string(b.dim())},
            {"epsilon", format_double(b.epsilon())},
            {"validation_tol", format_double(tol)}};
}

QuadratureSpec parse_quad(const std::string& text, const QuadratureSpec& fallback) {
    if (text.empty()) return fallback;
    QuadratureSpec s = fallback;
    std::string name = "trapezoid", count = text;
    if (const auto pos = text.find(':'); pos != std::string::npos) {
        name = text.substr(0, pos);
        count = text.substr(pos + 1);
    }
    if (name == "trapezoid")
        s.scheme = Scheme::trapezoid;
    else if (name == "gauss-hermite")
        s.scheme = Scheme::gauss_hermite;
    else
        throw DataError("unknown quadrature scheme '" + name + "' (trapezoid or gauss-hermite)");
    try {
        std::size_t used = 0;
        s.nodes_per_axis = std::stoi(count, &used);
        if (used != count.size()) throw std::invalid_argument(count);
    } catch (const std::logic_error&) {
        throw DataError("bad quadrature node count '" + count + "'");
    }
    if (s.nodes_per_axis < 2) throw DataError("quadrature needs at least 2 nodes per axis");
    return s;
}

std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const double x = std::strtod(item.c_str(), &end);
        while (end && *end == ' ') ++end;
        if (end == item.c_str() || *end != '\0') throw DataError("bad number '" + item + "'");
        v.push_back(x);
    }
    return v;
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> v;
    for (double x : parse_numbers(text)) {
        if (x != std::floor(x)) throw DataError("expected integers in '" + text + "'");
        v.push_back(static_cast<int>(x));
    }
    return v;
}

struct Builtin {
    std::string description;
    ComplexFn fn;
};

// builtin:shifted-gaussian(q0,p0,sigma) with scalars broadcast to every axis
// or (q0_1..q0_d, p0_1..p0_d, sigma); builtin:hermite-product(k_1,..,k_d).
Builtin parse_builtin(const std::string& spec, const Basis& b) {
    static const std::regex re(R"(builtin:([a-z-]+)\((.*)\))");
    std::smatch m;
    if (!std::regex_match(spec, m, re)) throw DataError("bad builtin function '" + spec + "'");
    const std::string name = m[1];
    const std::vector<double> args = parse_numbers(m[2]);
    const int d = b.dim();
    const double eps = b.epsilon();
    if (name == "shifted-gaussian") {
        RVec q0(d), p0(d);
        double sigma = 0.0;
        if (args.size() == 3) {
            q0.setConstant(args[0]);
            p0.setConstant(args[1]);
            sigma = args[2];
        } else if (static_cast<int>(args.size()) == 2 * d + 1) {
            for (int j = 0; j < d; ++j) {
                q0(j) = args[j];
                p0(j) = args[d + j];
            }
            sigma = args[2 * d];
        } else {
            throw DataError("shifted-gaussian takes (q0, p0, sigma) or 2d+1 numbers");
        }
        if (!(sigma > 0.0)) throw DataError("shifted-gaussian needs sigma > 0");
        const double c = std::pow(kPi * sigma * sigma, -0.25 * d);
        return {spec, [=](const RVec& x) {
                    const RVec y = x - q0;
                    return c * std::exp(-y.squaredNorm() / (2.0 * sigma * sigma) + I * p0.dot(y) / eps);
                }};
    }
    if (name == "hermite-product") {
        if (static_cast<int>(args.size()) != d) throw DataError("hermite-product needs d indices");
        std::vector<int> k;
        for (double a : args) {
            if (a < 0 || a != std::floor(a)) throw DataError("hermite-product indices must be non-negative integers");
            k.push_back(static_cast<int>(a));
        }
        const double c = std::pow(eps, -0.25 * d);
        return {spec, [=](const RVec& x) {
                    double v = c;
                    for (int j = 0; j < d; ++j) v *= hermite_function(k[j], x(j) / std::sqrt(eps));
                    return cplx(v, 0.0);
                }};
    }
    throw DataError("unknown builtin '" + name + "' (shifted-gaussian, hermite-product)");
}

struct Samples {
    std::vector<std::vector<double>> axes;
    std::vector<cplx> values;
    std::vector<std::vector<double>> rows;
};

// Uniform tensor grid samples: columns x_1..x_d, re, im; last axis fastest.
Samples read_samples(const std::string& path, int d) {
    Samples s;
    s.rows = read_csv_rows(path, d + 2);
    if (s.rows.empty()) throw IoError("no samples in '" + path + "'");
    s.axes.resize(d);
    for (int j = 0; j < d; ++j) {
        std::set<double> u;
        for (const auto& r : s.rows) u.insert(r[j]);
        s.axes[j].assign(u.begin(), u.end());
    }
    std::size_t total = 1;
    for (const auto& a : s.axes) total *= a.size();
    if (total != s.rows.size()) throw DataError("samples do not form a full tensor grid");
    for (std::size_t t = 0; t < s.rows.size(); ++t) {
        std::size_t r = t;
        for (int j = d - 1; j >= 0; --j) {
            const std::size_t i = r % s.axes[j].size();
            r /= s.axes[j].size();
            if (s.rows[t][j] != s.axes[j][i]) throw DataError("samples are not in row-major grid order");
        }
        s.values.emplace_back(s.rows[t][d], s.rows[t][d + 1]);
    }
    return s;
}

struct Global {
    int workers = 0;
};

int cmd_validate(const std::string& file, double tol, std::ostream& out) {
    ParameterSet ps = load_params(file);
    ValidationReport rep;
    try {
        rep = validate(ps, tol);
    } catch (const StructuralError& e) {
        throw IoError(std::string("params schema: ") + e.what());
    }
    out << rep.to_string();
    return rep.passed ? kOk : kUsage;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hagedorn wavepacket toolkit"};
    app.require_subcommand(1);
    Global g;
    app.add_option("--workers", g.workers, "worker threads (default: HAGKIT_WORKERS or 1)")
        ->check(CLI::PositiveNumber);

    std::string file, out_path = "-", k_text, l_text, method, points, grid, quad, function, coeffs, potential,
                                       methods_text, criteria;
    double tol = kDefaultTol, T = 0.0, dt = 0.0, epsilon = 1.0;
    int nodes = 0, d = 1, K = 20;
    std::string K_text;
    std::size_t npoints = 10000;
    bool verbose = false;

    auto* validate_cmd = app.add_subcommand("validate", "check the symplecticity relations of a params file");
    validate_cmd->add_option("file", file, "params JSON")->required();
    validate_cmd->add_option("--tol", tol, "residual threshold");

    auto add_common = [&](CLI::App* c, bool phase) {
        c->add_option("file", file, "params JSON")->required();
        c->add_option("--tol", tol, "validation threshold");
        c->add_option("--points", points, phase ? "CSV with columns x..., xi..." : "CSV with columns x...");
        c->add_option("--grid", grid, "min:max:count per axis, comma separated");
        c->add_option("--out", out_path, "output CSV ('-' for stdout)");
    };
    auto* eval_cmd = app.add_subcommand("eval", "evaluate phi_k on points");
    add_common(eval_cmd, false);
    eval_cmd->add_option("--k", k_text, "multi-index, e.g. 1,0")->required();

    auto* wigner_cmd = app.add_subcommand("wigner", "Wigner transform W(phi_k, phi_l)");
    add_common(wigner_cmd, true);
    wigner_cmd->add_option("--k", k_text, "first multi-index")->required();
    wigner_cmd->add_option("--l", l_text, "second multi-index (default: k)");
    wigner_cmd->add_option("--method", method, "closed | recurrence | quadrature")
        ->check(CLI::IsMember({"closed", "recurrence", "quadrature"}));
    wigner_cmd->add_option("--nodes", nodes, "quadrature nodes per axis");

    auto* fbi_cmd = app.add_subcommand("fbi", "FBI transform of phi_k");
    add_common(fbi_cmd, true);
    fbi_cmd->add_option("--k", k_text, "multi-index")->required();
    fbi_cmd->add_option("--method", method, "closed | quadrature")->check(CLI::IsMember({"closed", "quadrature"}));
    fbi_cmd->add_option("--nodes", nodes, "quadrature nodes per axis");

    auto* husimi_cmd = app.add_subcommand("husimi", "Husimi transform of phi_k");
    add_common(husimi_cmd, true);
    husimi_cmd->add_option("--k", k_text, "multi-index")->required();
    husimi_cmd->add_option("--method", method, "closed | quadrature")->check(CLI::IsMember({"closed", "quadrature"}));
    husimi_cmd->add_option("--nodes", nodes, "quadrature nodes per axis");

    auto* project_cmd = app.add_subcommand("project", "project a function onto a hyperbolic set");
    project_cmd->add_option("file", file, "params JSON")->required();
    project_cmd->add_option("--tol", tol, "validation threshold");
    project_cmd->add_option("--function", function, "builtin:<name>(args) or samples CSV")->required();
    project_cmd->add_option("--K", K_text, "hyperbolic cutoff; a comma list runs a convergence study")->required();
    project_cmd->add_option("--quad", quad, "[trapezoid:|gauss-hermite:]nodes");
    project_cmd->add_option("--out", out_path, "coefficient JSON (last K of a study)")->required();

    auto* wignerfun_cmd = app.add_subcommand("wignerfun", "Wigner transform of a projected function");
    add_common(wignerfun_cmd, true);
    wignerfun_cmd->add_option("--coeffs", coeffs, "coefficient JSON from project")->required();

    auto* propagate_cmd = app.add_subcommand("propagate", "semiclassical parameter propagation");
    propagate_cmd->add_option("file", file, "params JSON")->required();
    propagate_cmd->add_option("--tol", tol, "validation threshold");
    propagate_cmd->add_option("--potential", potential, "harmonic | quartic | quadratic potential JSON")
        ->required();
    propagate_cmd->add_option("--T", T, "final time")->required();
    propagate_cmd->add_option("--dt", dt, "time step")->required();
    propagate_cmd->add_option("--out", out_path, "trajectory CSV ('-' for stdout)");

    auto* bench_cmd = app.add_subcommand("bench", "time the Wigner evaluation paths");
    bench_cmd->add_option("--d", d, "dimension");
    bench_cmd->add_option("--K", K, "hyperbolic cutoff");
    bench_cmd->add_option("--npoints", npoints, "number of phase-space points");
    bench_cmd->add_option("--method-list", methods_text, "comma list of recurrence, closed, quadrature");
    bench_cmd->add_option("--epsilon", epsilon, "semiclassical parameter");
    bench_cmd->add_option("--out", out_path, "report CSV ('-' for stdout)");

    auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance suite");
    selftest_cmd->add_option("--criteria", criteria, "comma list of criterion numbers (default: all)");
    selftest_cmd->add_flag("--verbose,-v", verbose, "print every sub-check");
    selftest_cmd->add_option("--npoints", npoints, "benchmark points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "hagkit: " << e.what() << "\n";
        return kUsage;
    }

    try {
        const int workers = resolve_workers(g.workers);

        if (*validate_cmd) return cmd_validate(file, tol, out);

        if (*eval_cmd) {
            const Basis b = load_basis(file, tol);
            const MultiIndex k = parse_index(k_text, b.dim(), "--k");
            const auto rows = read_points(points, grid, b.dim());
            const IndexSet set = IndexSet::box(k);
            const std::size_t pos = static_cast<std::size_t>(set.find(k));
            std::vector<cplx> vals(rows.size());
            parallel_for(rows.size(), workers, [&](std::size_t i) {
                const RVec x = Eigen::Map<const RVec>(rows[i].data(), b.dim());
                vals[i] = wavepackets_eval(b, set, x)[pos];
            });
            check_finite(vals, rows);
            Sink sink(out_path, out);
            auto meta = base_meta("eval", b, tol);
            meta.emplace_back("k", k.to_string());
            write_table(sink.stream(), meta, coord_names(b.dim(), false), rows, vals, false);
            sink.finish();
            return kOk;
        }

        if (*wigner_cmd || *fbi_cmd || *husimi_cmd) {
            const std::string cmd = *wigner_cmd ? "wigner" : *fbi_cmd ? "fbi" : "husimi";
            if (method.empty()) method = "closed";
            const Basis b = load_basis(file, tol);
            if (method == "quadrature" && b.dim() > 2)
                throw DataError("--method quadrature supports d <= 2");
            const MultiIndex k = parse_index(k_text, b.dim(), "--k");
            const MultiIndex l = l_text.empty() ? k : parse_index(l_text, b.dim(), "--l");
            const auto rows = read_points(points, grid, 2 * b.dim());
            const auto pts = to_phase_points(rows, b.dim());
            std::vector<cplx> vals(rows.size());
            QuadratureSpec qs;
            qs.nodes_per_axis = nodes > 0 ? nodes : 200;
            std::function<cplx(const PhasePoint&)> f;
            IndexSet set;
            if (cmd == "wigner") {
                if (method == "closed") {
                    f = [&](const PhasePoint& pt) { return wigner_closed(b, k, l, pt); };
                } else if (method == "recurrence") {
                    MultiIndex top(b.dim());
                    for (int j = 0; j < b.dim(); ++j) top[j] = std::max(k[j], l[j]);
                    set = IndexSet::box(top);
                    f = [&](const PhasePoint& pt) { return wigner_table(b, set, pt).at(set, k, l); };
                } else {
                    Window yw = wavepacket_window(b, std::max(k.modulus(), l.modulus()));
                    yw.center = RVec::Zero(b.dim());
                    yw.scale *= 2.0;
                    f = [&, yw](const PhasePoint& pt) {
                        const auto fk = [&](const RVec& x) { return wavepacket_eval(b, k, x); };
                        const auto fl = [&](const RVec& x) { return wavepacket_eval(b, l, x); };
                        return wigner_quadrature(fk, fl, b.epsilon(), pt, yw, qs).value;
                    };
                }
            } else {
                const Window w = wavepacket_window(b, k.modulus());
                std::function<cplx(const PhasePoint&)> t;
                if (method == "closed")
                    t = [&](const PhasePoint& pt) { return fbi_closed(b, k, pt); };
                else
                    t = [&, w](const PhasePoint& pt) {
                        const auto fk = [&](const RVec& x) { return wavepacket_eval(b, k, x); };
                        return fbi_quadrature(fk, b.epsilon(), pt, w, qs).value;
                    };
                if (cmd == "fbi")
                    f = t;
                else if (method == "closed")
                    f = [&](const PhasePoint& pt) { return cplx(husimi(b, k, pt), 0.0); };
                else
                    f = [t](const PhasePoint& pt) { return cplx(std::norm(t(pt)), 0.0); };
            }
            parallel_for(pts.size(), workers, [&](std::size_t i) { vals[i] = f(pts[i]); });
            check_finite(vals, rows);
            Sink sink(out_path, out);
            auto meta = base_meta(cmd, b, tol);
            meta.emplace_back("method", method);
            meta.emplace_back("k", k.to_string());
            if (cmd == "wigner") meta.emplace_back("l", l.to_string());
            if (method == "quadrature") meta.emplace_back("quadrature_nodes", std::to_string(qs.nodes_per_axis));
            write_table(sink.stream(), meta, coord_names(b.dim(), true), rows, vals, cmd == "husimi");
            sink.finish();
            return kOk;
        }

        if (*project_cmd) {
            const Basis b = load_basis(file, tol);
            const std::vector<int> Ks = parse_ints(K_text);
            if (Ks.empty()) throw DataError("--K needs at least one value");
            for (int v : Ks)
                if (v < 1) throw DataError("--K values must be >= 1");
            const bool builtin = function.rfind("builtin:", 0) == 0;
            Builtin fn;
            Samples samples;
            if (builtin)
                fn = parse_builtin(function, b);
            else
                samples = read_samples(function, b.dim());

            out << "# project " << function << "  params_hash " << hash_hex(params_hash(b.params())) << "\n";
            out << "K,size,bessel_defect,l2_residual,truncation_warning\n";
            CoefficientFile cf;
            for (int Kv : Ks) {
                const IndexSet set = hyperbolic_set(b.dim(), Kv);
                Projection pr;
                double resid = -1.0;
                if (builtin) {
                    const QuadratureSpec spec = parse_quad(quad, default_projection_spec(b));
                    const Window w = wavepacket_window(b, set.max_modulus());
                    pr = project(fn.fn, b, set, spec, w);
                    const ErrorReport er = error_report(fn.fn, pr.coeffs, b, spec, w);
                    resid = er.l2_residual;
                } else {
                    pr = project_samples(samples.axes, samples.values, b, set);
                    double cell = 1.0;
                    for (const auto& a : samples.axes) cell *= a.size() > 1 ? (a.back() - a.front()) / (a.size() - 1) : 1.0;
                    double acc = 0.0;
                    for (std::size_t t = 0; t < samples.rows.size(); ++t) {
                        const RVec x = Eigen::Map<const RVec>(samples.rows[t].data(), b.dim());
                        acc += std::norm(samples.values[t] - reconstruct(pr.coeffs, b, x));
                    }
                    resid = std::sqrt(acc * cell);
                }
                out << Kv << "," << set.size() << "," << format_double(pr.bessel_defect) << ","
                    << format_double(resid) << "," << (pr.truncation_warning ? "yes" : "no") << "\n";
                if (pr.truncation_warning)
                    err << "hagkit: warning: quadrature window truncates the integrand at K = " << Kv << "\n";
                cf.params_hash = params_hash(b.params());
                cf.K = Kv;
                cf.bessel_defect = pr.bessel_defect;
                cf.l2_residual = resid;
                cf.psi_norm2 = pr.psi_norm2;
                cf.function = function;
                cf.coeffs = pr.coeffs;
            }
            for (const auto& c : cf.coeffs.coeffs)
                if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                    throw NumericalError("non-finite projection coefficient");
            write_coefficients(out_path, cf);
            return kOk;
        }

        if (*wignerfun_cmd) {
            const Basis b = load_basis(file, tol);
            const CoefficientFile cf = read_coefficients(coeffs);
            if (cf.params_hash != params_hash(b.params()))
                throw DataError("coefficient file was made for params " + hash_hex(cf.params_hash) + ", not " +
                                hash_hex(params_hash(b.params())) + " (stale file?)");
            if (cf.coeffs.set.dim() != b.dim()) throw DataError("coefficient dimension does not match params");
            const auto rows = read_points(points, grid, 2 * b.dim());
            const auto pts = to_phase_points(rows, b.dim());
            const auto w = wigner_of_function(cf.coeffs, b, pts, workers);
            std::vector<cplx> vals(w.begin(), w.end());
            check_finite(vals, rows);
            Sink sink(out_path, out);
            auto meta = base_meta("wignerfun", b, tol);
            meta.emplace_back("function", cf.function);
            meta.emplace_back("K", std::to_string(cf.K));
            meta.emplace_back("bessel_defect", format_double(cf.bessel_defect));
            write_table(sink.stream(), meta, coord_names(b.dim(), true), rows, vals, true);
            sink.finish();
            return kOk;
        }

        if (*propagate_cmd) {
            const Basis b = load_basis(file, tol);
            const int dim = b.dim();
            PotentialModel V = PotentialModel::harmonic(dim);
            if (potential == "quartic") {
                V = PotentialModel::quartic(dim);
            } else if (potential != "harmonic") {
                std::ifstream in(potential);
                if (!in) throw IoError("cannot open potential '" + potential + "'");
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(in);
                    const auto H = j.at("H").get<std::vector<std::vector<double>>>();
                    if (static_cast<int>(H.size()) != dim) throw IoError("potential H must be d x d");
                    RMat Hm(dim, dim);
                    for (int r = 0; r < dim; ++r) {
                        if (static_cast<int>(H[r].size()) != dim) throw IoError("potential H must be d x d");
                        for (int c = 0; c < dim; ++c) Hm(r, c) = H[r][c];
                    }
                    RVec gv = RVec::Zero(dim);
                    if (j.contains("g")) {
                        const auto gg = j["g"].get<std::vector<double>>();
                        if (static_cast<int>(gg.size()) != dim) throw IoError("potential g must have d entries");
                        for (int c = 0; c < dim; ++c) gv(c) = gg[c];
                    }
                    V = PotentialModel::quadratic(Hm, gv, j.value("v0", 0.0));
                } catch (const nlohmann::json::exception& e) {
                    throw IoError(std::string("potential file: ") + e.what());
                }
            }
            if (!(T > 0.0) || !(dt > 0.0)) throw DataError("--T and --dt must be positive");
            const Trajectory tr = propagate(initial_state(b.params()), V, T, dt, StepOptions{1e-8, tol});
            Sink sink(out_path, out);
            auto meta = base_meta("propagate", b, tol);
            meta.emplace_back("potential", potential);
            meta.emplace_back("T", format_double(T));
            meta.emplace_back("dt", format_double(dt));
            write_trajectory_csv(sink.stream(), tr, meta);
            sink.finish();
            if (!tr.completed) throw NumericalError("propagation stopped early: " + tr.diagnostic);
            return kOk;
        }

        if (*bench_cmd) {
            BenchSpec spec;
            spec.d = d;
            spec.K = K;
            spec.npoints = npoints;
            spec.epsilon = epsilon;
            spec.workers = workers;
            if (!methods_text.empty()) {
                spec.methods.clear();
                std::stringstream ss(methods_text);
                std::string m;
                while (std::getline(ss, m, ',')) spec.methods.push_back(m);
            }
            if (spec.d > 2 && std::find(spec.methods.begin(), spec.methods.end(), "quadrature") != spec.methods.end())
                throw DataError("quadrature method supports d <= 2");
            const BenchReport rep = run_benchmark(spec);
            Sink sink(out_path, out);
            std::ostream& os = sink.stream();
            os << "# hagkit: bench\n# dimension: " << spec.d << "\n# K: " << spec.K << "\n# set_size: " << rep.set_size
               << "\n# npoints: " << rep.npoints << "\n# workers: " << workers << "\n";
            if (rep.quadrature_over_recurrence > 0.0)
                os << "# quadrature_over_recurrence: " << format_double(rep.quadrature_over_recurrence) << "\n";
            os << "method,seconds,max_abs_deviation,evaluations\n";
            for (const auto& r : rep.rows)
                os << r.method << "," << format_double(r.seconds) << "," << format_double(r.max_deviation) << ","
                   << r.evaluations << "\n";
            sink.finish();
            return kOk;
        }

        if (*selftest_cmd) {
            testing::AcceptanceOptions opt;
            opt.workers = workers;
            opt.verbose = verbose;
            opt.bench_points = npoints;
            std::vector<int> ids;
            if (!criteria.empty()) ids = parse_ints(criteria);
            for (int id : ids)
                if (id < 1 || id > testing::kCriterionCount) throw DataError("no criterion " + std::to_string(id));
            const int failures = testing::run_acceptance(ids, opt, out);
            return failures == 0 ? kOk : kNumerical;
        }
    } catch (const Error& e) {
        err << "hagkit: " << to_string(e.kind()) << ": " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::io: return kIo;
            case ErrorKind::numerical:
            case ErrorKind::resource:
            case ErrorKind::internal: return kNumerical;
            default: return kUsage;
        }
    } catch (const std::exception& e) {
        err << "hagkit: error: " << e.what() << "\n";
        return kNumerical;
    }
    return kUsage;
}

}  // namespace hagkit::cli
