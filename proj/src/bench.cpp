#include "hagkit/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "hagkit/approximation.hpp"
#include "hagkit/errors.hpp"
#include "hagkit/parallel.hpp"

namespace hagkit {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<PhasePoint> random_points(const Basis& b, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double r = 2.0 * std::sqrt(b.epsilon());
    std::uniform_real_distribution<double> u(-r, r);
    std::vector<PhasePoint> pts(n);
    for (auto& pt : pts) {
        pt.x = b.q();
        pt.xi = b.p();
        for (int j = 0; j < b.dim(); ++j) pt.x(j) += u(rng);
        for (int j = 0; j < b.dim(); ++j) pt.xi(j) += u(rng);
    }
    return pts;
}

}  // namespace

std::vector<std::string> bench_methods() { return {"recurrence", "closed", "quadrature"}; }

BenchReport run_benchmark(const BenchSpec& spec) {
    if (spec.d < 1) throw DataError("bench dimension must be positive");
    if (spec.npoints == 0) throw DataError("bench needs at least one point");
    const auto known = bench_methods();
    for (const auto& m : spec.methods)
        if (std::find(known.begin(), known.end(), m) == known.end())
            throw DataError("unknown bench method '" + m + "'");
    const bool quad = std::find(spec.methods.begin(), spec.methods.end(), "quadrature") != spec.methods.end();
    if (quad && spec.d > 2) throw DomainError("quadrature method supports d <= 2");

    const Basis b(ParameterSet::standard(spec.d, spec.epsilon));
    const IndexSet set = hyperbolic_set(spec.d, spec.K);
    const auto pts = random_points(b, spec.npoints, spec.seed);
    const std::size_t n = set.size();
    const int workers = resolve_workers(spec.workers);

    BenchReport rep;
    rep.set_size = n;
    rep.npoints = pts.size();

    std::vector<CMat> ref(pts.size());
    const auto t0 = Clock::now();
    parallel_for(pts.size(), workers, [&](std::size_t i) { ref[i] = wigner_table(b, set, pts[i]).values; });
    const double t_rec = std::chrono::duration<double>(Clock::now() - t0).count();

    int max_deg = 0;
    for (std::size_t i = 0; i < n; ++i) max_deg = std::max(max_deg, set[i].modulus());
    Window yw = wavepacket_window(b, max_deg);
    yw.center = RVec::Zero(spec.d);
    yw.scale *= 2.0;
    QuadratureSpec qs;
    qs.nodes_per_axis = spec.quad_nodes;
    qs.truncation_radius = spec.quad_radius;

    double t_quad = 0.0;
    for (const auto& m : spec.methods) {
        BenchRow row;
        row.method = m;
        row.evaluations = n * n * pts.size();
        if (m == "recurrence") {
            row.seconds = t_rec;
            rep.rows.push_back(row);
            continue;
        }
        std::vector<double> dev(pts.size(), 0.0);
        const auto t1 = Clock::now();
        if (m == "closed") {
            parallel_for(pts.size(), workers, [&](std::size_t i) {
                double e = 0.0;
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t c = 0; c < n; ++c)
                        e = std::max(e, std::abs(wigner_closed(b, set[a], set[c], pts[i]) - ref[i](a, c)));
                dev[i] = e;
            });
        } else {
            const VectorFn F = [&](const RVec& x) {
                const auto v = wavepackets_eval(b, set, x);
                return CVec(Eigen::Map<const CVec>(v.data(), static_cast<Eigen::Index>(v.size())));
            };
            parallel_for(pts.size(), workers, [&](std::size_t i) {
                const QuadResultMat r = wigner_quadrature_matrix(F, b.epsilon(), pts[i], yw, qs);
                dev[i] = max_abs(CMat(r.value - ref[i]));
            });
        }
        row.seconds = std::chrono::duration<double>(Clock::now() - t1).count();
        row.max_deviation = *std::max_element(dev.begin(), dev.end());
        if (m == "quadrature") t_quad = row.seconds;
        rep.rows.push_back(row);
    }
    if (t_quad > 0.0 && t_rec > 0.0) rep.quadrature_over_recurrence = t_quad / t_rec;
    return rep;
}

}  // namespace hagkit
