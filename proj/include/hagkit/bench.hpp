#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hagkit/quadrature.hpp"

namespace hagkit {

// Times the Wigner evaluation paths on all pairs (k, l) of a hyperbolic set
// at random phase-space points. The recurrence table is the reference for
// the deviation column.
struct BenchSpec {
    int d = 1;
    int K = 20;
    std::size_t npoints = 10000;
    std::vector<std::string> methods{"recurrence", "closed", "quadrature"};
    double epsilon = 1.0;
    std::uint64_t seed = 20240601;
    int workers = 1;
    int quad_nodes = 160;
    double quad_radius = 5.0;
};

struct BenchRow {
    std::string method;
    double seconds = 0.0;
    double max_deviation = 0.0;  // against the recurrence
    std::size_t evaluations = 0;  // number of W_{kl} values computed
};

struct BenchReport {
    std::size_t set_size = 0;
    std::size_t npoints = 0;
    std::vector<BenchRow> rows;
    // quadrature time / recurrence time, or 0 when either is missing
    double quadrature_over_recurrence = 0.0;
};

std::vector<std::string> bench_methods();
BenchReport run_benchmark(const BenchSpec& spec);

}  // namespace hagkit
