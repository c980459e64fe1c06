#include "hagkit/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "hagkit/errors.hpp"

namespace hagkit {

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const char* env = std::getenv("HAGKIT_WORKERS");
    if (env == nullptr || *env == '\0') return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 4096)
        throw DataError(std::string("HAGKIT_WORKERS must be a positive integer, got '") + env + "'");
    return static_cast<int>(v);
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    std::exception_ptr first;
    std::mutex mu;
    std::vector<std::thread> threads;
    threads.reserve(w);
    for (std::size_t t = 0; t < w; ++t) {
        const std::size_t lo = n * t / w;
        const std::size_t hi = n * (t + 1) / w;
        threads.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!first) first = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    if (first) std::rethrow_exception(first);
}

}  // namespace hagkit
