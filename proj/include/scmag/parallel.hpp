#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace scmag {

enum class Execution { Serial, Parallel };

// Number of OpenMP threads used by Execution::Parallel (1 without OpenMP).
int max_threads();
void set_threads(int n);

// Runs body(i) for i in [0, n). Parallel runs use an OpenMP static schedule;
// the first exception thrown by any iteration is rethrown after the loop.
template <class Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
    if (exec == Execution::Serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex guard;
    const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(guard);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace scmag
