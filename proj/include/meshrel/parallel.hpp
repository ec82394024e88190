#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>

namespace meshrel {

/// Upper bound on OpenMP threads for subsequent kernels (0 = runtime default).
void set_thread_count(int n);
int thread_count();

/// `#pragma omp parallel for schedule(dynamic)` over [0, n). The first
/// exception thrown by any iteration is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t n, Body&& body)
{
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
}

} // namespace meshrel
