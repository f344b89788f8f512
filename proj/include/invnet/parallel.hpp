#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace invnet {

// Independent work items (sweep cells, trajectory sample times, echelon
// disaggregations) run either serially or across OpenMP threads. Results are
// written by index, so both policies produce bit-identical output.
enum class ExecutionPolicy { serial, parallel };

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Exceptions thrown by a work item are captured and rethrown after the loop;
// they must not unwind through the OpenMP region.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, ExecutionPolicy policy = ExecutionPolicy::parallel) {
#ifdef _OPENMP
    if (policy == ExecutionPolicy::parallel && count > 1) {
        std::exception_ptr error = nullptr;
        #pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
            try {
                fn(static_cast<std::size_t>(i));
            } catch (...) {
                #pragma omp critical(invnet_parallel_for_error)
                {
                    if (!error) error = std::current_exception();
                }
            }
        }
        if (error) std::rethrow_exception(error);
        return;
    }
#else
    (void)policy;
#endif
    for (std::size_t i = 0; i < count; ++i) {
        fn(i);
    }
}

}  // namespace invnet
