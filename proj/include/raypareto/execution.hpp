#pragma once

#include <cstddef>
#include <exception>

namespace raypareto {

/// Selects the OpenMP kernel or the serial reference loop.
enum class Execution { serial, parallel };

/// Runs fn(i) for i in [0, n). The serial branch is the reference the
/// parallel branch is tested against; fn must only write to slot i.
template <class Fn>
void for_each_index(Execution exec, std::size_t n, Fn&& fn) {
    if (exec == Execution::serial) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr failure;
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(raypareto_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace raypareto
