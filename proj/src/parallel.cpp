#include "loopform/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace loopform {

unsigned thread_count() {
    if (const char* env = std::getenv("LOOPFORM_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
            // unparsable values fall back to auto
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    const std::size_t workers = std::min<std::size_t>(thread_count(), n);
    if (workers == 1) {
        body(0, n);
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace loopform
