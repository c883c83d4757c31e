#include "casimir/numerics.hpp"

#include <exception>
#include <mutex>

namespace casimir::num {

void parallel_for(long begin, long end, int workers,
                  const std::function<void(long)>& body) {
    const long n = end - begin;
    if (n <= 0) return;
    if (workers <= 1 || n == 1) {
        for (long i = begin; i < end; ++i) body(i);
        return;
    }
    if (workers > n) workers = static_cast<int>(n);

    std::atomic<long> next{begin};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto run = [&] {
        try {
            for (long i; (i = next.fetch_add(1)) < end;) body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
            next.store(end);
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(workers) - 1);
    for (int w = 1; w < workers; ++w) threads.emplace_back(run);
    run();
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace casimir::num
