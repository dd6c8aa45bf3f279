#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace lmpred
{
// Thread budget: an explicit positive request wins, then LMPRED_THREADS,
// then the hardware concurrency.
int resolve_threads(int requested);

// Calls fn(i) for i in [0, count) on up to `threads` workers. Results must be
// written by index so the outcome does not depend on scheduling. The first
// exception (lowest index) is rethrown.
template<class F>
void parallel_for(std::size_t count, int threads, F&& fn)
{
    std::size_t workers = std::min<std::size_t>(threads > 0 ? threads : 1, count);
    std::vector<std::exception_ptr> errors(count);
    auto run = [&](std::atomic<std::size_t>& next) {
        for (std::size_t i; (i = next.fetch_add(1)) < count;)
        {
            try
            {
                fn(i);
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };
    std::atomic<std::size_t> next{0};
    if (workers <= 1)
    {
        run(next);
    }
    else
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] { run(next); });
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

}  // namespace lmpred
