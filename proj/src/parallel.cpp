#include "epkit/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace epkit {

int thread_budget() {
    if (const char* env = std::getenv("GENINV_THREADS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            // fall through to hardware concurrency on unparseable values
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    int budget = threads > 0 ? threads : thread_budget();
    budget = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(budget), count));
    if (budget <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(budget));
    for (int t = 0; t < budget; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = static_cast<std::size_t>(t); i < count;
                 i += static_cast<std::size_t>(budget))
                fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace epkit
