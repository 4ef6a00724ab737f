#include "singspec/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

#include "singspec/errors.hpp"

namespace singspec {

namespace {

std::atomic<int> g_threads{0};  // 0 = automatic

int default_threads() {
    if (const char* env = std::getenv("SINGSPEC_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

}  // namespace

void set_threads(int n) {
    if (n < 0) throw DomainError("thread count must be non-negative");
    g_threads.store(n);
}

int thread_count() {
    int n = g_threads.load();
    return n >= 1 ? n : default_threads();
}

namespace detail {

void parallel_for(int begin, int end, const std::function<void(int)>& body) {
    int count = end - begin;
    if (count <= 0) return;
    int nt = std::min(thread_count(), count);
    if (nt <= 1) {
        for (int i = begin; i < end; ++i) body(i);
        return;
    }
    std::atomic<int> next{begin};
    std::exception_ptr first_error = nullptr;
    std::mutex err_mutex;
    auto work = [&]() {
        try {
            while (true) {
                int i = next.fetch_add(1);
                if (i >= end) break;
                body(i);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int i = 0; i < nt; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

}  // namespace singspec
