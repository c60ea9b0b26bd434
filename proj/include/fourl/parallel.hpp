#pragma once
#include <algorithm>
#include <complex>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <atomic>
#include <thread>
#include <vector>

namespace fourl {

// Worker count: FOURL_WORKERS if set, otherwise the hardware concurrency.
inline int defaultWorkers() {
    if (const char* env = std::getenv("FOURL_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) return w;
    }
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : static_cast<int>(h);
}

// Evaluates fn(i) for i in [0, n) and returns results in index order.
// Tasks are handed out dynamically; the output never depends on scheduling.
template <class T, class Fn>
std::vector<T> parallelMap(std::size_t n, Fn&& fn, int workers = 0) {
    std::vector<T> out(n);
    if (workers <= 0) workers = defaultWorkers();
    workers = static_cast<int>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex errMu;
    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(errMu);
                if (!err) err = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return out;
}

// Pairwise summation in canonical index order.
template <class T>
T pairwiseSum(const T* x, std::size_t n) {
    if (n == 0) return T{};
    if (n <= 8) {
        T s = x[0];
        for (std::size_t i = 1; i < n; ++i) s += x[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwiseSum(x, h) + pairwiseSum(x + h, n - h);
}

template <class T>
T pairwiseSum(const std::vector<T>& v) {
    return pairwiseSum(v.data(), v.size());
}

}  // namespace fourl
