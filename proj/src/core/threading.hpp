#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace nnc {

// Fixed pool of workers executing chunked loops. The chunk grid is a function
// of (n, chunk) only, never of the worker count, so any computation whose
// chunks write disjoint outputs produces bit-identical results for every
// worker count, including 1.
class ThreadPool {
public:
    explicit ThreadPool(int workers = 1);
    ~ThreadPool();

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    int workers() const { return static_cast<int>(threads_.size()) + 1; }

    // Calls fn(begin, end) for each chunk [k*chunk, min((k+1)*chunk, n)).
    // Blocks until all chunks are done; rethrows the first chunk exception.
    void for_chunks(size_t n, size_t chunk, const std::function<void(size_t, size_t)>& fn);

private:
    struct Job {
        size_t n = 0;
        size_t chunk = 1;
        const std::function<void(size_t, size_t)>* fn = nullptr;
        std::atomic<size_t> next{0};
        std::atomic<int> pending{0};
        std::exception_ptr error;
        std::mutex error_mutex;
    };

    void worker_loop();
    void run_chunks(Job& job);

    std::vector<std::thread> threads_;
    std::mutex mutex_;
    std::condition_variable cv_start_;
    std::condition_variable cv_done_;
    Job* job_ = nullptr;
    uint64_t generation_ = 0;
    bool stop_ = false;
};

}  // namespace nnc
