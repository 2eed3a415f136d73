#include "core/threading.hpp"

#include <atomic>

namespace nnc {

ThreadPool::ThreadPool(int workers) {
    if (workers < 1) workers = 1;
    threads_.reserve(static_cast<size_t>(workers - 1));
    for (int i = 0; i < workers - 1; ++i) threads_.emplace_back([this] { worker_loop(); });
}

ThreadPool::~ThreadPool() {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        stop_ = true;
    }
    cv_start_.notify_all();
    for (auto& t : threads_) t.join();
}

void ThreadPool::worker_loop() {
    uint64_t seen = 0;
    for (;;) {
        Job* job = nullptr;
        {
            std::unique_lock<std::mutex> lock(mutex_);
            cv_start_.wait(lock, [&] { return stop_ || (job_ != nullptr && generation_ != seen); });
            if (stop_) return;
            seen = generation_;
            job = job_;
            job->pending.fetch_add(1, std::memory_order_relaxed);
        }
        run_chunks(*job);
        if (job->pending.fetch_sub(1, std::memory_order_acq_rel) == 1) cv_done_.notify_all();
    }
}

void ThreadPool::run_chunks(Job& job) {
    const size_t n_chunks = job.chunk ? (job.n + job.chunk - 1) / job.chunk : 0;
    for (;;) {
        const size_t k = job.next.fetch_add(1, std::memory_order_relaxed);
        if (k >= n_chunks) break;
        const size_t begin = k * job.chunk;
        const size_t end = std::min(begin + job.chunk, job.n);
        try {
            (*job.fn)(begin, end);
        } catch (...) {
            std::lock_guard<std::mutex> lock(job.error_mutex);
            if (!job.error) job.error = std::current_exception();
        }
    }
}

void ThreadPool::for_chunks(size_t n, size_t chunk, const std::function<void(size_t, size_t)>& fn) {
    if (n == 0) return;
    if (chunk == 0) chunk = 1;
    Job job;
    job.n = n;
    job.chunk = chunk;
    job.fn = &fn;

    if (!threads_.empty()) {
        std::lock_guard<std::mutex> lock(mutex_);
        job_ = &job;
        ++generation_;
        cv_start_.notify_all();
    }
    run_chunks(job);
    if (!threads_.empty()) {
        std::unique_lock<std::mutex> lock(mutex_);
        cv_done_.wait(lock, [&] { return job.pending.load(std::memory_order_acquire) == 0; });
        job_ = nullptr;
    }
    if (job.error) std::rethrow_exception(job.error);
}

}  // namespace nnc
