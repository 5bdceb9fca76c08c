#include "blf/parallel.hpp"

#include "blf/error.hpp"

namespace blf {

WorkerPool::WorkerPool(int n_workers) : n_workers_(n_workers) {
    if (n_workers < 1) throw InvalidArgument("worker count must be >= 1");
    for (int i = 0; i < n_workers - 1; ++i)
        threads_.emplace_back([this] { worker_loop(); });
}

WorkerPool::~WorkerPool() {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        stopping_ = true;
    }
    wake_.notify_all();
    for (auto& t : threads_) t.join();
}

void WorkerPool::run(int n_items, const std::function<void(int, int)>& body) {
    if (n_items <= 0) return;
    if (n_workers_ == 1 || threads_.empty()) {
        body(0, n_items);
        return;
    }

    const int n_ranges = std::min(n_workers_, n_items);
    const int chunk = (n_items + n_ranges - 1) / n_ranges;
    {
        std::unique_lock<std::mutex> lock(mutex_);
        ranges_.clear();
        for (int begin = 0; begin < n_items; begin += chunk)
            ranges_.emplace_back(begin, std::min(begin + chunk, n_items));
        next_range_ = 0;
        pending_ = static_cast<int>(ranges_.size());
        body_ = &body;
        ++generation_;
    }
    wake_.notify_all();

    // The caller participates too.
    for (;;) {
        std::pair<int, int> range;
        {
            std::unique_lock<std::mutex> lock(mutex_);
            if (next_range_ >= ranges_.size()) break;
            range = ranges_[next_range_++];
        }
        body(range.first, range.second);
        std::unique_lock<std::mutex> lock(mutex_);
        if (--pending_ == 0) done_.notify_all();
    }

    std::unique_lock<std::mutex> lock(mutex_);
    done_.wait(lock, [this] { return pending_ == 0; });
    body_ = nullptr;
}

void WorkerPool::worker_loop() {
    uint64_t seen_generation = 0;
    for (;;) {
        std::pair<int, int> range;
        const std::function<void(int, int)>* body;
        {
            std::unique_lock<std::mutex> lock(mutex_);
            wake_.wait(lock, [&] {
                return stopping_ ||
                       (body_ != nullptr && next_range_ < ranges_.size() &&
                        generation_ != seen_generation);
            });
            if (stopping_) return;
            if (next_range_ >= ranges_.size()) {
                seen_generation = generation_;
                continue;
            }
            range = ranges_[next_range_++];
            body = body_;
            if (next_range_ >= ranges_.size()) seen_generation = generation_;
        }
        (*body)(range.first, range.second);
        std::unique_lock<std::mutex> lock(mutex_);
        if (--pending_ == 0) done_.notify_all();
    }
}

}  // namespace blf
