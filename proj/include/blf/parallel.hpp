#ifndef BLF_PARALLEL_HPP
#define BLF_PARALLEL_HPP

#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace blf {

// Fixed pool of workers for the chromatic field updates. `run` splits
// [0, n) into at most `workers()` contiguous ranges and blocks until all
// ranges finish. With a single worker everything runs inline on the caller.
// Work items must write disjoint locations; the pool adds no locking around
// the payload.
class WorkerPool {
  public:
    explicit WorkerPool(int n_workers);
    ~WorkerPool();

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    int workers() const { return n_workers_; }
    void run(int n_items, const std::function<void(int, int)>& body);

  private:
    void worker_loop();

    int n_workers_;
    std::vector<std::thread> threads_;
    std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable done_;
    const std::function<void(int, int)>* body_ = nullptr;
    std::vector<std::pair<int, int>> ranges_;
    std::size_t next_range_ = 0;
    int pending_ = 0;
    uint64_t generation_ = 0;
    bool stopping_ = false;
};

}  // namespace blf

#endif
