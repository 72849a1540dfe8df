#include "core/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <thread>

#include "core/types.hpp"

namespace wlab::parallel {
namespace {

thread_local bool t_inside_region = false;

class Pool {
 public:
  ~Pool() { resize(1); }

  void resize(int n) {
    std::lock_guard run_lock(run_mutex_);
    {
      std::lock_guard lk(m_);
      stop_ = true;
    }
    cv_.notify_all();
    for (auto& w : workers_) w.join();
    workers_.clear();
    stop_ = false;
    threads_ = std::max(1, n);
    for (int i = 1; i < threads_; ++i) workers_.emplace_back([this] { worker_loop(); });
  }

  int threads() const { return threads_; }

  void run(std::size_t n, const std::function<void(std::size_t)>& body) {
    if (threads_ <= 1 || n <= 1 || t_inside_region) {
      serial(n, body);
      return;
    }
    std::lock_guard run_lock(run_mutex_);
    {
      std::lock_guard lk(m_);
      job_ = &body;
      total_ = n;
      next_.store(0);
      error_ = nullptr;
      busy_ = static_cast<int>(workers_.size());
      ++generation_;
    }
    cv_.notify_all();
    drain();
    std::unique_lock lk(m_);
    done_cv_.wait(lk, [this] { return busy_ == 0; });
    job_ = nullptr;
    if (error_) std::rethrow_exception(error_);
  }

 private:
  static void serial(std::size_t n, const std::function<void(std::size_t)>& body) {
    const bool outer = t_inside_region;
    t_inside_region = true;
    try {
      for (std::size_t i = 0; i < n; ++i) body(i);
    } catch (...) {
      t_inside_region = outer;
      throw;
    }
    t_inside_region = outer;
  }

  void drain() {
    t_inside_region = true;
    for (;;) {
      const std::size_t i = next_.fetch_add(1);
      if (i >= total_) break;
      try {
        (*job_)(i);
      } catch (...) {
        std::lock_guard lk(m_);
        if (!error_) error_ = std::current_exception();
        next_.store(total_);
      }
    }
    t_inside_region = false;
  }

  void worker_loop() {
    std::size_t seen = 0;
    for (;;) {
      {
        std::unique_lock lk(m_);
        cv_.wait(lk, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
      }
      drain();
      {
        std::lock_guard lk(m_);
        --busy_;
      }
      done_cv_.notify_one();
    }
  }

  std::mutex run_mutex_;
  std::mutex m_;
  std::condition_variable cv_;
  std::condition_variable done_cv_;
  std::vector<std::thread> workers_;
  const std::function<void(std::size_t)>* job_ = nullptr;
  std::atomic<std::size_t> next_{0};
  std::size_t total_ = 0;
  std::size_t generation_ = 0;
  int busy_ = 0;
  int threads_ = 1;
  bool stop_ = false;
  std::exception_ptr error_;
};

Pool& pool() {
  static Pool p;
  return p;
}

}  // namespace

void set_thread_count(int n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "thread count must be at least 1");
  if (n != pool().threads()) pool().resize(n);
}

int thread_count() { return pool().threads(); }

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body) { pool().run(n, body); }

}  // namespace wlab::parallel
