#include "lemmaforge/util.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <system_error>
#include <thread>
#include <vector>

namespace lemmaforge {

AtomicFile::AtomicFile(std::string path) : path_(std::move(path)) {
  tmp_path_ = path_ + ".tmp." + std::to_string(::getpid());
  out_.open(tmp_path_, std::ios::binary | std::ios::trunc);
  if (!out_) {
    throw std::runtime_error("cannot open " + tmp_path_ + " for writing");
  }
}

AtomicFile::~AtomicFile() {
  if (!committed_) {
    out_.close();
    std::remove(tmp_path_.c_str());
  }
}

void AtomicFile::commit() {
  out_.flush();
  if (!out_) {
    throw std::runtime_error("write failed: " + tmp_path_);
  }
  out_.close();
  if (std::rename(tmp_path_.c_str(), path_.c_str()) != 0) {
    std::remove(tmp_path_.c_str());
    throw std::runtime_error("cannot rename " + tmp_path_ + " to " + path_);
  }
  committed_ = true;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("to_chars failed");
  return std::string(buf, end);
}

int resolve_threads(int cli_value) {
  if (cli_value > 0) return cli_value;
  if (const char* env = std::getenv("LEMMAFORGE_THREADS")) {
    int v = 0;
    auto [p, ec] = std::from_chars(env, env + std::string_view(env).size(), v);
    if (ec == std::errc{} && *p == '\0' && v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

int chunk_count(std::uint64_t n) {
  return static_cast<int>((n + kParallelGrain - 1) / kParallelGrain);
}

void parallel_for(std::uint64_t n, int threads,
                  const std::function<void(std::uint64_t, std::uint64_t,
                                           int)>& chunk_fn) {
  if (n == 0) return;
  const int chunks = chunk_count(n);
  auto run_block = [&](int c) {
    const std::uint64_t begin =
        1 + static_cast<std::uint64_t>(c) * kParallelGrain;
    const std::uint64_t end = std::min(n, begin + kParallelGrain - 1) + 1;
    chunk_fn(begin, end, c);
  };
  const int workers = std::min(threads < 1 ? 1 : threads, chunks);
  if (workers <= 1) {
    for (int c = 0; c < chunks; ++c) run_block(c);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
        run_block(c);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace lemmaforge
