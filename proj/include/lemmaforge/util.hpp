#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <string>

namespace lemmaforge {

// Writes to <path>.tmp.<pid> and renames onto the target in commit(); a
// destructor without commit() removes the temp file, so a crash or thrown
// exception never leaves a half-written output behind.
class AtomicFile {
 public:
  explicit AtomicFile(std::string path);
  ~AtomicFile();

  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  std::ofstream& stream() { return out_; }
  void commit();

 private:
  std::string path_;
  std::string tmp_path_;
  std::ofstream out_;
  bool committed_ = false;
};

// Shortest round-trip decimal form; infinities print as "inf"/"-inf".
std::string format_double(double v);

// cli_value > 0 wins; otherwise the LEMMAFORGE_THREADS environment variable;
// otherwise the hardware concurrency (at least 1).
int resolve_threads(int cli_value);

// Fixed work decomposition for the parallel helpers: [1, n] always splits
// into kParallelGrain-sized blocks, so block boundaries depend on n alone.
// Per-block partials combined in block order therefore reproduce bitwise
// for every thread count; threads only decide who runs which block.
inline constexpr std::uint64_t kParallelGrain = 256;

// Number of fixed-size blocks covering [1, n]; 0 when n is 0.
int chunk_count(std::uint64_t n);

// Runs chunk_fn(begin, end, block_index) over every block of [1, n], with
// up to `threads` workers pulling blocks off a shared counter.
void parallel_for(std::uint64_t n, int threads,
                  const std::function<void(std::uint64_t, std::uint64_t,
                                           int)>& chunk_fn);

}  // namespace lemmaforge
