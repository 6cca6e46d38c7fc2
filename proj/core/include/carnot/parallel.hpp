#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace carnot {

/// Global worker cap, set once by the CLI's --threads flag.
int effective_thread_count();
void set_thread_cap(int cap);

/// Deterministic chunked reduction: the range [0, n) is cut into fixed
/// chunks, chunk sums are produced in parallel, and the combination happens
/// in chunk order. The result is bit-identical for any thread count.
/// `chunk_sum(begin, end)` must return the (serial) sum over [begin, end).
double parallel_reduce(std::size_t n, std::size_t chunk_size,
                       const std::function<double(std::size_t, std::size_t)>& chunk_sum);

/// Kahan-compensated serial accumulator for the per-chunk sums.
class CompensatedSum {
public:
    void add(double x)
    {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

} // namespace carnot
