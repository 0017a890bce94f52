#pragma once

#include <condition_variable>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "toroidq/errors.hpp"

namespace toroidq {

/// Run fn(0..count-1) on a bounded pool and return results in index order,
/// independent of scheduling.  A throwing fn aborts the map; sweeps that
/// want per-row error capture catch inside fn and store the message in the
/// row.
template <typename Row, typename Fn>
std::vector<Row> parallel_map(int count, int workers, Fn&& fn)
{
    if (count < 0) throw config_error("negative job count");
    std::vector<Row> rows(static_cast<std::size_t>(count));
    if (count == 0) return rows;
    workers = std::max(1, std::min(workers, count));

    if (workers == 1) {
        for (int i = 0; i < count; ++i) rows[i] = fn(i);
        return rows;
    }

    std::mutex mu;
    int next = 0;
    std::exception_ptr failure;
    auto body = [&] {
        while (true) {
            int job;
            {
                std::lock_guard lock(mu);
                if (failure || next >= count) return;
                job = next++;
            }
            try {
                Row row = fn(job);
                std::lock_guard lock(mu);
                rows[job] = std::move(row);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return rows;
}

/// Sweep grids: linearly or logarithmically spaced, endpoints included.
struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    bool log_scale = false;

    std::vector<double> values() const
    {
        if (count < 2) throw config_error("grid count must be >= 2");
        std::vector<double> v(count);
        if (log_scale) {
            if (start <= 0 || stop <= 0) {
                throw config_error("log grid needs positive endpoints");
            }
            const double la = std::log(start), lb = std::log(stop);
            for (int i = 0; i < count; ++i) {
                v[i] = std::exp(la + (lb - la) * i / (count - 1));
            }
        } else {
            for (int i = 0; i < count; ++i) {
                v[i] = start + (stop - start) * i / (count - 1);
            }
        }
        return v;
    }
};

} // namespace toroidq
