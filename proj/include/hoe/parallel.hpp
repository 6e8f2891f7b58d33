#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "hoe/errors.hpp"

namespace hoe {

/// Worker count: HOE_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
[[nodiscard]] std::size_t worker_count();

/// Evaluates fn(i) for i in [0, n) on contiguous chunks and returns the
/// results in index order. A library Error thrown for index i is rethrown as
/// SampleError(i); when several indices fail, the lowest one wins.
template <typename Fn>
auto parallel_map(std::size_t n, Fn&& fn) {
    using T = decltype(fn(std::size_t{}));
    std::vector<std::optional<T>> slots(n);
    const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(n, 1));
    std::vector<std::exception_ptr> errors(workers);

    auto run_chunk = [&](std::size_t w) {
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        for (std::size_t i = begin; i < end; ++i) {
            try {
                slots[i].emplace(fn(i));
            } catch (const SampleError&) {
                errors[w] = std::current_exception();
                return;
            } catch (const Error& e) {
                errors[w] = std::make_exception_ptr(SampleError(e, i));
                return;
            } catch (...) {
                errors[w] = std::current_exception();
                return;
            }
        }
    };

    if (workers <= 1) {
        run_chunk(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run_chunk, w);
        run_chunk(0);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    std::vector<T> out;
    out.reserve(n);
    for (auto& slot : slots) out.push_back(std::move(*slot));
    return out;
}

}  // namespace hoe
