#pragma once

#include <algorithm>
#include <cmath>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace digiweyl {

struct ComplexSum {
    double re = 0.0;
    double im = 0.0;
};

// Streaming pairwise summation: terms are summed in chunks of kChunk and
// the chunk sums are merged as a binary counter, so the rounding pattern
// depends only on the order of the terms.
class PairwiseAccumulator {
public:
    static constexpr std::uint32_t kChunk = 128;

    void add(double re, double im) noexcept {
        cur_.re += re;
        cur_.im += im;
        if (++cur_n_ == kChunk) {
            carry();
        }
    }

    ComplexSum total() const noexcept {
        ComplexSum t{};
        for (std::size_t i = 0; i < levels_.size(); ++i) {
            if (occupied_[i]) {
                t.re += levels_[i].re;
                t.im += levels_[i].im;
            }
        }
        t.re += cur_.re;
        t.im += cur_.im;
        return t;
    }

private:
    void carry() {
        ComplexSum c = cur_;
        std::size_t i = 0;
        for (; i < levels_.size() && occupied_[i]; ++i) {
            c.re = levels_[i].re + c.re;
            c.im = levels_[i].im + c.im;
            occupied_[i] = false;
        }
        if (i == levels_.size()) {
            levels_.push_back(c);
            occupied_.push_back(true);
        } else {
            levels_[i] = c;
            occupied_[i] = true;
        }
        cur_ = {};
        cur_n_ = 0;
    }

    ComplexSum cur_{};
    std::uint32_t cur_n_ = 0;
    std::vector<ComplexSum> levels_;
    std::vector<bool> occupied_;
};

// Compensated (Neumaier) sum of block results in ascending block order.
inline ComplexSum combine_ordered(const std::vector<ComplexSum>& parts) noexcept {
    double sre = 0.0, cre = 0.0, sim = 0.0, cim = 0.0;
    auto step = [](double& s, double& c, double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x)) {
            c += (s - t) + x;
        } else {
            c += (x - t) + s;
        }
        s = t;
    };
    for (const auto& p : parts) {
        step(sre, cre, p.re);
        step(sim, cim, p.im);
    }
    return {sre + cre, sim + cim};
}

// Runs fn(block) for block = 0..blocks-1 on up to `threads` workers and
// returns the results indexed by block. The result layout does not depend
// on the thread count.
template <class Result, class Fn>
std::vector<Result> run_blocks(std::size_t blocks, unsigned threads, Fn&& fn) {
    std::vector<Result> out(blocks);
    const unsigned workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, blocks)));
    if (workers <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) {
            out[b] = fn(b);
        }
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t b = next++; b < blocks; b = next++) {
            try {
                out[b] = fn(b);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

// Resolves 0 to the machine's hardware concurrency.
inline unsigned effective_threads(unsigned requested) noexcept {
    if (requested != 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace digiweyl
