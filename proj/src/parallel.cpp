#include "bpqm/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace bpqm {

namespace {

int env_threads() {
    if (const char* s = std::getenv("BPQM_THREADS")) {
        try {
            const int n = std::stoi(s);
            if (n >= 1) return n;
        } catch (...) {
        }
    }
    return 1;
}

std::atomic<int>& threads_setting() {
    static std::atomic<int> n{env_threads()};
    return n;
}

}  // namespace

int thread_count() { return threads_setting().load(std::memory_order_relaxed); }

void set_thread_count(int n) { threads_setting().store(n < 1 ? 1 : n, std::memory_order_relaxed); }

}  // namespace bpqm
