#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace chaoslab {

/// Worker count: CHAOSLAB_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
inline unsigned default_threads()
{
    if (const char* env = std::getenv("CHAOSLAB_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0)
                return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace chaoslab
