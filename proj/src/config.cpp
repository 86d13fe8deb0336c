#include "ustats/config.hpp"

#include <thread>

namespace ustats {

int Config::effective_threads() const {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace ustats
