#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace msw {

using Vec = std::vector<double>;

// File or parse failure (CLI exit 3).
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite intermediate, diverged iteration, exhausted rejection loop (CLI exit 4).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Bad arguments and configs map to std::invalid_argument (CLI exit 2).

// Runs fn(i) for i in [0, count). Each index must write only its own slot;
// callers reduce in index order afterwards, so results do not depend on the
// thread count.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace msw
