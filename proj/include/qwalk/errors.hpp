#pragma once

#include <stdexcept>

namespace qwalk {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Amplitude would leave the preallocated position window. The walk lives on
// an unbounded line; wrapping around would corrupt Bloch/LZ results, so this
// is always reported, never clipped.
struct window_error : error {
    using error::error;
};

struct config_error : error {
    using error::error;
};

} // namespace qwalk
