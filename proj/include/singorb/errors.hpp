#pragma once

#include <stdexcept>
#include <string>

namespace singorb {

enum class errc {
    ok = 0,
    singular_position,       // cos x = 0 where the equation needs cos x != 0
    forbidden_velocity,      // b = 1
    singular_velocity,       // v = 1 in the quotient energy form
    not_applicable,          // operation undefined for this orbit class
    invalid_level,           // energy level outside its admissible range
    invalid_ratio,           // xi in {0, +1, -1}
    out_of_range,            // branch inversion target outside branch image
    step_failure,            // step controller underflowed the minimum step
    empty_curve,             // level-curve domain is empty
    too_close_to_crossing,   // finite-difference stencil straddles a crossing
    invalid_argument,
    io_failure,
};

const char* errc_name(errc e);

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace singorb
