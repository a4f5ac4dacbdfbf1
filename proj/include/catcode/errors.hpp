#pragma once

#include <stdexcept>
#include <string>

namespace catcode {

// Every failure the library can signal. The CLI maps categories to exit codes.
enum class Errc {
    // input/validation (exit 2)
    not_monotone,
    missing_zero_rate,
    negative_value,
    negative_rate,
    empty_payload,
    frame_too_short,
    length_mismatch,
    unknown_code,
    source_too_short,
    index_out_of_range,
    too_many_chunks,
    invalid_plan,
    invalid_code,
    invalid_value,
    bad_file,
    // runtime (exit 3)
    missing_entry,
    cap_exceeded,
    zero_baseline_stddev,
    internal,
    // solver (exit 4)
    infeasible,
    no_feasible_policy,
    // realization (exit 5)
    unrealizable_code,
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void throw_error(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Errc code, const std::string& msg) {
    if (!cond) throw_error(code, msg);
}

// Exit-code contract: 0 ok, 2 input, 3 runtime, 4 infeasible, 5 unrealizable.
inline int exit_code_for(Errc code) {
    switch (code) {
        case Errc::infeasible:
        case Errc::no_feasible_policy:
            return 4;
        case Errc::unrealizable_code:
            return 5;
        case Errc::missing_entry:
        case Errc::cap_exceeded:
        case Errc::zero_baseline_stddev:
        case Errc::internal:
            return 3;
        default:
            return 2;
    }
}

}  // namespace catcode
