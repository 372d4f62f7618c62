#pragma once

#include <stdexcept>
#include <string>

namespace benfordsep {

enum class ErrorCode {
    unreadable_file,
    unsupported_format,
    bit_depth_unsupported,
    empty_dataset,
    unknown_label_directory,
    qf_out_of_range,
    zero_has_no_first_digit,
    non_finite_input,
    invalid_params,
    empty_stream,
    model_has_zero_bin,
    no_valid_start,
    degenerate_image,
    all_images_degenerate,
    header_mismatch,
    malformed_row,
    sink_write_failure,
    class_too_small,
    class_absent,
    single_class,
    arity_mismatch,
};

const char* error_code_name(ErrorCode code);

/// Exception carrying a machine-checkable code next to the human message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace benfordsep
