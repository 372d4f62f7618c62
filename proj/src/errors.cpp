#include "benfordsep/errors.hpp"

namespace benfordsep {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::unreadable_file: return "unreadable_file";
        case ErrorCode::unsupported_format: return "unsupported_format";
        case ErrorCode::bit_depth_unsupported: return "bit_depth_unsupported";
        case ErrorCode::empty_dataset: return "empty_dataset";
        case ErrorCode::unknown_label_directory: return "unknown_label_directory";
        case ErrorCode::qf_out_of_range: return "qf_out_of_range";
        case ErrorCode::zero_has_no_first_digit: return "zero_has_no_first_digit";
        case ErrorCode::non_finite_input: return "non_finite_input";
        case ErrorCode::invalid_params: return "invalid_params";
        case ErrorCode::empty_stream: return "empty_stream";
        case ErrorCode::model_has_zero_bin: return "model_has_zero_bin";
        case ErrorCode::no_valid_start: return "no_valid_start";
        case ErrorCode::degenerate_image: return "degenerate_image";
        case ErrorCode::all_images_degenerate: return "all_images_degenerate";
        case ErrorCode::header_mismatch: return "header_mismatch";
        case ErrorCode::malformed_row: return "malformed_row";
        case ErrorCode::sink_write_failure: return "sink_write_failure";
        case ErrorCode::class_too_small: return "class_too_small";
        case ErrorCode::class_absent: return "class_absent";
        case ErrorCode::single_class: return "single_class";
        case ErrorCode::arity_mismatch: return "arity_mismatch";
    }
    return "unknown";
}

} // namespace benfordsep
