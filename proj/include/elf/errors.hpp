#pragma once

#include <stdexcept>
#include <string>

namespace elf {

/// Failure categories raised by the library. The CLI maps each category to
/// a distinct process exit code (the enum value itself).
enum class Errc : int {
    parse_error = 10,
    duplicate_month = 11,
    empty_file = 12,
    io_error = 13,
    empty_result = 14,
    non_monthly_lead = 15,
    degenerate_split = 16,
    dimension_mismatch = 17,
    rank_deficient = 18,
    pivot_limit = 19,
    underdetermined = 20,
    non_positive_price = 21,
    zero_actual = 22,
    index_mismatch = 23,
    invalid_tau = 24,
    invalid_record = 25,
    invalid_config = 26,
};

constexpr const char* errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::parse_error: return "ParseError";
        case Errc::duplicate_month: return "DuplicateMonth";
        case Errc::empty_file: return "EmptyFile";
        case Errc::io_error: return "IoError";
        case Errc::empty_result: return "EmptyResult";
        case Errc::non_monthly_lead: return "NonMonthlyLead";
        case Errc::degenerate_split: return "DegenerateSplit";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::rank_deficient: return "RankDeficient";
        case Errc::pivot_limit: return "PivotLimit";
        case Errc::underdetermined: return "Underdetermined";
        case Errc::non_positive_price: return "NonPositivePrice";
        case Errc::zero_actual: return "ZeroActual";
        case Errc::index_mismatch: return "IndexMismatch";
        case Errc::invalid_tau: return "InvalidTau";
        case Errc::invalid_record: return "InvalidRecord";
        case Errc::invalid_config: return "InvalidConfig";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }
    int exit_code() const noexcept { return static_cast<int>(code_); }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace elf
