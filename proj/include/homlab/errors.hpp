#pragma once

#include <stdexcept>
#include <string>

namespace homlab {

// Failure categories. The CLI maps these onto process exit codes; library
// callers can switch on kind() for precise handling.
enum class errc {
    parse_error,
    empty_subset,
    unknown_element,
    unknown_symbol,
    signature_mismatch,
    not_binary,
    bad_n,
    not_coprime,
    improper_filter,
    not_ultrafilter,
    not_containing,
    not_a_clique,
    invalid_homomorphism,
    budget_exceeded,

    // Theorem guards. At this scale the guarded claims are provable, so
    // hitting one of these means an implementation bug, not bad input.
    extraction_failure,
    census_failure,
    not_a_partial_order,
    validation_failure,
};

const char* errc_name(errc kind);

class Error : public std::runtime_error {
public:
    Error(errc kind, const std::string& message);
    errc kind() const { return kind_; }

private:
    errc kind_;
};

[[noreturn]] void fail(errc kind, const std::string& message);

}  // namespace homlab
