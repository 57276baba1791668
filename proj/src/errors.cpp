#include "homlab/errors.hpp"

namespace homlab {

const char* errc_name(errc kind) {
    switch (kind) {
        case errc::parse_error: return "ParseError";
        case errc::empty_subset: return "EmptySubset";
        case errc::unknown_element: return "UnknownElement";
        case errc::unknown_symbol: return "UnknownSymbol";
        case errc::signature_mismatch: return "SignatureMismatch";
        case errc::not_binary: return "NotBinary";
        case errc::bad_n: return "BadN";
        case errc::not_coprime: return "NotCoprime";
        case errc::improper_filter: return "ImproperFilter";
        case errc::not_ultrafilter: return "NotUltrafilter";
        case errc::not_containing: return "NotContaining";
        case errc::not_a_clique: return "NotAClique";
        case errc::invalid_homomorphism: return "InvalidHomomorphism";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::extraction_failure: return "ExtractionFailure";
        case errc::census_failure: return "CensusFailure";
        case errc::not_a_partial_order: return "NotAPartialOrder";
        case errc::validation_failure: return "ValidationFailure";
    }
    return "UnknownError";
}

Error::Error(errc kind, const std::string& message)
    : std::runtime_error(std::string(errc_name(kind)) + ": " + message), kind_(kind) {}

void fail(errc kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace homlab
