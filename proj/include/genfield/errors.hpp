#ifndef GENFIELD_ERRORS_HPP
#define GENFIELD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace genfield {

// Reason codes for every contract violation and resource limit the toolkit
// can hit.  Expected negative outcomes (an enumeration finding nothing, a
// minimum not existing below a ceiling) are returned as empty optionals by
// the operations concerned, not thrown.
enum class errc {
    not_monic,
    reducible_or_undecided,
    basis_not_a_ring,
    basis_not_integral,
    not_squarefree,
    discriminants_not_coprime,
    f_not_totally_real,
    division_by_zero,
    field_mismatch,
    zero_element,
    precision_exhausted,
    internal_inconsistency,
    recognition_failed,
    hypothesis_violated,
    mu_totally_real,
    no_real_place,
    torsion_trivial,
    budget_exceeded,
    unknown_corpus_name,
    parse_error,
    dimension_mismatch,
    bad_argument,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::not_monic: return "NotMonic";
        case errc::reducible_or_undecided: return "ReducibleOrUndecided";
        case errc::basis_not_a_ring: return "BasisNotARing";
        case errc::basis_not_integral: return "BasisNotIntegral";
        case errc::not_squarefree: return "NotSquarefree";
        case errc::discriminants_not_coprime: return "DiscriminantsNotCoprime";
        case errc::f_not_totally_real: return "FNotTotallyReal";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::field_mismatch: return "FieldMismatch";
        case errc::zero_element: return "ZeroElement";
        case errc::precision_exhausted: return "PrecisionExhausted";
        case errc::internal_inconsistency: return "InternalInconsistency";
        case errc::recognition_failed: return "RecognitionFailed";
        case errc::hypothesis_violated: return "HypothesisViolated";
        case errc::mu_totally_real: return "MuTotallyReal";
        case errc::no_real_place: return "NoRealPlace";
        case errc::torsion_trivial: return "TorsionTrivial";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::unknown_corpus_name: return "UnknownCorpusName";
        case errc::parse_error: return "ParseError";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::bad_argument: return "BadArgument";
    }
    return "?";
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what_arg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what_arg), code_(code) {}
    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

} // namespace genfield

#endif
