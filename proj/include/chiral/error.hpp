#pragma once

#include <stdexcept>
#include <string>

namespace chiral {

/// Base class of every error raised by the library. `kind()` is a stable
/// machine-readable tag (e.g. "JacobiViolation") used by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define CHIRAL_DEFINE_ERROR(Name)                                            \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name, what) {}       \
    }

CHIRAL_DEFINE_ERROR(JacobiViolation);
CHIRAL_DEFINE_ERROR(AntisymmetryViolation);
CHIRAL_DEFINE_ERROR(FormNotInvariant);
CHIRAL_DEFINE_ERROR(SingularFormWhenNondegenerateRequired);
CHIRAL_DEFINE_ERROR(DegenerateForm);
CHIRAL_DEFINE_ERROR(RepresentationViolation);
CHIRAL_DEFINE_ERROR(NotASubalgebra);
CHIRAL_DEFINE_ERROR(TruncationOverflow);
CHIRAL_DEFINE_ERROR(MixedComplex);
CHIRAL_DEFINE_ERROR(PinningSuiteFailure);
CHIRAL_DEFINE_ERROR(NotAbelian);
CHIRAL_DEFINE_ERROR(HomotopyConditionsFailed);
CHIRAL_DEFINE_ERROR(HomotopyIdentityFailed);
CHIRAL_DEFINE_ERROR(BasicNotClosed);
CHIRAL_DEFINE_ERROR(NotACocycle);
CHIRAL_DEFINE_ERROR(MissingBetti);
CHIRAL_DEFINE_ERROR(C0OutOfRange);
CHIRAL_DEFINE_ERROR(ConfigError);
CHIRAL_DEFINE_ERROR(ParseError);

#undef CHIRAL_DEFINE_ERROR

}  // namespace chiral
