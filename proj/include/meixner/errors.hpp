#ifndef MEIXNER_ERRORS_HPP
#define MEIXNER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace meixner {

// Base for all library errors. `kind()` is the stable machine-readable tag
// used by the CLI when emitting JSON error objects.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define MEIXNER_DEFINE_ERROR(Name)                              \
    class Name : public Error {                                 \
    public:                                                     \
        explicit Name(const std::string& what)                  \
            : Error(#Name, what) {}                             \
    }

MEIXNER_DEFINE_ERROR(IndexOutOfRange);
MEIXNER_DEFINE_ERROR(ConflictingEntry);
MEIXNER_DEFINE_ERROR(DimensionMismatch);
MEIXNER_DEFINE_ERROR(NotOrthogonal);
MEIXNER_DEFINE_ERROR(SingularCovariance);
MEIXNER_DEFINE_ERROR(PivotInconsistency);
MEIXNER_DEFINE_ERROR(IllConditioned);
MEIXNER_DEFINE_ERROR(RankDeficientFit);
MEIXNER_DEFINE_ERROR(DimensionNot3);
MEIXNER_DEFINE_ERROR(OutOfDomain);
MEIXNER_DEFINE_ERROR(DomainError);
MEIXNER_DEFINE_ERROR(InvalidParam);
MEIXNER_DEFINE_ERROR(InputError);
MEIXNER_DEFINE_ERROR(UsageError);

#undef MEIXNER_DEFINE_ERROR

} // namespace meixner

#endif
