#ifndef KALEIDO_ERRORS_HPP
#define KALEIDO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kaleido {

/// A physical or numerical input is outside the domain where the
/// construction is defined (non-positive mass, family parameter at a
/// divergent endpoint, non-unit reflection normal, ...). The message
/// names the constraint that failed.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// The mirror arrangement derived from a mass spectrum is not a
/// kaleidoscope: some pairwise mirror angle is not pi/n for any
/// admissible integer n, so sequential reflections generate an
/// infinite group.
class NotKaleidoscopicError : public std::runtime_error {
public:
    NotKaleidoscopicError(const std::string& what) : std::runtime_error(what) {}
};

/// Group closure exceeded the element budget. Under correct use this
/// means a non-kaleidoscopic root set slipped past diagram inference.
class ClosureOverflowError : public std::runtime_error {
public:
    ClosureOverflowError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kaleido

#endif  // KALEIDO_ERRORS_HPP
