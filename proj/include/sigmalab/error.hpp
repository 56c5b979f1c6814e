#pragma once

#include <stdexcept>
#include <string>

namespace sigmalab {

enum class ErrorKind {
    invalid_argument,  // precondition or parameter-domain violation
    budget,            // enumeration or search budget exceeded
    no_minorant,       // alpha at or below j_{d/2-1,1}/pi
    no_decomposition,  // no hyperplane cover within r_max
    rank_deficient,
    numerical,         // a certificate that must hold did not, or a solver diverged
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool ok, const std::string& what, ErrorKind kind = ErrorKind::invalid_argument)
{
    if (!ok) throw Error(kind, what);
}

}  // namespace sigmalab
