// errors.hpp — Exception type for numerical-solver failures
//
// Input/domain violations throw std::invalid_argument; anything that goes wrong
// *inside* a solve (non-Hurwitz drift, unphysical spectra, non-convergence,
// residual blow-up) throws SolverError so callers can tell the two apart.
#pragma once

#include <stdexcept>
#include <string>

namespace nesskit {

class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nesskit
