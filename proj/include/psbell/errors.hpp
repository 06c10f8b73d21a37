#ifndef PSBELL_ERRORS_HPP
#define PSBELL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace psbell {

// Thrown for malformed inputs: bad state/geometry specs, invalid parameter
// domains (s > 0, eta outside [0,1], inconsistent shape/squeeze combos).
// The CLI maps this to exit code 2.
class spec_error : public std::runtime_error {
public:
    explicit spec_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a numerical procedure cannot reach its requested tolerance
// (optimizer budget exhausted without convergence, eigen-solver failure,
// truncation hard limit exceeded). The CLI maps this to exit code 3.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// Fock-space truncation produced an unacceptable tail mass.
class truncation_error : public convergence_error {
public:
    truncation_error(const std::string& what, double tail)
        : convergence_error(what), tail_mass(tail) {}
    double tail_mass;
};

}  // namespace psbell

#endif
