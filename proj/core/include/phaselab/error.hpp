#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace phaselab {

// Input outside the mathematical domain of an operation (bad precision,
// out-of-range pair index, non-normalized amplitudes, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Request exceeds what an explicit simulation is willing to allocate.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The LP solver could not reach a verified verdict.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, long iterations, double pivot_tolerance)
        : std::runtime_error(describe(what, iterations, pivot_tolerance)),
          reason_(what), iterations_(iterations), pivot_tolerance_(pivot_tolerance) {}

    // The message without the diagnostic suffix.
    const std::string& reason() const noexcept { return reason_; }
    long iterations() const noexcept { return iterations_; }
    double pivot_tolerance() const noexcept { return pivot_tolerance_; }

private:
    static std::string describe(const std::string& what, long iterations, double tol) {
        std::ostringstream os;
        os << what << " (iterations=" << iterations << ", pivot_tol=" << tol << ")";
        return os.str();
    }

    std::string reason_;
    long iterations_;
    double pivot_tolerance_;
};

// A certificate could not be built for the requested budget.
class ConstructionError : public std::runtime_error {
public:
    ConstructionError(const std::string& what, long largest_provable_n)
        : std::runtime_error(what), largest_provable_n_(largest_provable_n) {}

    // Largest N for which the modified polynomial is still nonnegative on
    // every column m/2^k, m <= N; -1 if none.
    long largest_provable_n() const noexcept { return largest_provable_n_; }

private:
    long largest_provable_n_;
};

}  // namespace phaselab
