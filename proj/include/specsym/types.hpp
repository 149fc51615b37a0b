#pragma once

#include <stdexcept>
#include <string>

namespace specsym {

/// Relative tolerances; absolute thresholds are obtained by scaling with
/// max(1, ||A||_max) of the matrix under analysis.
struct Tolerances {
    double eps_eig = 1e-8;
    double eps_vec = 1e-7;
    double eps_rank = 1e-6;

    struct Scaled {
        double eig;
        double vec;
        double rank;
    };

    Scaled scaled(double a_max) const {
        double s = a_max > 1.0 ? a_max : 1.0;
        return {eps_eig * s, eps_vec * s, eps_rank * s};
    }
};

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class AsymmetryError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NotEquitableError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NotContainedError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class EigensolverError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when an internally produced certificate (an automorphism, a block
/// system, an irreducibility witness) fails re-verification. Signals a bug or
/// a tolerance breakdown, never a property of the input.
class CertificateError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class OrbitUncertifiedError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace specsym
