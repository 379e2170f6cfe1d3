#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace spp {

/*
 * Base class for all errors raised by this library.  Every error carries a
 * stable machine-readable code (used by the CLI to emit structured error
 * JSON) next to the human-readable message.
 */
class error : public std::runtime_error {
  public:
    error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

  private:
    std::string code_;
};

/* A matrix fails the weak row/column monotonicity required of plane partitions. */
struct not_a_plane_partition : error {
    explicit not_a_plane_partition(const std::string& what)
        : error("NotAPlanePartition", what) {}
};

/* A diagonal of the matrix repeats a positive value. */
struct diagonal_not_strict : error {
    explicit diagonal_not_strict(const std::string& what)
        : error("DiagonalNotStrict", what) {}
};

/* An enumeration request exceeds the supported size cap. */
struct cap_exceeded : error {
    explicit cap_exceeded(const std::string& what) : error("CapExceeded", what) {}
};

/* A tableau enumeration would visit more states than the configured cap. */
struct shape_too_large : error {
    explicit shape_too_large(const std::string& what) : error("ShapeTooLarge", what) {}
};

/* A pairing product hits a factor 1/(1 - a*b) with a*b = 1. */
struct pole_on_product : error {
    explicit pole_on_product(const std::string& what) : error("PoleOnProduct", what) {}
};

/* A series window is too narrow for the requested coefficient. */
struct window_too_small : error {
    explicit window_too_small(const std::string& what) : error("WindowTooSmall", what) {}
};

/* A matrix exceeds the size limit of the reference (expansion) algorithm. */
struct too_large : error {
    explicit too_large(const std::string& what) : error("TooLarge", what) {}
};

/* Adaptive quadrature failed to reach the requested accuracy. */
struct quadrature_not_converged : error {
    explicit quadrature_not_converged(const std::string& what)
        : error("QuadratureNotConverged", what) {}
};

}  // namespace spp
