#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "eqd/combo.hpp"
#include "eqd/geom.hpp"
#include "eqd/poly.hpp"
#include "eqd/solve.hpp"

namespace eqd {

/// Univariate integer polynomial, lowest degree first.
using IntPoly = std::vector<mpz_class>;

class EliminationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact quotient a / b; throws std::domain_error when b does not divide a.
RationalPoly exact_divide(const RationalPoly& a, const RationalPoly& b);

/// Sylvester resultant of p and q with respect to `var` (fraction-free
/// Bareiss determinant over the polynomial ring).
RationalPoly resultant(const RationalPoly& p, const RationalPoly& q, std::size_t var);

/// Integer coefficients, content 1, positive leading coefficient.
RationalPoly primitive_part(const RationalPoly& p);

/// Univariate helpers on rational coefficient lists (lowest degree first).
std::vector<Rational> univariate_gcd(std::vector<Rational> a, std::vector<Rational> b);
std::vector<Rational> square_free(const std::vector<Rational>& p);
IntPoly to_primitive_integer(const std::vector<Rational>& p);

Rational evaluate_exact(const IntPoly& p, const Rational& x);
Complex evaluate_numeric(const IntPoly& p, Complex x);
/// Complex roots via companion-matrix eigenvalues, polished by Newton.
std::vector<Complex> roots(const IntPoly& p);
std::string to_string(const IntPoly& p, const std::string& var = "t");

struct EliminationLimits {
  std::size_t max_variables = 4;
};

/// Nonzero integer polynomial in variable `keep` vanishing at the `keep`
/// coordinate of every common zero of `system`. Iterated Sylvester
/// resultants; every elimination order is tried before giving up.
IntPoly eliminate(std::span<const RationalPoly> system, std::size_t keep, const EliminationLimits& limits = {});

struct CoordinateCertificate {
  std::string variable;
  IntPoly polynomial;
  Complex value;
  std::size_t root_index = 0;  // position of the matched root in roots(polynomial)
  Complex root;
  double distance = 0.0;  // |value - root|
  double residual = 0.0;  // |polynomial(value)|
  double bound = 0.0;     // coherence bound on residual
  bool matched = false;
};

struct SolutionCertificate {
  std::vector<CoordinateCertificate> coordinates;
  bool ok() const;
};

struct CertifyConfig {
  int max_interior = 2;
  double match_tolerance = 1e-8;
};

/// Certificate per coordinate of every solution. Throws EliminationFailure
/// when elimination fails and std::invalid_argument above max_interior.
std::vector<SolutionCertificate> certify(const CombinatorialType& g, const Polygon& p, const AreaAssignment& a,
                                         const SolutionSet& solutions, const CertifyConfig& config = {});

/// Annihilating polynomial per unknown of the exact system (x5, y5, ...).
std::vector<IntPoly> coordinate_eliminants(const PolynomialSystem& s, const EliminationLimits& limits = {});

/// Certificate for one numeric value against a fixed polynomial.
CoordinateCertificate match_root(const std::string& variable, const IntPoly& poly, Complex value,
                                 double tolerance = 1e-8);

}  // namespace eqd
