#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eqd/combo.hpp"
#include "eqd/geom.hpp"

namespace eqd {

namespace detail {
inline bool is_zero(const Complex& c) { return c == Complex(0.0, 0.0); }
inline bool is_zero(const Rational& c) { return sgn(c) == 0; }
}  // namespace detail

/// Sparse multivariate polynomial: exponent vector -> coefficient. Keys are
/// ordered lexicographically with variable 0 most significant; no zero
/// coefficient is ever stored.
template <class Coeff>
class Polynomial {
 public:
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, Coeff>;

  Polynomial() = default;
  explicit Polynomial(std::size_t variables) : nvars_(variables) {}

  static Polynomial constant(std::size_t variables, const Coeff& c) {
    Polynomial p(variables);
    p.add_term(Exponents(variables, 0), c);
    return p;
  }
  static Polynomial variable(std::size_t variables, std::size_t index) {
    Polynomial p(variables);
    Exponents e(variables, 0);
    e.at(index) = 1;
    p.add_term(std::move(e), Coeff(1));
    return p;
  }

  std::size_t variable_count() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Exponents& e, const Coeff& c) {
    if (e.size() != nvars_) throw std::invalid_argument("Polynomial: exponent length mismatch");
    if (detail::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (inserted) return;
    it->second += c;
    if (detail::is_zero(it->second)) terms_.erase(it);
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }
  int degree_in(std::size_t var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }
  bool involves(std::size_t var) const { return degree_in(var) > 0; }
  bool is_constant() const { return total_degree() == 0; }

  /// Coefficient of var^k as a polynomial in the remaining variables.
  Polynomial coefficient_of(std::size_t var, int k) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] != k) continue;
      Exponents f = e;
      f[var] = 0;
      out.add_term(f, c);
    }
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Coeff& s) {
    if (detail::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Coeff& s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.nvars_);
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        out.add_term(e, Coeff(ca * cb));
      }
    return out;
  }
  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  template <class Value>
  Value evaluate(std::span<const Value> point) const {
    if (point.size() != nvars_) throw std::invalid_argument("Polynomial::evaluate: dimension mismatch");
    Value sum(0);
    for (const auto& [e, c] : terms_) {
      Value term(c);
      for (std::size_t k = 0; k < nvars_; ++k)
        for (int p = 0; p < e[k]; ++p) term *= point[k];
      sum += term;
    }
    return sum;
  }

  Polynomial derivative(std::size_t var) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents f = e;
      f[var] -= 1;
      out.add_term(f, Coeff(c * Coeff(e[var])));
    }
    return out;
  }

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

using MultiPoly = Polynomial<Complex>;
using RationalPoly = Polynomial<Rational>;

MultiPoly to_complex(const RationalPoly& p);

/// Human-readable form using the given variable names.
std::string to_string(const RationalPoly& p, std::span<const std::string> names);

/// Prescribed signed area per face, aligned with the face order of a type.
struct AreaAssignment {
  std::vector<Rational> areas;

  Rational sum() const;
  /// polygon area / T for every face.
  static AreaAssignment equal(const CombinatorialType& g, const Polygon& p);
  /// Exact areas induced by a placement of the interior vertices.
  static AreaAssignment induced(const CombinatorialType& g, const Polygon& p,
                                std::span<const RationalPoint> interior);
};

/// Face without unknowns: its determinant minus twice its area, exactly.
struct ConstantFace {
  std::size_t face = 0;
  Rational residual;
};

inline constexpr std::size_t kNoFace = std::numeric_limits<std::size_t>::max();

/// Area equations in the z = 1 chart. Interior vertex v (label >= n) owns
/// unknowns 2(v-n) (x) and 2(v-n)+1 (y).
struct PolynomialSystem {
  std::size_t unknown_count = 0;
  std::vector<std::string> variables;
  std::vector<MultiPoly> polys;
  /// Exact counterpart of polys; empty for derived systems such as random combinations.
  std::vector<RationalPoly> exact;
  /// Source face of each polynomial, kNoFace for synthetic equations.
  std::vector<std::size_t> face_of;
  std::vector<ConstantFace> constants_report;
  std::optional<std::string> feasibility_warning;

  std::size_t size() const { return polys.size(); }
  bool has_exact() const { return exact.size() == polys.size(); }
  /// Equations at the given positions, keeping sources and exact forms.
  PolynomialSystem subset(std::span<const std::size_t> indices) const;
};

/// Thrown when build_system preconditions fail (missing area, wrong sizes).
class SystemError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// For each face (i,j,k): det[[x_i,x_j,x_k],[y_i,y_j,y_k],[1,1,1]] - 2 S_ijk.
PolynomialSystem build_system(const CombinatorialType& g, const Polygon& p, const AreaAssignment& a);

/// Determinant expression of one face, as a polynomial in the interior unknowns.
RationalPoly face_determinant(const CombinatorialType& g, const Polygon& p, std::size_t face);

Eigen::VectorXcd evaluate(const PolynomialSystem& s, const Eigen::VectorXcd& point);
Eigen::MatrixXcd jacobian(const PolynomialSystem& s, const Eigen::VectorXcd& point);

/// Interior unknowns packed as one affine point per interior vertex.
std::vector<AffinePoint> unpack_points(const Eigen::VectorXcd& values);
Eigen::VectorXcd pack_points(std::span<const AffinePoint> points);

}  // namespace eqd
