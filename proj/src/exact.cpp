#include "eqd/exact.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace eqd {

RationalPoly exact_divide(const RationalPoly& a, const RationalPoly& b) {
  if (b.is_zero()) throw std::domain_error("exact_divide: division by zero polynomial");
  const std::size_t n = a.variable_count();
  RationalPoly quotient(n), rest = a;
  const auto& [lead_e, lead_c] = *b.terms().rbegin();
  while (!rest.is_zero()) {
    const auto& [e, c] = *rest.terms().rbegin();
    RationalPoly::Exponents shift(n);
    for (std::size_t k = 0; k < n; ++k) {
      shift[k] = e[k] - lead_e[k];
      if (shift[k] < 0) throw std::domain_error("exact_divide: divisor does not divide dividend");
    }
    RationalPoly term(n);
    term.add_term(shift, Rational(c / lead_c));
    quotient += term;
    rest -= term * b;
  }
  return quotient;
}

namespace {

RationalPoly power(const RationalPoly& p, int k) {
  RationalPoly out = RationalPoly::constant(p.variable_count(), Rational(1));
  for (int j = 0; j < k; ++j) out = out * p;
  return out;
}

}  // namespace

RationalPoly resultant(const RationalPoly& p, const RationalPoly& q, std::size_t var) {
  const std::size_t nvars = p.variable_count();
  const int m = p.degree_in(var);
  const int n = q.degree_in(var);
  if (p.is_zero() || q.is_zero()) return RationalPoly(nvars);
  if (m == 0) return power(p, n);
  if (n == 0) return power(q, m);

  const auto size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<RationalPoly>> M(size, std::vector<RationalPoly>(size, RationalPoly(nvars)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) M[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + k)] = p.coefficient_of(var, m - k);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k)
      M[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + k)] = q.coefficient_of(var, n - k);

  // Fraction-free Gaussian elimination (Bareiss).
  int sign = 1;
  RationalPoly previous = RationalPoly::constant(nvars, Rational(1));
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (M[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < size && M[r][k].is_zero()) ++r;
      if (r == size) return RationalPoly(nvars);
      std::swap(M[k], M[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      for (std::size_t j = k + 1; j < size; ++j)
        M[i][j] = exact_divide(M[k][k] * M[i][j] - M[i][k] * M[k][j], previous);
      M[i][k] = RationalPoly(nvars);
    }
    previous = M[k][k];
  }
  RationalPoly det = M[size - 1][size - 1];
  if (sign < 0) det *= Rational(-1);
  return det;
}

RationalPoly primitive_part(const RationalPoly& p) {
  if (p.is_zero()) return p;
  mpz_class lcm_den = 1, gcd_num = 0;
  for (const auto& [e, c] : p.terms()) {
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational scale(lcm_den, gcd_num);
  scale.canonicalize();
  if (sgn(p.terms().rbegin()->second) < 0) scale = -scale;
  return p * scale;
}

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

// Remainder and quotient of a / b.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  QPoly quotient(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (!a.empty() && degree(a) >= degree(b)) {
    const std::size_t shift = a.size() - b.size();
    const Rational factor = a.back() / b.back();
    quotient[shift] = factor;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= factor * b[k];
    a.pop_back();
    trim(a);
  }
  trim(quotient);
  return {quotient, a};
}

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  trim(d);
  return d;
}

QPoly as_univariate(const RationalPoly& p, std::size_t var) {
  QPoly out(static_cast<std::size_t>(p.degree_in(var) + 1), Rational(0));
  for (const auto& [e, c] : p.terms()) out[static_cast<std::size_t>(e[var])] += c;
  trim(out);
  return out;
}

bool only_involves(const RationalPoly& p, std::size_t keep) {
  for (std::size_t v = 0; v < p.variable_count(); ++v)
    if (v != keep && p.involves(v)) return false;
  return true;
}

}  // namespace

std::vector<Rational> univariate_gcd(std::vector<Rational> a, std::vector<Rational> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

std::vector<Rational> square_free(const std::vector<Rational>& p) {
  QPoly q = p;
  trim(q);
  if (degree(q) <= 0) return q;
  const QPoly g = univariate_gcd(q, derivative(q));
  if (degree(g) <= 0) return q;
  return divmod(q, g).first;
}

IntPoly to_primitive_integer(const std::vector<Rational>& p) {
  QPoly q = p;
  trim(q);
  mpz_class lcm_den = 1, gcd_num = 0;
  for (const auto& c : q) {
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), c.get_num_mpz_t());
  }
  IntPoly out;
  if (q.empty()) return out;
  const int sign = sgn(q.back()) < 0 ? -1 : 1;
  for (const auto& c : q) {
    Rational scaled = c * lcm_den / gcd_num * sign;
    scaled.canonicalize();
    out.push_back(scaled.get_num());
  }
  return out;
}

Rational evaluate_exact(const IntPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

Complex evaluate_numeric(const IntPoly& p, Complex x) {
  Complex acc{0.0, 0.0};
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

std::vector<Complex> roots(const IntPoly& p) {
  const int d = static_cast<int>(p.size()) - 1;
  if (d < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  const double lead = p.back().get_d();
  for (int k = 1; k < d; ++k) companion(k, k - 1) = 1.0;
  for (int k = 0; k < d; ++k) companion(k, d - 1) = -p[static_cast<std::size_t>(k)].get_d() / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> out;
  IntPoly deriv;
  for (std::size_t k = 1; k < p.size(); ++k) deriv.push_back(p[k] * static_cast<long>(k));
  for (Eigen::Index k = 0; k < d; ++k) {
    Complex z = solver.eigenvalues()(k);
    for (int it = 0; it < 5; ++it) {
      const Complex dz = evaluate_numeric(deriv, z);
      if (std::abs(dz) == 0.0) break;
      const Complex step = evaluate_numeric(p, z) / dz;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      z -= step;
    }
    out.push_back(z);
  }
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

std::string to_string(const IntPoly& p, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = p.size(); k-- > 0;) {
    const mpz_class& c = p[k];
    if (c == 0) continue;
    mpz_class mag = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (mag != 1 || k == 0) os << mag.get_str();
    if (k >= 1) os << var;
    if (k > 1) os << '^' << k;
    first = false;
  }
  return first ? "0" : os.str();
}

namespace {

// Eliminates `order` in sequence; std::nullopt when nothing univariate survives.
std::optional<IntPoly> eliminate_in_order(std::vector<RationalPoly> polys, const std::vector<std::size_t>& order,
                                          std::size_t keep) {
  for (std::size_t v : order) {
    std::vector<RationalPoly> with, without;
    for (auto& p : polys) (p.involves(v) ? with : without).push_back(std::move(p));
    if (with.empty()) {
      polys = std::move(without);
      continue;
    }
    auto pivot_it = std::min_element(with.begin(), with.end(), [&](const RationalPoly& a, const RationalPoly& b) {
      if (a.degree_in(v) != b.degree_in(v)) return a.degree_in(v) < b.degree_in(v);
      return a.term_count() < b.term_count();
    });
    const RationalPoly pivot = *pivot_it;
    for (auto it = with.begin(); it != with.end(); ++it) {
      if (it == pivot_it) continue;
      RationalPoly r = resultant(pivot, *it, v);
      if (r.is_zero()) continue;
      r = primitive_part(r);
      if (r.is_constant()) throw EliminationFailure("eliminate: system is inconsistent (constant resultant)");
      if (std::find(without.begin(), without.end(), r) == without.end()) without.push_back(std::move(r));
    }
    polys = std::move(without);
  }
  QPoly g;
  bool any = false;
  for (const auto& p : polys) {
    if (!only_involves(p, keep) || p.is_constant()) continue;
    const QPoly u = square_free(as_univariate(p, keep));
    g = any ? univariate_gcd(g, u) : u;
    any = true;
  }
  if (!any) return std::nullopt;
  if (degree(g) < 1) throw EliminationFailure("eliminate: univariate eliminants have no common root");
  return to_primitive_integer(g);
}

}  // namespace

IntPoly eliminate(std::span<const RationalPoly> system, std::size_t keep, const EliminationLimits& limits) {
  if (system.empty()) throw EliminationFailure("eliminate: empty system");
  const std::size_t nvars = system.front().variable_count();
  if (keep >= nvars) throw std::invalid_argument("eliminate: variable index out of range");
  std::vector<RationalPoly> polys;
  std::vector<std::size_t> others;
  bool keep_seen = false;
  for (const auto& p : system) {
    if (p.is_zero()) continue;
    if (p.is_constant()) throw EliminationFailure("eliminate: system contains a nonzero constant");
    polys.push_back(primitive_part(p));
  }
  for (std::size_t v = 0; v < nvars; ++v) {
    const bool used = std::any_of(polys.begin(), polys.end(), [&](const RationalPoly& p) { return p.involves(v); });
    if (v == keep) keep_seen = used;
    else if (used) others.push_back(v);
  }
  if (!keep_seen) throw EliminationFailure("eliminate: variable does not occur in the system");
  if (others.size() + 1 > limits.max_variables)
    throw EliminationFailure("eliminate: " + std::to_string(others.size() + 1) + " variables exceed the cap of " +
                             std::to_string(limits.max_variables));
  do {
    if (auto r = eliminate_in_order(polys, others, keep)) return *r;
  } while (std::next_permutation(others.begin(), others.end()));
  throw EliminationFailure("eliminate: every elimination order gave zero resultants (positive-dimensional component)");
}

CoordinateCertificate match_root(const std::string& variable, const IntPoly& poly, Complex value, double tolerance) {
  CoordinateCertificate c;
  c.variable = variable;
  c.polynomial = poly;
  c.value = value;
  const auto rts = roots(poly);
  c.distance = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rts.size(); ++k) {
    const double d = std::abs(rts[k] - value);
    if (d < c.distance) {
      c.distance = d;
      c.root_index = k;
      c.root = rts[k];
    }
  }
  c.residual = std::abs(evaluate_numeric(poly, value));
  double max_coeff = 0.0;
  for (const auto& k : poly) max_coeff = std::max(max_coeff, std::abs(k.get_d()));
  const int deg = static_cast<int>(poly.size()) - 1;
  c.bound = deg * max_coeff * tolerance * std::pow(std::max(1.0, std::abs(value)), deg - 1);
  c.matched = c.distance < tolerance;
  return c;
}

bool SolutionCertificate::ok() const {
  return std::all_of(coordinates.begin(), coordinates.end(), [](const CoordinateCertificate& c) { return c.matched; });
}

std::vector<IntPoly> coordinate_eliminants(const PolynomialSystem& s, const EliminationLimits& limits) {
  if (!s.has_exact()) throw std::invalid_argument("coordinate_eliminants: system has no exact form");
  std::vector<IntPoly> out;
  for (std::size_t v = 0; v < s.unknown_count; ++v) out.push_back(eliminate(s.exact, v, limits));
  return out;
}

std::vector<SolutionCertificate> certify(const CombinatorialType& g, const Polygon& p, const AreaAssignment& a,
                                         const SolutionSet& solutions, const CertifyConfig& config) {
  if (g.interior_count() > config.max_interior)
    throw std::invalid_argument("certify: " + std::to_string(g.interior_count()) +
                                " interior vertices exceed the certification cap of " +
                                std::to_string(config.max_interior));
  const PolynomialSystem s = build_system(g, p, a);
  std::vector<SolutionCertificate> out;
  if (s.unknown_count == 0) {
    out.resize(solutions.solutions.size());
    return out;
  }
  const auto eliminants = coordinate_eliminants(s);
  for (const auto& sol : solutions.solutions) {
    SolutionCertificate cert;
    for (std::size_t v = 0; v < s.unknown_count; ++v)
      cert.coordinates.push_back(
          match_root(s.variables[v], eliminants[v], sol.values(static_cast<Eigen::Index>(v)), config.match_tolerance));
    out.push_back(std::move(cert));
  }
  return out;
}

}  // namespace eqd
