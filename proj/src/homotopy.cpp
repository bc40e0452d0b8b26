#include "eqd/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

namespace eqd {

double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

Complex gamma_from_seed(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const double angle = 2.0 * std::numbers::pi * unit_interval(rng());
  return std::polar(1.0, angle);
}

const char* to_string(PathStatus s) {
  switch (s) {
    case PathStatus::converged: return "converged";
    case PathStatus::diverged: return "diverged";
    case PathStatus::failed: return "failed";
  }
  return "?";
}

namespace {

double max_abs(const Eigen::VectorXcd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

bool all_finite(const Eigen::VectorXcd& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (!std::isfinite(v(k).real()) || !std::isfinite(v(k).imag())) return false;
  return true;
}

Eigen::Index numerical_rank(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > 1e-9 * sv(0)) ++r;
  return r;
}

std::vector<std::size_t> complement(std::size_t total, const std::vector<std::size_t>& chosen) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < total; ++k)
    if (std::find(chosen.begin(), chosen.end(), k) == chosen.end()) out.push_back(k);
  return out;
}

}  // namespace

SquareSubsystem select_equations(const PolynomialSystem& s, std::vector<std::size_t> indices) {
  if (indices.size() != s.unknown_count)
    throw std::invalid_argument("select_equations: need exactly " + std::to_string(s.unknown_count) +
                                " equations, got " + std::to_string(indices.size()));
  for (std::size_t k : indices)
    if (k >= s.size()) throw std::invalid_argument("select_equations: equation index out of range");
  SquareSubsystem out;
  out.selected = std::move(indices);
  out.leftover = complement(s.size(), out.selected);
  out.square = s.subset(out.selected);
  out.leftovers = s.subset(out.leftover);
  return out;
}

SquareSubsystem make_square_subsystem(const PolynomialSystem& s, SquareStrategy strategy, std::uint64_t seed) {
  const std::size_t m = s.unknown_count;
  if (m == 0) {
    SquareSubsystem out;
    out.leftover = complement(s.size(), {});
    out.square = s.subset(out.selected);
    out.leftovers = s.subset(out.leftover);
    return out;
  }
  if (s.size() < m)
    throw std::invalid_argument("make_square_subsystem: " + std::to_string(s.size()) + " equations for " +
                                std::to_string(m) + " unknowns");

  if (strategy == SquareStrategy::random_combination) {
    std::mt19937_64 rng(seed ^ 0x2545f4914f6cdd1dULL);
    SquareSubsystem out;
    out.square.unknown_count = m;
    out.square.variables = s.variables;
    for (std::size_t r = 0; r < m; ++r) {
      MultiPoly combo(m);
      for (const auto& p : s.polys) combo += p * std::polar(1.0, 2.0 * std::numbers::pi * unit_interval(rng()));
      out.square.polys.push_back(std::move(combo));
      out.square.face_of.push_back(kNoFace);
    }
    out.leftovers.unknown_count = m;
    out.leftovers.variables = s.variables;
    return out;
  }

  // Jacobian rows at a fixed generic point decide independence.
  std::mt19937_64 rng(0x5eedULL);
  Eigen::VectorXcd generic(static_cast<Eigen::Index>(m));
  for (Eigen::Index k = 0; k < generic.size(); ++k)
    generic(k) = Complex(2.0 * unit_interval(rng()) - 1.0, 2.0 * unit_interval(rng()) - 1.0);
  const Eigen::MatrixXcd J = jacobian(s, generic);

  std::vector<std::size_t> chosen;
  std::set<std::size_t> covered;
  Eigen::MatrixXcd rows(0, static_cast<Eigen::Index>(m));
  std::vector<bool> used(s.size(), false);
  while (chosen.size() < m) {
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < s.size(); ++k)
      if (!used[k]) order.push_back(k);
    if (order.empty()) break;
    auto new_cover = [&](std::size_t k) {
      int count = 0;
      for (std::size_t v = 0; v < m; ++v)
        if (s.polys[k].involves(v) && !covered.count(v)) ++count;
      return count;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const int da = s.polys[a].total_degree(), db = s.polys[b].total_degree();
      if (da != db) return da < db;
      return new_cover(a) > new_cover(b);
    });
    std::size_t pick = order.front();
    for (std::size_t k : order) {
      Eigen::MatrixXcd trial(rows.rows() + 1, rows.cols());
      trial << rows, J.row(static_cast<Eigen::Index>(k));
      if (numerical_rank(trial) > rows.rows()) {
        pick = k;
        break;
      }
    }
    Eigen::MatrixXcd next(rows.rows() + 1, rows.cols());
    next << rows, J.row(static_cast<Eigen::Index>(pick));
    rows = std::move(next);
    used[pick] = true;
    chosen.push_back(pick);
    for (std::size_t v = 0; v < m; ++v)
      if (s.polys[pick].involves(v)) covered.insert(v);
  }
  if (covered.size() != m) throw std::invalid_argument("make_square_subsystem: no selection covers every unknown");
  return select_equations(s, std::move(chosen));
}

NewtonResult newton_refine(const PolynomialSystem& s, const Eigen::VectorXcd& x0, int max_iter, double tolerance) {
  NewtonResult out;
  out.x = x0;
  if (s.unknown_count == 0) {
    out.residual = max_abs(evaluate(s, out.x));
    out.status = NewtonStatus::converged;
    return out;
  }
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::VectorXcd F = evaluate(s, out.x);
    out.residual = max_abs(F);
    const Eigen::MatrixXcd J = jacobian(s, out.x);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const bool deficient = J.rows() < J.cols() || sv(0) == 0.0 || sv(sv.size() - 1) <= 1e-12 * sv(0);
    if (deficient) {
      out.status = NewtonStatus::singular;
      return out;
    }
    if (out.residual == 0.0) break;
    const Eigen::VectorXcd dx = svd.solve(-F);
    out.x += dx;
    out.iterations = it + 1;
    if (max_abs(dx) <= 1e-15 * (1.0 + max_abs(out.x))) break;
  }
  out.residual = max_abs(evaluate(s, out.x));
  out.status = out.residual <= tolerance ? NewtonStatus::converged : NewtonStatus::not_converged;
  return out;
}

HomotopyProblem HomotopyProblem::make(PolynomialSystem target, std::uint64_t seed) {
  if (target.size() != target.unknown_count)
    throw std::invalid_argument("HomotopyProblem: target has " + std::to_string(target.size()) + " equations for " +
                                std::to_string(target.unknown_count) + " unknowns");
  HomotopyProblem p;
  for (const auto& poly : target.polys) {
    const int d = poly.total_degree();
    if (d < 1) throw std::invalid_argument("HomotopyProblem: constant equation in target");
    p.degrees.push_back(d);
  }
  p.target = std::move(target);
  p.gamma = gamma_from_seed(seed);
  p.seed = seed;
  return p;
}

std::size_t HomotopyProblem::path_count() const {
  std::size_t count = 1;
  for (int d : degrees) count *= static_cast<std::size_t>(d);
  return degrees.empty() ? 0 : count;
}

Eigen::VectorXcd HomotopyProblem::start_root(std::size_t index) const {
  Eigen::VectorXcd x(static_cast<Eigen::Index>(degrees.size()));
  for (std::size_t j = 0; j < degrees.size(); ++j) {
    const auto d = static_cast<std::size_t>(degrees[j]);
    const std::size_t k = index % d;
    index /= d;
    x(static_cast<Eigen::Index>(j)) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d));
  }
  return x;
}

Eigen::VectorXcd HomotopyProblem::start_system(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd g(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) g(j) = std::pow(x(j), degrees[static_cast<std::size_t>(j)]) - 1.0;
  return g;
}

namespace {

// Tracks in homogeneous coordinates X = (X0, X1..Xm), x = X/X0, on a random
// affine patch a.X = 1, so paths escaping to infinity stay bounded.
class Tracker {
 public:
  Tracker(const HomotopyProblem& p, const TrackerSettings& s) : p_(p), s_(s), m_(p.degrees.size()) {
    terms_.resize(m_);
    for (std::size_t j = 0; j < m_; ++j)
      for (const auto& [e, c] : p.target.polys[j].terms()) {
        Term t{c, std::vector<int>(m_ + 1, 0)};
        int total = 0;
        for (std::size_t k = 0; k < m_; ++k) {
          t.exponents[k + 1] = e[k];
          total += e[k];
        }
        t.exponents[0] = p.degrees[j] - total;
        terms_[j].push_back(std::move(t));
      }
    std::mt19937_64 rng(p.seed ^ 0x853c49e6748fea9bULL);
    patch_.resize(static_cast<Eigen::Index>(m_ + 1));
    for (Eigen::Index k = 0; k < patch_.size(); ++k)
      patch_(k) = std::polar(1.0, 2.0 * std::numbers::pi * unit_interval(rng()));
  }

  PathResult run(std::size_t index) const {
    PathResult r;
    r.index = index;
    r.start_root = p_.start_root(index);
    Eigen::VectorXcd X(static_cast<Eigen::Index>(m_ + 1));
    X(0) = 1.0;
    X.tail(static_cast<Eigen::Index>(m_)) = r.start_root;
    X /= (patch_.array() * X.array()).sum();
    Eigen::VectorXcd previous = X;
    double t = 1.0;
    double h = s_.initial_step;
    int successes = 0;
    while (t > 0.0) {
      if (r.steps >= s_.max_steps) return finish(r, X, previous, t, PathStatus::failed);
      h = std::min(h, t);
      const double t_next = (h == t) ? 0.0 : t - h;

      bool ok = false;
      Eigen::VectorXcd Y;
      const Eigen::VectorXcd velocity = Hx(X, t).partialPivLu().solve(-Ht(X));
      if (all_finite(velocity)) {
        Y = X - h * velocity;
        for (int k = 0; k < s_.corrector_iterations; ++k) {
          const Eigen::VectorXcd dy = Hx(Y, t_next).partialPivLu().solve(-H(Y, t_next));
          if (!all_finite(dy)) break;
          Y += dy;
          if (!all_finite(Y)) break;
          if (max_abs(dy) <= s_.corrector_tolerance * (1.0 + max_abs(Y))) {
            ok = true;
            break;
          }
        }
      }
      if (ok) {
        previous = X;
        X = Y;
        t = t_next;
        ++r.steps;
        if (++successes >= s_.successes_before_growth) {
          h = std::min(h * s_.step_growth, s_.max_step);
          successes = 0;
        }
        if (affine_magnitude(X) > s_.divergence_threshold) return finish(r, X, previous, t, PathStatus::diverged);
      } else {
        h *= 0.5;
        successes = 0;
        // Near t = 0 the floor scales with t so paths escaping at a
        // fractional rate can still reach the divergence threshold.
        if (h < std::min(s_.min_step, s_.relative_min_step * t) || t < s_.min_t)
          return finish(r, X, previous, t,
                        affine_magnitude(X) > s_.stall_divergence_threshold ? PathStatus::diverged
                                                                            : PathStatus::failed);
      }
    }
    if (affine_magnitude(X) > s_.stall_divergence_threshold) return finish(r, X, previous, 0.0, PathStatus::diverged);
    const NewtonResult refined = newton_refine(p_.target, affine(X), s_.endpoint_iterations, s_.endpoint_tolerance);
    r.newton_residual = refined.residual;
    const bool good = refined.residual < s_.endpoint_tolerance && all_finite(refined.x);
    if (good) {
      r.status = PathStatus::converged;
      r.endpoint = refined.x;
      r.t_final = 0.0;
      for (const auto& pt : unpack_points(r.endpoint))
        r.limits.push_back(canonicalize(ProjectivePoint::from_affine(pt)));
      return r;
    }
    return finish(r, X, previous, 0.0, PathStatus::failed);
  }

 private:
  struct Term {
    Complex coeff;
    std::vector<int> exponents;  // X0 first
  };

  static Complex power(Complex z, int e) {
    Complex out = 1.0;
    for (int k = 0; k < e; ++k) out *= z;
    return out;
  }

  Eigen::VectorXcd target(const Eigen::VectorXcd& X) const {
    Eigen::VectorXcd f = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m_));
    for (std::size_t j = 0; j < m_; ++j)
      for (const auto& t : terms_[j]) {
        Complex v = t.coeff;
        for (std::size_t k = 0; k <= m_; ++k) v *= power(X(static_cast<Eigen::Index>(k)), t.exponents[k]);
        f(static_cast<Eigen::Index>(j)) += v;
      }
    return f;
  }

  Eigen::MatrixXcd target_jacobian(const Eigen::VectorXcd& X) const {
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_ + 1));
    for (std::size_t j = 0; j < m_; ++j)
      for (const auto& t : terms_[j])
        for (std::size_t d = 0; d <= m_; ++d) {
          if (t.exponents[d] == 0) continue;
          Complex v = t.coeff * static_cast<double>(t.exponents[d]);
          for (std::size_t k = 0; k <= m_; ++k)
            v *= power(X(static_cast<Eigen::Index>(k)), t.exponents[k] - (k == d ? 1 : 0));
          J(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(d)) += v;
        }
    return J;
  }

  Eigen::VectorXcd start(const Eigen::VectorXcd& X) const {
    Eigen::VectorXcd g(static_cast<Eigen::Index>(m_));
    for (std::size_t j = 0; j < m_; ++j) {
      const auto i = static_cast<Eigen::Index>(j);
      g(i) = power(X(i + 1), p_.degrees[j]) - power(X(0), p_.degrees[j]);
    }
    return g;
  }

  Eigen::VectorXcd H(const Eigen::VectorXcd& X, double t) const {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(m_ + 1));
    out.head(static_cast<Eigen::Index>(m_)) = p_.gamma * t * start(X) + (1.0 - t) * target(X);
    out(static_cast<Eigen::Index>(m_)) = (patch_.array() * X.array()).sum() - 1.0;
    return out;
  }

  Eigen::MatrixXcd Hx(const Eigen::VectorXcd& X, double t) const {
    const auto m = static_cast<Eigen::Index>(m_);
    Eigen::MatrixXcd out(m + 1, m + 1);
    out.topRows(m) = (1.0 - t) * target_jacobian(X);
    for (Eigen::Index j = 0; j < m; ++j) {
      const int d = p_.degrees[static_cast<std::size_t>(j)];
      out(j, j + 1) += p_.gamma * t * static_cast<double>(d) * power(X(j + 1), d - 1);
      out(j, 0) -= p_.gamma * t * static_cast<double>(d) * power(X(0), d - 1);
    }
    out.row(m) = patch_.transpose();
    return out;
  }

  // dH/dt.
  Eigen::VectorXcd Ht(const Eigen::VectorXcd& X) const {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m_ + 1));
    out.head(static_cast<Eigen::Index>(m_)) = p_.gamma * start(X) - target(X);
    return out;
  }

  double affine_magnitude(const Eigen::VectorXcd& X) const {
    const double z = std::abs(X(0));
    const double top = max_abs(X.tail(static_cast<Eigen::Index>(m_)));
    return z == 0.0 ? std::numeric_limits<double>::infinity() : top / z;
  }

  Eigen::VectorXcd affine(const Eigen::VectorXcd& X) const {
    Complex z = X(0);
    if (std::abs(z) < std::numeric_limits<double>::min()) z = std::numeric_limits<double>::min();
    return X.tail(static_cast<Eigen::Index>(m_)) / z;
  }

  // With X0 exactly zero the affine sample and some limits are undefined;
  // the previous sample stands in.
  PathResult finish(PathResult& r, const Eigen::VectorXcd& X, const Eigen::VectorXcd& previous, double t,
                    PathStatus status) const {
    const Eigen::VectorXcd& src = std::abs(X(0)) == 0.0 ? previous : X;
    r.status = status;
    r.endpoint = affine(src);
    r.t_final = t;
    r.newton_residual = max_abs(evaluate(p_.target, r.endpoint));
    if (m_ % 2 == 0)
      for (std::size_t k = 0; k < m_ / 2; ++k) {
        const auto i = static_cast<Eigen::Index>(2 * k + 1);
        r.limits.push_back(canonicalize(ProjectivePoint(src(i), src(i + 1), src(0))));
      }
    return r;
  }

  const HomotopyProblem& p_;
  const TrackerSettings& s_;
  std::size_t m_;
  std::vector<std::vector<Term>> terms_;
  Eigen::VectorXcd patch_;
};

}  // namespace

PathResult track_path(const HomotopyProblem& problem, std::size_t index, const TrackerSettings& settings) {
  try {
    return Tracker(problem, settings).run(index);
  } catch (const std::exception&) {
    PathResult r;
    r.index = index;
    r.start_root = problem.start_root(index);
    r.endpoint = r.start_root;
    return r;
  }
}

std::vector<PathResult> track_all_serial(const HomotopyProblem& problem, const TrackerSettings& settings) {
  std::vector<PathResult> out;
  out.reserve(problem.path_count());
  for (std::size_t k = 0; k < problem.path_count(); ++k) out.push_back(track_path(problem, k, settings));
  return out;
}

std::vector<PathResult> track_all(const HomotopyProblem& problem, const TrackerSettings& settings) {
  const auto count = static_cast<long>(problem.path_count());
  std::vector<PathResult> out(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < count; ++k)
    out[static_cast<std::size_t>(k)] = track_path(problem, static_cast<std::size_t>(k), settings);
  return out;
}

}  // namespace eqd
