#include "noiselab/lemma74.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "noiselab/errors.hpp"
#include "noiselab/random.hpp"

namespace noiselab::web {

namespace {

using Matrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

long double to_ld(const Rational& q) {
  // Numerator and denominator may exceed double range only in pathological inputs.
  return static_cast<long double>(q.get_num().get_d()) / static_cast<long double>(q.get_den().get_d());
}

// Joint Y tuple of index j; the first variable varies fastest.
std::vector<std::size_t> decode(const Lemma74Instance& inst, std::size_t j) {
  std::vector<std::size_t> idx(inst.ys.size());
  for (std::size_t k = 0; k < inst.ys.size(); ++k) {
    const auto size = inst.ys[k].values.size();
    idx[k] = j % size;
    j /= size;
  }
  return idx;
}

Rational y_prob(const Lemma74Instance& inst, const std::vector<std::size_t>& idx) {
  Rational q(1);
  for (std::size_t k = 0; k < idx.size(); ++k) q *= inst.ys[k].probs[idx[k]];
  return q;
}

// Joint mass P(A and Y = j) for every atom A of sigma(X_0, X_k Y_k), indexed by j.
std::vector<std::vector<Rational>> atom_rows(const Lemma74Instance& inst) {
  const std::size_t space = inst.y_space();
  std::map<std::pair<std::size_t, std::vector<long>>, std::vector<Rational>> atoms;
  for (std::size_t i = 0; i < inst.atoms.size(); ++i) {
    for (std::size_t j = 0; j < space; ++j) {
      const auto idx = decode(inst, j);
      std::vector<long> seen(idx.size());
      for (std::size_t k = 0; k < idx.size(); ++k) seen[k] = inst.atoms[i].x[k] == 1 ? static_cast<long>(idx[k]) : -1;
      auto& row = atoms[{i, seen}];
      if (row.empty()) row.assign(space, Rational(0));
      row[j] += inst.atoms[i].prob * y_prob(inst, idx);
    }
  }
  std::vector<std::vector<Rational>> rows;
  rows.reserve(atoms.size());
  for (auto& [key, row] : atoms) rows.push_back(std::move(row));
  return rows;
}

// B_jl = sum_A P(A, Y=j) P(A, Y=l) / P(A), so that ||Q psi||^2 = c^T B c for psi = sum_j c_j 1{Y=j}.
std::vector<std::vector<Rational>> projection_form(const Lemma74Instance& inst) {
  const std::size_t space = inst.y_space();
  std::vector<std::vector<Rational>> b(space, std::vector<Rational>(space, Rational(0)));
  for (const auto& row : atom_rows(inst)) {
    Rational mass(0);
    for (const auto& q : row) mass += q;
    if (mass == 0) continue;
    for (std::size_t j = 0; j < space; ++j) {
      if (row[j] == 0) continue;
      for (std::size_t l = 0; l < space; ++l) {
        if (row[l] != 0) b[j][l] += row[j] * row[l] / mass;
      }
    }
  }
  return b;
}

Rational sum_of(const std::vector<Rational>& v) {
  Rational s(0);
  for (const auto& q : v) s += q;
  return s;
}

}  // namespace

void Lemma74Instance::validate(std::size_t max_y_space) const {
  if (n < 1) throw InvalidParameter("instance needs n >= 1");
  if (static_cast<int>(ys.size()) != n) throw InvalidParameter("instance needs exactly n Y variables");
  if (atoms.empty()) throw InvalidParameter("instance needs at least one X atom");
  Rational total(0);
  for (const auto& a : atoms) {
    if (static_cast<int>(a.x.size()) != n) throw InvalidParameter("every X atom needs n indicators");
    for (int v : a.x) {
      if (v != 0 && v != 1) throw InvalidParameter("X_k must take values in {0,1}");
    }
    if (a.prob <= 0) throw InvalidParameter("X atom probabilities must be positive");
    total += a.prob;
  }
  if (total != 1) throw InvalidParameter("X law does not sum to 1");
  for (const auto& y : ys) {
    if (y.values.empty() || y.values.size() != y.probs.size()) throw InvalidParameter("Y support and law must match");
    if (std::set<Rational>(y.values.begin(), y.values.end()).size() != y.values.size()) {
      throw InvalidParameter("Y support values must be distinct");
    }
    for (const auto& q : y.probs) {
      if (q <= 0) throw InvalidParameter("Y probabilities must be positive");
    }
    if (sum_of(y.probs) != 1) throw InvalidParameter("Y law does not sum to 1");
  }
  if (y_space() > max_y_space) throw BudgetExceeded("joint Y space exceeds " + std::to_string(max_y_space));
}

std::size_t Lemma74Instance::y_space() const {
  std::size_t size = 1;
  for (const auto& y : ys) size *= y.values.size();
  return size;
}

Rational Lemma74Instance::bound_squared() const {
  Rational best(0);
  for (int k = 0; k < n; ++k) {
    Rational q(0);
    for (const auto& a : atoms) {
      if (a.x[static_cast<std::size_t>(k)] == 1) q += a.prob;
    }
    best = std::max(best, q);
  }
  return best;
}

Lemma74Report lemma74_bound_check(const Lemma74Instance& instance) {
  instance.validate();
  const std::size_t space = instance.y_space();
  const auto b = projection_form(instance);
  Vector root(static_cast<Eigen::Index>(space));
  for (std::size_t j = 0; j < space; ++j) root[static_cast<Eigen::Index>(j)] = std::sqrt(to_ld(y_prob(instance, decode(instance, j))));

  // Whitened form G^-1/2 B G^-1/2 restricted to the complement of sqrt(P(Y = .)).
  Matrix m(static_cast<Eigen::Index>(space), static_cast<Eigen::Index>(space));
  for (std::size_t j = 0; j < space; ++j) {
    for (std::size_t l = 0; l < space; ++l) {
      const auto ej = static_cast<Eigen::Index>(j);
      const auto el = static_cast<Eigen::Index>(l);
      m(ej, el) = to_ld(b[j][l]) / (root[ej] * root[el]);
    }
  }
  const Matrix proj = Matrix::Identity(m.rows(), m.cols()) - root * root.transpose();
  const Matrix restricted = proj * m * proj;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(restricted, Eigen::EigenvaluesOnly);
  const long double top = space > 1 ? std::max<long double>(solver.eigenvalues().maxCoeff(), 0.0L) : 0.0L;

  Lemma74Report report;
  report.norm_squared = static_cast<double>(top);
  report.bound = to_double(instance.bound_squared());
  report.slack = report.bound - report.norm_squared;
  return report;
}

Rational projection_correlation_squared(const Lemma74Instance& instance, const std::vector<Rational>& psi) {
  instance.validate();
  const std::size_t space = instance.y_space();
  if (psi.size() != space) throw InvalidParameter("psi must have one value per joint Y outcome");
  std::vector<Rational> weight(space);
  Rational mean(0);
  for (std::size_t j = 0; j < space; ++j) {
    weight[j] = y_prob(instance, decode(instance, j));
    mean += weight[j] * psi[j];
  }
  Rational norm(0);
  std::vector<Rational> centered(space);
  for (std::size_t j = 0; j < space; ++j) {
    centered[j] = psi[j] - mean;
    norm += weight[j] * centered[j] * centered[j];
  }
  if (norm == 0) throw InvalidParameter("psi is constant; its correlation is undefined");
  const auto b = projection_form(instance);
  Rational projected(0);
  for (std::size_t j = 0; j < space; ++j) {
    for (std::size_t l = 0; l < space; ++l) projected += centered[j] * b[j][l] * centered[l];
  }
  return projected / norm;
}

Lemma74Instance bernoulli_instance(const Rational& q) {
  if (q <= 0 || q >= 1) throw InvalidParameter("q must lie in (0,1)");
  Lemma74Instance inst;
  inst.n = 1;
  inst.atoms = {{{0}, 1 - q}, {{1}, q}};
  inst.ys = {{{Rational(-1), Rational(1)}, {Rational(1, 2), Rational(1, 2)}}};
  return inst;
}

Lemma74Instance random_lemma74_instance(std::uint64_t seed, int max_n, int max_support) {
  if (max_n < 1 || max_support < 1) throw InvalidParameter("instance limits must be positive");
  Rng rng(seed);
  auto draw_law = [&rng](std::size_t size) {
    std::vector<Rational> w(size);
    Rational total(0);
    for (auto& q : w) {
      q = Rational(static_cast<long>(1 + rng.below(6)));
      total += q;
    }
    for (auto& q : w) q /= total;
    return w;
  };
  Lemma74Instance inst;
  inst.n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n)));
  const auto atoms = 1 + rng.below(static_cast<std::uint64_t>(max_support));
  const auto atom_law = draw_law(atoms);
  for (std::size_t i = 0; i < atoms; ++i) {
    XAtom a;
    a.prob = atom_law[i];
    for (int k = 0; k < inst.n; ++k) a.x.push_back(rng.coin() ? 1 : 0);
    inst.atoms.push_back(std::move(a));
  }
  for (int k = 0; k < inst.n; ++k) {
    const auto size = 1 + rng.below(static_cast<std::uint64_t>(max_support));
    YVariable y;
    for (std::size_t v = 0; v < size; ++v) y.values.push_back(Rational(static_cast<long>(v)));
    y.probs = draw_law(size);
    inst.ys.push_back(std::move(y));
  }
  return inst;
}

}  // namespace noiselab::web
