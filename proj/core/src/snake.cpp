#include "noiselab/snake.hpp"

#include <algorithm>

#include "noiselab/errors.hpp"

namespace noiselab::flow {

std::size_t ChordSet::infinite_count() const {
  return static_cast<std::size_t>(std::count_if(chords.begin(), chords.end(), [](const Chord& c) { return c.infinite(); }));
}

std::vector<std::int64_t> ChordSet::infinite_levels() const {
  std::vector<std::int64_t> levels;
  for (const auto& c : chords) {
    if (c.infinite()) levels.push_back(c.level);
  }
  std::sort(levels.begin(), levels.end());
  return levels;
}

ChordSet chord_decomposition(const LatticePath& path) {
  ChordSet set;
  set.horizon = path.t();
  const auto& a = path.a_values;
  for (int s = 0; s < path.t(); ++s) {
    const auto us = static_cast<std::size_t>(s);
    if (a[us + 1] != a[us] + 1) continue;
    Chord chord;
    chord.start = s;
    chord.level = a[us];
    chord.selected = path.steps[us] == semigroup::f_star<std::int64_t>();
    for (int u = s + 2; u <= path.t(); ++u) {
      if (a[static_cast<std::size_t>(u)] == chord.level) {
        chord.end = u;
        break;
      }
    }
    set.chords.push_back(chord);
  }
  return set;
}

std::int64_t snake_c(const ChordSet& chords, std::int64_t a) {
  std::int64_t lowest = a;
  for (const auto& c : chords.chords) {
    if (c.infinite() && c.selected) lowest = std::min(lowest, c.level);
  }
  return a - lowest;
}

std::map<std::int64_t, Rational> snake_conditional_c(const LatticePath& path, const Rational& p) {
  if (p < 0 || p > 1) throw InvalidParameter("p must lie in [0,1]");
  const auto levels = chord_decomposition(path).infinite_levels();
  const std::int64_t a = path.a_values.back();
  std::map<std::int64_t, Rational> law;
  Rational none(1);
  // Scan levels from the bottom: the first selected one fixes c.
  for (const auto x : levels) {
    Rational q = none * p;
    if (q != 0) law[a - x] += q;
    none *= 1 - p;
  }
  if (none != 0) law[0] += none;
  return law;
}

std::map<std::int64_t, Rational> alive_count_law(const LatticePath& path, const Rational& p) {
  if (p < 0 || p > 1) throw InvalidParameter("p must lie in [0,1]");
  const auto chords = chord_decomposition(path);
  // Enumerate selections of every up-step, finite chords included.
  const std::size_t ups = chords.chords.size();
  if (ups > 30) throw BudgetExceeded("too many chords to enumerate selections");
  std::map<std::int64_t, Rational> law;
  for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << ups); ++sel) {
    Rational w(1);
    std::int64_t alive = 0;
    for (std::size_t k = 0; k < ups; ++k) {
      const bool on = ((sel >> k) & 1U) != 0;
      w *= on ? p : 1 - p;
      if (on && chords.chords[k].infinite()) ++alive;
    }
    if (w != 0) law[alive] += w;
  }
  return law;
}

namespace {

LatticePath path_from_word(int t, std::uint64_t word) {
  std::vector<int> signs(static_cast<std::size_t>(t));
  for (int k = 0; k < t; ++k) signs[static_cast<std::size_t>(k)] = ((word >> k) & 1U) != 0 ? 1 : -1;
  return path_from_signs(signs);
}

std::int64_t path_b(const LatticePath& path) {
  return -*std::min_element(path.a_values.begin(), path.a_values.end());
}

}  // namespace

FlowLaw snake_flow_law(int t, const Rational& p, const Budget& budget) {
  if (t < 0) throw InvalidParameter("horizon must be non-negative");
  if (t > budget.path_t) throw BudgetExceeded("2^" + std::to_string(t) + " paths exceed the path budget");
  Rational weight(1);
  mpz_mul_2exp(weight.get_den_mpz_t(), weight.get_den_mpz_t(), static_cast<mp_bitcnt_t>(t));
  std::map<G3Int, Rational> law;
  for (std::uint64_t word = 0; word < (std::uint64_t{1} << t); ++word) {
    const auto path = path_from_word(t, word);
    const std::int64_t a = path.a_values.back();
    const std::int64_t b = path_b(path);
    for (const auto& [c, q] : snake_conditional_c(path, p)) law[{a, b, c}] += weight * q;
  }
  return FlowLaw(Model::G3, t, std::move(law));
}

SnakeReport check_snake(int t, const Rational& p, const Budget& budget) {
  if (t > budget.exhaustive_t) {
    throw BudgetExceeded("snake check at t=" + std::to_string(t) + " exceeds cap " + std::to_string(budget.exhaustive_t));
  }
  SnakeReport report;
  report.t = t;
  report.p = p;
  report.flow_match = snake_flow_law(t, p, budget) == flow_law(standard_generators(Model::G3, p), t, budget);

  for (std::uint64_t word = 0; word < (std::uint64_t{1} << t); ++word) {
    const auto path = path_from_word(t, word);
    const std::int64_t n = path.a_values.back() + path_b(path);
    std::map<std::int64_t, Rational> binom;
    for (std::int64_t k = 0; k <= n; ++k) {
      Rational q = Rational(binomial(static_cast<unsigned>(n), static_cast<unsigned>(k))) * pow(p, static_cast<unsigned>(k)) *
                   pow(1 - p, static_cast<unsigned>(n - k));
      if (q != 0) binom[k] = std::move(q);
    }
    ++report.alive_paths;
    if (alive_count_law(path, p) != binom) ++report.alive_mismatches;
  }

  // Every G3 word: c from composition equals the snake reading of its chords.
  std::vector<G3Int> steps(static_cast<std::size_t>(t));
  std::int64_t total = 1;
  for (int k = 0; k < t; ++k) total *= 3;
  const G3Int letters[3] = {semigroup::f_minus<std::int64_t>(), semigroup::f_plus<std::int64_t>(),
                            semigroup::f_star<std::int64_t>()};
  for (std::int64_t word = 0; word < total; ++word) {
    std::int64_t rest = word;
    for (auto& s : steps) {
      s = letters[rest % 3];
      rest /= 3;
    }
    const auto path = make_path(Model::G3, steps);
    const auto xi = path_element(path, 0, t);
    ++report.words;
    if (snake_c(chord_decomposition(path), xi.a) != xi.c) ++report.word_mismatches;
  }
  return report;
}

}  // namespace noiselab::flow
