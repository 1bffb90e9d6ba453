#include "noiselab/flow.hpp"

#include <algorithm>
#include <limits>

#include "noiselab/errors.hpp"
#include "noiselab/random.hpp"

namespace noiselab::flow {

using semigroup::f_minus;
using semigroup::f_plus;
using semigroup::f_star;

std::string to_string(Model model) {
  switch (model) {
    case Model::G1: return "G1";
    case Model::G2: return "G2";
    case Model::G3: return "G3";
    case Model::Trap: return "trap";
  }
  return "?";
}

Model parse_model(std::string_view name) {
  if (name == "G1" || name == "g1") return Model::G1;
  if (name == "G2" || name == "g2") return Model::G2;
  if (name == "G3" || name == "g3") return Model::G3;
  if (name == "trap") return Model::Trap;
  throw InvalidParameter("unknown flow model '" + std::string(name) + "'");
}

G3Int project_to(Model model, const G3Int& x) {
  switch (model) {
    case Model::G1: return {x.a, 0, 0};
    case Model::G2: return {x.a, x.b, 0};
    default: return x;
  }
}

G3Int compose_in(Model model, const G3Int& x, const G3Int& y) {
  switch (model) {
    case Model::G1:
      return {x.a + y.a, 0, 0};
    case Model::G2: {
      const auto xy = semigroup::compose(semigroup::project(x), semigroup::project(y));
      return {xy.a, xy.b, 0};
    }
    default:
      return semigroup::compose(x, y);
  }
}

namespace {

// G1 elements are stored as (a,0,0) and G2 elements as (a,b,0).
bool element_valid(Model model, const G3Int& x) {
  switch (model) {
    case Model::G1: return x.b == 0 && x.c == 0;
    case Model::G2: return x.c == 0 && semigroup::project(x).valid();
    default: return x.valid();
  }
}

}  // namespace

// ---------------------------------------------------------------- generators

GeneratorSet::GeneratorSet(Model model, std::vector<Generator> generators)
    : model_(model), generators_(std::move(generators)) {
  if (generators_.empty()) throw InvalidParameter("generator set is empty");
  Rational sum(0);
  for (const auto& g : generators_) {
    if (!g.element.valid()) throw InvariantViolation("generator " + semigroup::to_string(g.element) + " is not a G3 element");
    if (g.prob <= 0) throw InvalidParameter("generator probabilities must be positive");
    if (g.element.a != 1 && g.element.a != -1) throw InvalidParameter("generators must move a by exactly +-1");
    sum += g.prob;
  }
  if (sum != 1) throw InvalidParameter("generator probabilities sum to " + noiselab::to_string(sum) + ", not 1");
}

Rational GeneratorSet::prob_of(const G3Int& element) const {
  for (const auto& g : generators_) {
    if (g.element == element) return g.prob;
  }
  return Rational(0);
}

GeneratorSet standard_generators(Model model, const Rational& p, int m) {
  const Rational half(1, 2);
  switch (model) {
    case Model::G1:
    case Model::G2:
      return GeneratorSet(model, {{f_minus<std::int64_t>(), half}, {f_plus<std::int64_t>(), half}});
    case Model::G3: {
      if (p < 0 || p > 1) throw InvalidParameter("stickiness parameter p must lie in [0,1], got " + noiselab::to_string(p));
      std::vector<Generator> gens{{f_minus<std::int64_t>(), half}};
      if (p < 1) gens.push_back({f_plus<std::int64_t>(), (1 - p) / 2});
      if (p > 0) gens.push_back({f_star<std::int64_t>(), p / 2});
      return GeneratorSet(model, std::move(gens));
    }
    case Model::Trap:
      if (m < 1) throw InvalidParameter("trap depth m must be at least 1");
      return GeneratorSet(model, {{G3Int{-1, m, 0}, half}, {f_star<std::int64_t>(), half}});
  }
  throw InvalidParameter("unknown model");
}

// ---------------------------------------------------------------- laws

FlowLaw::FlowLaw(Model model, int t, std::map<G3Int, Rational> probs) : model_(model), t_(t), probs_(std::move(probs)) {
  if (t < 0) throw InvalidParameter("flow time must be non-negative");
  Rational sum(0);
  for (const auto& [x, q] : probs_) {
    if (!element_valid(model, x)) throw InvariantViolation("law support contains " + semigroup::to_string(x));
    if (q < 0) throw InvariantViolation("negative probability in flow law");
    sum += q;
  }
  if (sum != 1) throw InvariantViolation("flow law has total mass " + noiselab::to_string(sum));
}

Rational FlowLaw::at(const G3Int& x) const {
  const auto it = probs_.find(x);
  return it == probs_.end() ? Rational(0) : it->second;
}

Rational FlowLaw::total() const {
  Rational sum(0);
  for (const auto& [x, q] : probs_) sum += q;
  return sum;
}

FlowLaw FlowLaw::project(Model target) const {
  std::map<G3Int, Rational> out;
  for (const auto& [x, q] : probs_) out[project_to(target, x)] += q;
  return FlowLaw(target, t_, std::move(out));
}

FlowLaw flow_law(const GeneratorSet& generators, int t, const Budget& budget) {
  if (t < 0) throw InvalidParameter("flow time must be non-negative");
  const Model model = generators.model();
  std::map<G3Int, Rational> law{{semigroup::unit_g3<std::int64_t>(), Rational(1)}};
  for (int step = 0; step < t; ++step) {
    std::map<G3Int, Rational> next;
    for (const auto& [x, q] : law) {
      for (const auto& g : generators.generators()) next[compose_in(model, x, g.element)] += q * g.prob;
    }
    if (next.size() > budget.support_cap) {
      throw BudgetExceeded("flow law support " + std::to_string(next.size()) + " exceeds cap " +
                           std::to_string(budget.support_cap));
    }
    law = std::move(next);
  }
  return FlowLaw(model, t, std::move(law));
}

FlowLaw convolve(const FlowLaw& first, const FlowLaw& second, const Budget& budget) {
  if (first.model() != second.model()) throw InvalidParameter("cannot convolve laws of different models");
  std::map<G3Int, Rational> out;
  for (const auto& [x, qx] : first.probs()) {
    for (const auto& [y, qy] : second.probs()) out[compose_in(first.model(), x, y)] += qx * qy;
    if (out.size() > budget.support_cap) throw BudgetExceeded("convolution support exceeds cap");
  }
  return FlowLaw(first.model(), first.t() + second.t(), std::move(out));
}

namespace {

Rational pow2_inverse(int t) {
  Rational q(1);
  mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<mp_bitcnt_t>(t));
  return q;
}

// (a+2b+1)/2^t * t! / (((t+a)/2 + b + 1)! ((t-a)/2 - b)!), zero off the lattice.
Rational g2_probability(int t, std::int64_t a, std::int64_t b) {
  if (b < 0 || a + b < 0 || ((t + a) % 2 + 2) % 2 != 0) return Rational(0);
  const std::int64_t up = (t + a) / 2 + b + 1;
  const std::int64_t down = (t - a) / 2 - b;
  if (down < 0 || up < 0) return Rational(0);
  BigInt num = a + 2 * b + 1;
  BigInt fact_t;
  BigInt fact_up;
  BigInt fact_down;
  mpz_fac_ui(fact_t.get_mpz_t(), static_cast<unsigned long>(t));
  mpz_fac_ui(fact_up.get_mpz_t(), static_cast<unsigned long>(up));
  mpz_fac_ui(fact_down.get_mpz_t(), static_cast<unsigned long>(down));
  Rational q(num * fact_t, fact_up * fact_down);
  q.canonicalize();
  return q * pow2_inverse(t);
}

}  // namespace

Rational closed_form_probability(Model model, int t, const G3Int& x, const Rational& p) {
  if (t < 0) throw InvalidParameter("flow time must be non-negative");
  switch (model) {
    case Model::G1: {
      if (x.b != 0 || x.c != 0 || x.a < -t || x.a > t || ((t + x.a) % 2 + 2) % 2 != 0) return Rational(0);
      return Rational(binomial(static_cast<unsigned>(t), static_cast<unsigned>((t + x.a) / 2))) * pow2_inverse(t);
    }
    case Model::G2:
      if (x.c != 0) return Rational(0);
      return g2_probability(t, x.a, x.b);
    case Model::G3: {
      if (p < 0 || p > 1) throw InvalidParameter("p must lie in [0,1]");
      if (!x.valid()) return Rational(0);
      const Rational base = g2_probability(t, x.a, x.b);
      if (base == 0) return base;
      const auto span = static_cast<unsigned>(x.a + x.b);
      if (x.c == 0) return base * pow(1 - p, span);
      return base * p * pow(1 - p, span - static_cast<unsigned>(x.c));
    }
    case Model::Trap:
      break;
  }
  throw InvalidParameter("no closed form for model " + to_string(model));
}

FlowLaw closed_form_law(Model model, int t, const Rational& p) {
  if (t < 0) throw InvalidParameter("flow time must be non-negative");
  std::map<G3Int, Rational> out;
  for (std::int64_t a = -t; a <= t; a += 2) {
    if (model == Model::G1) {
      out[{a, 0, 0}] = closed_form_probability(model, t, {a, 0, 0}, p);
      continue;
    }
    for (std::int64_t b = std::max<std::int64_t>(0, -a); (t - a) / 2 - b >= 0; ++b) {
      if (model == Model::G2) {
        out[{a, b, 0}] = closed_form_probability(model, t, {a, b, 0}, p);
        continue;
      }
      for (std::int64_t c = 0; c <= a + b; ++c) {
        Rational q = closed_form_probability(model, t, {a, b, c}, p);
        if (q != 0) out[{a, b, c}] = std::move(q);
      }
    }
  }
  return FlowLaw(model, t, std::move(out));
}

std::map<std::int64_t, Rational> truncated_geometric_c_law(std::int64_t a_plus_b, const Rational& p) {
  if (a_plus_b < 0) throw InvalidParameter("a+b must be non-negative");
  std::map<std::int64_t, Rational> out;
  Rational miss(1);
  // G = g gives c = a+b-g+1 for g <= a+b; every G > a+b gives c = 0.
  for (std::int64_t g = 1; g <= a_plus_b; ++g) {
    Rational q = miss * p;
    if (q != 0) out[a_plus_b - g + 1] = q;
    miss *= 1 - p;
  }
  if (miss != 0) out[0] += miss;
  return out;
}

nlohmann::ordered_json to_json(const FlowLaw& law) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& [x, q] : law.probs()) {
    entries.push_back({{"a", x.a}, {"b", x.b}, {"c", x.c}, {"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}});
  }
  return {{"model", to_string(law.model())}, {"t", law.t()}, {"entries", std::move(entries)}};
}

FlowLaw flow_law_from_json(const nlohmann::json& j) {
  const Model model = j.contains("model") ? parse_model(j.at("model").get<std::string>()) : Model::G3;
  std::map<G3Int, Rational> probs;
  for (const auto& e : j.at("entries")) {
    const G3Int x{e.at("a").get<std::int64_t>(), e.at("b").get<std::int64_t>(), e.at("c").get<std::int64_t>()};
    probs[x] += parse_rational(e.at("num").get<std::string>() + "/" + e.at("den").get<std::string>());
  }
  return FlowLaw(model, j.at("t").get<int>(), std::move(probs));
}

// ---------------------------------------------------------------- paths

LatticePath make_path(Model model, std::vector<G3Int> steps) {
  LatticePath path;
  path.model = model;
  path.a_values.reserve(steps.size() + 1);
  path.a_values.push_back(0);
  for (const auto& s : steps) {
    if (!s.valid()) throw InvariantViolation("path step " + semigroup::to_string(s) + " is not a G3 element");
    if (s.a != 1 && s.a != -1) throw InvalidParameter("path steps must change a by exactly +-1");
    path.a_values.push_back(path.a_values.back() + s.a);
  }
  path.steps = std::move(steps);
  return path;
}

LatticePath path_from_signs(const std::vector<int>& signs) {
  std::vector<G3Int> steps;
  steps.reserve(signs.size());
  for (int s : signs) {
    if (s == 1) {
      steps.push_back(f_plus<std::int64_t>());
    } else if (s == -1) {
      steps.push_back(f_minus<std::int64_t>());
    } else {
      throw InvalidParameter("path signs must be +-1");
    }
  }
  return make_path(Model::G2, std::move(steps));
}

G3Int path_element(const LatticePath& path, int s, int u) {
  if (s < 0 || s > u || u > path.t()) throw InvalidParameter("need 0 <= s <= u <= t");
  G3Int x = semigroup::unit_g3<std::int64_t>();
  for (int k = s; k < u; ++k) x = compose_in(path.model, x, path.steps[static_cast<std::size_t>(k)]);
  return x;
}

LatticePath sample_path(const GeneratorSet& generators, int t, std::uint64_t seed) {
  if (t < 0) throw InvalidParameter("path length must be non-negative");
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& g : generators.generators()) {
    acc += to_double(g.prob);
    cumulative.push_back(acc);
  }
  cumulative.back() = 1.0;
  Rng rng(seed);
  std::vector<G3Int> steps;
  steps.reserve(static_cast<std::size_t>(t));
  for (int k = 0; k < t; ++k) {
    const double u = rng.uniform01();
    std::size_t idx = 0;
    while (u >= cumulative[idx]) ++idx;
    steps.push_back(generators.generators()[idx].element);
  }
  return make_path(generators.model(), std::move(steps));
}

namespace {

// Walks one path prefix by prefix; appends violations to `report`.
void check_prefixes(Model model, const std::vector<G3Int>& steps, const std::vector<std::int64_t>& a_values,
                    PathIdentityReport& report) {
  G3Int x = semigroup::unit_g3<std::int64_t>();
  std::int64_t running_min = 0;
  for (std::size_t k = 0; k <= steps.size(); ++k) {
    if (k > 0) {
      x = compose_in(model == Model::G1 ? Model::G2 : model, x, steps[k - 1]);
      running_min = std::min(running_min, a_values[k]);
    }
    ++report.prefixes;
    const std::int64_t a_now = a_values[k];
    if (x.a != a_now) report.violations.push_back({static_cast<int>(k), "a(0,k) = sum of increments", x.a, a_now});
    if (x.b != -running_min) report.violations.push_back({static_cast<int>(k), "b(0,k) = -min a(0,s)", x.b, -running_min});
    std::int64_t max_increment = std::numeric_limits<std::int64_t>::min();
    for (std::size_t s = 0; s <= k; ++s) max_increment = std::max(max_increment, a_now - a_values[s]);
    if (x.a + x.b != max_increment) {
      report.violations.push_back({static_cast<int>(k), "a(0,k)+b(0,k) = max a(s,k)", x.a + x.b, max_increment});
    }
  }
}

}  // namespace

PathIdentityReport check_path_identities(const LatticePath& path) {
  if (path.model == Model::Trap) throw InvalidParameter("path identities hold for the standard G2/G3 flows only");
  PathIdentityReport report;
  report.paths = 1;
  check_prefixes(path.model, path.steps, path.a_values, report);
  return report;
}

PathIdentityReport check_all_path_identities(int t, const Budget& budget) {
  if (t < 0) throw InvalidParameter("path length must be non-negative");
  if (t > budget.path_t) throw BudgetExceeded("2^" + std::to_string(t) + " paths exceed the path budget");
  PathIdentityReport report;
  std::vector<G3Int> steps(static_cast<std::size_t>(t));
  std::vector<std::int64_t> a_values(static_cast<std::size_t>(t) + 1, 0);
  const std::uint64_t count = std::uint64_t{1} << t;
  for (std::uint64_t word = 0; word < count; ++word) {
    for (int k = 0; k < t; ++k) {
      const bool up = ((word >> k) & 1U) != 0;
      steps[static_cast<std::size_t>(k)] = up ? f_plus<std::int64_t>() : f_minus<std::int64_t>();
      a_values[static_cast<std::size_t>(k) + 1] = a_values[static_cast<std::size_t>(k)] + (up ? 1 : -1);
    }
    ++report.paths;
    check_prefixes(Model::G2, steps, a_values, report);
  }
  return report;
}

// ---------------------------------------------------------------- conditional c law

ConditionalCReport conditional_c_law(int t, const Rational& p, const Budget& budget) {
  if (t < 0) throw InvalidParameter("flow time must be non-negative");
  if (t > budget.exhaustive_t) {
    throw BudgetExceeded("conditional law check at t=" + std::to_string(t) + " exceeds cap " +
                         std::to_string(budget.exhaustive_t));
  }
  const FlowLaw law = flow_law(standard_generators(Model::G3, p), t, budget);
  std::map<std::pair<std::int64_t, std::int64_t>, Rational> marginal;
  for (const auto& [x, q] : law.probs()) marginal[{x.a, x.b}] += q;

  ConditionalCReport report;
  report.t = t;
  report.p = p;
  for (const auto& [ab, q_ab] : marginal) {
    const auto [a, b] = ab;
    const auto formula = truncated_geometric_c_law(a + b, p);
    for (std::int64_t c = 0; c <= a + b; ++c) {
      const G3Int x{a, b, c};
      Rational from_flow = law.at(x) / q_ab;
      const auto it = formula.find(c);
      Rational from_formula = it == formula.end() ? Rational(0) : it->second;
      if (from_flow != from_formula) ++report.mismatches;
      report.entries.push_back({x, std::move(from_flow), std::move(from_formula)});
    }
  }
  return report;
}

}  // namespace noiselab::flow
