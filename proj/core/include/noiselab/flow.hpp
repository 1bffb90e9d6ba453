#pragma once

// Random flows xi_{0,t} = xi_{0,1} xi_{1,2} ... xi_{t-1,t} with independent
// steps drawn from a finite generator set, and their exact laws.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "noiselab/budget.hpp"
#include "noiselab/rational.hpp"
#include "noiselab/semigroup.hpp"

namespace noiselab::flow {

using semigroup::G3Int;

/// Which semigroup the flow lives in. Trap is G3 driven by the dyadic trap
/// generators g_+ = (1,0,1), g_- = (-1,m,0).
enum class Model { G1, G2, G3, Trap };

std::string to_string(Model model);
Model parse_model(std::string_view name);

/// Composition inside `model`, on elements stored as triples: G1 keeps (a,0,0),
/// G2 keeps (a,b,0), G3 and Trap use the full law.
G3Int compose_in(Model model, const G3Int& x, const G3Int& y);

/// Image of a G3 triple under the canonical homomorphism onto `model`.
G3Int project_to(Model model, const G3Int& x);

struct Generator {
  G3Int element;
  Rational prob;
};

/// Step distribution of a flow. Probabilities are positive and sum to exactly 1.
class GeneratorSet {
 public:
  GeneratorSet(Model model, std::vector<Generator> generators);

  Model model() const { return model_; }
  const std::vector<Generator>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  Rational prob_of(const G3Int& element) const;

 private:
  Model model_;
  std::vector<Generator> generators_;
};

/// G1, G2: f_-, f_+ with 1/2 each. G3: f_- 1/2, f_+ (1-p)/2, f_* p/2 (zero-probability
/// generators are dropped). Trap: g_- = (-1,m,0), g_+ = (1,0,1) with 1/2 each.
GeneratorSet standard_generators(Model model, const Rational& p = Rational(1, 2), int m = 1);

/// Exact law of xi_{0,t}.
class FlowLaw {
 public:
  FlowLaw(Model model, int t, std::map<G3Int, Rational> probs);

  Model model() const { return model_; }
  int t() const { return t_; }
  const std::map<G3Int, Rational>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  Rational at(const G3Int& x) const;
  Rational total() const;

  /// Push-forward under the canonical homomorphism onto a coarser model.
  FlowLaw project(Model target) const;

  bool operator==(const FlowLaw& other) const = default;

 private:
  Model model_;
  int t_;
  std::map<G3Int, Rational> probs_;
};

/// Dynamic programming over compositions with the generator set.
/// Throws BudgetExceeded when the support outgrows budget.support_cap.
FlowLaw flow_law(const GeneratorSet& generators, int t, const Budget& budget = {});

/// Law of x y for independent x ~ first, y ~ second (first applied first).
FlowLaw convolve(const FlowLaw& first, const FlowLaw& second, const Budget& budget = {});

/// Closed forms: binomial for G1, reflection-principle formula for G2, and the
/// G2 formula times p(1-p)^(a+b-c) (c > 0) or (1-p)^(a+b) (c = 0) for G3.
FlowLaw closed_form_law(Model model, int t, const Rational& p = Rational(1, 2));
Rational closed_form_probability(Model model, int t, const G3Int& x, const Rational& p = Rational(1, 2));

/// Law of max(0, a+b-G+1), G ~ Geom(p) on {1,2,...}.
std::map<std::int64_t, Rational> truncated_geometric_c_law(std::int64_t a_plus_b, const Rational& p);

nlohmann::ordered_json to_json(const FlowLaw& law);
FlowLaw flow_law_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------- lattice paths

/// One realization of the steps xi_{k,k+1}, k = 0..t-1, with running a(0,k).
struct LatticePath {
  Model model = Model::G2;
  std::vector<G3Int> steps;
  std::vector<std::int64_t> a_values;  // a(0,0) = 0, ..., a(0,t)

  int t() const { return static_cast<int>(steps.size()); }
};

/// Builds a path from explicit steps; every step must move a by exactly +-1.
LatticePath make_path(Model model, std::vector<G3Int> steps);

/// Path whose a-increments are given as +1/-1 (f_+ / f_-).
LatticePath path_from_signs(const std::vector<int>& signs);

/// xi_{s,u} for 0 <= s <= u <= t.
G3Int path_element(const LatticePath& path, int s, int u);

/// Deterministic in (generators, t, seed).
LatticePath sample_path(const GeneratorSet& generators, int t, std::uint64_t seed);

struct IdentityViolation {
  int prefix = 0;
  std::string identity;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
};

struct PathIdentityReport {
  std::int64_t paths = 0;
  std::int64_t prefixes = 0;
  std::vector<IdentityViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks, for every prefix k, b(0,k) = -min_{s<=k} a(0,s) and
/// a(0,k) + b(0,k) = max_{s<=k} a(s,k), with b from semigroup composition.
PathIdentityReport check_path_identities(const LatticePath& path);

/// The same check over all 2^t paths of the standard G2 flow.
PathIdentityReport check_all_path_identities(int t, const Budget& budget = {});

// ---------------------------------------------------------------- conditional stickiness law

struct ConditionalCEntry {
  G3Int element;
  Rational from_flow;     // P(c | a, b) from the exact G3 law
  Rational from_formula;  // truncated geometric law
};

struct ConditionalCReport {
  int t = 0;
  Rational p;
  std::vector<ConditionalCEntry> entries;
  std::size_t mismatches = 0;

  bool ok() const { return mismatches == 0; }
};

/// Compares, for every (a,b,c), the conditional law of c given (a,b) under the
/// exact G3 flow with the truncated geometric law. t must not exceed budget.exhaustive_t.
ConditionalCReport conditional_c_law(int t, const Rational& p, const Budget& budget = {});

}  // namespace noiselab::flow
