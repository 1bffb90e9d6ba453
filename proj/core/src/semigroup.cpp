#include "noiselab/semigroup.hpp"

namespace noiselab::semigroup {

namespace {

std::int64_t component(const nlohmann::json& j, std::size_t k) {
  if (!j.at(k).is_number_integer()) throw InvalidParameter("semigroup tuple entries must be integers");
  return j.at(k).get<std::int64_t>();
}

}  // namespace

G3Int g3_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw InvalidParameter("G3 element must be a JSON tuple [a,b,c]");
  G3Int x{component(j, 0), component(j, 1), component(j, 2)};
  detail::require(x);
  return x;
}

G2Int g2_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidParameter("G2 element must be a JSON tuple [a,b]");
  G2Int x{component(j, 0), component(j, 1)};
  detail::require(x);
  return x;
}

std::string to_string(const G3Int& x) {
  return "(" + std::to_string(x.a) + "," + std::to_string(x.b) + "," + std::to_string(x.c) + ")";
}

}  // namespace noiselab::semigroup
