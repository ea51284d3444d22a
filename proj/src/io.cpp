#include "treerep/io.hpp"

#include <sstream>
#include <stdexcept>

namespace treerep {

void put_scalar(Json& object, const std::string& key, const Scalar& value, bool approx) {
  object[key] = value.str();
  if (approx) object[key + "_approx"] = value.approx();
}

Json scalar_json(const Scalar& value) { return value.str(); }

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_object() && j.contains("re") && j.contains("im")) {
    return scalar_from_json(j.at("re")) + Scalar::imaginary_unit() * scalar_from_json(j.at("im"));
  }
  throw std::invalid_argument("expected an exact scalar, got " + j.dump());
}

Json eigenfunction_to_json(const EigenFunction& h) {
  Json j;
  j["shape"] = h.shape().name();
  j["alpha"] = h.alpha().str();
  j["depth"] = h.depth();
  j["invariance_depth"] = h.invariance_depth();
  Json values = Json::array();
  for (const auto& v : h.values()) values.push_back(v.str());
  j["values"] = std::move(values);
  return j;
}

EigenFunction eigenfunction_from_json(const Json& j) {
  try {
    const TreeShape shape = TreeShape::parse(j.at("shape").get<std::string>());
    const Scalar alpha = scalar_from_json(j.at("alpha"));
    const int depth = j.at("depth").get<int>();
    const int n0 = j.contains("invariance_depth") ? j.at("invariance_depth").get<int>() : depth;
    auto ball = TreeBall::shared(shape, depth);
    const Json& raw = j.at("values");
    if (raw.size() != ball->size()) {
      throw std::invalid_argument("expected " + std::to_string(ball->size()) + " values for depth " +
                                  std::to_string(depth) + ", got " + std::to_string(raw.size()));
    }
    std::vector<Scalar> values;
    values.reserve(raw.size());
    for (const auto& x : raw) values.push_back(scalar_from_json(x));
    EigenFunction h(alpha, n0, ball, std::move(values));
    if (const auto bad = first_eigen_defect(h.ball(), h.values(), alpha)) {
      throw std::domain_error("values break the eigen equation at " + to_string(ball->address(*bad)));
    }
    return h;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed eigenfunction: ") + e.what());
  }
}

Json word_to_json(const Automorphism& g) {
  Json out = Json::array();
  for (const auto& atom : g.word()) {
    Json a;
    if (const auto* p = std::get_if<RootedPerm>(&atom)) {
      a["kind"] = "perm";
      a["at"] = p->at.steps;
      a["perm"] = p->perm;
    } else {
      a["kind"] = "swap";
      a["at"] = std::get<PathInversion>(atom).target.steps;
    }
    out.push_back(std::move(a));
  }
  return out;
}

Automorphism word_from_json(const TreeShape& shape, const Json& j) {
  try {
    Automorphism g = Automorphism::identity(shape);
    for (const auto& a : j) {
      const std::string kind = a.at("kind").get<std::string>();
      PathAddress at{a.at("at").get<std::vector<int>>()};
      if (kind == "perm") {
        g = g * Automorphism::rooted_perm(shape, std::move(at), a.at("perm").get<std::vector<int>>());
      } else if (kind == "swap") {
        g = g * Automorphism::swap(shape, std::move(at));
      } else {
        throw std::invalid_argument("unknown atom kind '" + kind + "'");
      }
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed word: ") + e.what());
  }
}

Json combination_to_json(const TranslateCombination& c, bool approx) {
  Json j;
  j["shape"] = c.shape.name();
  j["alpha"] = c.alpha.str();
  j["depth"] = c.depth;
  j["groups"] = c.groups;
  j["residual_checks"] = c.residual_checks;
  Json terms = Json::array();
  for (const auto& t : c.terms) {
    Json term;
    put_scalar(term, "coefficient", t.coefficient, approx);
    term["word"] = word_to_json(t.word);
    terms.push_back(std::move(term));
  }
  j["terms"] = std::move(terms);
  return j;
}

std::string gram_csv(const Matrix& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m(i, j).str();
    out << '\n';
  }
  return out.str();
}

EigenFunction random_element(const TreeShape& shape, const Scalar& alpha, int cutoff, std::mt19937_64& rng) {
  EigenFunction h = radial_function(shape, alpha, minimal_depth(shape, cutoff));
  h *= Scalar(static_cast<long>(rng() % 7) - 3);
  for (int n = 1; n <= cutoff; ++n) {
    for (const auto& b : basis_Hn(shape, alpha, n).basis) {
      const long c = static_cast<long>(rng() % 7) - 3;
      if (c != 0) h += Scalar(c) * b;
    }
  }
  return h;
}

}  // namespace treerep
