#include "blowup/json_io.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace blowup {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw std::invalid_argument("malformed JSON: " + what);
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

double require_number(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number()) malformed(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

bool is_pair(const Json& j) {
  return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
}

}  // namespace

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json scalar_to_json(Scalar z, Field field) {
  if (field == Field::Real) return number(z.real());
  return Json::array({number(z.real()), number(z.imag())});
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (is_pair(j)) return {j[0].get<double>(), j[1].get<double>()};
  malformed("scalar must be a number or an [re, im] pair");
}

Json vector_to_json(const Vector& v, Field field) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(scalar_to_json(v(i), field));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) malformed("vector must be a nonempty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = scalar_from_json(j[i]);
  return v;
}

Field infer_field(const Json& j, int rank) {
  if (!j.is_array()) return Field::Real;
  for (const auto& e : j) {
    if (rank <= 1 ? e.is_array() : infer_field(e, rank - 1) == Field::Complex) return Field::Complex;
  }
  return Field::Real;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (int r = 0; r < m.dim(); ++r) out.push_back(vector_to_json(m.entries().row(r).transpose(), m.field()));
  return out;
}

Matrix matrix_from_json(const Json& j, std::optional<Field> field) {
  if (!j.is_array() || j.empty()) malformed("matrix must be a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) malformed("matrix must be square");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = scalar_from_json(row[static_cast<std::size_t>(c)]);
  }
  return Matrix(field.value_or(infer_field(j, 2)), std::move(m));
}

Json to_json(const ProjPoint& p) {
  return Json{{"homog", vector_to_json(p.homog(), p.field())}};
}

ProjPoint proj_point_from_json(const Json& j, Field field) {
  const Json& h = j.is_object() ? require(j, "homog") : j;
  return ProjPoint::normalize(field, vector_from_json(h));
}

Json to_json(const BlowupPoint& p) {
  return Json{{"x", vector_to_json(p.x, p.y.field())}, {"y", to_json(p.y)}};
}

MapSpec map_spec_from_json(const Json& j) {
  if (!j.is_object()) malformed("map spec must be an object");
  const Json& family_node = require(j, "family");
  if (!family_node.is_string()) malformed("'family' must be a string");
  const std::string family = family_node.get<std::string>();
  if (family == "linear") {
    std::optional<Field> field;
    if (j.contains("field")) field = field_from_string(j.at("field").get<std::string>());
    return MapSpec::linear(matrix_from_json(require(j, "matrix"), field));
  }
  if (family == "paper_example_c1") return MapSpec::paper_example_c1();
  if (family == "kink_shear") return MapSpec::kink_shear(static_cast<int>(require_number(j, "order")));
  if (family == "rotation_scaling") {
    return MapSpec::rotation_scaling(require_number(j, "lambda"), require_number(j, "theta"));
  }
  if (family == "polynomial") {
    const Json& coords = require(j, "coordinates");
    if (!coords.is_array() || coords.empty()) malformed("'coordinates' must be a nonempty array");
    Field field = j.contains("field") ? field_from_string(j.at("field").get<std::string>()) : Field::Real;
    std::vector<std::vector<Monomial>> terms;
    for (const Json& coord : coords) {
      if (!coord.is_array()) malformed("each coordinate must be a list of monomials");
      std::vector<Monomial> list;
      for (const Json& term : coord) {
        const Json& exps = require(term, "exponents");
        if (!exps.is_array()) malformed("'exponents' must be an array");
        Monomial m;
        for (const Json& e : exps) {
          if (!e.is_number_integer()) malformed("exponents must be integers");
          m.exponents.push_back(e.get<int>());
        }
        m.coeff = scalar_from_json(require(term, "coeff"));
        if (m.coeff.imag() != 0.0 && !j.contains("field")) field = Field::Complex;
        list.push_back(std::move(m));
      }
      terms.push_back(std::move(list));
    }
    const int n = j.contains("n") ? j.at("n").get<int>() : static_cast<int>(terms.size());
    return MapSpec::polynomial(field, n, std::move(terms));
  }
  if (family == "composite") {
    const Json& maps = require(j, "maps");
    if (!maps.is_array() || maps.empty()) malformed("'maps' must be a nonempty array");
    std::vector<MapSpec> factors;
    for (const Json& m : maps) factors.push_back(map_spec_from_json(m));
    return MapSpec::composite(std::move(factors));
  }
  malformed("unknown map family '" + family + "'");
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Json to_json(const MapSpec& spec) {
  return std::visit(
      overloaded{
          [&](const LinearFamily& f) {
            return Json{{"family", "linear"},
                        {"field", std::string(to_string(spec.field()))},
                        {"matrix", matrix_to_json(f.matrix)}};
          },
          [&](const KinkShearFamily& f) {
            if (f.order == 1) return Json{{"family", "paper_example_c1"}};
            return Json{{"family", "kink_shear"}, {"order", f.order}};
          },
          [&](const PolynomialFamily& f) {
            Json coords = Json::array();
            for (const auto& list : f.coordinates) {
              Json terms = Json::array();
              for (const auto& m : list) {
                terms.push_back(Json{{"exponents", m.exponents}, {"coeff", scalar_to_json(m.coeff, spec.field())}});
              }
              coords.push_back(std::move(terms));
            }
            return Json{{"family", "polynomial"},
                        {"field", std::string(to_string(spec.field()))},
                        {"n", spec.dim()},
                        {"coordinates", std::move(coords)}};
          },
          [&](const RotationScalingFamily& f) {
            return Json{{"family", "rotation_scaling"}, {"lambda", number(f.lambda)}, {"theta", number(f.theta)}};
          },
          [&](const CompositeFamily& f) {
            Json maps = Json::array();
            for (const auto& m : f.maps) maps.push_back(to_json(m));
            return Json{{"family", "composite"}, {"maps", std::move(maps)}};
          },
      },
      spec.family());
}

Json to_json(const ResidualReport& r) {
  return Json{{"samples", r.samples},
              {"max_residual", number(r.max_residual)},
              {"max_incidence", number(r.max_incidence)},
              {"tol", number(r.tol)},
              {"passed", r.passed}};
}

Json to_json(const FixedSetOnSigma& f) {
  Json comps = Json::array();
  for (const auto& c : f.components) {
    Json basis = Json::array();
    for (const auto& v : c.basis) basis.push_back(vector_to_json(v, f.field));
    comps.push_back(Json{{"lambda", scalar_to_json(c.lambda, f.field)},
                         {"proj_dim", c.proj_dim},
                         {"basis", std::move(basis)},
                         {"description", c.description()}});
  }
  Json rot = Json::array();
  for (const auto& z : f.rotational_classes) rot.push_back(scalar_to_json(z, Field::Complex));
  return Json{{"components", std::move(comps)},
              {"field", std::string(to_string(f.field))},
              {"rotational_classes", std::move(rot)}};
}

Json to_json(const ScanResult& s) {
  Json clusters = Json::array();
  for (const auto& c : s.clusters) {
    clusters.push_back(Json{{"representative", to_json(c.representative)}, {"members", c.members.size()}});
  }
  return Json{{"sample_count", s.sample_count},
              {"grid_spacing", number(s.grid_spacing)},
              {"fixed_sample_count", s.fixed_sample_count},
              {"clusters", std::move(clusters)}};
}

namespace {

Json numbers(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

}  // namespace

Json to_json(const OneSidedReport& r) {
  Json kinks = Json::array();
  for (bool k : r.kink) kinks.push_back(k);
  return Json{{"m", number(r.slope)},       {"chart", r.chart + 1},         {"left", numbers(r.left)},
              {"right", numbers(r.right)},  {"jump", numbers(r.jump)},      {"noise", numbers(r.noise)},
              {"kink", std::move(kinks)}};
}

Json to_json(const SmoothnessReport& r) {
  return Json{{"chart", r.chart + 1},
              {"max_order", r.max_order},
              {"order_per_coordinate", r.order_per_coordinate},
              {"order_estimate", r.order}};
}

Json to_json(const VariantReport& r) {
  return Json{{"samples", r.samples},
              {"conjugacy_residual", number(r.conjugacy_residual)},
              {"diagram_residual", number(r.diagram_residual)},
              {"classical_fixed_set", to_json(r.classical)},
              {"variant_fixed_set", to_json(r.variant)},
              {"tol", number(r.tol)},
              {"passed", r.passed}};
}

Json to_json(const WitnessReport& r) {
  Json clusters = Json::array();
  for (const auto& p : r.cluster_points) clusters.push_back(to_json(p));
  return Json{{"cluster_points", std::move(clusters)},
              {"separation", number(r.separation)},
              {"blowdown_limit_norm", number(r.blowdown_limit_norm)},
              {"tail_max_norm", number(r.tail_max_norm)},
              {"subsequence_spread", number(r.subsequence_spread)},
              {"max_knot_error", number(r.max_knot_error)},
              {"max_roundtrip_error", number(r.max_roundtrip_error)},
              {"verdict", r.verdict}};
}

Json to_json(const FixedSetPrediction& p) {
  Json comps = Json::array();
  for (const auto& c : p.components) {
    comps.push_back(Json{{"subspace", c.unstable ? "unstable" : "stable"},
                         {"multiplicity", c.multiplicity},
                         {"proj_dim", c.proj_dim}});
  }
  return Json{{"kind", p.kind},
              {"components", std::move(comps)},
              {"complex_pairs", p.complex_pairs},
              {"even_dimensions", p.even_dimensions}};
}

Json to_json(const BlowupTopologyReport& r) {
  return Json{{"field", std::string(to_string(r.field))},
              {"n", r.n},
              {"summand", r.summand},
              {"euler_before", r.euler_before},
              {"euler_after", r.euler_after},
              {"sigma_dimension", r.sigma_dimension},
              {"model", r.model},
              {"model_orientable", r.model_orientable},
              {"global_effect", r.global_effect}};
}

Json chern_to_json(const std::array<ChernEntry, 4>& table) {
  Json out = Json::array();
  for (const auto& e : table) {
    out.push_back(Json{{"entry", std::string(1, e.label)},
                       {"bundle", e.bundle},
                       {"c1", e.sign > 0 ? "+c" : "-c"}});
  }
  return out;
}

}  // namespace blowup
