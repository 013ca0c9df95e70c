#pragma once

/// \file json_io.hpp
/// \brief JSON encodings of matrices, points, map specifications and reports.
///
/// Scalars are plain numbers over R and [re, im] pairs over C. Matrices are
/// row-major nested arrays.

#include <optional>

#include <json.hpp>

#include "blowup/map_lift.hpp"
#include "blowup/regularity.hpp"
#include "blowup/sigma_dynamics.hpp"
#include "blowup/topology.hpp"
#include "blowup/variant.hpp"

namespace blowup {

using Json = nlohmann::ordered_json;

Json scalar_to_json(Scalar z, Field field);
/// Accepts a number or an [re, im] pair.
Scalar scalar_from_json(const Json& j);

Json vector_to_json(const Vector& v, Field field);
Vector vector_from_json(const Json& j);
/// Field::Complex if any scalar of a rank-1 (vector) or rank-2 (matrix)
/// array is an [re, im] pair.
Field infer_field(const Json& j, int rank);

Json matrix_to_json(const Matrix& m);
/// Field is inferred from the entries unless given.
Matrix matrix_from_json(const Json& j, std::optional<Field> field = std::nullopt);

Json to_json(const ProjPoint& p);
ProjPoint proj_point_from_json(const Json& j, Field field);

Json to_json(const BlowupPoint& p);

/// {"family": "linear" | "paper_example_c1" | "kink_shear" | "polynomial" |
///  "rotation_scaling" | "composite", ...}. Throws std::invalid_argument on
/// malformed input.
MapSpec map_spec_from_json(const Json& j);
Json to_json(const MapSpec& spec);

Json to_json(const ResidualReport& r);
Json to_json(const FixedSetOnSigma& f);
Json to_json(const ScanResult& s);
Json to_json(const OneSidedReport& r);
Json to_json(const SmoothnessReport& r);
Json to_json(const VariantReport& r);
Json to_json(const WitnessReport& r);
Json to_json(const FixedSetPrediction& p);
Json to_json(const BlowupTopologyReport& r);
Json chern_to_json(const std::array<ChernEntry, 4>& table);

/// Doubles as JSON numbers; non-finite values as the strings "inf", "-inf",
/// "nan" so reports stay valid JSON.
Json number(double x);

}  // namespace blowup
