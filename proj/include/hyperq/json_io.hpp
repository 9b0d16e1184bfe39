#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hyperq/algebra.hpp"
#include "hyperq/cosmology.hpp"
#include "hyperq/dynamics.hpp"
#include "hyperq/errors.hpp"
#include "hyperq/qhilbert.hpp"
#include "hyperq/quaternion.hpp"
#include "hyperq/semantics.hpp"

namespace hyperq::json_io {

/// 17 significant digits; infinities and NaN come out as "inf", "-inf", "nan".
[[nodiscard]] std::string format_real(double v);

/// Pretty printer with object keys in sorted order and every real number
/// rendered through format_real (the library default prints shortest-roundtrip
/// forms instead).
[[nodiscard]] std::string dump_sorted(const nlohmann::json& j, int indent = 2);

/// Reads and parses a JSON file.
/// @throws ValidationError when the file is unreadable or not valid JSON
[[nodiscard]] nlohmann::json parse_file(const std::string& path);

[[nodiscard]] nlohmann::json to_json(const Quaternion& q);
[[nodiscard]] Quaternion quaternion_from_json(const nlohmann::json& j);
[[nodiscard]] std::vector<double> reals_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json to_json(const algebra::StructureTensor& t);
[[nodiscard]] algebra::StructureTensor tensor_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json to_json(const algebra::ClassificationReport& r);

[[nodiscard]] nlohmann::json to_json(const hilbert::QuaternionMatrix& m);
[[nodiscard]] hilbert::QuaternionMatrix matrix_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json to_json(const cosmology::FrameComponents& fc);

[[nodiscard]] semantics::FiniteAction action_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json to_json(const semantics::ValidationReport& r);
[[nodiscard]] nlohmann::json to_json(const semantics::ModeReport& r);

/// Comma-joined row, each value through format_real.
[[nodiscard]] std::string csv_row(const std::vector<double>& values);

/// Header `t,c0,...,c_{4n-1}` plus one row per sample.
[[nodiscard]] std::string trajectory_csv(const std::vector<dynamics::TrajectorySample>& traj);

}  // namespace hyperq::json_io
