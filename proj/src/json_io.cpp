#include "hyperq/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hyperq::json_io {

using nlohmann::json;

namespace {

void append_indent(std::string& out, int depth, int indent) {
  out.append(static_cast<std::size_t>(depth) * indent, ' ');
}

void dump_rec(const json& j, std::string& out, int depth, int indent) {
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t k = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++k) {
        append_indent(out, depth + 1, indent);
        out += json(it.key()).dump();
        out += ": ";
        dump_rec(it.value(), out, depth + 1, indent);
        if (k + 1 < j.size()) out += ',';
        out += '\n';
      }
      append_indent(out, depth, indent);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line; nested arrays/objects get spread.
      bool scalars = true;
      for (const auto& v : j) {
        if (v.is_structured()) {
          scalars = false;
          break;
        }
      }
      if (scalars) {
        out += '[';
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out += ", ";
          dump_rec(j[k], out, depth, indent);
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        append_indent(out, depth + 1, indent);
        dump_rec(j[k], out, depth + 1, indent);
        if (k + 1 < j.size()) out += ',';
        out += '\n';
      }
      append_indent(out, depth, indent);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      out += format_real(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

json matrix4_to_json(const Eigen::Matrix4d& m) {
  json rows = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

json int_lists_to_json(const std::vector<std::vector<int>>& lists) {
  json out = json::array();
  for (const auto& l : lists) out.push_back(l);
  return out;
}

std::vector<std::vector<int>> int_lists_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array of arrays");
  std::vector<std::vector<int>> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw ValidationError(std::string(what) + " must be an array of arrays");
    std::vector<int> r;
    for (const auto& v : row) {
      if (!v.is_number_integer() && !v.is_number_unsigned()) {
        throw ValidationError(std::string(what) + " entries must be integers");
      }
      r.push_back(v.get<int>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_sorted(const json& j, int indent) {
  std::string out;
  dump_rec(j, out, 0, indent);
  return out;
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("invalid JSON in " + path + ": " + e.what());
  }
}

json to_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

Quaternion quaternion_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw ValidationError("a quaternion must be an array of 4 reals");
  }
  for (const auto& v : j) {
    if (!v.is_number()) throw ValidationError("a quaternion must be an array of 4 reals");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

std::vector<double> reals_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of reals");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw ValidationError("expected an array of reals");
    out.push_back(v.get<double>());
  }
  return out;
}

json to_json(const algebra::StructureTensor& t) {
  const int d = t.dim();
  json comps = json::array();
  for (int g = 0; g < d; ++g) {
    json ga = json::array();
    for (int a = 0; a < d; ++a) {
      json ab = json::array();
      for (int b = 0; b < d; ++b) ab.push_back(t.at(g, a, b));
      ga.push_back(ab);
    }
    comps.push_back(ga);
  }
  return {{"dim", d}, {"components", comps}};
}

algebra::StructureTensor tensor_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("components")) {
    throw ValidationError(R"(a structure tensor needs "dim" and "components")");
  }
  if (!j["dim"].is_number_integer() && !j["dim"].is_number_unsigned()) {
    throw ValidationError("tensor dim must be an integer");
  }
  const int d = j["dim"].get<int>();
  if (d < 1) throw ValidationError("tensor dim must be positive");
  const json& comps = j["components"];
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(d) * d * d);
  if (!comps.is_array() || static_cast<int>(comps.size()) != d) {
    throw ValidationError("tensor components must be nested dim x dim x dim");
  }
  for (const auto& ga : comps) {
    if (!ga.is_array() || static_cast<int>(ga.size()) != d) {
      throw ValidationError("tensor components must be nested dim x dim x dim");
    }
    for (const auto& ab : ga) {
      if (!ab.is_array() || static_cast<int>(ab.size()) != d) {
        throw ValidationError("tensor components must be nested dim x dim x dim");
      }
      for (const auto& v : ab) {
        if (!v.is_number()) throw ValidationError("tensor components must be numbers");
        flat.push_back(v.get<double>());
      }
    }
  }
  return {d, std::move(flat)};
}

json to_json(const algebra::ClassificationReport& r) {
  json out;
  out["unital"] = r.unital;
  out["identity"] = r.identity ? json(*r.identity) : json(nullptr);
  out["associative"] = r.associative;
  out["division_candidate"] = r.division_candidate;
  out["zero_divisor_witness"] =
      r.zero_divisor_witness
          ? json::array({r.zero_divisor_witness->first, r.zero_divisor_witness->second})
          : json(nullptr);
  out["trials"] = r.trials;
  out["seed"] = r.seed;
  return out;
}

json to_json(const hilbert::QuaternionMatrix& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& q : row) r.push_back(to_json(q));
    rows.push_back(r);
  }
  return rows;
}

hilbert::QuaternionMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw ValidationError("an operator must be a nonempty array of rows of quaternions");
  }
  hilbert::QuaternionMatrix m;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != j.size()) {
      throw ValidationError("an operator must be square: n rows of n quaternions");
    }
    std::vector<Quaternion> r;
    for (const auto& q : row) r.push_back(quaternion_from_json(q));
    m.push_back(std::move(r));
  }
  return m;
}

json to_json(const cosmology::FrameComponents& fc) {
  json out;
  out["metric"] = matrix4_to_json(fc.metric);
  for (int k = 0; k < 4; ++k) out["structure" + std::to_string(k)] = matrix4_to_json(fc.structure[k]);
  out["ether"] = json::array({fc.ether[0], fc.ether[1], fc.ether[2], fc.ether[3]});
  return out;
}

semantics::FiniteAction action_from_json(const json& j) {
  if (!j.is_object() || !j.contains("monoid") || !j.contains("carrier") || !j.contains("action")) {
    throw ValidationError(R"(a model needs "monoid", "carrier" and "action")");
  }
  const json& mj = j["monoid"];
  if (!mj.is_object() || !mj.contains("size") || !mj.contains("table") ||
      !mj.contains("identity")) {
    throw ValidationError(R"(a monoid needs "size", "table" and "identity")");
  }
  semantics::FiniteAction a;
  a.monoid.size = mj["size"].get<int>();
  a.monoid.table = int_lists_from_json(mj["table"], "monoid table");
  a.monoid.identity = mj["identity"].get<int>();
  a.carrier_size = j["carrier"].get<int>();
  a.action = int_lists_from_json(j["action"], "action table");
  return a;
}

json to_json(const semantics::ValidationReport& r) {
  return {{"valid", r.valid}, {"violations", r.violations}};
}

json to_json(const semantics::ModeReport& r) {
  json out;
  out["existence_modes"] = int_lists_to_json(r.existence_mode);
  out["presence_modes"] = int_lists_to_json(r.presence_mode);
  out["imperceptible"] = int_lists_to_json(r.imperceptible);
  out["existence_families"] = int_lists_to_json(r.existence_families);
  out["presence_families"] = int_lists_to_json(r.presence_families);
  out["units"] = r.units;
  out["boolean_proxy"] = r.boolean_proxy;
  return out;
}

std::string csv_row(const std::vector<double>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ',';
    out += format_real(values[k]);
  }
  return out;
}

std::string trajectory_csv(const std::vector<dynamics::TrajectorySample>& traj) {
  std::ostringstream out;
  const std::size_t dim = traj.empty() ? 0 : traj.front().state.size();
  out << 't';
  for (std::size_t c = 0; c < dim; ++c) out << ",c" << c;
  out << '\n';
  for (const auto& sample : traj) {
    std::vector<double> row;
    row.reserve(dim + 1);
    row.push_back(sample.t);
    row.insert(row.end(), sample.state.begin(), sample.state.end());
    out << csv_row(row) << '\n';
  }
  return out.str();
}

}  // namespace hyperq::json_io
