#include "CLI11.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hyperq/algebra.hpp"
#include "hyperq/cosmology.hpp"
#include "hyperq/dynamics.hpp"
#include "hyperq/errors.hpp"
#include "hyperq/hyperkahler.hpp"
#include "hyperq/json_io.hpp"
#include "hyperq/qhilbert.hpp"
#include "hyperq/semantics.hpp"

namespace {

using hyperq::NumericError;
using hyperq::Quaternion;
using hyperq::ValidationError;
namespace algebra = hyperq::algebra;
namespace cosmology = hyperq::cosmology;
namespace dynamics = hyperq::dynamics;
namespace hilbert = hyperq::hilbert;
namespace hyperkahler = hyperq::hyperkahler;
namespace json_io = hyperq::json_io;
namespace semantics = hyperq::semantics;
using nlohmann::json;

std::vector<double> parse_reals_csv(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
      if (used != token.size()) throw std::invalid_argument(token);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError(std::string(what) + ": cannot parse \"" + token + "\" as a real");
    }
  }
  if (out.empty()) throw ValidationError(std::string(what) + ": empty value list");
  return out;
}

Quaternion parse_quaternion(const std::string& text, const char* what) {
  const std::vector<double> v = parse_reals_csv(text, what);
  if (v.size() != 4) {
    throw ValidationError(std::string(what) + ": a quaternion needs 4 comma-joined reals");
  }
  return {v[0], v[1], v[2], v[3]};
}

void emit(const std::string& content, const std::string& out_path) {
  std::string body = content;
  if (body.empty() || body.back() != '\n') body += '\n';
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file: " + out_path);
  out << body;
}

json real_or_inf(double v) {
  if (std::isinf(v)) return json(v > 0 ? "inf" : "-inf");
  return json(v);
}

cosmology::TimeProfile load_profile(const std::vector<std::string>& tokens) {
  if (tokens.empty() || tokens[0] == "linear") {
    if (tokens.size() > 1) throw ValidationError("--profile linear takes no file");
    return cosmology::linear_profile();
  }
  if (tokens[0] == "table") {
    if (tokens.size() != 2) throw ValidationError("--profile table needs a file argument");
    std::ifstream in(tokens[1]);
    if (!in) throw ValidationError("cannot open profile table: " + tokens[1]);
    std::vector<double> xs, ys;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      for (char& c : line) {
        if (c == ',' || c == '\t') c = ' ';
      }
      std::istringstream row(line);
      double x = 0.0, y = 0.0;
      if (!(row >> x)) continue;  // blank line
      if (!(row >> y)) {
        throw ValidationError("profile table line " + std::to_string(lineno) +
                              ": expected two columns (eta, T)");
      }
      xs.push_back(x);
      ys.push_back(y);
    }
    return cosmology::table_profile(std::move(xs), std::move(ys));
  }
  throw ValidationError("--profile must be `linear` or `table FILE`, got \"" + tokens[0] + "\"");
}

struct VistaArgs {
  std::string u, a, chirality = "left", out;
  double t0 = 0.0, t1 = 0.0;
  int steps = 100;
};

void run_vista(const VistaArgs& args) {
  if (args.steps < 1) throw ValidationError("--steps must be positive");
  cosmology::VistaSpec spec;
  spec.u = parse_quaternion(args.u, "--u");
  spec.a = parse_quaternion(args.a, "--a");
  if (args.chirality == "left") {
    spec.chirality = cosmology::Chirality::left;
  } else if (args.chirality == "right") {
    spec.chirality = cosmology::Chirality::right;
  } else {
    throw ValidationError("--chirality must be left or right");
  }
  std::ostringstream csv;
  csv << "t,w,x,y,z\n";
  for (int k = 0; k <= args.steps; ++k) {
    const double t = args.t0 + (args.t1 - args.t0) * k / args.steps;
    const Quaternion q = cosmology::vista(spec, t);
    csv << json_io::csv_row({t, q.w, q.x, q.y, q.z}) << '\n';
  }
  emit(csv.str(), args.out);
}

struct CosmoArgs {
  std::vector<std::string> profile{"linear"};
  double eta = 0.0, chi = 0.0, theta = 0.0, eta0 = 0.0, R0 = 1.0;
  int branch = 1;
  std::string out;
};

void run_cosmo_frame(const CosmoArgs& args) {
  cosmology::CosmologyConfig cfg{load_profile(args.profile), args.branch, args.eta0, args.R0};
  const cosmology::FrameComponents fc = cosmology::frame_components(cfg, args.eta, args.chi,
                                                                    args.theta);
  json out = json_io::to_json(fc);
  out["eta"] = args.eta;
  out["chi"] = args.chi;
  out["theta"] = args.theta;
  out["R"] = cosmology::scale_factor(cfg, args.eta);
  emit(json_io::dump_sorted(out), args.out);
}

struct EvolveArgs {
  std::string operator_path, start, out;
  double t1 = 0.0, dt = 0.0;
};

void run_evolve(const EvolveArgs& args) {
  const hilbert::QuaternionMatrix m =
      json_io::matrix_from_json(json_io::parse_file(args.operator_path));
  const std::vector<double> start = parse_reals_csv(args.start, "--start");
  if (start.size() != 4 * m.size()) {
    throw ValidationError("--start needs " + std::to_string(4 * m.size()) +
                          " comma-joined reals for this operator");
  }
  const dynamics::VectorField field = [&m](const dynamics::RealPoint& p) {
    return hyperkahler::hyperfield(m, p).vector;
  };
  const auto traj = dynamics::integrate(field, start, args.t1, args.dt);
  emit(json_io::trajectory_csv(traj), args.out);
}

struct PropensityArgs {
  std::string phi, psi, out;
};

void run_propensity(const PropensityArgs& args) {
  const std::vector<double> phi = parse_reals_csv(args.phi, "--phi");
  const std::vector<double> psi = parse_reals_csv(args.psi, "--psi");
  if (phi.size() != psi.size() || phi.empty() || phi.size() % 4 != 0) {
    throw ValidationError("--phi and --psi need equal lengths, a positive multiple of 4");
  }
  const int n = static_cast<int>(phi.size() / 4);
  dynamics::SystemConfig cfg{n, hyperkahler::build_structure(n),
                             [](const dynamics::RealPoint& p) { return p[0]; }, std::nullopt};
  const auto witness = dynamics::same_world(phi, psi);
  const double rho = dynamics::propensity(cfg, phi, psi);
  json out;
  out["propensity"] = real_or_inf(rho);
  out["same_world"] = witness.has_value();
  out["witness"] = witness ? json_io::to_json(*witness) : json(nullptr);
  emit(json_io::dump_sorted(out), args.out);
}

struct ClassifyArgs {
  std::string tensor_path, out;
  int trials = 1000;
  std::uint64_t seed = 0;
};

void run_classify(const ClassifyArgs& args) {
  const algebra::StructureTensor t = json_io::tensor_from_json(json_io::parse_file(args.tensor_path));
  const algebra::ClassificationReport rep = algebra::classify(t, args.trials, args.seed);
  emit(json_io::dump_sorted(json_io::to_json(rep)), args.out);
}

struct MsetArgs {
  std::string model_path, out;
};

void run_mset_check(const MsetArgs& args) {
  const semantics::FiniteAction action =
      json_io::action_from_json(json_io::parse_file(args.model_path));
  const semantics::ValidationReport audit = semantics::validate_model(action.monoid, action);
  json out = json_io::to_json(audit);
  out["modes"] = audit.valid ? json_io::to_json(semantics::orbits(action)) : json(nullptr);
  emit(json_io::dump_sorted(out), args.out);
}

int run(int argc, char** argv) {
  CLI::App app{"Quaternionic observer toolkit: algebra classification, vistas, cosmology frames, "
               "hyperfield flows, propensity, finite model checks"};
  app.require_subcommand(1);

  VistaArgs vista_args;
  CLI::App* vista = app.add_subcommand("vista", "Closed-form vista trajectory as CSV");
  vista->add_option("--u", vista_args.u, "direction quaternion w,x,y,z")->required();
  vista->add_option("--a", vista_args.a, "viewpoint quaternion w,x,y,z")->required();
  vista->add_option("--t0", vista_args.t0, "start parameter (default 0)");
  vista->add_option("--t1", vista_args.t1, "end parameter")->required();
  vista->add_option("--steps", vista_args.steps, "row count minus one (default 100)");
  vista->add_option("--chirality", vista_args.chirality, "left or right (default left)");
  vista->add_option("--out", vista_args.out, "output file (default stdout)");

  CosmoArgs cosmo_args;
  CLI::App* cosmo = app.add_subcommand("cosmo-frame",
                                       "Metric, structure and ether components as JSON");
  cosmo->add_option("--profile", cosmo_args.profile,
                    "`linear` or `table FILE` (two columns eta, T)")
      ->expected(1, 2);
  cosmo->add_option("--eta", cosmo_args.eta, "conformal time")->required();
  cosmo->add_option("--chi", cosmo_args.chi, "polar angle chi")->required();
  cosmo->add_option("--theta", cosmo_args.theta, "polar angle theta")->required();
  cosmo->add_option("--branch", cosmo_args.branch, "sign branch of R, +1 or -1 (default +1)");
  cosmo->add_option("--eta0", cosmo_args.eta0, "eta with R(eta0) = R0 (default 0)");
  cosmo->add_option("--R0", cosmo_args.R0, "scale factor at eta0 (default 1)");
  cosmo->add_option("--out", cosmo_args.out, "output file (default stdout)");

  EvolveArgs evolve_args;
  CLI::App* evolve = app.add_subcommand("evolve", "Hyperfield flow of an operator as CSV");
  evolve->add_option("--operator", evolve_args.operator_path,
                     "JSON file: n x n array of [w,x,y,z] quaternions")
      ->required();
  evolve->add_option("--start", evolve_args.start, "start state, 4n comma-joined reals")
      ->required();
  evolve->add_option("--t1", evolve_args.t1, "integration end time")->required();
  evolve->add_option("--dt", evolve_args.dt, "step size")->required();
  evolve->add_option("--out", evolve_args.out, "output file (default stdout)");

  PropensityArgs prop_args;
  CLI::App* prop = app.add_subcommand("propensity", "World relation and propensity as JSON");
  prop->add_option("--phi", prop_args.phi, "present state, 4n comma-joined reals")->required();
  prop->add_option("--psi", prop_args.psi, "target state, 4n comma-joined reals")->required();
  prop->add_option("--out", prop_args.out, "output file (default stdout)");

  ClassifyArgs classify_args;
  CLI::App* classify = app.add_subcommand("algebra-classify",
                                          "Structural classification of an algebra as JSON");
  classify->add_option("--tensor", classify_args.tensor_path,
                       "JSON file: {\"dim\": d, \"components\": [[[...]]]}")
      ->required();
  classify->add_option("--trials", classify_args.trials,
                       "randomized zero-divisor search budget (default 1000)");
  classify->add_option("--seed", classify_args.seed, "search seed (default 0)");
  classify->add_option("--out", classify_args.out, "output file (default stdout)");

  MsetArgs mset_args;
  CLI::App* mset = app.add_subcommand("mset-check", "Monoid action audit and orbit census as JSON");
  mset->add_option("--model", mset_args.model_path,
                   "JSON file: {\"monoid\": {...}, \"carrier\": c, \"action\": [[...]]}")
      ->required();
  mset->add_option("--out", mset_args.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 1;
  }

  if (vista->parsed()) run_vista(vista_args);
  if (cosmo->parsed()) run_cosmo_frame(cosmo_args);
  if (evolve->parsed()) run_evolve(evolve_args);
  if (prop->parsed()) run_propensity(prop_args);
  if (classify->parsed()) run_classify(classify_args);
  if (mset->parsed()) run_mset_check(mset_args);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
