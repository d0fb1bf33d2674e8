#include "hillrep/commands.hpp"

#include <algorithm>
#include <cstdint>
#include <ostream>

#include <CLI11.hpp>

#include "hillrep/hill.hpp"
#include "hillrep/io.hpp"
#include "hillrep/linmap.hpp"
#include "hillrep/numeric.hpp"
#include "hillrep/structure.hpp"
#include "hillrep/tensorops.hpp"

namespace hillrep {

namespace {

using io::Json;

// Bridge identities are checked at this relative level unless --tol is looser.
constexpr double kBridgeTol = 1e-9;

struct Options {
  std::string map_path;
  std::string rep_path;
  std::string other_path;
  std::string input_path;
  std::string hill_path;
  std::string out_path;
  std::string strategy = "blocks";
  std::string target;
  std::string representation = "matricization";
  double tol = kDefaultTol;
  Index n = 0;
  Index q = 0;
  Index rank = 0;
  std::uint64_t seed = 0;
};

void emit(const Json& j, const Options& opt, std::ostream& out) {
  if (opt.out_path.empty()) {
    out << io::dump(j);
  } else {
    io::write_text_file(opt.out_path, io::dump(j));
  }
}

LinearMatrixMap load_map(const std::string& path) {
  return io::map_file_from_json(io::read_json_file(path)).to_map();
}

HillRepresentation load_hill(const std::string& path) {
  return io::hill_from_json(io::read_json_file(path));
}

Json choi_eigenvalues(const ComplexMatrix& c, bool hermitian) {
  std::vector<Complex> values;
  if (hermitian) {
    const ComplexMatrix sym = (c + c.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(sym, Eigen::EigenvaluesOnly);
    for (Index k = 0; k < eig.eigenvalues().size(); ++k) values.emplace_back(eig.eigenvalues()(k), 0.0);
  } else {
    Eigen::ComplexEigenSolver<ComplexMatrix> eig(c, false);
    for (Index k = 0; k < eig.eigenvalues().size(); ++k) values.push_back(eig.eigenvalues()(k));
  }
  std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  Json out = Json::array();
  for (Complex z : values) out.push_back(io::complex_to_json(z));
  return out;
}

int cmd_analyze(const Options& opt, std::ostream& out) {
  const LinearMatrixMap map = load_map(opt.map_path);
  const StarLinearity s = star_linearity(map, opt.tol);
  const ComplexMatrix c = choi(map).matrix();
  Json j;
  j["n"] = map.n();
  j["q"] = map.q();
  j["field"] = io::to_string(map.field());
  j["star_linear"] = s.choi_hermitian && s.shuffle_identity;
  j["hermitian_choi"] = s.choi_hermitian;
  j["shuffle_identity"] = s.shuffle_identity;
  j["choi_deviation"] = s.choi_deviation;
  j["shuffle_deviation"] = s.shuffle_deviation;
  j["hermitian_preserving"] = is_hermitian_preserving(map, 8, opt.seed, std::nullopt, opt.tol);
  j["m"] = minimal_rank(map, opt.tol);
  j["block_span_dimension"] = block_span_dimension(map, opt.tol);
  j["choi_eigenvalues"] = choi_eigenvalues(c, s.choi_hermitian);
  emit(j, opt, out);
  return kExitOk;
}

int cmd_hill(const Options& opt, std::ostream& out) {
  const LinearMatrixMap map = load_map(opt.map_path);
  const BasisStrategy strategy =
      opt.strategy == "qr" ? BasisStrategy{QrStrategy{}} : BasisStrategy{BlocksStrategy{}};
  const BasisSelection basis = select_basis(map, strategy, opt.tol, opt.tol);
  const HillRepresentation rep = build_hill(map, basis, opt.tol);
  emit(io::hill_to_json(rep, opt.tol), opt, out);
  return kExitOk;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  const LinearMatrixMap map = load_map(opt.map_path);
  const HillRepresentation rep = load_hill(opt.rep_path);
  Json j;
  Json res;
  bool ok = rep.n == map.n() && rep.q == map.q();
  j["m"] = rep.m();
  j["rank"] = minimal_rank(map, opt.tol);
  if (ok) {
    const double recon = relative_difference(reconstruct(rep).matricization(), map.matricization());
    const double choi_rel = relative_difference(choi_from_hill(rep), choi(map).matrix());
    const HillDiagnostics d = diagnose(rep);
    const bool hermitian = d.hermitian_deviation <= opt.tol * std::max(1.0, d.hill_norm);
    const bool invertible = rep.m() == 0 || d.inverse_condition > opt.tol;
    res["reconstruction_rel"] = recon;
    res["choi_rel"] = choi_rel;
    res["hermitian_deviation"] = d.hermitian_deviation;
    res["inverse_condition"] = d.inverse_condition;
    res["factor_inverse_condition"] = d.factor_inverse_condition;
    j["hermitian"] = hermitian;
    j["invertible"] = invertible;
    ok = recon <= opt.tol && hermitian && invertible;
  } else {
    err << "verify: representation is for " << rep.n << "x" << rep.n << " <- " << rep.q << "x"
        << rep.q << " maps, map file is " << map.n() << "x" << map.n() << " <- " << map.q()
        << "x" << map.q() << "\n";
  }
  j["ok"] = ok;
  j["residuals"] = std::move(res);
  emit(j, opt, out);
  if (!ok) {
    err << "verify: representation does not reproduce the map\n";
    return kExitVerification;
  }
  return kExitOk;
}

int cmd_compare(const Options& opt, std::ostream& out, std::ostream& err) {
  const HillRepresentation a = load_hill(opt.rep_path);
  const HillRepresentation b = load_hill(opt.other_path);
  const RepresentationBridge bridge = compare(a, b, opt.tol);
  const double bound = std::max(opt.tol, kBridgeTol);
  Json res;
  for (const auto& [name, value] : bridge.residuals.named()) res[name] = value;
  Json j;
  j["m"] = a.m();
  j["Phi"] = io::matrix_to_json(bridge.phi);
  j["Xi"] = io::matrix_to_json(bridge.xi);
  j["residuals"] = std::move(res);
  const bool ok = bridge.residuals.max() <= bound;
  j["ok"] = ok;
  emit(j, opt, out);
  if (!ok) {
    err << "compare: bridge identities fail (max residual " << bridge.residuals.max() << ")\n";
    return kExitVerification;
  }
  return kExitOk;
}

int cmd_convert(const Options& opt, std::ostream& out) {
  const io::MapFile file = io::map_file_from_json(io::read_json_file(opt.map_path));
  const io::Representation target =
      opt.target == "choi" ? io::Representation::Choi : io::Representation::Matricization;
  emit(io::to_json(io::map_file(file.to_map(), target)), opt, out);
  return kExitOk;
}

int cmd_random(const Options& opt, std::ostream& out) {
  const LinearMatrixMap map = random_star_linear(opt.n, opt.q, opt.rank, opt.seed);
  const io::Representation target = opt.representation == "choi"
                                        ? io::Representation::Choi
                                        : io::Representation::Matricization;
  emit(io::to_json(io::map_file(map, target)), opt, out);
  return kExitOk;
}

int cmd_structure(const Options& opt, std::ostream& out) {
  const LinearMatrixMap map = load_map(opt.map_path);
  const StructureReport report = analyze_structure(map, opt.tol);
  Json j;
  j["n"] = map.n();
  j["q"] = map.q();
  j["star_linear"] = report.star_linear;
  j["block_patterns"] = report.block_patterns;
  j["entry_patterns"] = report.entry_patterns;
  j["duality_consistent"] = report.duality_consistent;
  emit(j, opt, out);
  return kExitOk;
}

int cmd_apply(const Options& opt, std::ostream& out) {
  const LinearMatrixMap map = load_map(opt.map_path);
  const Json input = io::read_json_file(opt.input_path);
  const Json& data = input.is_object() && input.contains("data") ? input["data"] : input;
  const ComplexMatrix v = io::matrix_from_json(data, opt.input_path);
  const ComplexMatrix result = apply(map, v);
  Json j;
  j["result"] = io::matrix_to_json(result);
  if (!opt.hill_path.empty()) {
    const ComplexMatrix via_hill = apply_hill(load_hill(opt.hill_path), v);
    j["hill_result"] = io::matrix_to_json(via_hill);
    j["relative_difference"] = relative_difference(result, via_hill);
  }
  emit(j, opt, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal Hill representations of *-linear matrix maps", "hillrep"};
  app.require_subcommand(1);
  Options opt;

  const auto add_tol = [&](CLI::App* cmd) {
    cmd->add_option("--tol", opt.tol, "Shared tolerance for rank, span and symmetry checks")
        ->check(CLI::PositiveNumber);
  };
  const auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out_path, "Write JSON here instead of stdout");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "Report *-linearity and rank of a map");
  analyze->add_option("map", opt.map_path, "Map file")->required();
  add_tol(analyze);
  analyze->add_option("--seed", opt.seed, "Seed for the randomized Hermitian-preservation check");

  CLI::App* hill = app.add_subcommand("hill", "Build a minimal Hill representation");
  hill->add_option("map", opt.map_path, "Map file")->required();
  hill->add_option("--strategy", opt.strategy, "Basis strategy")
      ->check(CLI::IsMember({"blocks", "qr"}));
  add_tol(hill);
  add_out(hill);

  CLI::App* verify = app.add_subcommand("verify", "Check a representation against a map");
  verify->add_option("map", opt.map_path, "Map file")->required();
  verify->add_option("rep", opt.rep_path, "Hill file")->required();
  add_tol(verify);

  CLI::App* cmp = app.add_subcommand("compare", "Bridge two representations of one map");
  cmp->add_option("rep_a", opt.rep_path, "First Hill file")->required();
  cmp->add_option("rep_b", opt.other_path, "Second Hill file")->required();
  add_tol(cmp);

  CLI::App* convert = app.add_subcommand("convert", "Switch between matricization and Choi form");
  convert->add_option("map", opt.map_path, "Map file")->required();
  convert->add_option("--to", opt.target, "Target representation")
      ->required()
      ->check(CLI::IsMember({"choi", "matricization"}));
  add_out(convert);

  CLI::App* random = app.add_subcommand("random", "Generate a seeded *-linear map");
  random->add_option("--n", opt.n, "Output dimension")->required();
  random->add_option("--q", opt.q, "Input dimension")->required();
  random->add_option("--rank", opt.rank, "Rank of the Choi matrix")->required();
  random->add_option("--seed", opt.seed, "Seed")->required();
  random->add_option("--representation", opt.representation, "Output representation")
      ->check(CLI::IsMember({"choi", "matricization"}));
  add_out(random);

  CLI::App* structure = app.add_subcommand("structure", "Block and entry level patterns");
  structure->add_option("map", opt.map_path, "Map file")->required();
  add_tol(structure);

  CLI::App* apply_cmd = app.add_subcommand("apply", "Evaluate a map on a matrix");
  apply_cmd->add_option("map", opt.map_path, "Map file")->required();
  apply_cmd->add_option("input", opt.input_path, "Matrix file (nested array or {\"data\": ...})")
      ->required();
  apply_cmd->add_option("--hill", opt.hill_path, "Also evaluate through this Hill file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitSchema;
  }

  try {
    if (*analyze) return cmd_analyze(opt, out);
    if (*hill) return cmd_hill(opt, out);
    if (*verify) return cmd_verify(opt, out, err);
    if (*cmp) return cmd_compare(opt, out, err);
    if (*convert) return cmd_convert(opt, out);
    if (*random) return cmd_random(opt, out);
    if (*structure) return cmd_structure(opt, out);
    if (*apply_cmd) return cmd_apply(opt, out);
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const io::SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const DimensionMismatch& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const NonFiniteEntry& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const InvalidRank& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const NotStarLinear& e) {
    err << "error: " << e.what() << "\n";
    return kExitNotStarLinear;
  } catch (const MissingProvenance& e) {
    err << "error: " << e.what() << "\n";
    return kExitMissingProvenance;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitSchema;
}

}  // namespace hillrep
