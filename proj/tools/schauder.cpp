#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using schauder::cli::json;

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path);
    if (!in) throw schauder::PreconditionError("cannot open '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw schauder::PreconditionError(path + ": malformed JSON at byte " + std::to_string(e.byte) +
                                      ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = schauder::cli;
  CLI::App app{"Schauder frame perturbation certificates over finite-dimensional l^p spaces"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indent the JSON report");

  double tol = schauder::kFrameTol;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  bool exact = false, bounds = false, sharp = false, force = false, besselian = false;
  std::string input, criterion = "thm31";

  auto* validate = app.add_subcommand("validate", "Check the frame identity sum a_n (x) b_n = I");
  validate->add_option("frame", input, "Frame JSON file ('-' for stdin)")->required();
  validate->add_option("--tol", tol, "Residual tolerance");

  auto* constants = app.add_subcommand("constants", "Frame constant K_F and besselian constant L_F");
  constants->add_option("frame", input, "Frame JSON file")->required();
  constants->add_option("--tol", tol, "Frame residual tolerance");
  constants->add_option("--seed", seed, "Seed for ascent and sampling");
  constants->add_option("--samples", samples, "Samples for the besselian diagnostic");
  auto* exact_flag = constants->add_flag("--exact", exact, "Exact sign enumeration");
  constants->add_flag("--bounds", bounds, "Greedy/factorization bounds only")->excludes(exact_flag);

  auto* check = app.add_subcommand("check", "Evaluate a perturbation criterion");
  check->add_option("perturbation", input, "Perturbation JSON file")->required();
  check->add_option("--criterion", criterion, "thm31 | cor34 | thm33 | cor35 | cor36");
  check->add_option("--tol", tol, "Frame residual tolerance");

  double neumann_tol = 1e-12;
  auto* perturb = app.add_subcommand("perturb", "Emit the perturbed frames with certificates");
  perturb->add_option("perturbation", input, "Perturbation JSON file")->required();
  perturb->add_option("--criterion", criterion, "thm31 | cor34 | thm33 | cor35 | cor36");
  perturb->add_option("--tol", tol, "Frame residual tolerance");
  perturb->add_option("--neumann-tol", neumann_tol, "Neumann tail tolerance");
  perturb->add_flag("--force", force, "Emit even if the criterion fails (uncertified)");

  std::string vectors_path, functionals_path;
  auto* dimension = app.add_subcommand("dimension", "Dimension certificate dim E <= N");
  dimension->add_option("frame", input, "Frame JSON file")->required();
  dimension->add_flag("--sharp", sharp, "Use the absolute bilinear norm of the tail");
  auto* vec_opt = dimension->add_option("--vectors", vectors_path, "JSON array x0_1..x0_N");
  dimension->add_option("--functionals", functionals_path, "JSON array y0_1..y0_N")->excludes(vec_opt);

  std::string frame_path, v_path, w_path, indices;
  double theta = 0.5;
  auto* construct = app.add_subcommand("construct", "Frames whose spans on I reach V and W");
  construct->add_option("--frame", frame_path, "Frame JSON file")->required();
  construct->add_option("--V", v_path, "JSON array of basis vectors of V")->required();
  construct->add_option("--W", w_path, "JSON array of basis functionals of W")->required();
  construct->add_option("--indices", indices, "Comma-separated 1-based index set I")->required();
  construct->add_option("--theta", theta, "Weight theta in (0, 1)");
  construct->add_flag("--besselian", besselian, "Use the besselian criterion");

  long dim = 2, count = 3;
  std::string p = "2", kind = "tight";
  auto* gen = app.add_subcommand("gen", "Seeded frame generator");
  gen->add_option("--dim", dim, "Dimension d");
  gen->add_option("--count", count, "Number of pairs M");
  gen->add_option("--p", p, "Exponent p (number or 'inf')");
  gen->add_option("--kind", kind, "canonical | tight | random");
  gen->add_option("--seed", seed, "Seed");

  CLI11_PARSE(app, argc, argv);

  try {
    cli::Outcome out;
    if (*validate) {
      out = cli::cmd_validate(read_json(input), tol);
    } else if (*constants) {
      cli::ConstantsOptions o;
      o.mode = exact ? schauder::EnumerationMode::exact
                     : (bounds ? schauder::EnumerationMode::bounds : schauder::EnumerationMode::automatic);
      o.samples = samples;
      o.seed = seed;
      o.tol = tol;
      out = cli::cmd_constants(read_json(input), o);
    } else if (*check) {
      out = cli::cmd_check(read_json(input), schauder::parse_criterion(criterion), tol);
    } else if (*perturb) {
      cli::PerturbOptions o;
      o.criterion = schauder::parse_criterion(criterion);
      o.force = force;
      o.frame_tol = tol;
      o.neumann_tol = neumann_tol;
      out = cli::cmd_perturb(read_json(input), o);
    } else if (*dimension) {
      cli::DimensionOptions o;
      o.sharp = sharp;
      if (!vectors_path.empty()) o.vectors = read_json(vectors_path);
      if (!functionals_path.empty()) o.functionals = read_json(functionals_path);
      out = cli::cmd_dimension(read_json(input), o);
    } else if (*construct) {
      cli::ConstructOptions o;
      o.indices = cli::parse_indices(indices);
      o.theta = theta;
      o.besselian = besselian;
      out = cli::cmd_construct(read_json(frame_path), read_json(v_path), read_json(w_path), o);
    } else if (*gen) {
      cli::GenOptions o;
      o.dim = dim;
      o.count = count;
      o.p = cli::parse_exponent(p);
      o.kind = schauder::gen::parse_kind(kind);
      o.seed = seed;
      out = cli::cmd_gen(o);
    }
    std::cout << out.report.dump(pretty ? 2 : -1) << '\n';
    return out.exit_code;
  } catch (const schauder::CriterionUnsatisfied& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kUnsatisfied;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kInputError;
  }
}
