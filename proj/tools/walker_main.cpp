// Command-line front end: tensors, classify, verify-paper, oracle-check.

#include <CLI11.hpp>

#include <iostream>

#include "walker/cli/commands.hpp"

using namespace walker;

int main(int argc, char** argv) {
  CLI::App app{"Symbolic and numeric engine for three-dimensional strictly Walker metrics"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "records"}));
  app.add_option("--tol-override", tol, "Zero-test tolerance (oracle-check: agreement tolerance)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for probes, witnesses and sample points");

  std::string manifest_path, field_name, family_name;
  std::optional<int> points;
  bool inject = false;

  auto* tensors = app.add_subcommand("tensors", "Print g, its inverse, Gamma, R, nabla R, omega, rho, tau");
  tensors->add_option("manifest", manifest_path)->required();

  auto* classify = app.add_subcommand("classify", "Classify a vector field from the manifest");
  classify->add_option("manifest", manifest_path)->required();
  classify->add_option("--field", field_name, "Field name from [fields]")->required();

  auto* verify = app.add_subcommand("verify-paper", "Check the symmetry families and theorems");
  verify->add_option("--family", family_name, "Restrict to one family")
      ->check(CLI::IsMember({"Nb", "Pc", "CW", "cflat"}));
  verify->add_flag("--inject-fault", inject, "Flip a sign in one Killing generator (self-test)");

  auto* oracle = app.add_subcommand("oracle-check", "Compare symbolic tensors against finite differences");
  oracle->add_option("manifest", manifest_path)->required();
  oracle->add_option("--points", points, "Sample points")->check(CLI::Range(1, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputError;
  }

  cli::CommonOptions o;
  o.format = format == "records" ? cli::Format::Records : cli::Format::Text;
  o.tolerance = tol;
  o.seed = seed;

  if (*verify) {
    std::optional<cls::FamilyTag> family;
    if (!family_name.empty()) family = cls::parse_family(family_name);
    return cli::run_verify_paper(family, inject, o, std::cout, std::cerr);
  }

  cli::Manifest m;
  try {
    m = cli::load_manifest(manifest_path);
  } catch (const cli::ManifestError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kInputError;
  }
  if (*tensors) return cli::run_tensors(m, o, std::cout, std::cerr);
  if (*classify) return cli::run_classify(m, field_name, o, std::cout, std::cerr);
  return cli::run_oracle_check(m, points, o, std::cout, std::cerr);
}
