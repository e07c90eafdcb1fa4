#include <iostream>

#include "CLI11.hpp"
#include "bigalois/commands.hpp"
#include "bigalois/errors.hpp"
#include "bigalois/textio.hpp"

using namespace bigalois;

namespace {

InputFile load(const std::string& path) { return {path, read_text_file(path)}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificates for the bigalois objects B(E,F) and SL_q(2) fusion rules"};
  app.require_subcommand(1);
  app.fallthrough();

  CommandOptions options;
  std::string format = "text";
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--tower-cap", options.tower_cap, "Maximum field tower levels, counting Q")
      ->check(CLI::Range(1, 6));
  app.add_flag("--timing", options.timing, "Add elapsed time to the report");

  auto* present = app.add_subcommand("present", "Presentation of B(E), trace and q");
  std::string e_path, f_path;
  present->add_option("E", e_path, "Matrix file for E")->required();

  auto* bigalois = app.add_subcommand("bigalois", "Bigalois certificate for B(E,F)");
  bigalois->add_option("E", e_path, "Matrix file for E")->required();
  bigalois->add_option("F", f_path, "Matrix file for F")->required();
  bigalois->add_option("--degree", options.degree, "Degree for basis counts")
      ->capture_default_str();
  bigalois->add_option("--bound", options.bound, "Degree bound for ideal membership")
      ->capture_default_str();

  auto* fusion = app.add_subcommand("fusion", "Decompose a tensor product of simple comodules");
  std::string regime = "generic", k, l;
  fusion->add_option("--regime", regime, "generic or rootN")->capture_default_str();
  fusion->add_option("K", k, "First label: U4, V1, V2U1 or n")->required();
  fusion->add_option("L", l, "Second label")->required();

  auto* verify = app.add_subcommand("verify", "Check congruence, automorphism, star or CQG data");
  std::string kind;
  std::vector<std::string> paths;
  verify->add_option("--kind", kind, "congruence, automorphism, star or cqg")
      ->required()
      ->check(CLI::IsMember({"congruence", "automorphism", "star", "cqg"}));
  verify->add_option("files", paths, "Matrix files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  Report report;
  try {
    if (*present) {
      report = cmd_present(load(e_path), options);
    } else if (*bigalois) {
      report = cmd_bigalois(load(e_path), load(f_path), options);
    } else if (*fusion) {
      report = cmd_fusion(regime, k, l);
    } else {
      std::vector<InputFile> files;
      for (const auto& p : paths) files.push_back(load(p));
      report = cmd_verify(kind, files, options);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  std::cout << (format == "json" ? report.json() : report.text());
  return report.exit_code;
}
