// Command-line front end: NSM estimation, closest-vector queries, the
// reference-table reproduction, and lattice equivalence reports.
//
// Exit codes: 0 success, 2 usage error, 3 internal invariant violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "latq/report.hpp"

namespace {

int env_workers() {
  if (const char* v = std::getenv("LATQ_WORKERS")) {
    const int w = std::atoi(v);
    if (w > 0) return w;
  }
  return 0;  // hardware default
}

struct NsmOptions {
  std::string lattice;
  latq::SamplerConfig cfg;
  std::string format = "text";
};

struct CvpOptions {
  std::string lattice;
  std::vector<double> coords;
  std::string file;
  std::string format = "text";
};

struct EquivOptions {
  std::string a, b;
  std::string format = "text";
};

std::vector<double> read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open vector file: " + path);
  std::vector<double> out;
  double v;
  while (in >> v) out.push_back(v);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latq - checkerboard lattice quantizers and NSM estimation"};
  app.require_subcommand(1);

  NsmOptions nsm;
  nsm.cfg.workers = env_workers();
  auto* cmd_nsm = app.add_subcommand("nsm", "estimate the NSM of a named lattice");
  cmd_nsm->add_option("lattice", nsm.lattice, "lattice name, e.g. E7_2+ or G2 or E7_2+xZ")
      ->required();
  cmd_nsm->add_option("--samples", nsm.cfg.samples, "Monte Carlo samples T (= groups * h)")
      ->capture_default_str();
  cmd_nsm->add_option("--groups", nsm.cfg.groups, "group count g for the error bars")
      ->capture_default_str();
  cmd_nsm->add_option("--seed", nsm.cfg.seed, "RNG seed")->capture_default_str();
  cmd_nsm->add_option("--workers", nsm.cfg.workers, "worker threads (0 = hardware)");
  cmd_nsm->add_option("--format", nsm.format, "text | json | csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  CvpOptions cvp;
  auto* cmd_cvp = app.add_subcommand("cvp", "closest lattice point of a vector");
  cmd_cvp->add_option("lattice", cvp.lattice, "lattice name")->required();
  cmd_cvp->add_option("coords", cvp.coords, "vector components");
  cmd_cvp->add_option("--file", cvp.file, "read the vector from a whitespace-separated file");
  cmd_cvp->add_option("--format", cvp.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  latq::SamplerConfig table_cfg;
  table_cfg.workers = env_workers();
  auto* cmd_table = app.add_subcommand(
      "table", "reproduce the reference NSM table for n = 2..24 (CSV on stdout)");
  cmd_table->add_option("--samples", table_cfg.samples, "samples per lattice")
      ->capture_default_str();
  cmd_table->add_option("--groups", table_cfg.groups, "group count")->capture_default_str();
  cmd_table->add_option("--seed", table_cfg.seed, "RNG seed")->capture_default_str();
  cmd_table->add_option("--workers", table_cfg.workers, "worker threads (0 = hardware)");

  EquivOptions equiv;
  auto* cmd_equiv = app.add_subcommand("equiv", "numerical lattice equivalence evidence");
  cmd_equiv->add_option("lattice_a", equiv.a, "lattice or reference name (e.g. G2, D4, E8ref)")
      ->required();
  cmd_equiv->add_option("lattice_b", equiv.b, "lattice or reference name")->required();
  cmd_equiv->add_option("--format", equiv.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_nsm->parsed()) {
      const latq::RunReport rep = latq::run_nsm(nsm.lattice, nsm.cfg);
      if (nsm.format == "json") std::cout << latq::report_json(rep).dump(2) << "\n";
      else if (nsm.format == "csv") std::cout << latq::report_csv(rep);
      else std::cout << latq::report_text(rep);
    } else if (cmd_cvp->parsed()) {
      std::vector<double> y = cvp.coords;
      if (!cvp.file.empty()) {
        if (!y.empty()) throw std::invalid_argument("give coordinates or --file, not both");
        y = read_vector_file(cvp.file);
      }
      if (y.empty()) throw std::invalid_argument("no vector given");
      const latq::CvpReport rep = latq::run_cvp(cvp.lattice, std::move(y));
      if (cvp.format == "json") std::cout << latq::cvp_json(rep).dump(2) << "\n";
      else std::cout << latq::cvp_text(rep);
    } else if (cmd_table->parsed()) {
      std::cout << latq::table_csv(latq::run_table(table_cfg));
    } else if (cmd_equiv->parsed()) {
      const latq::RealBasis a = latq::resolve_basis(equiv.a);
      const latq::RealBasis b = latq::resolve_basis(equiv.b);
      const latq::EquivalenceReport rep = latq::check_equivalence(a, b);
      if (equiv.format == "json")
        std::cout << latq::equivalence_json(equiv.a, equiv.b, rep).dump(2) << "\n";
      else
        std::cout << latq::equivalence_text(equiv.a, equiv.b, rep);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
