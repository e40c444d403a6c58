#include <exception>
#include <ostream>

#include "CLI11.hpp"
#include "config.hpp"
#include "spaceform/cli.hpp"

namespace spaceform::cli {

int main(int argc, char** argv, std::ostream& log, std::ostream& err) {
  CLI::App app{"Surfaces in 4-dimensional space forms: integrability, twistor invariants, reconstruction"};
  app.require_subcommand(1);
  Options opt;
  std::optional<int> threads;
  std::optional<double> tol;

  struct Sub {
    const char* name;
    const char* help;
    bool config_required;
    int (*fn)(const Options&, std::ostream&);
  };
  const Sub subs[] = {
      {"check", "Gauss-Codazzi-Ricci, Lax and equivalence residuals", true, run_check},
      {"twistor", "Twistor invariants, degeneracy and curvature identity", true, run_twistor},
      {"reconstruct", "Integrate the frame and extract the data back", true, run_reconstruct},
      {"construct", "Build fundamental data from W,X,Y,Z or holomorphic data", true, run_construct},
      {"group", "Check the SO(3,1) to SO(3,C) homomorphism on random words", false, run_group},
      {"export", "Write a quad mesh of F under a linear projection", true, run_export},
  };
  for (const auto& s : subs) {
    CLI::App* sc = app.add_subcommand(s.name, s.help);
    auto* c = sc->add_option("--config", opt.config, "JSON configuration file");
    if (s.config_required) c->required();
    sc->add_option("--tolerance", tol, "Residual tolerance (default max(1e-8, 10 h²))");
    sc->add_option("--threads", threads, "Worker threads (fallback: SPACEFORM_THREADS)");
    sc->add_option("--out", opt.out, "Output directory")->default_val(".");
    sc->callback([&opt, &s]() { opt.command = s.name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, log, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    opt.tolerance = tol;
    if (tol && !(*tol > 0.0)) throw ConfigError("--tolerance must be positive");
    opt.threads = resolve_threads(threads);
    for (const auto& s : subs)
      if (opt.command == s.name) return s.fn(opt, log);
    err << "error: no subcommand\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace spaceform::cli
