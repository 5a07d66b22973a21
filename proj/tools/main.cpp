#include <cstdio>
#include <exception>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"hierarchical affinity propagation: generators, solvers, evaluation"};
  app.require_subcommand(1);

  int exit_code = hapcli::kOk;
  hapcli::register_gen(app, exit_code);
  hapcli::register_solve(app, exit_code);
  hapcli::register_eval(app, exit_code);
  hapcli::register_sweep(app, exit_code);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hapcli::kUsage;
  } catch (const hap::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return hapcli::kNumerical;
  } catch (const hap::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return hapcli::kInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return hapcli::kInput;
  }
  return exit_code;
}
