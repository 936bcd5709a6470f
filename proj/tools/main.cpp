#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNumericFailure = 1;
constexpr int kUsage = 2;

int usage_error(const std::string& message) {
  std::cerr << "limitlab: " << message << "\n\n" << limitlab::cli::usage_text();
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace limitlab::cli;
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) {
    std::cerr << usage_text();
    return kUsage;
  }
  if (args[0] == "--version") {
    std::cout << kVersion << '\n';
    return kOk;
  }
  if (args[0] == "--help" || args[0] == "-h") {
    std::cout << usage_text();
    return kOk;
  }
  if (args[0].starts_with("-")) return usage_error("expected a subcommand before '" + args[0] + "'");

  std::string name = args[0];
  std::size_t consumed = 1;
  if (name == "kcycle") {
    if (args.size() < 2 || args[1].starts_with("-")) return usage_error("kcycle needs one of: cantor, circle, sphere");
    name += " " + args[1];
    consumed = 2;
  }
  const auto& known = subcommands();
  if (std::find(known.begin(), known.end(), name) == known.end()) return usage_error("unknown subcommand '" + name + "'");

  CLI::App app{"limitlab " + name, "limitlab " + name};
  std::string config_path, out_dir;
  int workers = 1;
  bool verbose = false;
  app.add_option("--config", config_path, "experiment configuration (JSON)")->required();
  app.add_option("--out", out_dir, "output directory")->required();
  app.add_option("--workers", workers, "worker threads")->check(CLI::Range(1, 1024));
  app.add_flag("--verbose", verbose, "progress on stderr");
  std::vector<std::string> rest(args.begin() + static_cast<std::ptrdiff_t>(consumed), args.end());
  std::reverse(rest.begin(), rest.end());  // CLI11 consumes vectors from the back
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    RunContext ctx;
    ctx.subcommand = name;
    ctx.config = load_config(config_path);
    ctx.out = out_dir;
    ctx.workers = workers;
    ctx.verbose = verbose;
    run(ctx);
  } catch (const ConfigError& e) {
    std::cerr << "limitlab: config error: " << e.what() << '\n';
    return kUsage;
  } catch (const limitlab::Error& e) {
    std::cerr << "limitlab: numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::exception& e) {
    std::cerr << "limitlab: failure: " << e.what() << '\n';
    return kNumericFailure;
  }
  return kOk;
}
