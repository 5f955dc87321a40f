#include "stumpboost/cli.hpp"

#include <ostream>

#include "stumpboost/config.hpp"
#include "stumpboost/errors.hpp"
#include "stumpboost/experiment.hpp"

namespace stumpboost {

namespace {

constexpr const char* kUsage =
    "usage: stumpboost <gen|train|sweep|bounds|rademacher|margin> "
    "<config-file> [--out <dir>]\n";

struct CliArgs {
  std::string subcommand;
  std::string config_path;
  std::string out_dir = ".";
};

CliArgs parse_args(const std::vector<std::string>& args) {
  CliArgs out;
  std::vector<std::string> positional;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      if (i + 1 >= args.size())
        throw ConfigError(0, "--out requires a directory argument");
      out.out_dir = args[++i];
    } else if (!args[i].empty() && args[i][0] == '-') {
      throw ConfigError(0, "unknown flag '" + args[i] + "'");
    } else {
      positional.push_back(args[i]);
    }
  }
  if (positional.size() != 2)
    throw ConfigError(0, "expected <subcommand> <config-file>");
  out.subcommand = positional[0];
  out.config_path = positional[1];
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  try {
    const CliArgs cli = parse_args(args);
    const RunConfig config = load_config(cli.config_path);
    if (cli.subcommand != experiment_name(config.experiment))
      throw ConfigError(0, "subcommand '" + cli.subcommand +
                               "' does not match config experiment '" +
                               experiment_name(config.experiment) + "'");
    const std::vector<std::string> written =
        run_experiment(config, cli.out_dir);
    for (const std::string& path : written) out << path << '\n';
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n' << kUsage;
    return 2;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace stumpboost
