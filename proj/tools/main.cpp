#include "dimgroup/cli.hpp"

#include <CLI11.hpp>

#include <map>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"dimension groups of primitive substitution subshifts"};
  app.require_subcommand(1);

  dimgroup::cli::RunConfig config;
  std::string format = "text";
  const std::map<std::string, dimgroup::cli::Format> format_map{
      {"text", dimgroup::cli::Format::text},
      {"json", dimgroup::cli::Format::json},
      {"dot", dimgroup::cli::Format::dot}};

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("input", config.input_path, "substitution file")->required();
    cmd->add_option("--levels", config.levels, "interval/stabilisation depth cap")
        ->check(CLI::Range(1, 8));
    cmd->add_option("--max-k", config.max_k, "absorption bound")->check(CLI::Range(0, 16));
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "dot"}));
    cmd->add_option("--out", config.out, "write output to a file instead of stdout");
    cmd->add_option("--seed", config.seed, "seed for randomized suites");
  };

  using Cmd = dimgroup::cli::Command;
  std::map<CLI::App*, Cmd> commands;
  commands[app.add_subcommand("info", "alphabet, incidence, primitivity, properness")] = Cmd::info;
  commands[app.add_subcommand("triple", "print A^Q and sigma^Q")] = Cmd::triple;
  commands[app.add_subcommand("kgroup", "K0 of the substitution system (JSON report)")] =
      Cmd::kgroup;
  commands[app.add_subcommand("classical", "classical dimension group of the diagram")] =
      Cmd::classical;
  commands[app.add_subcommand("verify", "run the verification harness")] = Cmd::verify;
  CLI::App* dot = app.add_subcommand("export-dot", "write the diagram as DOT");
  commands[dot] = Cmd::export_dot;
  for (auto& [cmd, _] : commands) add_common(cmd);
  dot->add_flag("--triple", config.triple_diagram, "export the tripled diagram");

  CLI11_PARSE(app, argc, argv);

  CLI::App* parsed = nullptr;
  for (auto& [cmd, which] : commands)
    if (cmd->parsed()) {
      config.command = which;
      parsed = cmd;
    }
  config.format = format_map.at(format);
  // kgroup emits its JSON report unless a format was asked for explicitly
  if (config.command == Cmd::kgroup && parsed && parsed->count("--format") == 0)
    config.format = dimgroup::cli::Format::json;
  return dimgroup::cli::run(config);
}
