#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace smellrole::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

struct Options {
  std::string workspace = "workspace";
  std::string manifest;
  std::string config;
  std::optional<std::uint64_t> seed;
  double theta = 2.0;
  double min_support = 0.05;
  std::string rule_cards;
  std::string model;
  std::string labels;
  bool filter_smelly_only = false;
  std::size_t trees = 100;
  std::size_t max_depth = 0;
  bool oversample = true;
};

int cmd_scan(const Options &options, std::ostream &log);
int cmd_detect(const Options &options, std::ostream &log);
int cmd_classify(const Options &options, std::ostream &log);
int cmd_integrate(const Options &options, std::ostream &log);
int cmd_analyze(const Options &options, std::ostream &log);
int cmd_mine(const Options &options, std::ostream &log);
int cmd_train(const Options &options, std::ostream &log);

/// Parses arguments, runs one subcommand and maps failures to exit codes:
/// 1 for usage or configuration errors, 2 for data errors. Errors are
/// reported on `err` as one JSON line.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace smellrole::cli
