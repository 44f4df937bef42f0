#pragma once

// Command line front end. Subcommands:
//
//   fgh {eval,nf,map}  collapse {enum,cmp,validate}  iso check
//   construct {hat,embed-hat,e-embed}  bh run  sys {check,probe}
//
// Exit codes: 0 ok, 1 usage/parse, 2 validation, 3 cap or overflow.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ffgh/collapse.hpp"
#include "ffgh/dsl.hpp"
#include "ffgh/fgh.hpp"

namespace ffgh {

struct Config {
  enum class Format { text, json, dot };

  std::uint64_t resource_cap = kDefaultResourceCap;
  std::size_t stage_cap = 16;
  std::size_t size_cap = 1u << 14;
  std::uint64_t param_cap = 4;
  Format format = Format::text;
  Presets presets;

  /// Throws UsageError unless every cap is >= 1.
  void validate() const;
  CollapseCaps caps() const { return {stage_cap, size_cap, param_cap}; }
};

Config::Format parse_format(std::string_view text);

/// key=value lines; '#' starts a comment. Keys: resource_cap, stage_cap,
/// size_cap, param_cap, format, system.NAME (a DSL preset).
Config parse_seed_config(std::string_view text, Config base = {});
Config load_seed_config(const std::string& path, Config base = {});

/// Runs one command (arguments without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ffgh
