#pragma once

// Command surface: space-spec grammar, dispatch of the computations, and
// machine-readable JSON/CSV emission. Shared by the symseq binary and the
// test suite.

#include "symseq/serialize.hpp"
#include "symseq/space.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace symseq {

/// Grammar error with the offending position in the input text.
struct SpaceParseError : std::invalid_argument {
  SpaceParseError(const std::string& msg, size_t position)
      : std::invalid_argument(msg + " at position " + std::to_string(position)), pos(position) {}
  size_t pos;
};

/// Grammar:
///   space := "lp:" (float | "inf")
///          | "lorentz:G=pow" float ",w=" ("harmonic" | "ones" | "geom(" float ")") ",n=" int
///          | "dual(" space ")"
///          | "convexify(" space ",p=" float ")"
SpaceSpec parse_space(const std::string& text);

/// Splits "E,F" at the comma that makes both halves parse (lorentz specs
/// contain commas themselves).
std::pair<SpaceSpec, SpaceSpec> parse_space_pair(const std::string& text);

enum class OutputFormat { Json, Csv, Plain };

struct RunConfig {
  std::string command;  // norm, dualnorm, gendualnorm, opnorm, multnorm, gamma2,
                        // factorize, triangle-growth, tensor-norm, audit
  std::string space;        // canonical text form
  std::string space2;       // second space where a pair is needed
  std::string vec_text;     // inline vector
  std::string matrix_text;  // inline matrix
  std::string matrix_path;  // or a CSV/JSON file
  std::string mode;         // command-specific switch (factorize/audit/tensor-norm/growth)
  std::string sizes_text;   // triangle-growth sizes
  double p = 2.0;           // numeric knobs (lp_factorize p, audit exponents)
  double q = 2.0;
  double eps = 0.05;
  int trials = 20;
  int budget_starts = 32;
  int budget_iters = 500;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::Json;
  bool format_explicit = false;
  std::string output_path;  // empty: stdout
};

struct RunResult {
  int exit_code = 0;       // 0 ok, 1 input error, 2 numerical flag
  std::string output;      // emitted artifact (already formatted)
  Json document;           // structured result (empty for plain output)
};

/// Executes one configuration. Input errors are reported in the result,
/// not thrown; the function does not abort on user data.
RunResult run(const RunConfig& config);

/// Runs every job of a JSON manifest {"jobs":[{...}, ...]} in order and
/// aggregates a summary document; batch exit is the max of entry exits.
RunResult experiment_manifest(const std::string& path);

/// RunConfig <-> JSON (manifest entries).
RunConfig config_from_json(const Json& j);
Json config_to_json(const RunConfig& c);

}  // namespace symseq
