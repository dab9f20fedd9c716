#pragma once

#include <optional>
#include <string>

#include "rainbow/generate.hpp"
#include "rainbow/solver.hpp"

namespace rainbow {

/// Optional provenance carried by instance files.
struct InstanceMeta {
  std::optional<std::string> generator;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> p;
  bool empty() const { return !generator && !seed && !p; }
};

/// Canonical JSON for an instance: matroid descriptor plus the n colour
/// classes (element ids, 0-based). Key order is fixed, so equal inputs
/// serialize to identical bytes.
std::string serialize_instance(const Instance& inst, const InstanceMeta& meta = {});

/// Parses and validates an instance document. Validation failures name the
/// offending path (input_error).
Instance parse_instance(const std::string& text, InstanceMeta* meta = nullptr);

/// Canonical JSON for a solve result: the instance, the effective config,
/// and the decomposition with coloured elements as [element, colour] pairs,
/// colours 1-based in files.
std::string serialize_decomposition(const Instance& inst, const SolverConfig& cfg,
                                    const Decomposition& dec);

struct SolveDocument {
  Instance instance;
  SolverConfig config;
  Decomposition decomposition;
};
SolveDocument parse_decomposition(const std::string& text);

/// Trace records as JSON lines.
std::string trace_to_json_lines(const Decomposition& dec);

std::string mode_name(SolveMode mode);
std::optional<SolveMode> mode_from_name(const std::string& name);

}  // namespace rainbow
