#pragma once

// Model files: a sectioned key-value text format (TOML-compatible subset)
// describing a chart, an algebroid presentation, and optional structure
// tensor, volume, coframe, and declared expectations. Includes the canonical
// emitter and the built-in example library.
//
// Grammar per line: `[section]`, `key = value`, blank, or `# comment`.
// Keys are bare identifiers, quoted index lists like "1,2,3", or dotted pairs
// like modular."2,3". Values are quoted expression strings, single-line
// arrays of quoted strings, integers, or booleans. Exterior coefficients are
// keyed by comma-separated increasing 1-based index lists.

#include <cstdint>
#include <map>
#include <optional>

#include "nambu/volume.hpp"

namespace nambu {

struct ModelFile {
  std::string name;
  std::string description;
  AlgebroidPtr algebroid;
  // Candidate structure tensor from the [nambu] section, not yet checked.
  std::optional<ExteriorTensor> structure_tensor;
  bool allow_order_2 = false;
  std::optional<VolumeSection> volume;
  // Grade-1 forms from the [coframe] section, one per frame index.
  std::vector<ExteriorTensor> coframe;
  // Declared outcome of the structure check: "verified" or "refuted".
  std::optional<std::string> expect_nambu;
  // Declared pairings of the modular tensor against basis coforms.
  std::map<std::uint32_t, ScalarExpr> expect_modular;
};

// Parses model text; `origin` names the source in error messages. Throws
// parse_error with 1-based line numbers for format problems and domain_error
// when the presentation fails the algebroid axioms.
ModelFile load_model(const std::string& text, const std::string& origin = "");
ModelFile load_model_file(const std::string& path);

// Canonical serialization; loading it back yields an equivalent model.
std::string emit_model(const ModelFile& m);

const std::vector<std::string>& builtin_example_names();
ModelFile builtin_example(const std::string& name);

}  // namespace nambu
