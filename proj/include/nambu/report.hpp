#pragma once

// Verification outcomes. A report aggregates named check items, each of which
// may carry witnesses (where the check failed and the offending residual).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nambu {

enum class CheckStatus { pass, fail, probabilistic_pass, indeterminate, skipped };

const char* status_name(CheckStatus s);

struct Witness {
  std::string where;     // basis element, pair, or input description
  std::string residual;  // rendered value that should have been zero
};

struct CheckItem {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::vector<Witness> witnesses;
  std::string note;
};

struct VerificationReport {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string note;
  std::vector<CheckItem> items;
  double elapsed_ms = 0;  // rendered in text output only, never in JSON
  std::optional<std::uint64_t> seed;
  int samples = 0;

  void add(CheckItem item);
  bool passed() const {
    return status == CheckStatus::pass || status == CheckStatus::probabilistic_pass;
  }
};

// Worst status wins: fail > indeterminate > probabilistic_pass > pass.
// `skipped` items do not affect the aggregate.
CheckStatus combine(CheckStatus a, CheckStatus b);

std::string render_text(const VerificationReport& r);

// Compact JSON with a fixed key order; timing is omitted so equal runs
// render byte-identically.
std::string render_json(const VerificationReport& r);

}  // namespace nambu
