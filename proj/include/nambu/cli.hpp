#pragma once

// Command dispatch for the driver binary: model resolution, the verification
// suites, report rendering, and exit-code policy (0 all pass, 1 any fail,
// 2 usage or parse error, 3 indeterminate only).

#include <iosfwd>

#include "nambu/model.hpp"

namespace nambu {

struct CliOptions {
  bool json = false;
  std::uint64_t seed = 0;
  int samples = 3;
  Rational tolerance = 0;
  bool allow_order_2 = false;
  bool assume_exact_generation = false;
};

// Randomized identity sweeps over the model's algebroid. The report carries
// the seed and the number of random inputs drawn.
VerificationReport suite_cartan(const ModelFile& m, std::uint64_t seed,
                                int samples);
VerificationReport suite_schouten(const ModelFile& m, std::uint64_t seed,
                                  int samples);

// Exhaustive weighted-basis sweeps; skipped (with a reason) when the model
// carries no verified structure of admissible order.
VerificationReport suite_leibniz(const ModelFile& m, bool allow_order_2);
VerificationReport suite_modular(const ModelFile& m, bool allow_order_2);
VerificationReport suite_elw(const ModelFile& m, bool allow_order_2);

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace nambu
