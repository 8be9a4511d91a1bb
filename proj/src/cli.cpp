#include "nambu/cli.hpp"

#include <bit>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "nambu/calculus.hpp"
#include "nambu/line_rep.hpp"
#include "nambu/random_inputs.hpp"

namespace nambu {

namespace {

constexpr const char* kUsage = R"USAGE(usage: nambu [flags] <command> [arguments]

commands:
  validate <model>                check the algebroid axioms
  nambu-check <model>             decide the structure condition, with witness
  wade-check <model>              decide the comparison condition
  decomposable <model>            pointwise decomposability test
  bracket <model> <alpha> <beta>  induced bracket of two argument forms
  schouten <model> <P> <Q>        graded bracket of two multivectors
  dA <model> <alpha>              differential of a form
  modular <model>                 modular tensor and its properties
  volume-change <model> <g>       modular tensor after rescaling the volume by exp(g)
  cocycle <model>                 cocycle condition of the modular tensor
  subordinate <model> <alpha>...  reduce by closed argument 1-forms
  hamiltonian <model> <f>...      hamiltonian section of order-1 fewer functions
  elw-compare <model>             line-bundle cocycle vs. the scaled modular tensor
  verify [--suite S] <model>      suites: cartan, schouten, leibniz, modular, elw, all
  examples --list | --emit <name> built-in example models

flags: --json  --seed <u64>  --samples <n>  --tolerance <rational>
       --allow-order-2  --assume-exact-generation

<model> is a model file path or a built-in example name. Tensor arguments are
literals like "1,2:x1; 1,3:exp(x2)" (increasing 1-based frame index lists with
coefficient expressions); a bare expression is a scalar.
)USAGE";

struct Parsed {
  CliOptions opt;
  std::string suite = "all";
  bool list = false;
  std::string emit;
  bool help = false;
  std::vector<std::string> pos;
};

int usage_error(std::ostream& err, const std::string& msg) {
  err << "error: " << msg << "\n";
  err << "run with --help for usage\n";
  return 2;
}

bool parse_args(const std::vector<std::string>& args, Parsed& p,
                std::ostream& err) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    auto value = [&](const char* flag) -> const std::string& {
      if (i + 1 >= args.size())
        throw domain_error(std::string("flag ") + flag + " needs a value");
      return args[++i];
    };
    try {
      if (a == "--json") p.opt.json = true;
      else if (a == "--seed") p.opt.seed = std::stoull(value("--seed"));
      else if (a == "--samples") {
        p.opt.samples = std::stoi(value("--samples"));
        if (p.opt.samples < 1) throw domain_error("--samples must be positive");
      } else if (a == "--tolerance") {
        p.opt.tolerance = Rational(value("--tolerance"));
        if (p.opt.tolerance < 0)
          throw domain_error("--tolerance must be nonnegative");
      } else if (a == "--allow-order-2") p.opt.allow_order_2 = true;
      else if (a == "--assume-exact-generation")
        p.opt.assume_exact_generation = true;
      else if (a == "--suite") p.suite = value("--suite");
      else if (a == "--list") p.list = true;
      else if (a == "--emit") p.emit = value("--emit");
      else if (a == "--help" || a == "-h") p.help = true;
      else if (a.size() >= 2 && a[0] == '-' && a[1] == '-')
        throw domain_error("unknown flag '" + a + "'");
      else p.pos.push_back(a);
    } catch (const std::exception& e) {
      usage_error(err, std::string("bad flag: ") + e.what());
      return false;
    }
  }
  return true;
}

ModelFile resolve_model(const std::string& ref) {
  if (std::filesystem::exists(ref)) return load_model_file(ref);
  for (const std::string& n : builtin_example_names())
    if (n == ref) return builtin_example(n);
  throw domain_error("no model file or built-in example named '" + ref + "'");
}

std::uint32_t literal_mask(const std::string& text, int rank) {
  std::uint32_t mask = 0;
  int prev = 0;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    std::size_t a = part.find_first_not_of(" \t");
    std::size_t b = part.find_last_not_of(" \t");
    if (a == std::string::npos)
      throw parse_error("empty index in '" + text + "'", 0);
    part = part.substr(a, b - a + 1);
    if (part.find_first_not_of("0123456789") != std::string::npos)
      throw parse_error("bad index '" + part + "'", 0);
    int idx = std::stoi(part);
    if (idx < 1 || idx > rank || idx <= prev)
      throw parse_error("index list '" + text +
                        "' must increase within 1.." + std::to_string(rank), 0);
    prev = idx;
    mask |= 1u << (idx - 1);
  }
  if (mask == 0) throw parse_error("empty index list", 0);
  return mask;
}

// "1,2:expr; 1,3:expr" over the frame (or coframe); a bare expression with no
// ':' is a grade-0 tensor.
ExteriorTensor parse_tensor_arg(const std::string& text, const AlgebroidPtr& A,
                                Variance v) {
  if (text.find(':') == std::string::npos)
    return ExteriorTensor::scalar(A, v, parse_expr(text, *A->chart, A->symbols));
  std::map<std::uint32_t, ScalarExpr> comps;
  std::istringstream in(text);
  std::string part;
  int grade = -1;
  while (std::getline(in, part, ';')) {
    if (part.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t colon = part.find(':');
    if (colon == std::string::npos)
      throw parse_error("component '" + part + "' needs 'indices:expression'", 0);
    std::uint32_t mask = literal_mask(part.substr(0, colon), A->rank);
    if (grade < 0) grade = std::popcount(mask);
    if (std::popcount(mask) != grade)
      throw parse_error("mixed grades in tensor literal '" + text + "'", 0);
    if (comps.count(mask))
      throw parse_error("repeated component in '" + text + "'", 0);
    comps[mask] = parse_expr(part.substr(colon + 1), *A->chart, A->symbols);
  }
  if (grade < 0) throw parse_error("empty tensor literal", 0);
  ExteriorTensor t(A, v, grade);
  for (const auto& [mask, f] : comps) t.set_coeff(mask, f);
  return t;
}

NambuStructure require_structure(const ModelFile& m, const CliOptions& o) {
  if (!m.structure_tensor)
    throw domain_error("the model declares no structure coefficients");
  return NambuStructure(*m.structure_tensor,
                        o.allow_order_2 || m.allow_order_2);
}

NambuStructure require_verified(const ModelFile& m, const CliOptions& o) {
  NambuStructure s = require_structure(m, o);
  check_nambu(s);
  if (s.status() != NambuStatus::verified) {
    std::string msg = "the structure condition is refuted";
    if (s.refutation())
      msg += " (argument " + to_string(s.refutation()->alpha) + ")";
    throw domain_error(msg);
  }
  return s;
}

const VolumeSection& require_volume(const ModelFile& m) {
  if (!m.volume) throw domain_error("the model declares no volume section");
  return *m.volume;
}

void merge(VerificationReport& rep, const VerificationReport& sub,
           const std::string& prefix) {
  for (CheckItem item : sub.items) {
    if (!prefix.empty()) item.name = prefix + ": " + item.name;
    rep.add(std::move(item));
  }
}

std::vector<ExteriorTensor> weighted_forms(const AlgebroidPtr& A, int grade,
                                           const char* tag) {
  std::vector<ExteriorTensor> out;
  for (std::uint32_t mask = 0; mask < (1u << A->rank); ++mask)
    if (std::popcount(mask) == grade)
      out.push_back(scalar_mul(ScalarExpr::symbol(tag),
                               ExteriorTensor::basis(A, Variance::form, mask)));
  return out;
}

// Shared skip ladder for the structure-dependent suites.
std::optional<NambuStructure> checked_structure(const ModelFile& m, bool allow2,
                                                std::string& why) {
  if (!m.structure_tensor) {
    why = "no structure coefficients declared";
    return std::nullopt;
  }
  if (m.structure_tensor->grade() == 2 && !allow2) {
    why = "order-2 structures are disabled (pass --allow-order-2)";
    return std::nullopt;
  }
  NambuStructure s(*m.structure_tensor, allow2);
  check_nambu(s);
  if (s.status() != NambuStatus::verified) {
    why = "the structure condition is refuted";
    return std::nullopt;
  }
  return s;
}

VerificationReport skipped_report(const char* name, const std::string& why) {
  VerificationReport rep;
  rep.name = name;
  rep.status = CheckStatus::skipped;
  rep.note = why;
  return rep;
}

// One randomized identity: runs `samples` draws, records failures with the
// drawn inputs rendered.
struct RandomItem {
  VerificationReport& rep;
  int samples;
  int* counter;

  void run(const std::string& name,
           const std::function<ExteriorTensor(int)>& residual) {
    CheckItem item;
    item.name = name;
    item.status = CheckStatus::probabilistic_pass;
    for (int k = 0; k < samples; ++k) {
      ExteriorTensor r = residual(k);
      ++*counter;
      if (!r.is_zero_tensor()) {
        item.status = CheckStatus::fail;
        item.witnesses.push_back({"sample " + std::to_string(k), to_string(r)});
      }
    }
    rep.add(std::move(item));
  }
};

}  // namespace

VerificationReport suite_cartan(const ModelFile& m, std::uint64_t seed,
                                int samples) {
  const AlgebroidPtr& A = m.algebroid;
  const int r = A->rank;
  RandomGen g(seed);
  std::vector<std::string> syms(A->symbols.begin(), A->symbols.end());

  VerificationReport rep;
  rep.name = "cartan";
  rep.seed = seed;
  int drawn = 0;
  RandomItem item{rep, samples, &drawn};

  auto rnd_mv = [&](int grade) {
    return random_tensor(g, A, Variance::multivector, grade, 2);
  };
  auto rnd_fm = [&](int grade) {
    return random_tensor(g, A, Variance::form, grade, 2);
  };
  auto rnd_f = [&] { return random_scalar(g, A->chart, syms, 2); };
  auto fgrade = [&] { return 1 + static_cast<int>(g.next(r)); };

  item.run("differential squares to zero", [&](int) {
    return d_A(d_A(rnd_fm(static_cast<int>(g.next(r + 1)))));
  });
  item.run("magic formula", [&](int) {
    ExteriorTensor X = rnd_mv(1), w = rnd_fm(fgrade());
    return lie_derivative_form(X, w) -
           (contract_by_section(X, d_A(w)) + d_A(contract_by_section(X, w)));
  });
  item.run("derivation over the wedge", [&](int) {
    int p = 1 + static_cast<int>(g.next(std::max(1, r - 1)));
    int q = 1 + static_cast<int>(g.next(std::max(1, r - p)));
    ExteriorTensor X = rnd_mv(1), P = rnd_mv(p), Q = rnd_mv(q);
    return lie_derivative_multivector(X, wedge(P, Q)) -
           (wedge(lie_derivative_multivector(X, P), Q) +
            wedge(P, lie_derivative_multivector(X, Q)));
  });
  item.run("multivector commutator matches the bracket", [&](int) {
    ExteriorTensor X = rnd_mv(1), Y = rnd_mv(1), P = rnd_mv(fgrade());
    return lie_derivative_multivector(X, lie_derivative_multivector(Y, P)) -
           lie_derivative_multivector(Y, lie_derivative_multivector(X, P)) -
           lie_derivative_multivector(section_bracket(X, Y), P);
  });
  item.run("module rule in the argument (multivectors)", [&](int) {
    ExteriorTensor X = rnd_mv(1), P = rnd_mv(fgrade());
    ScalarExpr f = rnd_f();
    return lie_derivative_multivector(X, scalar_mul(f, P)) -
           (scalar_mul(f, lie_derivative_multivector(X, P)) +
            scalar_mul(anchor_apply(X, f), P));
  });
  item.run("module rule in the direction (multivectors)", [&](int) {
    ExteriorTensor X = rnd_mv(1), P = rnd_mv(fgrade());
    ScalarExpr f = rnd_f();
    return lie_derivative_multivector(scalar_mul(f, X), P) -
           (scalar_mul(f, lie_derivative_multivector(X, P)) -
            wedge(X, contract_by_form(d_A(ExteriorTensor::scalar(
                                          A, Variance::form, f)),
                                      P)));
  });
  item.run("module rule in the argument (forms)", [&](int) {
    ExteriorTensor X = rnd_mv(1), w = rnd_fm(fgrade());
    ScalarExpr f = rnd_f();
    return lie_derivative_form(X, scalar_mul(f, w)) -
           (scalar_mul(f, lie_derivative_form(X, w)) +
            scalar_mul(anchor_apply(X, f), w));
  });
  item.run("module rule in the direction (forms)", [&](int) {
    ExteriorTensor X = rnd_mv(1), w = rnd_fm(fgrade());
    ScalarExpr f = rnd_f();
    return lie_derivative_form(scalar_mul(f, X), w) -
           (scalar_mul(f, lie_derivative_form(X, w)) +
            wedge(d_A(ExteriorTensor::scalar(A, Variance::form, f)),
                  contract_by_section(X, w)));
  });
  item.run("form commutator matches the bracket", [&](int) {
    ExteriorTensor X = rnd_mv(1), Y = rnd_mv(1), w = rnd_fm(fgrade());
    return lie_derivative_form(section_bracket(X, Y), w) -
           (lie_derivative_form(X, lie_derivative_form(Y, w)) -
            lie_derivative_form(Y, lie_derivative_form(X, w)));
  });
  item.run("contraction commutator matches the bracket", [&](int) {
    ExteriorTensor X = rnd_mv(1), Y = rnd_mv(1), w = rnd_fm(fgrade());
    return lie_derivative_form(X, contract_by_section(Y, w)) -
           contract_by_section(Y, lie_derivative_form(X, w)) -
           contract_by_section(section_bracket(X, Y), w);
  });
  item.run("homotopy formula", [&](int) {
    ExteriorTensor X = rnd_mv(1), w = rnd_fm(fgrade());
    return lie_derivative_form(X, w) -
           (contract_by_section(X, d_A(w)) + d_A(contract_by_section(X, w)));
  });
  item.run("lie derivative commutes with the differential", [&](int) {
    ExteriorTensor X = rnd_mv(1), w = rnd_fm(fgrade());
    return lie_derivative_form(X, d_A(w)) - d_A(lie_derivative_form(X, w));
  });

  rep.samples = drawn;
  return rep;
}

VerificationReport suite_schouten(const ModelFile& m, std::uint64_t seed,
                                  int samples) {
  const AlgebroidPtr& A = m.algebroid;
  const int r = A->rank;
  RandomGen g(seed);
  std::vector<std::string> syms(A->symbols.begin(), A->symbols.end());

  VerificationReport rep;
  rep.name = "schouten";
  rep.seed = seed;
  int drawn = 0;
  RandomItem item{rep, samples, &drawn};

  auto rnd = [&](int grade) {
    return random_tensor(g, A, Variance::multivector, grade, 2);
  };
  auto grade = [&] { return 1 + static_cast<int>(g.next(r)); };

  item.run("graded antisymmetry", [&](int) {
    int p = grade(), q = grade();
    ExteriorTensor R = rnd(p), S = rnd(q);
    ExteriorTensor flip = schouten(S, R);
    return schouten(R, S) - ((p - 1) * (q - 1) % 2 == 0 ? -flip : flip);
  });
  item.run("derivation in the right slot", [&](int) {
    int p = grade();
    int q = 1 + static_cast<int>(g.next(std::max(1, r - 1)));
    int w = 1 + static_cast<int>(g.next(std::max(1, r - q)));
    ExteriorTensor P = rnd(p), Q = rnd(q), R = rnd(w);
    ExteriorTensor tail = wedge(Q, schouten(P, R));
    return schouten(P, wedge(Q, R)) -
           (wedge(schouten(P, Q), R) +
            ((p - 1) * q % 2 == 0 ? tail : -tail));
  });
  item.run("graded Jacobi", [&](int) {
    int p = grade(), q = grade();
    ExteriorTensor P = rnd(p), Q = rnd(q), R = rnd(grade());
    ExteriorTensor inner = schouten(Q, schouten(P, R));
    return schouten(schouten(P, Q), R) -
           (schouten(P, schouten(Q, R)) -
            ((p - 1) * (q - 1) % 2 == 0 ? inner : -inner));
  });
  item.run("grade one reduces to the section bracket", [&](int) {
    ExteriorTensor X = rnd(1), Y = rnd(1);
    return schouten(X, Y) - section_bracket(X, Y);
  });
  item.run("scalar slot applies the anchor", [&](int) {
    ExteriorTensor X = rnd(1);
    ScalarExpr f = random_scalar(g, A->chart, syms, 2);
    return schouten(X, ExteriorTensor::scalar(A, Variance::multivector, f)) -
           ExteriorTensor::scalar(A, Variance::multivector, anchor_apply(X, f));
  });
  item.run("lie derivative agrees with the graded bracket", [&](int) {
    ExteriorTensor X = rnd(1), P = rnd(grade());
    return lie_derivative_multivector(X, P) - schouten(X, P);
  });

  rep.samples = drawn;
  return rep;
}

VerificationReport suite_leibniz(const ModelFile& m, bool allow_order_2) {
  std::string why;
  std::optional<NambuStructure> so = checked_structure(m, allow_order_2, why);
  if (!so) return skipped_report("leibniz", why);
  const NambuStructure& s = *so;
  const AlgebroidPtr& A = s.algebroid();
  const int n = s.order();

  VerificationReport rep;
  rep.name = "leibniz";
  rep.note = "exhaustive weighted-basis sweeps";
  auto as = weighted_forms(A, n - 1, "_g");
  auto bs = weighted_forms(A, n - 1, "_h");
  auto cs = weighted_forms(A, n - 1, "_w");

  auto sweep_pairs = [&](const std::string& name, const auto& residual) {
    CheckItem item;
    item.name = name;
    for (std::size_t i = 0; i < as.size(); ++i)
      for (std::size_t j = 0; j < bs.size(); ++j) {
        ExteriorTensor diff = residual(as[i], bs[j]);
        if (!diff.is_zero_tensor()) {
          item.status = CheckStatus::fail;
          item.witnesses.push_back(
              {to_string(as[i]) + ", " + to_string(bs[j]), to_string(diff)});
        }
      }
    rep.add(std::move(item));
  };

  {
    CheckItem item;
    item.name = "left identity";
    for (const auto& a : as)
      for (const auto& b : bs)
        for (const auto& c : cs) {
          ExteriorTensor diff =
              leibniz_bracket(s, a, leibniz_bracket(s, b, c)) -
              (leibniz_bracket(s, leibniz_bracket(s, a, b), c) +
               leibniz_bracket(s, b, leibniz_bracket(s, a, c)));
          if (!diff.is_zero_tensor()) {
            item.status = CheckStatus::fail;
            item.witnesses.push_back({to_string(a) + ", " + to_string(b) +
                                          ", " + to_string(c),
                                      to_string(diff)});
          }
        }
    rep.add(std::move(item));
  }

  sweep_pairs("sharp is a bracket morphism", [&](const ExteriorTensor& a,
                                                 const ExteriorTensor& b) {
    return sharp(s, leibniz_bracket(s, a, b)) -
           section_bracket(sharp(s, a), sharp(s, b));
  });

  sweep_pairs("contraction of the differential is a derivation along the "
              "bracket",
              [&](const ExteriorTensor& a, const ExteriorTensor& b) {
                ScalarExpr lhs =
                    contract_by_form(d_A(leibniz_bracket(s, a, b)), s.tensor())
                        .scalar_value();
                ScalarExpr ia =
                    contract_by_form(d_A(a), s.tensor()).scalar_value();
                ScalarExpr ib =
                    contract_by_form(d_A(b), s.tensor()).scalar_value();
                ScalarExpr rhs = anchor_apply(sharp(s, a), ib) -
                                 anchor_apply(sharp(s, b), ia);
                return ExteriorTensor::scalar(A, Variance::form, lhs - rhs);
              });

  sweep_pairs("module rule in the second slot",
              [&](const ExteriorTensor& a, const ExteriorTensor& b) {
                ScalarExpr f = ScalarExpr::symbol("_w");
                return leibniz_bracket(s, a, scalar_mul(f, b)) -
                       (scalar_mul(f, leibniz_bracket(s, a, b)) +
                        scalar_mul(anchor_apply(sharp(s, a), f), b));
              });

  sweep_pairs("first slot corrects by the derivation",
              [&](const ExteriorTensor& a, const ExteriorTensor& b) {
                ScalarExpr f = ScalarExpr::symbol("_w");
                return leibniz_bracket(s, scalar_mul(f, a), b) -
                       (scalar_mul(f, leibniz_bracket(s, a, b)) -
                        scalar_mul(anchor_apply(sharp(s, b), f), a) +
                        loday_derivation(s, f, a, b));
              });

  if (n == A->rank) {
    sweep_pairs("maximal order gives a skew bracket",
                [&](const ExteriorTensor& a, const ExteriorTensor& b) {
                  return leibniz_bracket(s, a, b) + leibniz_bracket(s, b, a);
                });
  } else {
    CheckItem item;
    item.name = "maximal order gives a skew bracket";
    item.status = CheckStatus::skipped;
    item.note = "the structure is below the top grade";
    rep.add(std::move(item));
  }

  return rep;
}

VerificationReport suite_modular(const ModelFile& m, bool allow_order_2) {
  std::string why;
  std::optional<NambuStructure> so = checked_structure(m, allow_order_2, why);
  if (!so) return skipped_report("modular", why);
  if (!m.volume) return skipped_report("modular", "no volume section declared");
  const NambuStructure& s = *so;
  const AlgebroidPtr& A = s.algebroid();

  VerificationReport rep;
  rep.name = "modular";
  ModularTensor M = modular_tensor(s, *m.volume);
  rep.add({"defining contraction relation", CheckStatus::pass, {},
           "modular tensor " + to_string(M.tensor)});
  merge(rep, modular_property_checks(M), "");
  merge(rep, cocycle_check(M), "cocycle");

  ScalarExpr gexp = A->dim() > 0 ? ScalarExpr::coordinate(*A->chart, 0)
                                 : ScalarExpr::symbol("_s");
  volume_change(M, gexp);
  rep.add({"volume rescaling law", CheckStatus::pass, {},
           "exponent " + to_string(gexp)});

  if (!m.expect_modular.empty()) {
    CheckItem item;
    item.name = "declared modular pairings";
    for (const auto& [mask, want] : m.expect_modular) {
      if (std::popcount(mask) != s.order() - 1) {
        item.status = CheckStatus::fail;
        item.witnesses.push_back({basis_name(*A, Variance::form, mask),
                                  "declared key of the wrong grade"});
        continue;
      }
      ScalarExpr got =
          pairing(M.tensor, ExteriorTensor::basis(A, Variance::form, mask));
      if (!(got - want).is_zero_expr()) {
        item.status = CheckStatus::fail;
        item.witnesses.push_back({basis_name(*A, Variance::form, mask),
                                  to_string(got - want)});
      }
    }
    rep.add(std::move(item));
  }

  if (s.order() >= 4) {
    int closed = -1;
    for (int i = 0; i < A->rank && closed < 0; ++i)
      if (d_A(ExteriorTensor::basis(A, Variance::form, 1u << i))
              .is_zero_tensor())
        closed = i;
    if (closed >= 0) {
      merge(rep,
            subordinate_modular_check(
                s, ExteriorTensor::basis(A, Variance::form, 1u << closed),
                *m.volume),
            "subordinate");
    } else {
      rep.add({"subordinate reduction", CheckStatus::skipped, {},
               "no closed coframe element"});
    }
  } else {
    rep.add({"subordinate reduction", CheckStatus::skipped, {},
             "needs order at least 4"});
  }

  return rep;
}

VerificationReport suite_elw(const ModelFile& m, bool allow_order_2) {
  if (!m.structure_tensor)
    return skipped_report("elw", "no structure coefficients declared");
  if (m.structure_tensor->grade() == 2 && !allow_order_2)
    return skipped_report("elw", "order-2 structures are disabled");
  std::vector<ExteriorTensor> coframe = m.coframe;
  if (coframe.empty())
    for (int i = 0; i < m.algebroid->rank; ++i)
      coframe.push_back(
          ExteriorTensor::basis(m.algebroid, Variance::form, 1u << i));
  try {
    VerificationReport rep = compare_modular_classes(*m.structure_tensor, coframe);
    rep.name = "elw";
    return rep;
  } catch (const domain_error& e) {
    return skipped_report("elw", e.what());
  }
}

namespace {

VerificationReport structure_report(const ModelFile& m, bool allow2) {
  VerificationReport rep;
  rep.name = "structure condition";
  if (!m.structure_tensor) {
    rep.status = CheckStatus::skipped;
    rep.note = "no structure coefficients declared";
    return rep;
  }
  if (m.structure_tensor->grade() == 2 && !allow2) {
    rep.status = CheckStatus::skipped;
    rep.note = "order-2 structures are disabled (pass --allow-order-2)";
    return rep;
  }
  NambuStructure s(*m.structure_tensor, allow2);
  VerificationReport raw = check_nambu(s);
  raw.name = "structure condition";
  if (!m.expect_nambu) return raw;
  std::string actual =
      s.status() == NambuStatus::verified ? "verified" : "refuted";
  CheckItem item;
  item.name = "matches the declared expectation (" + *m.expect_nambu + ")";
  item.note = "checker result: " + actual;
  if (actual != *m.expect_nambu) {
    item.status = CheckStatus::fail;
    for (const CheckItem& it : raw.items)
      for (const Witness& w : it.witnesses) item.witnesses.push_back(w);
  } else if (s.refutation()) {
    item.note += ", witness argument " + to_string(s.refutation()->alpha);
  }
  rep.add(std::move(item));
  return rep;
}

int exit_code(const std::vector<VerificationReport>& reps) {
  bool any_fail = false, any_indet = false;
  for (const VerificationReport& r : reps) {
    if (r.status == CheckStatus::fail) any_fail = true;
    if (r.status == CheckStatus::indeterminate) any_indet = true;
  }
  return any_fail ? 1 : any_indet ? 3 : 0;
}

int emit_reports(const std::vector<VerificationReport>& reps, bool json,
                 bool as_array, std::ostream& out) {
  if (json) {
    if (as_array) {
      out << "[";
      for (std::size_t i = 0; i < reps.size(); ++i) {
        if (i) out << ",";
        out << render_json(reps[i]);
      }
      out << "]\n";
    } else {
      out << render_json(reps.front()) << "\n";
    }
  } else {
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (i) out << "\n";
      out << render_text(reps[i]);
    }
  }
  return exit_code(reps);
}

VerificationReport value_report(const std::string& name,
                                const std::string& item_name,
                                const std::string& value) {
  VerificationReport rep;
  rep.name = name;
  rep.note = value;
  rep.add({item_name, CheckStatus::pass, {}, ""});
  return rep;
}

int dispatch(const Parsed& p, std::ostream& out, std::ostream& err) {
  const std::vector<std::string>& pos = p.pos;
  const std::string& cmd = pos.front();
  const CliOptions& opt = p.opt;

  auto need = [&](std::size_t lo, std::size_t hi, const char* shape) {
    if (pos.size() - 1 < lo || pos.size() - 1 > hi)
      throw domain_error(std::string("usage: nambu ") + cmd + " " + shape);
  };
  auto single = [&](VerificationReport rep) {
    return emit_reports({std::move(rep)}, opt.json, false, out);
  };

  if (cmd == "examples") {
    if (p.list) {
      for (const std::string& n : builtin_example_names()) out << n << "\n";
      return 0;
    }
    if (!p.emit.empty()) {
      out << emit_model(builtin_example(p.emit));
      return 0;
    }
    return usage_error(err, "examples needs --list or --emit <name>");
  }

  if (cmd == "validate") {
    need(1, 1, "<model>");
    ModelFile m = resolve_model(pos[1]);
    return single(validate_axioms(m.algebroid));
  }
  if (cmd == "nambu-check") {
    need(1, 1, "<model>");
    ModelFile m = resolve_model(pos[1]);
    NambuStructure s = require_structure(m, opt);
    VerificationReport rep = check_nambu(s);
    if (opt.assume_exact_generation)
      rep.note = "argument forms assumed exactly generated by the weighted "
                 "basis sweep";
    return single(std::move(rep));
  }
  if (cmd == "wade-check") {
    need(1, 1, "<model>");
    ModelFile m = resolve_model(pos[1]);
    NambuStructure s = require_structure(m, opt);
    return single(check_wade(s));
  }
  if (cmd == "decomposable") {
    need(1, 1, "<model>");
    ModelFile m = resolve_model(pos[1]);
    NambuStructure s = require_structure(m, opt);
    return single(check_pointwise_decomposability(s));
  }
  if (cmd == "bracket") {
    need(3, 3, "<model> <alpha> <beta>");
    ModelFile m = resolve_model(pos[1]);
    NambuStructure s = require_verified(m, opt);
    ExteriorTensor a = parse_tensor_arg(pos[2], m.algebroid, Variance::form);
    ExteriorTensor b = parse_tensor_arg(pos[3], m.algebroid, Variance::form);
    return single(value_report("bracket", "induced bracket",
                               to_string(leibniz_bracket(s, a, b))));
  }
  if (cmd == "schouten") {
    need(3, 3, "<model> <P> <Q>");
    ModelFile m = resolve_model(pos[1]);
    ExteriorTensor a =
        parse_tensor_arg(pos[2], m.algebroid, Variance::multivector);
    ExteriorTensor b =
        parse_tensor_arg(pos[3], m.algebroid, Variance::multivector);
    return single(value_report("schouten", "graded bracket",
                               to_string(schouten(a, b))));
  }
  if (cmd == "dA") {
    need(2, 2, "<model> <alpha>");
    ModelFile m = resolve_model(pos[1]);
    ExteriorTensor a = parse_tensor_arg(pos[2], m.algebroid, Variance::form);
    return single(value_report("dA", "differential", to_string(d_A(a))));
  }
  if (cmd == "modular") {
    need(1, 1, "<model>");
    ModelFile m = resolve_model(pos[1]);
    NambuStructure s = require_verified(m, opt);
    ModularTensor M = modular_tensor(s, require_volume(m));
    VerificationReport rep;
    rep.name = "modular";
    rep.note = "modular tensor " + to_string(M.tensor);
    rep.add({"defining contraction relation", CheckStatus::pass, {}, ""});
    merge(rep, modular_property_checks(M), "");
    return single(std::move(rep));
  }
  if (cmd == "volume-change") {
    need(2, 2, "<model> <g>");
    ModelFile m = resolve_model(pos[1]);
    NambuStructure s = require_verified(m, opt);
    ModularTensor M = modular_tensor(s, require_volume(m));
    ScalarExpr gexp = parse_expr(pos[2], *m.algebroid->chart,
                                 m.algebroid->symbols);
    ModularTensor M2 = volume_change(M, gexp);
    VerificationReport rep = value_report(
        "volume-change", "rescaling law",
        "modular tensor of the rescaled volume " + to_string(M2.tensor));
    return single(std::move(rep));
  }
  if (cmd == "cocycle") {
    need(1, 1, "<model>");
    ModelFile m = resolve_model(pos[1]);
    NambuStructure s = require_verified(m, opt);
    return single(cocycle_check(modular_tensor(s, require_volume(m))));
  }
  if (cmd == "subordinate") {
    need(2, 16, "<model> <alpha>...");
    ModelFile m = resolve_model(pos[1]);
    NambuStructure s = require_verified(m, opt);
    std::vector<ExteriorTensor> alphas;
    for (std::size_t i = 2; i < pos.size(); ++i)
      alphas.push_back(parse_tensor_arg(pos[i], m.algebroid, Variance::form));
    NambuStructure sub = subordinate(s, alphas);
    VerificationReport rep;
    rep.name = "subordinate";
    rep.note = "inherited tensor " + to_string(sub.tensor());
    rep.add({"closed generators reduce the structure", CheckStatus::pass, {},
             "order " + std::to_string(sub.order())});
    if (m.volume) {
      ExteriorTensor alpha_bar = alphas.front();
      for (std::size_t i = 1; i < alphas.size(); ++i)
        alpha_bar = wedge(alpha_bar, alphas[i]);
      merge(rep, subordinate_modular_check(s, alpha_bar, *m.volume),
            "modular");
    }
    return single(std::move(rep));
  }
  if (cmd == "hamiltonian") {
    need(2, 16, "<model> <f>...");
    ModelFile m = resolve_model(pos[1]);
    NambuStructure s = require_verified(m, opt);
    std::vector<ScalarExpr> fs;
    for (std::size_t i = 2; i < pos.size(); ++i)
      fs.push_back(parse_expr(pos[i], *m.algebroid->chart,
                              m.algebroid->symbols));
    ExteriorTensor X = hamiltonian_section(s, fs);
    return single(
        value_report("hamiltonian", "hamiltonian section", to_string(X)));
  }
  if (cmd == "elw-compare") {
    need(1, 1, "<model>");
    ModelFile m = resolve_model(pos[1]);
    if (!m.structure_tensor)
      throw domain_error("the model declares no structure coefficients");
    std::vector<ExteriorTensor> coframe = m.coframe;
    if (coframe.empty())
      for (int i = 0; i < m.algebroid->rank; ++i)
        coframe.push_back(
            ExteriorTensor::basis(m.algebroid, Variance::form, 1u << i));
    return single(compare_modular_classes(*m.structure_tensor, coframe));
  }
  if (cmd == "verify") {
    need(1, 1, "<model>");
    ModelFile m = resolve_model(pos[1]);
    bool allow2 = opt.allow_order_2 || m.allow_order_2;
    std::vector<VerificationReport> reps;
    auto one = [&](const std::string& name) {
      if (name == "cartan") reps.push_back(suite_cartan(m, opt.seed, opt.samples));
      else if (name == "schouten")
        reps.push_back(suite_schouten(m, opt.seed, opt.samples));
      else if (name == "leibniz") reps.push_back(suite_leibniz(m, allow2));
      else if (name == "modular") reps.push_back(suite_modular(m, allow2));
      else if (name == "elw") reps.push_back(suite_elw(m, allow2));
      else
        throw domain_error("unknown suite '" + name +
                           "' (cartan, schouten, leibniz, modular, elw, all)");
    };
    if (p.suite == "all") {
      reps.push_back(structure_report(m, allow2));
      for (const char* name : {"cartan", "schouten", "leibniz", "modular", "elw"})
        one(name);
    } else {
      one(p.suite);
    }
    return emit_reports(reps, opt.json, true, out);
  }

  return usage_error(err, "unknown command '" + cmd + "'");
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  Parsed p;
  if (!parse_args(args, p, err)) return 2;
  if (p.help) {
    out << kUsage;
    return 0;
  }
  if (p.pos.empty()) {
    err << kUsage;
    return 2;
  }
  try {
    return dispatch(p, out, err);
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const expression_too_large& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const sampling_failed& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const internal_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace nambu
