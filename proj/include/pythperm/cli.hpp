#pragma once

// Command-line front end. `run_cli` is the whole program minus process
// plumbing so that tests can drive it against string streams.
//
// Exit codes: 0 success / all pass, 1 verify found a failing arrangement,
// 2 bad arguments, 3 constraint or integrality failure, 4 search incomplete.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pythperm/checkpoint.hpp"
#include "pythperm/eigen.hpp"
#include "pythperm/families.hpp"
#include "pythperm/records.hpp"
#include "pythperm/search.hpp"
#include "pythperm/triples.hpp"

namespace pythperm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConstraint = 3;
inline constexpr int kExitIncomplete = 4;

/// Environment variable holding the default shard count for `search`.
inline constexpr const char* kShardsEnv = "PYTHPERM_SHARDS";

/// Bad user input; maps to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool out_is_terminal = false;
};

namespace detail {

inline Int parse_int(const std::string& text, Int limit = kMaxAbsCoefficient2) {
  static const std::regex pattern(R"(\s*[+-]?\d+\s*)");
  if (!std::regex_match(text, pattern)) throw UsageError("not an integer: '" + text + "'");
  Int value = 0;
  try {
    value = std::stoll(text);
  } catch (const std::out_of_range&) {
    throw UsageError("integer out of range: " + text);
  }
  if (value > limit || value < -limit)
    throw UsageError("|" + text + "| exceeds " + std::to_string(limit) +
                     "; larger values could overflow the 64-bit discriminant arithmetic");
  return value;
}

inline std::vector<Int> parse_int_list(const std::string& text, Int limit = kMaxAbsCoefficient2) {
  std::vector<Int> out;
  std::string token;
  std::istringstream in(std::regex_replace(text, std::regex("[,;\\[\\]{}()]"), " "));
  while (in >> token) out.push_back(parse_int(token, limit));
  return out;
}

inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  const Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw UsageError("zero denominator in " + text);
  return Rational(parse_int(text.substr(0, slash)), den);
}

inline PythTriple parse_triple(const std::string& text) {
  const auto v = parse_int_list(text);
  if (v.size() != 3) throw UsageError("--triple needs three integers r,s,t, got '" + text + "'");
  const PythTriple p{v[0], v[1], v[2]};
  if (!is_valid(p)) throw UsageError(p.str() + " is not a Pythagorean triple (need positive r^2 + s^2 = t^2)");
  return p;
}

inline Format pick_format(const std::string& requested, const Streams& io) {
  if (requested.empty()) return io.out_is_terminal ? Format::text : Format::json;
  const auto f = parse_format(requested);
  if (!f) throw UsageError("unknown format '" + requested + "' (json, csv, text)");
  return *f;
}

inline std::size_t default_shards() {
  if (const char* env = std::getenv(kShardsEnv)) {
    try {
      const long n = std::stol(env);
      if (n >= 1) return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Verify, cross-check and print one generated quadruple.
inline void emit_quad(const CoefficientQuad& q, RecordWriter& writer, const std::optional<Json>& extra = std::nullopt,
                      const std::optional<std::pair<PythTriple, FactorPair>>& predicted_from = std::nullopt) {
  const EigenReport report = verify_all_permutations(q);
  if (!report.all_pass)
    throw ConstraintError("generated quadruple " + q.str() + " failed verification at " +
                          report.arrangements[*report.first_failure].matrix.str());
  if (predicted_from) {
    const auto predicted = predicted_eigenvalues(predicted_from->first, predicted_from->second);
    const auto direct = representative_spectra(q);
    for (std::size_t i = 0; i < 6; ++i)
      if (!direct[i] || *direct[i] != predicted[i])
        throw ConstraintError("predicted eigenvalue class " + std::to_string(i) + " disagrees for " + q.str());
  }
  Json rec = quad_record(q, true);
  if (extra)
    for (const auto& [k, v] : extra->items()) rec[k] = v;
  writer.write(rec);
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, Streams io) {
  CLI::App app{"Integer matrices whose every coefficient permutation has integer eigenvalues", "pythperm"};
  app.require_subcommand(1);
  std::string format;
  app.add_option("--format", format, "json | csv | text (default: text on a terminal, json otherwise)");

  // triples
  auto* triples_cmd = app.add_subcommand("triples", "Enumerate Pythagorean triples by hypotenuse");
  Int max_t = 0;
  bool primitive = false;
  triples_cmd->add_option("--max-t", max_t, "Largest hypotenuse")->required();
  triples_cmd->add_flag("--primitive", primitive, "Primitive triples only");
  triples_cmd->add_option("--format", format);

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Generate a quadruple from one of the solution families");
  gen_cmd->require_subcommand(1);
  gen_cmd->add_option("--format", format);
  std::string triple_text, k_text, l_text;
  Int m = 0, n = 0, p = 0, q = 0, g = 0, e1 = 0, e2 = 0;
  auto* gen_canonical = gen_cmd->add_subcommand("canonical", "{(t +- r +- s/2)/2}");
  gen_canonical->add_option("--triple", triple_text, "r,s,t")->required();
  auto* gen_altcan = gen_cmd->add_subcommand("altcan", "{4m^2 +- mn, n^2 +- mn}");
  gen_altcan->add_option("--m", m)->required();
  gen_altcan->add_option("--n", n)->required();
  auto* gen_oddt = gen_cmd->add_subcommand("oddt", "{(t +- rs/2 +- 1)/2}, t odd");
  gen_oddt->add_option("--triple", triple_text, "r,s,t")->required();
  auto* gen_rational = gen_cmd->add_subcommand("rational", "{pqt +- p^2 +- q^2 rs/2}");
  gen_rational->add_option("--triple", triple_text, "r,s,t")->required();
  gen_rational->add_option("--p", p)->required();
  gen_rational->add_option("--q", q)->required();
  auto* gen_degenerate = gen_cmd->add_subcommand("degenerate", "{g e1^2, g e2^2, 0, 0}");
  gen_degenerate->add_option("--g", g)->required();
  gen_degenerate->add_option("--e1", e1)->required();
  gen_degenerate->add_option("--e2", e2)->required();
  auto* gen_general = gen_cmd->add_subcommand("general", "{(t +- k +- l)/2} with k l = rs/2");
  gen_general->add_option("--triple", triple_text, "r,s,t")->required();
  gen_general->add_option("--k", k_text, "integer or fraction p/q")->required();
  gen_general->add_option("--l", l_text, "integer or fraction p/q")->required();
  for (auto* sub : {gen_canonical, gen_altcan, gen_oddt, gen_rational, gen_degenerate, gen_general})
    sub->add_option("--format", format);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check every arrangement of 4 (2x2) or 9 (3x3) integers");
  std::vector<std::string> coefficient_args;
  verify_cmd->add_option("coefficients", coefficient_args,
                         "Comma- or space-separated integers; read from stdin (one set per line) when omitted");
  verify_cmd->add_option("--format", format);

  // search
  auto* search_cmd = app.add_subcommand("search", "Exhaustive search over a coefficient range");
  int dim = 2;
  Int lo = 0, hi = 0;
  std::size_t shards = 0;
  std::string checkpoint_path;
  std::uint64_t budget = UINT64_MAX;
  std::uint64_t block_size = kDefaultBlockSize3;
  std::uint64_t max_work = kDefaultWorkBudget2;
  bool allow_negative = false;
  search_cmd->add_option("--dim", dim, "2 or 3")->required();
  search_cmd->add_option("--min", lo, "Smallest coefficient")->required();
  search_cmd->add_option("--max", hi, "Largest coefficient")->required();
  search_cmd->add_option("--shards", shards, std::string("Worker shards (default $") + kShardsEnv + " or CPU count)");
  search_cmd->add_option("--checkpoint", checkpoint_path, "Checkpoint file to resume from and write to");
  search_cmd->add_option("--budget", budget, "Maximum work units to process in this run");
  search_cmd->add_option("--block-size", block_size, "3x3 multisets per work unit");
  search_cmd->add_option("--max-work", max_work, "Refuse 2x2 ranges holding more multisets than this");
  search_cmd->add_flag("--allow-negative", allow_negative, "Permit negative coefficients for 3x3");
  search_cmd->add_option("--format", format);

  std::vector<const char*> argv;
  argv.push_back("pythperm");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, io.out, io.err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Format fmt = detail::pick_format(format, io);
    RecordWriter writer(io.out, fmt);

    if (*triples_cmd) {
      if (max_t < 1) throw UsageError("--max-t must be positive, got " + std::to_string(max_t));
      for (const auto& t : enumerate(max_t, primitive)) writer.write(triple_record(t));
      return kExitOk;
    }

    if (*gen_cmd) {
      if (*gen_canonical) {
        const PythTriple t = normalize(detail::parse_triple(triple_text)).triple;
        detail::emit_quad(canonical(t), writer, std::nullopt,
                          std::pair(t, FactorPair{Rational(t.r), Rational(t.s / 2)}));
      } else if (*gen_altcan) {
        const AltCanParams params{m, n};
        try {
          params.validate();
        } catch (const ParameterError& e) {
          throw UsageError(e.what());
        }
        Json extra;
        extra["strictly_positive"] = positive_predicate(params);
        detail::emit_quad(alt_canonical(params), writer, extra);
      } else if (*gen_oddt) {
        const PythTriple t = normalize(detail::parse_triple(triple_text)).triple;
        const CoefficientQuad quad = odd_t_solution(t);
        detail::emit_quad(quad, writer, std::nullopt,
                          std::pair(t, FactorPair{Rational(checked::mul(t.r, t.s) / 2), Rational(1)}));
      } else if (*gen_rational) {
        const PythTriple t = normalize(detail::parse_triple(triple_text)).triple;
        const RationalParam param{p, q};
        try {
          param.validate();
        } catch (const ParameterError& e) {
          throw UsageError(e.what());
        }
        const auto result = rational_family(t, param);
        if (!verify_all_permutations(result.reduced).all_pass)
          throw ConstraintError("reduced quadruple " + result.reduced.str() + " failed verification");
        Json extra;
        extra["reduced"] = ints_json(result.reduced.v);
        extra["divisor"] = result.divisor;
        detail::emit_quad(result.printed, writer, extra);
      } else if (*gen_degenerate) {
        if (g == 0) throw UsageError("--g must be nonzero");
        if (e1 < 1 || e2 < 1) throw UsageError("--e1 and --e2 must be positive");
        detail::emit_quad(degenerate_family(g, e1, e2), writer);
      } else if (*gen_general) {
        const PythTriple t = detail::parse_triple(triple_text);
        const FactorPair factors{detail::parse_rational(k_text), detail::parse_rational(l_text)};
        const CoefficientQuad quad = general_solution(t, factors);
        detail::emit_quad(quad, writer, std::nullopt, std::pair(t, factors));
      }
      return kExitOk;
    }

    if (*verify_cmd) {
      std::vector<std::vector<Int>> sets;
      const auto parse_set = [](const std::string& text) {
        std::vector<Int> values;
        const auto first = text.find_first_not_of(" \t");
        if (first != std::string::npos && text[first] == '{') {
          Json j;
          try {
            j = Json::parse(text);
          } catch (const Json::parse_error&) {
            throw UsageError("unreadable JSON input line");
          }
          const Json* field = j.contains("quad") ? &j["quad"] : j.contains("coefficients") ? &j["coefficients"] : nullptr;
          if (!field || !field->is_array()) throw UsageError("JSON input has no quad or coefficients array");
          for (const auto& x : *field) {
            if (!x.is_number_integer()) throw UsageError("non-integer coefficient in JSON input");
            values.push_back(detail::parse_int(std::to_string(x.get<Int>())));
          }
        } else {
          values = detail::parse_int_list(text);
        }
        if (values.size() == 9)
          for (Int v : values)
            if (v > kMaxAbsCoefficient3 || v < -kMaxAbsCoefficient3)
              throw UsageError("3x3 coefficients must lie within +-" + std::to_string(kMaxAbsCoefficient3));
        if (values.size() != 4 && values.size() != 9)
          throw UsageError("verify expects 4 or 9 integers, got " + std::to_string(values.size()));
        return values;
      };
      if (!coefficient_args.empty()) {
        std::string joined;
        for (const auto& a : coefficient_args) joined += a + " ";
        sets.push_back(parse_set(joined));
      } else {
        std::string line;
        while (std::getline(io.in, line))
          if (line.find_first_not_of(" \t\r") != std::string::npos) sets.push_back(parse_set(line));
        if (sets.empty()) throw UsageError("verify: no coefficients given");
      }
      bool all = true;
      for (const auto& v : sets) {
        if (v.size() == 4) {
          const std::array<Int, 4> quad{v[0], v[1], v[2], v[3]};
          const auto report = verify_all_permutations(quad);
          all = all && report.all_pass;
          writer.write(report_record(quad, report));
          if (!report.all_pass)
            io.err << "first failing arrangement: " << report.arrangements[*report.first_failure].matrix.str() << " ("
                   << to_string(report.arrangements[*report.first_failure].verdict) << ")\n";
        } else {
          std::array<Int, 9> nonuple{};
          std::copy(v.begin(), v.end(), nonuple.begin());
          const auto report = verify_all_permutations_3x3(nonuple);
          all = all && report.all_pass;
          writer.write(report_record(nonuple, report));
        }
      }
      return all ? kExitOk : kExitVerifyFail;
    }

    if (*search_cmd) {
      if (shards == 0) shards = detail::default_shards();
      SearchSpace space{dim, {lo, hi}, dim == 2 ? 1 : block_size, allow_negative};
      try {
        space.validate();
      } catch (const ParameterError& e) {
        throw UsageError(e.what());
      }
      if (dim == 2 && space.multiset_total() > max_work)
        throw BudgetExceeded(space.multiset_total(), max_work,
                             "range holds " + std::to_string(space.multiset_total()) +
                                 " multisets, more than --max-work " + std::to_string(max_work) +
                                 "; raise --max-work to at least that to run it");

      SearchState state{space, 0, {}};
      if (!checkpoint_path.empty() && std::filesystem::exists(checkpoint_path)) {
        SearchState loaded = load_checkpoint(checkpoint_path);
        if (loaded.space.id() != space.id())
          throw UsageError("checkpoint " + checkpoint_path + " is for " + loaded.space.id() + ", not " + space.id());
        state = std::move(loaded);
        state.space.allow_negative = allow_negative;
      }
      advance(state, budget, shards);
      if (!checkpoint_path.empty()) save_checkpoint(checkpoint_path, state, shards);

      std::size_t nontrivial = 0;
      for (const auto& r : state.records) {
        writer.write(to_json(r));
        if (dim == 3 && !r.trivial) ++nontrivial;
      }
      if (dim == 3 && nontrivial > 0)
        io.err << "NOTE: " << nontrivial << " nontrivial 3x3 multiset(s) with all-integer spectra found\n";
      if (!state.complete()) {
        io.err << "search incomplete: " << state.next_unit << "/" << state.space.unit_total() << " work units done";
        if (!checkpoint_path.empty()) io.err << "; resume with --checkpoint " << checkpoint_path;
        else io.err << "; no --checkpoint given, progress not saved";
        io.err << '\n';
        return kExitIncomplete;
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CheckpointError& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OverflowError& e) {
    io.err << "error: " << e.what() << " (inputs too large for exact 64-bit arithmetic)\n";
    return kExitUsage;
  } catch (const IntegralityError& e) {
    io.err << "error: integrality failure in entry " << e.entry() << ": " << e.what() << '\n';
    return kExitConstraint;
  } catch (const BudgetExceeded& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitConstraint;
  } catch (const std::exception& e) {
    // ParameterError, PreconditionError, ConstraintError from the families.
    io.err << "error: " << e.what() << '\n';
    return kExitConstraint;
  }
  return kExitUsage;
}

}  // namespace pythperm::cli
