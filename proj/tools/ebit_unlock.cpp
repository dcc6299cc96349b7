// ebit-unlock: analyze / sample / search / verify for pure-state
// entanglement-unlocking sources.
//
// Exit codes: 0 success, 1 invariant or verification failure, 2 usage or
// input error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ebit/ensemble.hpp"
#include "ebit/measures.hpp"
#include "ebit/sampling.hpp"
#include "ebit/search.hpp"

namespace {

using nlohmann::json;

// 12 significant digits, lowercase exponent; values are rounded through the
// rendered text so the JSON layer prints the same short form.
std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double rounded(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

json number_or_undefined(const ebit::RateBound& r) {
  if (!r) return json("undefined");
  return json(rounded(*r));
}

json manifest_json(const std::string& command, const json& config,
                   std::uint64_t seed, std::int64_t wall_ms) {
  json m;
  m["command"] = command;
  m["configEcho"] = config;
  m["seed"] = seed;
  m["toolVersion"] = EBIT_UNLOCK_VERSION;
  m["wallTimeMs"] = wall_ms;
  return m;
}

json report_json(const ebit::EnsembleReport& r) {
  json doc;
  doc["S_A"] = rounded(r.s_a);
  doc["S_B"] = rounded(r.s_b);
  doc["S_AB"] = rounded(r.s_ab);
  doc["H_labels"] = rounded(r.h_labels);
  doc["E_source"] = rounded(r.e_source);
  doc["concavity_upper"] = rounded(r.concavity_upper);
  doc["hashing_AtoB"] = rounded(r.hashing.a_to_b);
  doc["hashing_BtoA"] = rounded(r.hashing.b_to_a);
  doc["hashing_max"] = rounded(r.hashing.max);
  doc["hashing_max_floored"] = rounded(r.hashing.floored_max);
  doc["gap_upper"] = rounded(r.gap_upper);
  doc["rate_bound"] = number_or_undefined(r.rate_bound);
  if (r.log_neg || r.eof || r.certified) {
    json diag;
    if (r.log_neg) diag["log_negativity"] = rounded(*r.log_neg);
    if (r.eof) diag["eof_two_qubit"] = rounded(*r.eof);
    if (r.certified) {
      switch (r.certified->status) {
        case ebit::RateInterval::Status::kValue:
          diag["certified_rate_interval"] = {rounded(r.certified->low),
                                             rounded(r.certified->high)};
          break;
        case ebit::RateInterval::Status::kUnavailable:
          diag["certified_rate_interval"] = "unavailable";
          break;
        case ebit::RateInterval::Status::kUndefined:
          diag["certified_rate_interval"] = "undefined";
          break;
      }
    }
    doc["diagnostics"] = std::move(diag);
  }
  return doc;
}

const char* kReportCsvHeader =
    "S_A,S_B,S_AB,H,E_source,concavity_upper,hashing_max,gap_upper,rate_bound";

std::string report_csv_row(const ebit::EnsembleReport& r) {
  std::ostringstream out;
  out << format_number(r.s_a) << ',' << format_number(r.s_b) << ','
      << format_number(r.s_ab) << ',' << format_number(r.h_labels) << ','
      << format_number(r.e_source) << ',' << format_number(r.concavity_upper)
      << ',' << format_number(r.hashing.max) << ','
      << format_number(r.gap_upper) << ',';
  if (r.rate_bound)
    out << format_number(*r.rate_bound);
  else
    out << "undefined";
  return out.str();
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

int run_analyze(const std::string& path, const std::string& format,
                const std::vector<std::string>& diagnostics) {
  Timer timer;
  ebit::Diagnostics diag;
  for (const auto& d : diagnostics) {
    if (d == "logneg")
      diag.log_negativity = true;
    else if (d == "eof")
      diag.eof = true;
    else {
      std::cerr << "unknown diagnostic: " << d << "\n";
      return 2;
    }
  }

  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  ebit::PureEnsemble ens;
  ebit::EnsembleReport report;
  try {
    ens = ebit::parse_ensemble(buf.str());
    report = ebit::analyze(ens, diag);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  if (format == "csv") {
    std::cout << kReportCsvHeader << "\n" << report_csv_row(report) << "\n";
    return 0;
  }
  json config{{"path", path}, {"format", format}, {"diagnostics", diagnostics}};
  json doc;
  doc["manifest"] = manifest_json("analyze", config, 0, timer.elapsed_ms());
  doc["dims"] = {ens.dimA, ens.dimB};
  doc["report"] = report_json(report);
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int run_sample(int dimA, int dimB, int numStates, int trials,
               std::uint64_t seed, const std::string& format, bool summary) {
  Timer timer;
  ebit::SampleConfig cfg{dimA, dimB, numStates, trials, seed};
  const auto records = ebit::sweep(cfg);

  int violated = 0;
  if (format == "csv") {
    std::cout << "seed,trial," << kReportCsvHeader << ",violations\n";
    for (const auto& rec : records) {
      std::cout << seed << ',' << rec.trial << ','
                << report_csv_row(rec.report) << ',';
      for (std::size_t i = 0; i < rec.violations.size(); ++i) {
        if (i) std::cout << ';';
        std::cout << rec.violations[i];
      }
      std::cout << "\n";
      if (!rec.violations.empty()) ++violated;
    }
  } else {
    std::cerr << "unknown format: " << format << "\n";
    return 2;
  }

  if (summary) {
    json config{{"dimA", dimA},     {"dimB", dimB},   {"numStates", numStates},
                {"trials", trials}, {"format", format}};
    json doc;
    doc["manifest"] = manifest_json("sample", config, seed, timer.elapsed_ms());
    doc["trials"] = trials;
    doc["violations"] = violated;
    std::cout << doc.dump(2) << "\n";
  }
  return violated == 0 ? 0 : 1;
}

std::optional<ebit::Objective> parse_objective(const std::string& name) {
  if (name == "rate-bound") return ebit::Objective::kRateBound;
  if (name == "gap-upper") return ebit::Objective::kGapUpper;
  if (name == "certified-low") return ebit::Objective::kCertifiedLow;
  if (name == "min-rate-bound") return ebit::Objective::kNegativeRateBound;
  return std::nullopt;
}

int run_search(const std::string& objectiveName, int dimA, int dimB,
               int numStates, int budget, std::uint64_t seed,
               const std::string& emitPath) {
  Timer timer;
  const auto objective = parse_objective(objectiveName);
  if (!objective) {
    std::cerr << "invalid objective: " << objectiveName << "\n";
    return 2;
  }

  const ebit::SearchResult result =
      ebit::search(*objective, dimA, dimB, numStates, budget, seed);

  if (!emitPath.empty()) {
    std::ofstream out(emitPath);
    if (!out) {
      std::cerr << "cannot write " << emitPath << "\n";
      return 2;
    }
    out << ebit::serialize_ensemble(result.bestEnsemble);
  }

  json config{{"objective", objectiveName}, {"dimA", dimA},
              {"dimB", dimB},               {"numStates", numStates},
              {"budget", budget},           {"emitEnsemble", emitPath}};
  json doc;
  doc["manifest"] = manifest_json("search", config, seed, timer.elapsed_ms());
  doc["objective"] = objectiveName;
  doc["bestObjective"] = rounded(result.bestObjective);
  doc["evaluations"] = result.evaluations;
  doc["seed"] = result.seed;
  json trace = json::array();
  for (const auto& [idx, value] : result.trace)
    trace.push_back({idx, rounded(value)});
  doc["trace"] = std::move(trace);
  doc["bestEnsemble"] = json::parse(ebit::serialize_ensemble(result.bestEnsemble));
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int run_verify(int trials, std::uint64_t seed, int maxDim, int multicopyN,
               const std::string& injectFault) {
  Timer timer;
  struct Counter {
    const char* name;
    long passed = 0;
  };
  std::vector<Counter> counters{{"mixing_sandwich"}, {"concavity_bound"},
                                {"chain_identity"},  {"rate_bound_range"},
                                {"araki_lieb"},      {"certified_interval_order"}};
  long additivity_passed = 0, additivity_run = 0;

  ebit::Rng dims_rng(seed, 0xD1A1ULL);
  for (int trial = 0; trial < trials; ++trial) {
    const int dimA = dims_rng.uniform_int(2, maxDim);
    const int dimB = dims_rng.uniform_int(2, maxDim);
    const int numStates = dims_rng.uniform_int(1, 6);

    ebit::Rng rng(seed, static_cast<std::uint64_t>(trial));
    const ebit::PureEnsemble ens =
        ebit::random_ensemble(dimA, dimB, numStates, rng);

    ebit::EnsembleReport r;
    const ebit::Density rho = ebit::average_state(ens);
    r.s_ab = ebit::von_neumann_entropy(rho);
    r.s_a = ebit::von_neumann_entropy(
        ebit::partial_trace(rho, dimA, dimB, ebit::Subsystem::A));
    r.s_b = ebit::von_neumann_entropy(
        ebit::partial_trace(rho, dimA, dimB, ebit::Subsystem::B));
    std::vector<double> probs;
    for (const auto& e : ens.entries) probs.push_back(e.prob);
    r.h_labels = ebit::shannon_entropy(probs);
    r.e_source = ebit::source_entanglement(ens);
    r.concavity_upper = std::min(r.s_a, r.s_b);
    r.hashing = ebit::hashing_lower_bound(rho, dimA, dimB);
    r.gap_upper = r.s_ab - std::abs(r.s_a - r.s_b);
    r.rate_bound = ebit::theorem_rate_bound(ens);
    if (dimA == 2 && dimB == 2) r.certified = ebit::certified_rate_interval(ens);

    auto violations = ebit::check_report(r);
    if (!injectFault.empty() && trial == 0) violations.push_back(injectFault);

    for (auto& c : counters) {
      const bool failed = std::find(violations.begin(), violations.end(),
                                    c.name) != violations.end();
      if (failed) {
        std::cout << "FAIL seed=" << seed << " trial=" << trial
                  << " invariant=" << c.name << " S_A=" << format_number(r.s_a)
                  << " S_B=" << format_number(r.s_b)
                  << " S_AB=" << format_number(r.s_ab)
                  << " H=" << format_number(r.h_labels)
                  << " E_source=" << format_number(r.e_source) << "\n";
        return 1;
      }
      ++c.passed;
    }

    // Additivity spot checks on the first few (2,2) ensembles.
    if (multicopyN >= 2 && additivity_run < 20 && dimA == 2 && dimB == 2 &&
        numStates <= 4) {
      try {
        const auto rep = ebit::additivity_check(ens, multicopyN);
        ++additivity_run;
        if (!rep.passed) {
          std::cout << "FAIL seed=" << seed << " trial=" << trial
                    << " invariant=additivity pair="
                    << format_number(rep.pair_error)
                    << " entropy=" << format_number(rep.entropy_error)
                    << " source=" << format_number(rep.source_error) << "\n";
          return 1;
        }
        ++additivity_passed;
      } catch (const std::invalid_argument&) {
        // over cap for this ensemble size; skip
      }
    }
  }

  for (const auto& c : counters)
    std::cout << "PASS " << c.name << " " << c.passed << "/" << trials << "\n";
  if (multicopyN >= 2)
    std::cout << "PASS additivity " << additivity_passed << "/"
              << additivity_run << "\n";
  std::cout << "verified " << trials << " trials in " << timer.elapsed_ms()
            << " ms\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement unlocking-rate bounds for pure-state sources"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  // analyze
  std::string ensemblePath, analyzeFormat = "json";
  std::vector<std::string> diagnostics;
  auto* analyze = app.add_subcommand("analyze", "Analyze one ensemble file");
  analyze->add_option("path", ensemblePath, "Ensemble JSON file")->required();
  analyze->add_option("--format", analyzeFormat, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  analyze->add_option("--diagnostics", diagnostics,
                      "Extra diagnostics: logneg, eof");

  // sample
  int dimA = 2, dimB = 2, numStates = 2, trials = 1;
  std::uint64_t seed = 0;
  bool haveSeed = false, summary = false;
  std::string sampleFormat = "csv";
  auto* sample = app.add_subcommand("sample", "Seeded random-ensemble sweep");
  sample->add_option("--dimA", dimA)->check(CLI::PositiveNumber);
  sample->add_option("--dimB", dimB)->check(CLI::PositiveNumber);
  sample->add_option("--num-states", numStates)->check(CLI::PositiveNumber);
  sample->add_option("--trials", trials)->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed)->required();
  sample->add_option("--format", sampleFormat);
  sample->add_flag("--summary", summary, "Append a JSON summary footer");

  // search
  std::string objectiveName, emitPath;
  int budget = 1000;
  auto* search = app.add_subcommand("search", "Derivative-free extremal search");
  search->add_option("--objective", objectiveName,
                     "rate-bound, gap-upper, certified-low, min-rate-bound")
      ->required();
  search->add_option("--dimA", dimA)->check(CLI::PositiveNumber);
  search->add_option("--dimB", dimB)->check(CLI::PositiveNumber);
  search->add_option("--num-states", numStates)->check(CLI::PositiveNumber);
  search->add_option("--budget", budget)->check(CLI::PositiveNumber);
  search->add_option("--seed", seed)->required();
  search->add_option("--emit-ensemble", emitPath,
                     "Write the best ensemble to this file");

  // verify
  int maxDim = 4, multicopyN = 0;
  std::string injectFault;
  auto* verify = app.add_subcommand("verify", "Run the full invariant suite");
  verify->add_option("--trials", trials)->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed)->required();
  verify->add_option("--max-dim", maxDim)->check(CLI::Range(2, 8));
  verify->add_option("--multicopy-N", multicopyN)->check(CLI::Range(0, 3));
  verify->add_option("--inject-fault", injectFault)->group("");  // test hook

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(analyze))
      return run_analyze(ensemblePath, analyzeFormat, diagnostics);
    if (app.got_subcommand(sample))
      return run_sample(dimA, dimB, numStates, trials, seed, sampleFormat,
                        summary);
    if (app.got_subcommand(search))
      return run_search(objectiveName, dimA, dimB, numStates, budget, seed,
                        emitPath);
    if (app.got_subcommand(verify))
      return run_verify(trials, seed, maxDim, multicopyN, injectFault);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 2;
}
