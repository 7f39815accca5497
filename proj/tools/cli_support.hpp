#pragma once

// Run configuration, JSON-lines output and exit codes for hslab_cli.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <json.hpp>

#include "hslab/hslab.hpp"

namespace hslab::cli {

enum Exit : int { kOk = 0, kUsage = 2, kFailure = 3 };

struct RunConfig {
  std::string command;
  std::string group;
  std::uint64_t seed = 1;
  std::uint64_t trials = 1;
  unsigned threads = 1;
  std::string output;
  double min_success = 0;  // below this success rate the run reports failure
  bool quiet = false;
  nlohmann::json params = nlohmann::json::object();

  nlohmann::json to_json() const {
    nlohmann::json j = {{"command", command}, {"seed", seed},      {"trials", trials},
                        {"threads", threads}, {"params", params}, {"min_success", min_success}};
    if (!group.empty()) j["group"] = group;
    if (!output.empty()) j["output"] = output;
    return j;
  }
};

// HSLAB_SEED wins over --seed.
inline void apply_seed_env(RunConfig& cfg) {
  const char* env = std::getenv("HSLAB_SEED");
  if (!env || !*env) return;
  cfg.seed = detail::parse_u64(env, "HSLAB_SEED");
}

class Sink {
 public:
  explicit Sink(const RunConfig& cfg) {
    if (!cfg.output.empty()) {
      file_ = std::make_unique<std::ofstream>(cfg.output);
      if (!*file_) throw UsageError("cannot open output file '" + cfg.output + "'");
    }
  }

  void line(const nlohmann::json& j) {
    out() << j.dump() << '\n';
    out().flush();
  }

 private:
  std::ostream& out() { return file_ ? *file_ : std::cout; }
  std::unique_ptr<std::ofstream> file_;
};

// One line per trial (in index order), then the summary with the config.
inline int emit_report(const RunConfig& cfg, const TrialReport& rep, nlohmann::json extra = nlohmann::json::object()) {
  Sink sink(cfg);
  for (std::uint64_t i = 0; i < rep.outcomes.size(); ++i) {
    const auto& o = rep.outcomes[i];
    sink.line({{"type", "trial"},
               {"trial", i},
               {"seed", derive_seed(cfg.seed, rep.name, i)},
               {"success", o.success},
               {"queries", o.queries},
               {"detail", o.detail}});
  }
  auto summary = rep.summary();
  summary["type"] = "summary";
  summary["config"] = cfg.to_json();
  for (auto& [k, v] : extra.items()) summary[k] = v;
  const bool failed = rep.trials > 0 && (rep.successes == 0 || rep.rate() < cfg.min_success);
  summary["status"] = failed ? "failure" : "ok";
  sink.line(summary);
  if (!cfg.quiet)
    std::cerr << rep.name << ": " << rep.successes << "/" << rep.trials << " succeeded (rate " << rep.rate()
              << "), mean queries " << summary["mean_queries"].get<double>() << "\n";
  return failed ? kFailure : kOk;
}

// A single non-trial result line.
inline int emit_result(const RunConfig& cfg, nlohmann::json result, bool ok = true) {
  result["type"] = "summary";
  result["config"] = cfg.to_json();
  result["status"] = ok ? "ok" : "failure";
  Sink(cfg).line(result);
  return ok ? kOk : kFailure;
}

template <class Fn>
auto visit_group(const std::string& desc, Fn&& fn) {
  return std::visit(std::forward<Fn>(fn), parse_group(desc));
}

template <FiniteGroup G>
element_t<G> parse_element(const G& g, const std::string& hex) {
  return g.decode(BitString::from_hex(hex, g.element_bits()));
}

}  // namespace hslab::cli
