#pragma once

// Seeded trial batches and their JSON reports.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hslab/rng.hpp"
#include "hslab/stats.hpp"

namespace hslab {

struct TrialOutcome {
  bool success = false;
  std::uint64_t queries = 0;
  nlohmann::json detail = nlohmann::json::object();
};

struct TrialReport {
  std::string name;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t queries = 0;
  double wall_ms = 0;
  std::vector<TrialOutcome> outcomes;

  double rate() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }

  nlohmann::json summary() const {
    const auto ci = stats::clopper_pearson(successes, trials);
    return {{"name", name},
            {"trials", trials},
            {"successes", successes},
            {"success_rate", rate()},
            {"ci95", {ci.lo, ci.hi}},
            {"queries", queries},
            {"mean_queries", trials ? static_cast<double>(queries) / static_cast<double>(trials) : 0.0},
            {"wall_ms", wall_ms}};
  }
};

// Runs trial(i, seed_i) for i in [0, trials) with seed_i = derive_seed(seed, name, i).
// Outcomes are stored by index, so the report does not depend on `threads`.
inline TrialReport run_trials(const std::string& name, std::uint64_t trials, std::uint64_t seed,
                              const std::function<TrialOutcome(std::uint64_t, std::uint64_t)>& trial,
                              unsigned threads = 1) {
  TrialReport rep;
  rep.name = name;
  rep.trials = trials;
  rep.outcomes.resize(trials);
  const auto t0 = std::chrono::steady_clock::now();
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::uint64_t i; (i = next.fetch_add(1)) < trials;) {
      try {
        rep.outcomes[i] = trial(i, derive_seed(seed, name, i));
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = trials;
      }
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  for (const auto& o : rep.outcomes) {
    rep.successes += o.success;
    rep.queries += o.queries;
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace hslab
