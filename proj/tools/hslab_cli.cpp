// hslab_cli: groups, ciphers, attacks and reductions from the command line.
// Machine output is JSON lines (stdout or --output); human notes go to stderr.

#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>

#include "cli_support.hpp"

using namespace hslab;
using namespace hslab::cli;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------- group

template <FiniteGroup G>
int group_selftest(const RunConfig& cfg, const G& g, std::uint64_t samples) {
  Rng rng(derive_seed(cfg.seed, "selftest"));
  std::map<std::string, std::uint64_t> failures;
  auto fail_if = [&](bool bad, const char* what) {
    if (bad) ++failures[what];
  };
  const bool ranked = has_u64_order(g);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto a = g.sample(rng), b = g.sample(rng), c = g.sample(rng);
    fail_if(!g.contains(a), "sample_membership");
    fail_if(!(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))), "associativity");
    fail_if(!(g.mul(a, g.identity()) == a) || !(g.mul(g.identity(), a) == a), "identity");
    fail_if(!(g.mul(a, g.inv(a)) == g.identity()) || !(g.mul(g.inv(a), a) == g.identity()), "inverse");
    fail_if(!(g.decode(g.encode(a)) == a), "codec");
    fail_if(g.encode(a).width() != g.element_bits(), "codec_width");
    if (ranked) fail_if(!(g.unrank(g.rank(a)) == a), "rank");
  }
  std::uint64_t exhaustive = 0;
  if (ranked && order_u64(g) <= 10000) {
    std::set<std::string> codewords;
    for (std::uint64_t r = 0; r < order_u64(g); ++r) {
      const auto x = g.unrank(r);
      fail_if(g.rank(x) != r, "rank_exhaustive");
      fail_if(!(g.decode(g.encode(x)) == x), "codec_exhaustive");
      codewords.insert(g.encode(x).to_hex());
    }
    fail_if(codewords.size() != order_u64(g), "codec_injective");
    exhaustive = order_u64(g);
  }
  const bool ok = failures.empty();
  if (!cfg.quiet) std::cerr << g.descriptor() << " selftest: " << (ok ? "pass" : "FAIL") << "\n";
  return emit_result(cfg,
                     {{"group", g.descriptor()},
                      {"order", g.order().str()},
                      {"samples", samples},
                      {"exhaustive_elements", exhaustive},
                      {"checks", ok ? "pass" : "fail"},
                      {"failures", failures}},
                     ok);
}

template <FiniteGroup G>
int group_bench(const RunConfig& cfg, const G& g, std::uint64_t iters) {
  Rng rng(derive_seed(cfg.seed, "bench"));
  std::vector<element_t<G>> pool;
  for (int i = 0; i < 1024; ++i) pool.push_back(g.sample(rng));
  std::uint64_t checksum = 0;  // printed, so the loops are not optimized away
  auto timed = [&](auto&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    for (std::uint64_t i = 0; i < iters; ++i) checksum += body(i);
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sec > 0 ? static_cast<double>(iters) / sec : 0.0;
  };
  auto acc = pool[0];
  json rates;
  rates["mul"] = timed([&](std::uint64_t i) {
    acc = g.mul(acc, pool[i & 1023]);
    return static_cast<std::uint64_t>(acc == pool[0]);
  });
  rates["inv"] = timed([&](std::uint64_t i) {
    pool[i & 1023] = g.inv(pool[i & 1023]);
    return std::uint64_t{1};
  });
  rates["sample"] = timed([&](std::uint64_t) {
    acc = g.sample(rng);
    return std::uint64_t{1};
  });
  rates["encode_decode"] = timed([&](std::uint64_t i) {
    pool[i & 1023] = g.decode(g.encode(pool[i & 1023]));
    return std::uint64_t{1};
  });
  if (!cfg.quiet) {
    std::cerr << "ops/sec on " << g.descriptor() << ":\n";
    for (auto it = rates.begin(); it != rates.end(); ++it) std::cerr << "  " << it.key() << "\t" << it->dump() << "\n";
  }
  return emit_result(cfg, {{"group", g.descriptor()}, {"iters", iters}, {"ops_per_sec", rates}, {"checksum", checksum}});
}

// ---------------------------------------------------------------- ciphers

template <class G>
constexpr bool word_group_v = std::is_same_v<G, XorGroup> || std::is_same_v<G, CyclicPow2Group>;

int encrypt_cmd(const RunConfig& cfg, const std::string& scheme, const std::string& message, bool decrypt,
                std::uint64_t rounds) {
  return visit_group(cfg.group, [&](const auto& g) -> int {
    using G = std::decay_t<decltype(g)>;
    const std::uint64_t key_seed = derive_seed(cfg.seed, "cli-key");
    if (scheme == "em") {
      const auto p = random_permutation(g, derive_seed(key_seed, "em-p"));
      const auto key = em_keygen(g, key_seed);
      const auto m = parse_element(g, message);
      const auto out = decrypt ? em_dec(g, p, key, m) : em_enc(g, p, key, m);
      return emit_result(cfg, {{"scheme", "em"},
                               {"mode", decrypt ? "decrypt" : "encrypt"},
                               {"input", g.encode(m).to_hex()},
                               {"output", g.encode(out).to_hex()},
                               {"output_text", g.format(out)},
                               {"key", {g.format(key.k1), g.format(key.k2)}}});
    }
    if constexpr (word_group_v<G>) {
      if (scheme == "feistel") {
        const auto spec = feistel_keygen(g, key_seed);
        const auto F = feistel_oracle(spec);
        const XorGroup words(2 * g.bits());
        const auto w = parse_element(words, message);
        const auto out = decrypt ? F.inverse(w) : F(w);
        return emit_result(cfg, {{"scheme", "feistel"},
                                 {"mode", decrypt ? "decrypt" : "encrypt"},
                                 {"input", words.encode(w).to_hex()},
                                 {"output", words.encode(out).to_hex()}});
      }
      if (scheme == "slide") {
        Rng rng(key_seed);
        const SlideSpec<G> spec(g, random_permutation(g, derive_seed(key_seed, "slide-r")), g.sample(rng), rounds);
        const auto x = parse_element(g, message);
        const auto out = decrypt ? slide_dec(spec, x) : slide_enc(spec, x);
        return emit_result(cfg, {{"scheme", "slide"},
                                 {"mode", decrypt ? "decrypt" : "encrypt"},
                                 {"rounds", rounds},
                                 {"input", g.encode(x).to_hex()},
                                 {"output", g.encode(out).to_hex()},
                                 {"key", g.format(spec.key())}});
      }
    }
    throw UsageError("scheme '" + scheme + "' is not available on " + g.descriptor() +
                     " (em: any group; feistel, slide: xor:<n> or z2n:<n>)");
  });
}

int mac_cmd(const RunConfig& cfg, const std::vector<std::string>& blocks) {
  return visit_group(cfg.group, [&](const auto& g) -> int {
    using E = element_t<std::decay_t<decltype(g)>>;
    std::vector<E> m;
    for (const auto& b : blocks) m.push_back(parse_element(g, b));
    const auto key = mac_keygen(derive_seed(cfg.seed, "cli-key"));
    const auto tag = cbc_mac(g, key, m);
    return emit_result(cfg, {{"scheme", "cbc-mac"},
                             {"blocks", m.size()},
                             {"tag", g.encode(tag).to_hex()},
                             {"tag_text", g.format(tag)}});
  });
}

// ---------------------------------------------------------------- attacks

int simon_cmd(const RunConfig& cfg, const std::string& which, SchemeDomain dom, unsigned n, std::uint64_t rounds,
              bool random_cipher) {
  const std::string name = "attack-" + which;
  const auto rep = run_trials(
      name, cfg.trials, cfg.seed,
      [&](std::uint64_t, std::uint64_t s) {
        if (which == "simon-em") return em_simon_trial(dom, n, s);
        if (which == "simon-cbc") return cbc_simon_trial(dom, n, s);
        if (which == "simon-feistel") return feistel_simon_trial(dom, n, !random_cipher, s);
        return slide_simon_trial(dom, n, rounds, s);
      },
      cfg.threads);
  std::uint64_t accepted = 0, quantum = 0;
  for (const auto& o : rep.outcomes) {
    accepted += o.detail.at("accepted").get<bool>();
    quantum += o.detail.at("quantum_queries").get<std::uint64_t>();
  }
  return emit_report(cfg, rep,
                     {{"accepted", accepted},
                      {"accept_rate", cfg.trials ? static_cast<double>(accepted) / static_cast<double>(cfg.trials) : 0.0},
                      {"quantum_queries", quantum}});
}

int kuperberg_cmd(const RunConfig& cfg, unsigned n, std::uint64_t budget, bool scaling) {
  if (scaling) {
    const auto fit = kuperberg_scaling(6, n, cfg.trials, cfg.seed, cfg.threads);
    return emit_result(cfg, fit.to_json(), fit.subexponential_wins());
  }
  const auto rep = run_trials(
      "attack-kuperberg", cfg.trials, cfg.seed, [&](std::uint64_t, std::uint64_t s) { return kuperberg_trial(n, budget, s); },
      cfg.threads);
  return emit_report(cfg, rep, {{"n", n}, {"budget", budget}});
}

int brute_cmd(const RunConfig& cfg, Variant variant, unsigned ell, std::uint64_t samples) {
  if (variant == Variant::APPROX || variant == Variant::RHSP)
    throw UsageError("solve brute handles hs, rhs and drhs instances");
  return visit_group(cfg.group, [&](const auto& g) -> int {
    using G = std::decay_t<decltype(g)>;
    const auto rep = run_trials(
        "solve-brute", cfg.trials, cfg.seed,
        [&](std::uint64_t, std::uint64_t s) {
          const auto inst = gen_instance(variant, g, ell, s);
          Rng rng(derive_seed(s, "brute"));
          TrialOutcome out;
          if (variant == Variant::DRHS) {
            const bool verdict = brute_force_drhs(inst, rng, samples);
            out.success = verdict == inst.open_is_shifted();
            out.detail = {{"verdict", verdict ? "shifted" : "independent"}};
          } else {
            BruteForceOptions<G> opt;
            opt.samples = samples;
            const auto found = brute_force_hs(inst, rng, opt);
            out.success = found.size() == 1 && found[0] == inst.open_shift();
            out.detail = {{"candidates", found.size()}};
            if (found.size() == 1) out.detail["shift"] = g.format(found[0]);
          }
          out.queries = inst.f().queries() + inst.g().queries();
          return out;
        },
        cfg.threads);
    return emit_report(cfg, rep);
  });
}

// ---------------------------------------------------------------- reductions

struct ReduceOptions {
  unsigned ell = 40;
  std::string decider = "brute";
  double noise = 0.05;
  std::string solver = "brute";
  std::uint64_t check = 0;
  unsigned percent = 10;
  std::uint64_t rounds = 100;
  std::string distinguisher = "brute";
  std::string adversary = "brute";
  std::size_t max_blocks = 4;
  std::string kind = "wreath";
  std::uint64_t n = 12, m = 96, margin = 4;
};

template <FiniteGroup G>
RhsSolver<G> pick_solver(const ReduceOptions& o) {
  if (o.solver == "brute") return brute_force_rhs_solver<G>();
  if (o.solver == "guess") return guessing_solver<G>();
  throw UsageError("solver must be brute or guess");
}

int rhs_from_drhs_cmd(const RunConfig& cfg, const ReduceOptions& o) {
  return visit_group(cfg.group, [&](const auto& g) -> int {
    using G = std::decay_t<decltype(g)>;
    if constexpr (!has_tower_v<G>) {
      throw UnsupportedError("rhs-from-drhs needs a subgroup tower: use z2n:<n> or sym:<n>");
    } else {
      const SubgroupTower<G> tower(g);
      DrhsDecider<G> decider = brute_force_decider<G>();
      if (o.decider == "noisy") decider = noisy_decider(decider, o.noise);
      else if (o.decider != "brute") throw UsageError("decider must be brute or noisy");
      const auto rep = run_trials(
          "reduce-rhs-from-drhs", cfg.trials, cfg.seed,
          [&](std::uint64_t, std::uint64_t s) {
            const auto inst = gen_instance(Variant::RHS, g, o.ell, s);
            Rng rng(derive_seed(s, "search"));
            const auto r = search_via_tower(decider, tower, inst.f(), inst.g(), rng);
            TrialOutcome out;
            out.success = r.shift && *r.shift == inst.open_shift();
            out.queries = inst.f().queries() + inst.g().queries();
            out.detail = {{"decider_calls", r.decider_calls}, {"reruns", r.reruns}, {"levels", r.levels_decided}};
            if (!r.failure.empty()) out.detail["failure"] = r.failure;
            return out;
          },
          cfg.threads);
      const double bound = tower_error_bound(tower, decider.completeness_error, decider.soundness_error);
      return emit_report(cfg, rep,
                         {{"error_bound", bound},
                          {"failure_rate", 1.0 - rep.rate()},
                          {"within_bound", 1.0 - rep.rate() <= bound}});
    }
  });
}

int drhs_from_rhs_cmd(const RunConfig& cfg, const ReduceOptions& o) {
  return visit_group(cfg.group, [&](const auto& g) -> int {
    using G = std::decay_t<decltype(g)>;
    const std::uint64_t check = o.check ? o.check : default_check_samples(order_u64(g));
    const auto decider = drhs_from_rhs(pick_solver<G>(o), check);
    const auto rep = run_trials(
        "reduce-drhs-from-rhs", cfg.trials, cfg.seed,
        [&](std::uint64_t, std::uint64_t s) {
          const auto inst = gen_instance(Variant::DRHS, g, o.ell, s);
          Rng rng(derive_seed(s, "decide"));
          const bool verdict = decider.run(SubgroupView<G>(g), inst.f(), inst.g(), rng);
          const bool truth = inst.open_is_shifted();
          return TrialOutcome{verdict == truth, inst.f().queries() + inst.g().queries(),
                              {{"verdict", verdict ? "shifted" : "independent"}, {"truth", truth ? "shifted" : "independent"}}};
        },
        cfg.threads);
    return emit_report(cfg, rep, {{"check_samples", check}, {"degenerate", decider.degenerate}});
  });
}

int amplify_cmd(const RunConfig& cfg, const ReduceOptions& o) {
  return visit_group(cfg.group, [&](const auto& g) -> int {
    using G = std::decay_t<decltype(g)>;
    const std::uint64_t order = order_u64(g);
    const std::uint64_t check = o.check ? o.check : default_check_samples(order);
    const auto weak = filtered_solver(tabulating_rhs_solver<G>(order), o.percent, derive_seed(cfg.seed, "weak-filter"));
    const auto strong = amplify_rhs(weak, o.rounds, check);
    const auto rep = run_trials(
        "reduce-amplify", cfg.trials, cfg.seed,
        [&](std::uint64_t, std::uint64_t s) {
          const auto inst = gen_instance(Variant::RHS, g, o.ell, s);
          Rng rng(derive_seed(s, "amplify"));
          const auto r = strong.run(SubgroupView<G>(g), inst.f(), inst.g(), rng);
          return TrialOutcome{r && *r == inst.open_shift(), inst.f().queries() + inst.g().queries(), {{"found", r.has_value()}}};
        },
        cfg.threads);
    return emit_report(cfg, rep, {{"weak_success_percent", o.percent}, {"rounds", o.rounds}, {"check_samples", check}});
  });
}

int emd_cmd(const RunConfig& cfg, const ReduceOptions& o) {
  return visit_group(cfg.group, [&](const auto& g) -> int {
    using G = std::decay_t<decltype(g)>;
    EmdDistinguisher<G> dist;
    if (o.distinguisher == "brute") dist = brute_force_emd<G>();
    else if (o.distinguisher == "coin") dist = coin_flip_emd<G>();
    else throw UsageError("distinguisher must be brute or coin");
    const auto decider = emd_from_drhs(dist);
    const auto rep = run_trials(
        "reduce-emd", cfg.trials, cfg.seed,
        [&](std::uint64_t, std::uint64_t s) {
          const auto inst = gen_instance(Variant::DRHS, g, o.ell, s);
          Rng rng(derive_seed(s, "emd"));
          const bool verdict = decider.run(SubgroupView<G>(g), inst.f(), inst.g(), rng);
          const bool truth = inst.open_is_shifted();
          return TrialOutcome{verdict == truth, inst.f().queries() + inst.g().queries(),
                              {{"verdict", verdict ? "cipher" : "random"}, {"truth", truth ? "shifted" : "independent"}}};
        },
        cfg.threads);
    return emit_report(cfg, rep, {{"distinguisher", dist.name}});
  });
}

int keyrec_cmd(const RunConfig& cfg, const ReduceOptions& o) {
  return visit_group(cfg.group, [&](const auto& g) -> int {
    using G = std::decay_t<decltype(g)>;
    if (o.adversary != "brute" && o.adversary != "whitebox") throw UsageError("adversary must be brute or whitebox");
    const auto rep = run_trials(
        "reduce-keyrec", cfg.trials, cfg.seed,
        [&](std::uint64_t, std::uint64_t s) {
          const auto inst = gen_instance(Variant::RHS, g, o.ell, s);
          KeyRecoveryResult<G> r;
          if (o.adversary == "brute") {
            r = hs_from_em_keyrecovery(brute_force_key_recoverer<G>(), inst, s);
          } else {
            // Knows the planted shift, so it can name the keys relative to P_g.
            const auto c = make_key_recovery_challenge(g, inst.f(), inst.g(), s);
            r = extract_shift_from_keys(c, keys_relative_to_shifted(c, inst.open_shift()));
          }
          TrialOutcome out;
          out.success = r.shift && *r.shift == inst.open_shift();
          out.queries = inst.f().queries() + inst.g().queries();
          out.detail = r.diagnostics;
          if (!r.failure.empty()) out.detail["failure"] = r.failure;
          return out;
        },
        cfg.threads);
    return emit_report(cfg, rep, {{"adversary", o.adversary}});
  });
}

int cbc_extract_cmd(const RunConfig& cfg, const ReduceOptions& o) {
  if (o.max_blocks < 1) throw UsageError("--max-blocks must be at least 1");
  return visit_group(cfg.group, [&](const auto& g) -> int {
    using G = std::decay_t<decltype(g)>;
    using Msg = std::vector<element_t<G>>;
    const auto rep = run_trials(
        "reduce-cbc-extract", cfg.trials, cfg.seed,
        [&](std::uint64_t, std::uint64_t s) {
          const auto inst = gen_instance(Variant::RHS, g, o.ell, s);
          const auto secret = inst.open_shift();
          // Collision source: only produces collisions at one hidden stage.
          const std::size_t hidden = 1 + Rng(derive_seed(s, "cbc-stage")).below(o.max_blocks);
          MacCollisionFinder<G> finder = [&](const InstrumentedMac<G>& mac, const auto&,
                                             Rng& rng) -> std::optional<std::pair<Msg, Msg>> {
            if (mac.stage() != hidden) return std::nullopt;
            return synthetic_mac_collision(mac, secret, rng);
          };
          const auto r = shift_from_mac_collisions(finder, g, inst.f(), inst.g(), o.max_blocks, s);
          return TrialOutcome{r.shift && *r.shift == secret, inst.f().queries() + inst.g().queries(),
                              {{"stage", r.stage}, {"hidden_stage", hidden}, {"finder_calls", r.finder_calls}}};
        },
        cfg.threads);
    return emit_report(cfg, rep, {{"max_blocks", o.max_blocks}});
  });
}

// Coset checks on a hidden subgroup instance given as an oracle and a
// generator h of order 2: phi(k) = phi(k h) always, phi(k) != phi(j) across cosets.
template <FiniteGroup K, class Phi>
json coset_checks(const K& grp, const Phi& phi, const element_t<K>& h, Rng& rng, std::uint64_t samples) {
  std::uint64_t same_bad = 0, cross_bad = 0, checked = 0;
  const bool exhaustive = has_u64_order(grp) && order_u64(grp) <= (1u << 12);
  if (exhaustive) {
    std::map<decltype(phi(h)), std::set<std::uint64_t>> classes;
    for (std::uint64_t r = 0; r < order_u64(grp); ++r) {
      const auto k = grp.unrank(r);
      same_bad += !(phi(k) == phi(grp.mul(k, h)));
      classes[phi(k)].insert(r);
    }
    for (const auto& [v, members] : classes) cross_bad += members.size() != 2;
    checked = order_u64(grp);
  } else {
    for (std::uint64_t i = 0; i < samples; ++i) {
      const auto k = grp.sample(rng), j = grp.sample(rng);
      same_bad += !(phi(k) == phi(grp.mul(k, h)));
      if (!(j == k) && !(j == grp.mul(k, h))) cross_bad += phi(k) == phi(j);
    }
    checked = samples;
  }
  return {{"exhaustive", exhaustive}, {"checked", checked}, {"constancy_violations", same_bad},
          {"distinctness_violations", cross_bad}};
}

int wreath_cmd(const RunConfig& cfg, const ReduceOptions& o) {
  return visit_group(cfg.group, [&](const auto& g) -> int {
    using G = std::decay_t<decltype(g)>;
    const auto rep = run_trials(
        "reduce-" + o.kind, cfg.trials, cfg.seed,
        [&](std::uint64_t, std::uint64_t s) {
          const auto inst = gen_instance(Variant::RHS, g, o.ell, s);
          Rng rng(derive_seed(s, "lift-check"));
          json d;
          if (o.kind == "wreath") {
            const auto w = wreath_lift(inst);
            d = coset_checks(w.group, w.phi, w.generator(inst.open_shift()), rng, 4096);
          } else if constexpr (std::is_same_v<G, XorGroup>) {
            const auto sh = inst.open_shift();
            if (o.kind == "xor-sum") {
              const auto lift = xor_sum_lift(inst);
              if (sh == 0) throw UsageError("xor-sum lift needs a nonzero shift");
              d = coset_checks(lift.group, lift.oracle, sh, rng, 4096);
            } else if (o.kind == "bit-prefix") {
              const auto lift = bit_prefix_lift(inst);
              d = coset_checks(lift.group, lift.oracle, (std::uint64_t{1} << g.bits()) | sh, rng, 4096);
            } else {
              throw UsageError("--kind must be wreath, xor-sum or bit-prefix");
            }
          } else {
            throw UsageError("--kind " + o.kind + " needs an xor:<n> group");
          }
          const bool ok = d["constancy_violations"] == 0 && d["distinctness_violations"] == 0;
          return TrialOutcome{ok, inst.f().queries() + inst.g().queries(), d};
        },
        cfg.threads);
    return emit_report(cfg, rep, {{"kind", o.kind}});
  });
}

int lift_cmd(const RunConfig& cfg, const ReduceOptions& o) {
  const CyclicGroup src(o.n);
  const auto rep = run_trials(
      "reduce-lift", cfg.trials, cfg.seed,
      [&](std::uint64_t, std::uint64_t s) {
        const auto inst = gen_instance(Variant::RHS, src, o.ell, s);
        const auto spec = cyclic_lift(inst, o.m, o.margin);
        // Solve the lifted instance by exhaustive agreement, then reduce.
        std::uint64_t best = 0, best_c = 0;
        for (std::uint64_t c = 0; c < o.m; ++c) {
          const auto a = lift_agreement(spec, c);
          if (a > best) best = a, best_c = c;
        }
        const auto s_true = inst.open_shift();
        const auto planted = lift_agreement(spec, s_true);
        const std::uint64_t recovered = unlift(best_c, o.n, o.m);
        return TrialOutcome{recovered == s_true, 0,
                            {{"shift", s_true},
                             {"lifted_candidate", best_c},
                             {"recovered", recovered},
                             {"agreement_at_shift", planted},
                             {"agreement_rate", static_cast<double>(planted) / static_cast<double>(o.m)}}};
      },
      cfg.threads);
  return emit_report(cfg, rep,
                     {{"n", o.n}, {"m", o.m}, {"rate_floor", 1.0 - static_cast<double>(o.n) / static_cast<double>(o.m)}});
}

// ---------------------------------------------------------------- wiring

void add_common(CLI::App* sub, RunConfig& cfg, bool needs_group, bool trials) {
  sub->add_option("--seed", cfg.seed, "64-bit seed (HSLAB_SEED overrides)");
  sub->add_option("--output,-o", cfg.output, "write JSON lines here instead of stdout");
  sub->add_flag("--quiet,-q", cfg.quiet, "no human-readable notes on stderr");
  if (needs_group) sub->add_option("--group,-g", cfg.group, "group descriptor, e.g. sym:5")->required();
  if (trials) {
    sub->add_option("--trials,-t", cfg.trials, "number of seeded trials")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 24));
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1u, 256u));
    sub->add_option("--min-success", cfg.min_success, "report failure below this success rate")->check(CLI::Range(0.0, 1.0));
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Hidden shift lab: groups, ciphers, attacks and reductions"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::function<int()> action;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, bool needs_group, bool trials,
                  std::function<int()> fn) {
    auto* sub = parent->add_subcommand(name, help);
    add_common(sub, cfg, needs_group, trials);
    const bool top = parent == &app;
    sub->callback([&cfg, &action, name, parent, top, fn] {
      cfg.command = top ? name : parent->get_name() + " " + name;
      action = fn;
    });
    return sub;
  };

  // group
  auto* group = app.add_subcommand("group", "group self-tests and timing")->require_subcommand(1);
  std::uint64_t samples = 10000;
  double iters = 1e6;
  leaf(group, "selftest", "group law and codec checks", true, false, [&] {
    cfg.params = {{"samples", samples}};
    return visit_group(cfg.group, [&](const auto& g) { return group_selftest(cfg, g, samples); });
  })->add_option("--samples", samples, "random triples to check");
  auto bench_fn = [&] {
    const auto n = static_cast<std::uint64_t>(iters);
    cfg.params = {{"iters", n}};
    return visit_group(cfg.group, [&](const auto& g) { return group_bench(cfg, g, n); });
  };
  leaf(group, "bench", "operations per second", true, false, bench_fn)->add_option("--iters", iters, "iterations per operation");
  auto* bench = app.add_subcommand("bench", "benchmark suites")->require_subcommand(1);
  leaf(bench, "group-ops", "operations per second", true, false, bench_fn)->add_option("--iters", iters, "iterations per operation");

  // encrypt / mac
  std::string scheme = "em", message;
  bool decrypt = false;
  std::uint64_t rounds = 7;
  auto* enc = leaf(&app, "encrypt", "encrypt one element (hex codeword)", true, false, [&] {
    cfg.params = {{"scheme", scheme}, {"message", message}, {"decrypt", decrypt}, {"rounds", rounds}};
    return encrypt_cmd(cfg, scheme, message, decrypt, rounds);
  });
  enc->add_option("--scheme", scheme, "em | feistel | slide")->check(CLI::IsMember({"em", "feistel", "slide"}));
  enc->add_option("--message,-m", message, "hex codeword (feistel: 2n-bit word)")->required();
  enc->add_flag("--decrypt,-d", decrypt, "run the inverse");
  enc->add_option("--rounds", rounds, "slide cipher rounds");
  std::vector<std::string> blocks;
  auto* mac = leaf(&app, "mac", "encrypted CBC-MAC of hex blocks", true, false, [&] {
    cfg.params = {{"blocks", blocks}};
    return mac_cmd(cfg, blocks);
  });
  mac->add_option("--blocks,-b", blocks, "hex codewords, comma separated")->required()->delimiter(',');

  // attack
  auto* attack = app.add_subcommand("attack", "Simon and Kuperberg simulations")->require_subcommand(1);
  unsigned n = 8;
  std::string domain = "xor";
  bool random_cipher = false, scaling = false;
  std::uint64_t budget = 1 << 14;
  for (const std::string which : {"simon-em", "simon-cbc", "simon-feistel", "slide"}) {
    auto* sub = leaf(attack, which, "XOR-period attack via exact Simon sampling", false, true, [&, which] {
      cfg.params = {{"n", n}, {"domain", domain}};
      if (which == "slide") cfg.params["rounds"] = rounds;
      if (which == "simon-feistel") cfg.params["cipher"] = random_cipher ? "random" : "feistel";
      return simon_cmd(cfg, which, parse_scheme_domain(domain), n, rounds, random_cipher);
    });
    sub->add_option("--n", n, "block width in bits")->check(CLI::Range(1u, kSimonMaxBits));
    sub->add_option("--domain", domain, "xor | z2n: the group the scheme is built over")->check(CLI::IsMember({"xor", "z2n"}));
    if (which == "slide") sub->add_option("--rounds", rounds, "cipher rounds");
    if (which == "simon-feistel") sub->add_flag("--random", random_cipher, "attack a random permutation instead");
  }
  auto* kup = leaf(attack, "kuperberg", "toy coset sieve on Z/2^n", false, true, [&] {
    cfg.params = {{"n", n}, {"budget", budget}, {"scaling", scaling}};
    return kuperberg_cmd(cfg, n, budget, scaling);
  });
  kup->add_option("--n", n, "bits (<= 16)");
  kup->add_option("--budget", budget, "coset samples (<= 2^24)");
  kup->add_flag("--scaling", scaling, "fit sample counts for n = 6..N instead");

  // solve
  auto* solve = app.add_subcommand("solve", "solvers used as oracles")->require_subcommand(1);
  std::string variant = "rhs";
  unsigned ell = 40;
  std::uint64_t bf_samples = 0;
  auto* brute = leaf(solve, "brute", "exhaustive shift search", true, true, [&] {
    cfg.params = {{"variant", variant}, {"ell", ell}, {"samples", bf_samples}};
    return brute_cmd(cfg, parse_variant(variant), ell, bf_samples);
  });
  brute->add_option("--variant", variant, "hs | rhs | drhs");
  brute->add_option("--ell", ell, "label width");
  brute->add_option("--samples", bf_samples, "check points per candidate (0: log2|G| + 20)");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "executable reductions")->require_subcommand(1);
  ReduceOptions ro;
  auto reduce_leaf = [&](const std::string& name, const std::string& help, bool needs_group, auto fn) {
    auto* sub = leaf(reduce, name, help, needs_group, true, [&, fn] {
      cfg.params = {{"ell", ro.ell}};
      return fn(cfg, ro);
    });
    sub->add_option("--ell", ro.ell, "label width");
    return sub;
  };
  auto* r1 = reduce_leaf("rhs-from-drhs", "search via the subgroup tower", true, rhs_from_drhs_cmd);
  r1->add_option("--decider", ro.decider, "brute | noisy");
  r1->add_option("--noise", ro.noise, "flip probability for the noisy decider")->check(CLI::Range(0.0, 1.0));
  auto* r2 = reduce_leaf("drhs-from-rhs", "decide by solving and checking", true, drhs_from_rhs_cmd);
  r2->add_option("--solver", ro.solver, "brute | guess");
  r2->add_option("--check", ro.check, "verification points (0: log2|G| + 20)");
  auto* r3 = reduce_leaf("amplify", "blind, rerun and verify a weak solver", true, amplify_cmd);
  r3->add_option("--percent", ro.percent, "weak solver success percentage")->check(CLI::Range(0u, 100u));
  r3->add_option("--rounds", ro.rounds, "blinded reruns");
  r3->add_option("--check", ro.check, "verification points (0: log2|G| + 20)");
  auto* r4 = reduce_leaf("emd", "decide via an Even-Mansour distinguisher", true, emd_cmd);
  r4->add_option("--distinguisher", ro.distinguisher, "brute | coin");
  auto* r5 = reduce_leaf("keyrec", "shift from Even-Mansour key recovery over G x G", true, keyrec_cmd);
  r5->add_option("--adversary", ro.adversary, "brute | whitebox");
  auto* r6 = reduce_leaf("cbc-extract", "shift from CBC-MAC collisions", true, cbc_extract_cmd);
  r6->add_option("--max-blocks", ro.max_blocks, "largest stage to guess");
  auto* r7 = reduce_leaf("wreath", "hidden subgroup lifts", true, wreath_cmd);
  r7->add_option("--kind", ro.kind, "wreath | xor-sum | bit-prefix");
  auto* r8 = reduce_leaf("lift", "embed Z/n into Z/m and reduce back", false, lift_cmd);
  r8->add_option("--n", ro.n, "source modulus")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 16));
  r8->add_option("--m", ro.m, "target modulus")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 20));
  r8->add_option("--margin", ro.margin, "required m / n ratio");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  apply_seed_env(cfg);
  return action();
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kFailure;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const DecodeError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
