#include "rainbow/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "rainbow/cascade.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/io.hpp"
#include "rainbow/oracle.hpp"

namespace rainbow {

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-" || path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw input_error("cannot open output file: " + path);
  out << content;
}

struct GenOptions {
  std::string kind;
  int n = 0;
  std::uint64_t seed = 0;
  std::uint32_t p = 5;
  std::string out = "-";
};

int cmd_gen(const GenOptions& opt) {
  auto kind = kind_from_name(opt.kind);
  if (!kind)
    throw input_error("unknown kind \"" + opt.kind +
                      "\" (expected uniform-identical, linear-random or graphic-random)");
  Instance inst = generate_instance(*kind, opt.n, opt.seed, opt.p);
  InstanceMeta meta;
  meta.generator = opt.kind;
  meta.seed = opt.seed;
  if (*kind == InstanceKind::linear_random) meta.p = opt.p;
  write_output(opt.out, serialize_instance(inst, meta));
  return 0;
}

struct SolveOptions {
  std::string input = "-";
  std::string out = "-";
  std::string trace;
  SolverConfig cfg;
};

int cmd_solve(const SolveOptions& opt) {
  Instance inst = parse_instance(read_input(opt.input));
  SolverConfig cfg = opt.cfg;
  cfg.collect_trace = !opt.trace.empty();
  Decomposition dec = solve(inst, cfg);
  write_output(opt.out, serialize_decomposition(inst, cfg, dec));
  if (!opt.trace.empty()) write_output(opt.trace, trace_to_json_lines(dec));
  return 0;
}

int cmd_verify(const std::string& input) {
  SolveDocument doc = parse_decomposition(read_input(input));
  VerifyReport report = verify(doc.instance, doc.decomposition);
  if (report.ok()) {
    std::cout << "ok: k=" << doc.decomposition.k << " volume=" << doc.decomposition.volume
              << "\n";
    return 0;
  }
  for (const std::string& v : report.violations) std::cerr << "violation: " << v << "\n";
  return 1;
}

int cmd_oracle_exact(const std::string& input, int max_n) {
  Instance inst = parse_instance(read_input(input));
  oracle::OracleBudget budget;
  budget.max_decomposition_n = max_n;
  auto exact = oracle::exact_max_decomposition(inst, budget);
  Decomposition dec;
  dec.complete = exact.bases;
  dec.k = exact.k;
  dec.volume = exact.k * inst.n();
  std::cout << serialize_decomposition(inst, SolverConfig{}, dec);
  return 0;
}

int cmd_oracle_axioms(const std::string& input, int max_ground) {
  Instance inst = parse_instance(read_input(input));
  oracle::OracleBudget budget;
  budget.max_axiom_ground = max_ground;
  auto report = oracle::matroid_axiom_check(inst.matroid(), budget);
  if (report.ok()) {
    std::cout << "ok: all axioms hold on ground size " << inst.matroid().ground_size() << "\n";
    return 0;
  }
  for (const std::string& v : report.violations) std::cerr << "violation: " << v << "\n";
  return 1;
}

// ---- selftest ----------------------------------------------------------

struct Suite {
  std::string name;
  int passed = 0;
  int total = 0;
  void tally(bool ok) {
    ++total;
    passed += ok ? 1 : 0;
  }
};

Instance random_small_instance(Rng& rng, int n_cap, int n_min = 2) {
  const int n = n_min + static_cast<int>(rng.below(std::max(1, n_cap - n_min + 1)));
  const int which = static_cast<int>(rng.below(3));
  const std::uint64_t seed = rng.next();
  switch (which) {
    case 0: return generate_instance(InstanceKind::uniform_identical, n, seed);
    case 1: return generate_instance(InstanceKind::linear_random, n, seed);
    default: return generate_instance(InstanceKind::graphic_random, n, seed);
  }
}

// picks a member with a missing colour, and one of its missing colours
std::optional<std::pair<int, int>> pick_member_and_missing(const Family& fam, int n, Rng& rng,
                                                           bool nonempty) {
  std::vector<int> eligible;
  for (int i = 0; i < static_cast<int>(fam.members.size()); ++i) {
    if (fam.members[i].size() == n) continue;
    if (nonempty && fam.members[i].empty()) continue;
    eligible.push_back(i);
  }
  if (eligible.empty()) return std::nullopt;
  const int i = eligible[rng.below(eligible.size())];
  const auto missing = fam.members[i].missing_colours();
  return std::make_pair(i, missing[rng.below(missing.size())]);
}

int cmd_selftest(int n_cap, int trials, std::uint64_t seed) {
  Rng rng(seed);
  Suite addable{"addable-oracle-equivalence"};
  Suite dichotomy{"theorem-dichotomies"};
  Suite matching{"witness-injection"};
  Suite cascade{"cascade-execution"};

  for (int t = 0; t < trials; ++t) {
    Instance inst = random_small_instance(rng, std::min(n_cap, 6));
    const int n = inst.n();
    const int f = 1 + static_cast<int>(rng.below(std::max(1, n - 1)));
    Rng fam_rng(rng.next());
    Family fam = random_family(inst, fam_rng, f, static_cast<int>(rng.below(n * f + 1)));

    auto pick = pick_member_and_missing(fam, n, rng, false);
    if (!pick) continue;
    const auto [i, b] = *pick;
    const Ris& s = fam.members[i];

    // engine vs definition-level brute force, as target sets
    try {
      auto certs = enumerate_addable(inst, fam, s, b);
      std::vector<Coloured> targets;
      for (const auto& cert : certs) targets.push_back(cert.target);
      addable.tally(targets == oracle::brute_force_addable(inst, fam, s, b));
    } catch (const std::logic_error&) {
      addable.tally(false);
    }

    try {
      bool ok = true;
      if (!s.empty()) {
        auto res = many_good_dichotomy(inst, fam, s, b);  // asserts internally
        ok = res.free_addable.has_value() || !res.swappables.empty() ||
             static_cast<int>(used_set(fam, n).slice(b).size()) >= n;
      }
      if (f < n) (void)count_addable_or_augment(inst, fam, s, b);  // asserts internally
      dichotomy.tally(ok);
    } catch (const std::logic_error&) {
      dichotomy.tally(false);
    }

    try {
      auto inj = build_witness_injection(inst, s, b);
      bool ok = inj.size() == static_cast<std::size_t>(s.size());
      std::vector<ElementId> images;
      for (const auto& [from, to] : inj) {
        images.push_back(to);
        Ris rest = s;
        rest.remove_colour(from.c);
        auto proj = rest.project();
        IndependenceProbe probe = inst.matroid().probe(proj);
        ok = ok && probe.can_add(to);
      }
      std::sort(images.begin(), images.end());
      ok = ok && std::adjacent_find(images.begin(), images.end()) == images.end();
      matching.tally(ok);
    } catch (const std::logic_error&) {
      matching.tally(false);
    }

    try {
      auto picked = pick_member_and_missing(fam, n, rng, true);
      if (picked && fam.members[picked->first].size() < n) {
        auto q = initial_Q(inst, fam, picked->first);
        bool ok = true;
        if (!q.empty()) {
          const QEntry& entry = q[rng.below(q.size())];
          Family after = execute_cascade(inst, fam, entry.chain, std::nullopt);
          ok = volume(after) == volume(fam) && is_disjoint_family(after, n);
          Ris last = after.members[entry.chain.members.back()];
          last.add(entry.chain.target);
          ok = ok && valid_ris(inst, last);
        }
        cascade.tally(ok);
      }
    } catch (const std::logic_error&) {
      cascade.tally(false);
    }
  }

  bool all_ok = true;
  for (const Suite* suite : {&addable, &dichotomy, &matching, &cascade}) {
    std::cout << suite->name << ": " << suite->passed << "/" << suite->total << " passed\n";
    all_ok = all_ok && suite->passed == suite->total && suite->total > 0;
  }
  return all_ok ? 0 : 1;
}

// ---- bench -------------------------------------------------------------

struct BenchOptions {
  std::vector<std::string> kinds{"uniform-identical", "linear-random"};
  std::vector<int> sizes{10, 20, 40};
  int count = 3;
  std::uint64_t seed = 1;
  double epsilon = 0.2;
};

int cmd_bench(const BenchOptions& opt) {
  struct Job {
    std::string kind;
    int n;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const std::string& kind : opt.kinds)
    for (int n : opt.sizes)
      for (int i = 0; i < opt.count; ++i) jobs.push_back({kind, n, opt.seed + i});

  struct Row {
    Job job;
    int f = 0, k = 0, vol = 0;
    long rounds = 0;
    double ms = 0.0;
  };
  std::vector<std::future<Row>> futures;
  for (const Job& job : jobs) {
    futures.push_back(std::async(std::launch::async, [job, &opt]() {
      auto kind = kind_from_name(job.kind);
      if (!kind) throw input_error("unknown kind \"" + job.kind + "\"");
      Instance inst = generate_instance(*kind, job.n, job.seed);
      SolverConfig cfg;
      cfg.epsilon = opt.epsilon;
      cfg.seed = job.seed;
      const auto start = std::chrono::steady_clock::now();
      Decomposition dec = solve(inst, cfg);
      const auto stop = std::chrono::steady_clock::now();
      Row row{job,
              static_cast<int>(dec.complete.size() + dec.partial.size()),
              dec.k,
              dec.volume,
              dec.rounds,
              std::chrono::duration<double, std::milli>(stop - start).count()};
      return row;
    }));
  }
  std::cout << "kind               n   seed   f   k  volume  rounds      ms\n";
  char line[160];
  for (auto& fut : futures) {
    Row row = fut.get();
    std::snprintf(line, sizeof(line), "%-17s %3d %6llu %3d %3d %7d %7ld %9.1f\n",
                  row.job.kind.c_str(), row.job.n,
                  static_cast<unsigned long long>(row.job.seed), row.f, row.k, row.vol,
                  row.rounds, row.ms);
    std::cout << line;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& argv) {
  CLI::App app{"disjoint transversal basis solver for matroid basis systems"};
  app.require_subcommand(1);

  GenOptions gen_opt;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--kind", gen_opt.kind, "uniform-identical | linear-random | graphic-random")
      ->required();
  gen->add_option("--n", gen_opt.n, "rank / number of classes")->required();
  gen->add_option("--seed", gen_opt.seed, "rng seed");
  gen->add_option("--p", gen_opt.p, "prime modulus for linear-random");
  gen->add_option("--out", gen_opt.out, "output file (- for stdout)");

  SolveOptions solve_opt;
  std::string solve_mode = "hybrid";
  long solve_max_rounds = -1;
  int solve_f = -1;
  auto* sol = app.add_subcommand("solve", "grow disjoint transversal bases");
  sol->add_option("input", solve_opt.input, "instance file (- for stdin)");
  sol->add_option("--epsilon", solve_opt.cfg.epsilon, "slack parameter in (0,1)");
  sol->add_option("--f", solve_f, "number of family members (default floor((1-eps)n/2))");
  sol->add_option("--mode", solve_mode, "hybrid | greedy | proof-faithful");
  sol->add_option("--seed", solve_opt.cfg.seed, "rng seed");
  sol->add_option("--max-rounds", solve_max_rounds, "round budget (default 10*n*f)");
  sol->add_option("--l-max", solve_opt.cfg.l_max, "cascade length cap");
  sol->add_option("--restarts", solve_opt.cfg.restarts, "shuffled restarts on stalls");
  sol->add_option("--fallback-n", solve_opt.cfg.exhaustive_fallback_n,
                  "max n routed to the exact search");
  sol->add_option("--trace", solve_opt.trace, "write JSON-lines trace to this file");
  sol->add_option("--out", solve_opt.out, "output file (- for stdout)");

  std::string verify_input = "-";
  auto* ver = app.add_subcommand("verify", "check a decomposition file");
  ver->add_option("input", verify_input, "decomposition file (- for stdin)");

  auto* ora = app.add_subcommand("oracle", "definition-level brute force");
  ora->require_subcommand(1);
  std::string oracle_input = "-";
  int oracle_max_n = 4;
  auto* ora_exact = ora->add_subcommand("exact", "exact maximum decomposition (small n)");
  ora_exact->add_option("input", oracle_input, "instance file (- for stdin)");
  ora_exact->add_option("--max-n", oracle_max_n, "budget cap");
  std::string axioms_input = "-";
  int axioms_max_ground = 10;
  auto* ora_ax = ora->add_subcommand("axioms", "exhaustive matroid axiom check");
  ora_ax->add_option("input", axioms_input, "instance file (- for stdin)");
  ora_ax->add_option("--max-ground", axioms_max_ground, "budget cap");

  int st_n = 6, st_trials = 200;
  std::uint64_t st_seed = 1;
  auto* st = app.add_subcommand("selftest", "randomized engine-vs-oracle suites");
  st->add_option("--n", st_n, "max instance rank");
  st->add_option("--trials", st_trials, "trial count");
  st->add_option("--seed", st_seed, "rng seed");

  BenchOptions bench_opt;
  std::string bench_sizes = "10,20,40";
  auto* be = app.add_subcommand("bench", "seeded timing / quality table");
  be->add_option("--kind", bench_opt.kinds, "instance kinds");
  be->add_option("--sizes", bench_sizes, "comma-separated ranks");
  be->add_option("--count", bench_opt.count, "instances per (kind, n)");
  be->add_option("--seed", bench_opt.seed, "base seed");
  be->add_option("--epsilon", bench_opt.epsilon, "solver epsilon");

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_opt);
    if (sol->parsed()) {
      if (solve_f >= 0) solve_opt.cfg.f = solve_f;
      if (solve_max_rounds >= 0) solve_opt.cfg.max_rounds = solve_max_rounds;
      if (auto m = mode_from_name(solve_mode))
        solve_opt.cfg.mode = *m;
      else
        throw input_error("unknown mode \"" + solve_mode + "\"");
      return cmd_solve(solve_opt);
    }
    if (ver->parsed()) return cmd_verify(verify_input);
    if (ora->parsed()) {
      if (ora_exact->parsed()) return cmd_oracle_exact(oracle_input, oracle_max_n);
      if (ora_ax->parsed()) return cmd_oracle_axioms(axioms_input, axioms_max_ground);
    }
    if (st->parsed()) return cmd_selftest(st_n, st_trials, st_seed);
    if (be->parsed()) {
      bench_opt.sizes.clear();
      std::stringstream ss(bench_sizes);
      std::string token;
      while (std::getline(ss, token, ',')) bench_opt.sizes.push_back(std::stoi(token));
      return cmd_bench(bench_opt);
    }
    return 2;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rainbow
