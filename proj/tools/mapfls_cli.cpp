// mapfls command line: generate instances, build initial plans, improve them
// with neighborhood search, benchmark grids, validate and compare plans.
//
// exit codes: 0 success, 1 validation failure, 2 parameter error,
//             3 budget exhaustion

#include <CLI11.hpp>
#include <iostream>

#include <mapfls/mapfls.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitParameter = 2;
constexpr int kExitBudget = 3;

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  if (out.empty()) throw CLI::ValidationError("expected a comma separated list of integers");
  return out;
}

int cmd_gen(int nodes, int agents, std::uint64_t seed, const std::string& out_path) {
  mapfls::Instance inst = mapfls::generate_instance(nodes, agents, seed);
  mapfls::save_json_file(out_path, mapfls::instance_to_json(inst));
  std::cout << "instance: nodes=" << nodes << " agents=" << agents << " seed=" << seed << " -> "
            << out_path << "\n";
  return kExitOk;
}

mapfls::InitialResult make_initial(const mapfls::Instance& inst, const std::string& kind,
                                   std::uint64_t seed, int retries) {
  auto k = mapfls::init_from_name(kind);
  if (!k) throw CLI::ValidationError("unknown initializer: " + kind);
  if (*k == mapfls::InitKind::Prioritized) {
    mapfls::PrioritizedOptions opts;
    opts.retries = retries;
    return mapfls::prioritized_initial(inst, seed, opts);
  }
  return mapfls::sequential_initial(inst, seed, retries);
}

int cmd_init(const std::string& inst_path, const std::string& kind, std::uint64_t seed, int retries,
             const std::string& out_path) {
  mapfls::Instance inst = mapfls::load_instance_file(inst_path);
  mapfls::InitialResult res = make_initial(inst, kind, seed, retries);
  if (!res.plan) {
    std::cerr << "init: no plan found after " << res.attempts << " attempts\n";
    return kExitBudget;
  }
  mapfls::save_json_file(out_path, mapfls::plan_to_json(*res.plan));
  std::cout << "initial plan: makespan=" << res.plan->makespan() << " attempts=" << res.attempts
            << " -> " << out_path << "\n";
  return kExitOk;
}

int cmd_improve(const std::string& inst_path, const std::string& plan_path, const std::string& mode_str,
                int radius, const std::string& init_kind, std::uint64_t init_seed, int retries,
                const std::string& out_path) {
  mapfls::Instance inst = mapfls::load_instance_file(inst_path);
  mapfls::Plan f0;
  if (!plan_path.empty()) {
    f0 = mapfls::load_plan_file(plan_path);
    auto bad = mapfls::first_invalid_step(inst.graph, f0);
    if (bad) {
      std::cerr << "improve: input plan invalid at step " << *bad << "\n";
      return kExitValidation;
    }
    if (!mapfls::is_solution(inst, f0)) {
      std::cerr << "improve: input plan does not solve the instance\n";
      return kExitValidation;
    }
  } else {
    mapfls::InitialResult init = make_initial(inst, init_kind, init_seed, retries);
    if (!init.plan) {
      std::cerr << "improve: initializer found no plan\n";
      return kExitBudget;
    }
    f0 = std::move(*init.plan);
  }
  auto mode = mapfls::mode_from_name(mode_str);
  if (!mode) throw CLI::ValidationError("unknown metric: " + mode_str);
  std::pair<mapfls::Plan, mapfls::SearchReport> result =
      *mode == mapfls::RunMode::Alternate
          ? mapfls::alternated_search(inst, f0, radius)
          : mapfls::neighborhood_search(inst, f0, radius,
                                        *mode == mapfls::RunMode::SumMin
                                            ? mapfls::PlanMetricKind::SumMin
                                            : mapfls::PlanMetricKind::UAgents);
  const mapfls::SearchReport& rep = result.second;
  if (!out_path.empty()) mapfls::save_json_file(out_path, mapfls::plan_to_json(result.first));
  std::cout << "metric=" << mode_str << " initial=" << rep.initial_makespan
            << " final=" << rep.final_makespan << " ratio=" << rep.reduction_ratio
            << " iterations=" << rep.iterations << " dp_states=" << rep.dp_states_created
            << " seconds=" << rep.seconds << "\n";
  if (rep.truncated) {
    std::cerr << "improve: search truncated by the state budget\n";
    return kExitBudget;
  }
  return kExitOk;
}

int cmd_bench(const std::string& nodes_csv, const std::string& agents_csv, int per_cell, int radius,
              const std::string& modes_csv, const std::string& init_kind, std::uint64_t seed,
              int jobs, bool full, const std::string& out_path, const std::string& summary_path,
              bool verbose) {
  mapfls::ExperimentGrid grid;
  grid.instances_per_cell = per_cell;
  grid.radius = radius;
  grid.base_seed = seed;
  grid.jobs = jobs;
  auto ik = mapfls::init_from_name(init_kind);
  if (!ik) throw CLI::ValidationError("unknown initializer: " + init_kind);
  grid.init = *ik;
  if (full) {
    grid.node_counts = {20, 30, 40, 50, 60, 70, 80, 90, 100};
    grid.agent_counts = {2, 6, 10, 14, 18};
    std::cerr << "bench: full grid requested; expect a long run (hours, not minutes)\n";
  } else {
    grid.node_counts = parse_int_list(nodes_csv);
    grid.agent_counts = parse_int_list(agents_csv);
  }
  grid.modes.clear();
  {
    std::stringstream ss(modes_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      auto m = mapfls::mode_from_name(item);
      if (!m) throw CLI::ValidationError("unknown metric: " + item);
      grid.modes.push_back(*m);
    }
  }
  if (grid.modes.empty()) throw CLI::ValidationError("no metrics selected");

  std::function<void(const std::string&)> progress;
  if (verbose) progress = [](const std::string& msg) { std::cerr << msg << "\n"; };
  std::vector<mapfls::BenchRow> rows = mapfls::run_bench(grid, progress);

  if (out_path.empty() || out_path == "-") {
    mapfls::write_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    mapfls::write_csv(out, rows);
  }
  if (!summary_path.empty()) {
    std::ofstream out(summary_path);
    if (!out) throw std::runtime_error("cannot write " + summary_path);
    out << "nodes,agents,metric,mean_ratio,solved,total_seconds\n";
    for (int n : grid.node_counts)
      for (int a : grid.agent_counts)
        for (mapfls::RunMode m : grid.modes) {
          auto mean = mapfls::cell_mean_ratio(rows, n, a, m);
          int solved = 0;
          for (const auto& r : rows)
            if (r.nodes == n && r.agents == a && r.mode == m && !r.discarded) ++solved;
          out << n << ',' << a << ',' << mapfls::mode_name(m) << ','
              << (mean ? std::to_string(*mean) : std::string("nan")) << ',' << solved << ','
              << mapfls::cell_total_seconds(rows, n, a, m) << '\n';
        }
  }
  return kExitOk;
}

int cmd_validate(const std::string& inst_path, const std::string& plan_path) {
  mapfls::Instance inst = mapfls::load_instance_file(inst_path);
  mapfls::Plan f = mapfls::load_plan_file(plan_path);
  if (f.agent_count() != inst.agent_count()) {
    std::cerr << "validate: plan has " << f.agent_count() << " agents, instance has "
              << inst.agent_count() << "\n";
    return kExitValidation;
  }
  auto bad = mapfls::first_invalid_step(inst.graph, f);
  if (bad) {
    std::cerr << "validate: invalid at step " << *bad << "\n";
    return kExitValidation;
  }
  if (f.start() != inst.start) {
    std::cerr << "validate: plan does not begin at the instance start\n";
    return kExitValidation;
  }
  if (f.final_config() != inst.target) {
    std::cerr << "validate: plan does not end at the instance target\n";
    return kExitValidation;
  }
  std::cout << "valid: makespan=" << f.makespan()
            << " sum_of_costs=" << mapfls::sum_of_costs(f, inst.target) << "\n";
  return kExitOk;
}

int cmd_dist(const std::string& inst_path, const std::string& plan_path, const std::string& ref_path,
             const std::string& metric) {
  mapfls::Instance inst = mapfls::load_instance_file(inst_path);
  mapfls::Plan f = mapfls::load_plan_file(plan_path);
  mapfls::Plan ref = mapfls::load_plan_file(ref_path);
  for (const auto& [name, plan] : {std::pair{plan_path, &f}, std::pair{ref_path, &ref}}) {
    auto bad = mapfls::first_invalid_step(inst.graph, *plan);
    if (bad) {
      std::cerr << "dist: " << name << " invalid at step " << *bad << "\n";
      return kExitValidation;
    }
  }
  if (f.start() != ref.start()) {
    std::cerr << "dist: plans must share the start configuration\n";
    return kExitValidation;
  }
  std::vector<mapfls::PlanMetricKind> kinds;
  if (metric == "all") {
    kinds = {mapfls::PlanMetricKind::InfPath, mapfls::PlanMetricKind::OnePath,
             mapfls::PlanMetricKind::MaxMin,  mapfls::PlanMetricKind::SumMin,
             mapfls::PlanMetricKind::UAgents, mapfls::PlanMetricKind::MaxAgents};
  } else {
    auto k = mapfls::metric_from_name(metric);
    if (!k) throw CLI::ValidationError("unknown metric: " + metric);
    kinds = {*k};
  }
  for (auto k : kinds) {
    mapfls::Dist d = mapfls::plan_distance(inst.graph, f, ref, k);
    std::cout << mapfls::metric_name(k) << "=";
    if (d == mapfls::kUnreachable)
      std::cout << "unreachable";
    else
      std::cout << d;
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-agent plan improvement toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random strongly connected instance");
  int gen_nodes = 20, gen_agents = 5;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "instance.json";
  gen->add_option("--nodes", gen_nodes, "vertex count")->required();
  gen->add_option("--agents", gen_agents, "agent count")->required();
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("-o,--out", gen_out, "output instance file");

  // init
  auto* init = app.add_subcommand("init", "build an initial plan");
  std::string init_inst, init_kind = "prioritized", init_out = "plan.json";
  std::uint64_t init_seed = 1;
  int init_retries = 50;
  init->add_option("--instance", init_inst, "instance file")->required();
  init->add_option("--init", init_kind, "initializer: prioritized (short) or sequential (wasteful)");
  init->add_option("--seed", init_seed, "random seed");
  init->add_option("--retries", init_retries, "reshuffles before giving up");
  init->add_option("-o,--out", init_out, "output plan file");

  // improve
  auto* improve = app.add_subcommand("improve", "shorten a plan by neighborhood search");
  std::string imp_inst, imp_plan, imp_metric = "alternate", imp_init = "sequential", imp_out;
  int imp_radius = 1, imp_retries = 50;
  std::uint64_t imp_seed = 1;
  improve->add_option("--instance", imp_inst, "instance file")->required();
  improve->add_option("--plan", imp_plan, "initial plan file (default: run the initializer)");
  improve->add_option("--metric", imp_metric, "sum-min, u-agents or alternate");
  improve->add_option("--radius", imp_radius, "neighborhood radius");
  improve->add_option("--init", imp_init, "initializer when --plan is absent");
  improve->add_option("--init-seed", imp_seed, "initializer seed when --plan is absent");
  improve->add_option("--retries", imp_retries, "initializer retries when --plan is absent");
  improve->add_option("-o,--out", imp_out, "output plan file");

  // bench
  auto* bench = app.add_subcommand("bench", "run an experiment grid and emit CSV");
  std::string b_nodes = "20,30,40", b_agents = "2,5,8", b_modes = "sum-min,u-agents,alternate";
  std::string b_init = "sequential", b_out = "-", b_summary;
  int b_per_cell = 10, b_radius = 1, b_jobs = 1;
  std::uint64_t b_seed = 1;
  bool b_full = false, b_verbose = false;
  bench->add_option("--nodes", b_nodes, "comma separated vertex counts");
  bench->add_option("--agents", b_agents, "comma separated agent counts");
  bench->add_option("--per-cell", b_per_cell, "instances per grid cell");
  bench->add_option("--radius", b_radius, "neighborhood radius");
  bench->add_option("--metrics", b_modes, "comma separated run modes");
  bench->add_option("--init", b_init, "initializer: sequential (wasteful) or prioritized (short)");
  bench->add_option("--seed", b_seed, "base seed");
  bench->add_option("--jobs", b_jobs, "parallel improvement workers");
  bench->add_flag("--full", b_full, "run the large reference grid instead of the desk grid");
  bench->add_flag("-v,--verbose", b_verbose, "progress on stderr");
  bench->add_option("-o,--out", b_out, "CSV output file, - for stdout");
  bench->add_option("--summary", b_summary, "also write per-cell means to this file");

  // validate
  auto* validate = app.add_subcommand("validate", "check a plan against an instance");
  std::string val_inst, val_plan;
  validate->add_option("--instance", val_inst, "instance file")->required();
  validate->add_option("--plan", val_plan, "plan file")->required();

  // dist
  auto* dist = app.add_subcommand("dist", "distances between two plans sharing a start");
  std::string d_inst, d_plan, d_ref, d_metric = "all";
  dist->add_option("--instance", d_inst, "instance file (provides the graph)")->required();
  dist->add_option("--plan", d_plan, "plan file")->required();
  dist->add_option("--ref", d_ref, "reference plan file")->required();
  dist->add_option("--metric", d_metric, "one metric name or 'all'");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return cmd_gen(gen_nodes, gen_agents, gen_seed, gen_out);
    if (init->parsed()) return cmd_init(init_inst, init_kind, init_seed, init_retries, init_out);
    if (improve->parsed())
      return cmd_improve(imp_inst, imp_plan, imp_metric, imp_radius, imp_init, imp_seed, imp_retries,
                         imp_out);
    if (bench->parsed())
      return cmd_bench(b_nodes, b_agents, b_per_cell, b_radius, b_modes, b_init, b_seed, b_jobs,
                       b_full, b_out, b_summary, b_verbose);
    if (validate->parsed()) return cmd_validate(val_inst, val_plan);
    if (dist->parsed()) return cmd_dist(d_inst, d_plan, d_ref, d_metric);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParameter;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitParameter;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParameter;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitParameter;
}
