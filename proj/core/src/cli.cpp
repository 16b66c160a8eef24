#include "evplace/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "evplace/oracle.hpp"
#include "evplace/tntp.hpp"

namespace evplace {

namespace {

using nlohmann::json;

json json_num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

json config_to_json(const InstanceConfig& cfg) {
  return json{{"budget", cfg.budget},
              {"charge_price", cfg.charge_price},
              {"charge_value", cfg.charge_value},
              {"unmet_weight", cfg.unmet_weight},
              {"battery_capacity", cfg.battery_capacity},
              {"battery_quantum", cfg.battery_quantum},
              {"charge_rate", cfg.charge_rate},
              {"epsilon", cfg.epsilon},
              {"big_m", cfg.big_m},
              {"time_limit", cfg.time_limit},
              {"fw_tolerance", cfg.fw_tolerance},
              {"fw_max_iters", cfg.fw_max_iters},
              {"cg_max_rounds", cfg.cg_max_rounds},
              {"vf_kappa", cfg.vf_kappa},
              {"oracle_max_candidates", cfg.oracle_max_candidates}};
}

json flows_to_json(const FlowSolution& flow) {
  json served = json::array();
  double served_total = 0.0;
  for (const auto& [od, d] : flow.served) {
    served.push_back({od.first, od.second, d});
    served_total += d;
  }
  double charged = 0.0;
  for (double vl : flow.v) charged += vl;
  return json{{"x", flow.x},
              {"v", flow.v},
              {"served", served},
              {"served_total", served_total},
              {"charged_total", charged},
              {"value", json_num(flow.value)},
              {"rel_gap", flow.rel_gap},
              {"iterations", flow.iterations},
              {"converged", flow.converged}};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << text;
}

}  // namespace

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream out;
  out << std::setprecision(12);
  out << "node_index,node_lb,global_lb,global_ub,gap_pct,num_paths,"
         "num_oa_cuts,num_vf_cuts,phase_seconds\n";
  for (const TraceRow& r : trace) {
    out << r.node_index << ',' << r.node_lb << ',' << r.global_lb << ','
        << r.global_ub << ',' << r.gap_pct << ',' << r.num_paths << ','
        << r.num_oa_cuts << ',' << r.num_vf_cuts << ',' << r.phase_seconds
        << '\n';
  }
  return out.str();
}

std::string design_to_string(const std::vector<uint8_t>& design) {
  std::string s(design.size(), '0');
  for (size_t l = 0; l < design.size(); ++l) {
    if (design[l]) s[l] = '1';
  }
  return s;
}

std::vector<uint8_t> design_from_string(const std::string& text,
                                        int expected_size) {
  if (expected_size >= 0 &&
      text.size() != static_cast<size_t>(expected_size)) {
    std::ostringstream msg;
    msg << "design string has " << text.size() << " characters, expected "
        << expected_size;
    throw std::invalid_argument(msg.str());
  }
  std::vector<uint8_t> d(text.size(), 0);
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      d[i] = 1;
    } else if (text[i] != '0') {
      throw std::invalid_argument("design string must contain only 0 and 1");
    }
  }
  return d;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"exact charging-station placement under user equilibrium"};

  std::string net_path, trips_path, cand_path, config_path;
  std::string mode = "bpc", design_text, out_dir = ".";
  int seed = 0;
  bool dump_master = false, dump_expanded = false;
  double budget = 0, price = 0, charge_value = 0, unmet = 0, battery = 0,
         quantum = 0, rate = 0, epsilon = 0, big_m = 0, time_limit = 0,
         fw_tol = 0, vf_kappa = 0;
  int fw_iters = 0, cg_rounds = 0, oracle_cap = 0;

  app.add_option("--net", net_path, "network file")->required();
  app.add_option("--trips", trips_path, "trip table file")->required();
  app.add_option("--candidates", cand_path, "candidate site CSV")->required();
  app.add_option("--config", config_path, "key=value parameter file");
  app.add_option("--mode", mode, "bpc, oracle or mtap")
      ->check(CLI::IsMember({"bpc", "oracle", "mtap"}));
  app.add_option("--design", design_text,
                 "0/1 design string, one digit per candidate "
                 "(mtap mode; default all open)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "recorded in result.json");
  app.add_flag("--dump-master", dump_master,
               "also write the root master LP as master.lp");
  app.add_flag("--dump-expanded", dump_expanded,
               "also write the all-open battery expansion as "
               "expanded_nodes.csv and expanded_arcs.csv");

  auto* o_budget = app.add_option("--budget", budget);
  auto* o_price = app.add_option("--price", price, "revenue per charged hour");
  auto* o_cv = app.add_option("--charge-value", charge_value);
  auto* o_unmet = app.add_option("--unmet-weight", unmet);
  auto* o_batt = app.add_option("--battery", battery);
  auto* o_quant = app.add_option("--quantum", quantum);
  auto* o_rate = app.add_option("--charge-rate", rate);
  auto* o_eps = app.add_option("--epsilon", epsilon);
  auto* o_bigm = app.add_option("--big-m", big_m);
  auto* o_tl = app.add_option("--time-limit", time_limit);
  auto* o_fwtol = app.add_option("--fw-tolerance", fw_tol);
  auto* o_fwit = app.add_option("--fw-max-iters", fw_iters);
  auto* o_cg = app.add_option("--cg-max-rounds", cg_rounds);
  auto* o_kappa = app.add_option("--vf-kappa", vf_kappa);
  auto* o_ocap = app.add_option("--oracle-max-candidates", oracle_cap);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    Instance inst = load_instance(net_path, trips_path, cand_path, config_path);
    if (o_budget->count()) inst.cfg.budget = budget;
    if (o_price->count()) inst.cfg.charge_price = price;
    if (o_cv->count()) inst.cfg.charge_value = charge_value;
    if (o_unmet->count()) inst.cfg.unmet_weight = unmet;
    if (o_batt->count()) inst.cfg.battery_capacity = battery;
    if (o_quant->count()) inst.cfg.battery_quantum = quantum;
    if (o_rate->count()) inst.cfg.charge_rate = rate;
    if (o_eps->count()) inst.cfg.epsilon = epsilon;
    if (o_bigm->count()) inst.cfg.big_m = big_m;
    if (o_tl->count()) inst.cfg.time_limit = time_limit;
    if (o_fwtol->count()) inst.cfg.fw_tolerance = fw_tol;
    if (o_fwit->count()) inst.cfg.fw_max_iters = fw_iters;
    if (o_cg->count()) inst.cfg.cg_max_rounds = cg_rounds;
    if (o_kappa->count()) inst.cfg.vf_kappa = vf_kappa;
    if (o_ocap->count()) inst.cfg.oracle_max_candidates = oracle_cap;
    inst.validate();

    std::filesystem::create_directories(out_dir);
    std::filesystem::path out(out_dir);

    json result;
    result["mode"] = mode;
    result["seed"] = seed;
    result["config"] = config_to_json(inst.cfg);
    result["instance"] = {{"nodes", inst.net.num_nodes},
                          {"zones", inst.net.num_zones},
                          {"links", inst.net.links.size()},
                          {"candidates", inst.candidates.size()},
                          {"total_demand", inst.demand.total()}};

    if (dump_master || dump_expanded) {
      std::vector<uint8_t> all_open(inst.candidates.size(), 1);
      ExpandedGraph g = expand_graph(inst, all_open);
      if (dump_expanded) {
        write_file(out / "expanded_nodes.csv", expanded_nodes_csv(g));
        write_file(out / "expanded_arcs.csv", expanded_arcs_csv(g));
      }
      if (dump_master) {
        DemandTable servable = reachable_od_pairs(g, inst.demand);
        std::vector<std::pair<int32_t, int32_t>> pairs;
        for (const auto& [od, d] : servable.trips) {
          if (d > 0.0) pairs.push_back(od);
        }
        PathPool pool;
        CutPools cuts;
        std::vector<double> lo(inst.candidates.size(), 0.0);
        std::vector<double> up(inst.candidates.size(), 1.0);
        write_file(out / "master.lp",
                   to_lp_text(build_master_lp(inst, pairs, pool, cuts, lo, up)));
      }
    }

    if (mode == "bpc") {
      BpcResult r = run_bpc(inst);
      result["status"] =
          r.status == BpcStatus::Optimal ? "optimal" : "time_limit";
      result["objective"] = json_num(r.upper_bound);
      result["upper_bound"] = json_num(r.upper_bound);
      result["lower_bound"] = json_num(r.lower_bound);
      result["gap_pct"] = json_num(r.gap_pct);
      result["best_design"] = design_to_string(r.best_design);
      result["seconds"] = r.seconds;
      result["counters"] = {{"nodes_solved", r.nodes_solved},
                            {"mtap_solves", r.mtap_solves},
                            {"cg_rounds", r.cg_rounds},
                            {"columns", r.columns},
                            {"oa_cuts", r.oa_cuts},
                            {"vf_cuts", r.vf_cuts},
                            {"trace_rows", r.trace.size()}};
      if (!r.best_design.empty()) result["flows"] = flows_to_json(r.best_flow);
      write_file(out / "trace.csv", trace_to_csv(r.trace));
      std::cout << "status " << result["status"].get<std::string>()
                << "  objective " << r.upper_bound << "  gap% " << r.gap_pct
                << "  design " << design_to_string(r.best_design) << "\n";
    } else if (mode == "oracle") {
      auto t0 = std::chrono::steady_clock::now();
      std::ostringstream csv;
      csv << std::setprecision(12) << "design,objective\n";
      OracleResult best;
      best.objective = std::numeric_limits<double>::infinity();
      for (const auto& design : enumerate_designs(inst)) {
        FlowSolution flow = solve_mtap(inst, design);
        double obj = upper_level_value(inst, flow);
        ++best.designs_evaluated;
        csv << design_to_string(design) << ',' << obj << '\n';
        if (obj < best.objective) {
          best.objective = obj;
          best.design = design;
          best.flow = std::move(flow);
        }
      }
      double secs = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
      result["status"] = "optimal";
      result["objective"] = json_num(best.objective);
      result["best_design"] = design_to_string(best.design);
      result["designs_evaluated"] = best.designs_evaluated;
      result["seconds"] = secs;
      if (!best.design.empty()) result["flows"] = flows_to_json(best.flow);
      write_file(out / "designs.csv", csv.str());
      std::cout << csv.str();
      std::cout << "best " << design_to_string(best.design) << " objective "
                << best.objective << "\n";
    } else {
      std::vector<uint8_t> design =
          design_text.empty()
              ? std::vector<uint8_t>(inst.candidates.size(), 1)
              : design_from_string(design_text,
                                   static_cast<int>(inst.candidates.size()));
      auto t0 = std::chrono::steady_clock::now();
      FlowSolution flow = solve_mtap(inst, design);
      double secs = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
      result["status"] = flow.converged ? "optimal" : "iteration_limit";
      result["objective"] = json_num(upper_level_value(inst, flow));
      result["design"] = design_to_string(design);
      result["flows"] = flows_to_json(flow);
      result["seconds"] = secs;
      std::cout << "design " << design_to_string(design) << "  follower value "
                << flow.value << "  leader objective "
                << upper_level_value(inst, flow) << "\n";
    }

    write_file(out / "result.json", result.dump(2) + "\n");
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace evplace
