// Copyright 2026 The dosgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dosgame/commands.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>

#include "dosgame/bayesian.h"
#include "dosgame/io.h"
#include "dosgame/nashq.h"
#include "dosgame/structure.h"

namespace dosgame {
namespace {

namespace fs = std::filesystem;

struct Context {
  const CommandOptions& options;
  std::ostream& out;
  std::ostream& err;
};

ExperimentConfig LoadWithOverrides(const CommandOptions& o) {
  if (o.config_path.empty()) throw ConfigError("--config", "required");
  ExperimentConfig cfg = LoadConfig(o.config_path);
  if (o.seed) {
    cfg.seed = *o.seed;
    cfg.learn.seed = *o.seed;
  }
  if (o.episodes) {
    if (*o.episodes < 0) throw ConfigError("--episodes", "must be >= 0");
    cfg.learn.episodes = *o.episodes;
  }
  if (o.out_dir) cfg.output_dir = *o.out_dir;
  return cfg;
}

Json VectorJson(const Eigen::VectorXd& v) {
  return Json(std::vector<double>(v.data(), v.data() + v.size()));
}

Json MatrixJson(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Eigen::VectorXd r = m.row(i).transpose();
    rows.push_back(VectorJson(r));
  }
  return rows;
}

Json EquilibriumJson(const EquilibriumResult& e) {
  Json j;
  j["method"] = e.method;
  j["strategy_p1"] = VectorJson(e.strat_p1.probs);
  j["strategy_p2"] = VectorJson(e.strat_p2.probs);
  j["value_p1"] = e.value_p1;
  j["value_p2"] = e.value_p2;
  j["deviation_gap"] = e.deviation_gap;
  j["certified"] = e.deviation_gap <= kCertificationTol;
  return j;
}

std::string Mix(const Eigen::VectorXd& p) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << "(";
  for (int i = 0; i < p.size(); ++i) s << (i ? ", " : "") << p(i);
  s << ")";
  return s.str();
}

void WriteJson(const fs::path& path, const Json& doc) {
  WriteTextFile(path, doc.dump(2) + "\n");
}

void WarnGuard(const GameSpec& spec, std::ostream& err) {
  if (!spec.boundedness_guard_holds()) {
    err << "warning: smallest arrival probability " << spec.min_arrival()
        << " does not exceed 1 - 1/rho(A)^2 = "
        << BoundednessThreshold(spec.steady()) << "\n";
  }
}

int CmdSteady(Context& c) {
  const ExperimentConfig cfg = LoadWithOverrides(c.options);
  const SteadySummary& st = cfg.game.steady();
  const double threshold = BoundednessThreshold(st);
  c.out << std::setprecision(10);
  c.out << "P_bar:\n" << st.p_bar << "\n";
  c.out << "rho(A): " << st.rho_A << "\n";
  c.out << "boundedness threshold 1 - 1/rho(A)^2: " << threshold;
  if (threshold < 0.0) c.out << " (negative: stable plant, any q bounds)";
  c.out << "\nfixed-point iterations: " << st.iterations << "\n";
  c.out << "trace table Tr[h^m(P_bar)]:\n";
  for (std::size_t m = 0; m < st.trace_table.size(); ++m) {
    c.out << "  m=" << m << "  " << st.trace_table[m] << "\n";
  }
  Json j;
  j["p_bar"] = MatrixJson(st.p_bar);
  j["rho_A"] = st.rho_A;
  j["boundedness_threshold"] = threshold;
  j["iterations"] = st.iterations;
  j["trace_table"] = st.trace_table;
  j["min_arrival"] = cfg.game.min_arrival();
  j["boundedness_guard_holds"] = cfg.game.boundedness_guard_holds();
  WriteJson(fs::path(cfg.output_dir) / "steady.json", j);
  return kExitOk;
}

void WriteTables(const GameSpec& spec, const fs::path& dir,
                 const std::string& prefix, const QTable& q,
                 const std::vector<EquilibriumResult>& eq) {
  WriteJson(dir / (prefix + "_q.json"), QTableToJson(spec, q));
  WriteTextFile(dir / (prefix + "_q1.csv"), QTableCsv(spec, q, 1));
  WriteTextFile(dir / (prefix + "_q2.csv"), QTableCsv(spec, q, 2));
  WriteTextFile(dir / (prefix + "_policies.csv"), PoliciesCsv(spec, eq));
}

int CmdSolve(Context& c) {
  const ExperimentConfig cfg = LoadWithOverrides(c.options);
  WarnGuard(cfg.game, c.err);
  const OracleResult orc = ShapleyValueIteration(cfg.game);
  const fs::path dir = cfg.output_dir;
  WriteTables(cfg.game, dir, "oracle", orc.q, orc.policies);
  std::ostringstream sweeps;
  sweeps << "sweep,delta\n";
  for (std::size_t i = 0; i < orc.sweep_deltas.size(); ++i) {
    sweeps << i + 1 << "," << FormatDouble(orc.sweep_deltas[i]) << "\n";
  }
  WriteTextFile(dir / "oracle_sweeps.csv", sweeps.str());
  c.out << "value iteration converged in " << orc.sweep_deltas.size()
        << " sweeps\n"
        << "||Q1*||_inf = " << SupNorm(orc.q.values(1)) << "\n"
        << "v1*(s0) = " << orc.policies[0].value_p1 << "\n"
        << "wrote " << (dir / "oracle_q.json").string() << " and CSVs\n";
  return kExitOk;
}

int CmdLearn(Context& c) {
  const ExperimentConfig cfg = LoadWithOverrides(c.options);
  WarnGuard(cfg.game, c.err);
  const LearnResult res = NashQLearn(cfg.game, cfg.learn);
  const fs::path dir = cfg.output_dir;
  WriteTables(cfg.game, dir, "learned", res.q, res.policies);
  WriteTextFile(dir / "convergence.csv", CurveCsv(cfg.game, res.curve));
  c.out << "episodes: " << cfg.learn.episodes << ", steps: " << res.steps
        << "\nmax |Q1 + Q2| after any update: " << res.max_mirror_error
        << "\n";
  if (!c.options.oracle) return kExitOk;

  const OracleResult orc = ShapleyValueIteration(cfg.game);
  const double norm = SupNorm(orc.q.values(1));
  const double gap = SupNormDistance(res.q.values(1), orc.q.values(1));
  const double bound = 0.05 * (1.0 + norm);
  Json j;
  j["episodes"] = cfg.learn.episodes;
  j["seed"] = cfg.learn.seed;
  j["oracle_norm"] = norm;
  j["sup_norm_gap"] = gap;
  j["bound"] = bound;
  j["within_bound"] = gap <= bound;
  j["max_mirror_error"] = res.max_mirror_error;
  Json cps = Json::array();
  for (const auto& [episode, q1] : res.checkpoints) {
    cps.push_back({{"episode", episode},
                   {"sup_norm_gap", SupNormDistance(q1, orc.q.values(1))}});
  }
  j["checkpoints"] = std::move(cps);
  WriteJson(dir / "learn_report.json", j);
  c.out << "sup-norm gap to oracle: " << gap << " (bound " << bound << ", "
        << (gap <= bound ? "within" : "EXCEEDS") << ")\n";
  return kExitOk;
}

int CmdEquilibrium(Context& c) {
  const std::string path = !c.options.matrix_path.empty()
                               ? c.options.matrix_path
                               : c.options.config_path;
  if (path.empty()) throw ConfigError("matrix file", "required");
  std::string text;
  try {
    text = ReadTextFile(path);
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
  const MatrixFile mf = ParseMatrixFile(text);
  const StageGame game = [&] {
    try {
      return StageGame(mf.payoff_p1, mf.payoff_p2);
    } catch (const std::exception& e) {
      throw ConfigError(path, e.what());
    }
  }();
  Json j;
  j["rows"] = game.rows();
  j["cols"] = game.cols();
  j["zero_sum"] = game.zero_sum();

  c.out << std::setprecision(10);
  auto show = [&](const EquilibriumResult& e) {
    c.out << "  " << e.method << ": p1 " << Mix(e.strat_p1.probs) << " p2 "
          << Mix(e.strat_p2.probs) << " values (" << e.value_p1 << ", "
          << e.value_p2 << ") gap " << e.deviation_gap << "\n";
  };
  c.out << "Lemke-Howson by initial label:\n";
  Json lh = Json::array();
  for (int label = 0; label < game.rows() + game.cols(); ++label) {
    try {
      const EquilibriumResult e = LemkeHowson(game, label);
      show(e);
      lh.push_back(EquilibriumJson(e));
    } catch (const PivotBudgetExceeded& ex) {
      c.out << "  label " << label << ": " << ex.what() << "\n";
      lh.push_back({{"method", "lemke_howson"}, {"error", ex.what()}});
    }
  }
  j["lemke_howson"] = std::move(lh);

  const EquilibriumResult selected = SolveStageGame(game);
  c.out << "selected:\n";
  show(selected);
  j["selected"] = EquilibriumJson(selected);

  if (game.zero_sum()) {
    const EquilibriumResult lp = ZeroSumValue(game);
    c.out << "linear program:\n";
    show(lp);
    j["linear_program"] = EquilibriumJson(lp);
  }
  if (std::max(game.rows(), game.cols()) <= kSupportEnumerationMaxActions) {
    c.out << "support enumeration:\n";
    Json se = Json::array();
    for (const EquilibriumResult& e : SupportEnumeration(game)) {
      show(e);
      se.push_back(EquilibriumJson(e));
    }
    j["support_enumeration"] = std::move(se);
  }
  if (mf.profile) {
    const EquilibriumResult e =
        Evaluate(game, mf.profile->first, mf.profile->second, "profile");
    const bool ok = e.deviation_gap <= kCertificationTol;
    c.out << "supplied profile:\n";
    show(e);
    c.out << "  " << (ok ? "passes" : "FAILS") << " the deviation check"
          << (ok ? "" : " (gap above 1e-8)") << "\n";
    j["profile"] = EquilibriumJson(e);
  }
  const fs::path dir = c.options.out_dir.value_or("out");
  WriteJson(dir / "equilibrium.json", j);
  return kExitOk;
}

Json WindowJson(const std::optional<StateWindow>& w) {
  if (!w) return nullptr;
  return {{"min_tau", w->min_tau}, {"max_tau", w->max_tau}};
}

int CmdMonotone(Context& c) {
  const ExperimentConfig cfg = LoadWithOverrides(c.options);
  const GameSpec& spec = cfg.game;
  WarnGuard(spec, c.err);
  const OracleResult orc = ShapleyValueIteration(spec);
  const EpsilonReport eps = EpsilonMax(spec);
  std::vector<double> v2;
  for (const EquilibriumResult& e : orc.policies) v2.push_back(e.value_p2);
  const Theorem3Report t3 = CheckTheorem3Condition(spec, v2, eps);
  const StateWindow window = t3.window.value_or(StateWindow{});
  const SupermodularReport sm2 = CheckSupermodular(spec, orc.q, 2, window);
  const SupermodularReport sm1 = CheckSupermodular(spec, orc.q, 1, window);
  const MonotoneReport mono = CheckMonotonePolicy(spec, orc.policies, window);

  double max_delta1 = 0.0;
  long delta1_tuples = 0;
  for (int m = 0; m < spec.tau_max(); ++m) {
    for (const EpsilonEntry& e : eps.entries) {
      max_delta1 =
          std::max(max_delta1, std::abs(RewardCrossDifference(spec, m, e.tuple)));
      ++delta1_tuples;
    }
  }

  Json j;
  j["epsilon_max"] = eps.epsilon_max;
  j["epsilon_tuples"] = eps.entries.size();
  j["epsilon_excluded"] = eps.num_excluded;
  Json table = Json::array();
  for (const EpsilonEntry& e : eps.entries) {
    const EpsilonTuple& t = e.tuple;
    Json row = {{"g_s", spec.channel().gain(t.g_s)},
                {"g_a", spec.channel().gain(t.g_a)},
                {"g_s2", spec.channel().gain(t.g_s2)},
                {"g_a2", spec.channel().gain(t.g_a2)},
                {"a1_plus", spec.actions_attacker()[t.a1_plus]},
                {"a1_minus", spec.actions_attacker()[t.a1_minus]},
                {"a2_plus", spec.actions_sensor()[t.a2_plus]},
                {"a2_minus", spec.actions_sensor()[t.a2_minus]},
                {"excluded", e.excluded}};
    row["epsilon"] = e.excluded ? Json(nullptr) : Json(e.epsilon);
    table.push_back(std::move(row));
  }
  j["epsilon_table"] = std::move(table);

  Json cond;
  cond["v_tau_sensor"] = t3.v_tau;
  Json ratios = Json::array();
  for (std::size_t m = 0; m < t3.ratios.size(); ++m) {
    ratios.push_back({{"m", m},
                      {"ratio", t3.undefined[m] ? Json(nullptr)
                                                : Json(t3.ratios[m])},
                      {"undefined", static_cast<bool>(t3.undefined[m])},
                      {"holds", static_cast<bool>(t3.ratio_holds[m])}});
  }
  cond["ratios"] = std::move(ratios);
  Json products = Json::array();
  for (const ProductCheck& p : t3.products) {
    products.push_back({{"a1_plus", spec.actions_attacker()[p.a1_plus]},
                        {"a1_minus", spec.actions_attacker()[p.a1_minus]},
                        {"a2_plus", spec.actions_sensor()[p.a2_plus]},
                        {"a2_minus", spec.actions_sensor()[p.a2_minus]},
                        {"lhs", p.lhs},
                        {"rhs", p.rhs},
                        {"holds", p.lhs >= p.rhs}});
  }
  cond["products"] = std::move(products);
  cond["product_holds"] = t3.product_holds;
  cond["threshold"] = t3.threshold;
  cond["window"] = WindowJson(t3.window);
  cond["certified_states"] = t3.certified_states;
  cond["min_delta2"] = t3.holds ? Json(t3.min_delta2) : Json(nullptr);
  cond["holds"] = t3.holds;
  j["sufficient_condition"] = std::move(cond);
  j["reward_cross_difference"] = {{"tuples", delta1_tuples},
                                  {"max_abs", max_delta1},
                                  {"exactly_zero", max_delta1 == 0.0}};

  auto sm_json = [&](const SupermodularReport& r) {
    Json s = {{"holds", r.holds},
              {"pairs_checked", r.pairs_checked},
              {"min_margin", r.min_margin}};
    if (r.witness) {
      const SupermodularWitness& w = *r.witness;
      s["witness"] = {{"s_lo", w.s_lo}, {"s_hi", w.s_hi}, {"a_lo", w.a_lo},
                      {"a_hi", w.a_hi}, {"b_lo", w.b_lo}, {"b_hi", w.b_hi},
                      {"margin", w.margin}};
    }
    return s;
  };
  j["supermodular_sensor"] = sm_json(sm2);
  j["supermodular_attacker"] = sm_json(sm1);
  auto violations = [](const std::vector<MonotoneViolation>& vs) {
    Json a = Json::array();
    for (const MonotoneViolation& v : vs) {
      a.push_back({{"player", v.player},
                   {"s_lo", v.s_lo},
                   {"s_hi", v.s_hi},
                   {"summary_lo", v.summary_lo},
                   {"summary_hi", v.summary_hi}});
    }
    return a;
  };
  j["monotone_policy"] = {
      {"window_certified", t3.window.has_value()},
      {"pairs_checked", mono.pairs_checked},
      {"expected_action_holds", mono.expected_holds},
      {"argmax_action_holds", mono.argmax_holds},
      {"expected_action_violations", violations(mono.expected_violations)},
      {"argmax_action_violations", violations(mono.argmax_violations)}};
  Json pol = Json::array();
  for (int s = 0; s < spec.num_states(); ++s) {
    pol.push_back({{"state", s},
                   {"attacker", VectorJson(orc.policies[s].strat_p1.probs)},
                   {"sensor", VectorJson(orc.policies[s].strat_p2.probs)}});
  }
  j["policies"] = std::move(pol);
  WriteJson(fs::path(cfg.output_dir) / "monotone.json", j);

  c.out << std::setprecision(6);
  c.out << "epsilon_max = " << eps.epsilon_max << " over " << eps.entries.size()
        << " tuples (" << eps.num_excluded << " excluded)\n";
  for (std::size_t m = 0; m < t3.ratios.size(); ++m) {
    c.out << "  m=" << m << " ratio ";
    if (t3.undefined[m]) {
      c.out << "undefined";
    } else {
      c.out << t3.ratios[m];
    }
    c.out << (t3.ratio_holds[m] ? "  > epsilon_max" : "  not above epsilon_max")
          << "\n";
  }
  for (const ProductCheck& p : t3.products) {
    c.out << "  product a2+ a1- = " << p.lhs << (p.lhs >= p.rhs ? " >= " : " < ")
          << "a2- a1+ = " << p.rhs << "\n";
  }
  c.out << "sufficient condition: " << (t3.holds ? "holds" : "does not hold");
  if (t3.window) {
    c.out << " for holding times " << t3.window->min_tau << ".."
          << t3.window->max_tau << " (threshold " << t3.threshold << ")";
  }
  c.out << "\nreward cross difference: max |value| = " << max_delta1 << "\n";
  c.out << "sensor Q* strictly supermodular: " << (sm2.holds ? "yes" : "no")
        << " (" << sm2.pairs_checked << " pairs)\n";
  c.out << "policies strictly increasing (expected action): "
        << (mono.expected_holds ? "yes" : "no")
        << ", (most likely action): " << (mono.argmax_holds ? "yes" : "no")
        << " (" << mono.pairs_checked << " state pairs)\n";
  return kExitOk;
}

int CmdBayes(Context& c) {
  const ExperimentConfig cfg = LoadWithOverrides(c.options);
  if (!cfg.bayes) throw ConfigError("bayes", "missing section");
  const GameSpec& spec = cfg.game;
  std::vector<double> v_tau;
  if (cfg.bayes->payoff == BayesPayoff::kLookahead) {
    const OracleResult orc = ShapleyValueIteration(spec);
    std::vector<double> v1;
    for (const EquilibriumResult& e : orc.policies) v1.push_back(e.value_p1);
    v_tau = ReduceByHoldingTime(spec, v1);
  }
  const BayesianSpec bs = MakeBayesianSpec(spec, cfg.bayes->m,
                                           cfg.bayes->belief,
                                           cfg.bayes->payoff, v_tau);
  const BayesianSolution sol = SolveBayesian(bs);
  const fs::path dir = cfg.output_dir;
  const std::string ta = TypeStrategyCsv(spec, sol.attacker, 1);
  const std::string ts = TypeStrategyCsv(spec, sol.sensor, 2);
  WriteTextFile(dir / "bayes_attacker.csv", ta);
  WriteTextFile(dir / "bayes_sensor.csv", ts);
  Json j;
  j["m"] = cfg.bayes->m;
  j["belief"] = MatrixJson(bs.belief());
  j["expanded_matrix"] = MatrixJson(ExpandMatrix(bs));
  j["expanded_equilibrium"] = EquilibriumJson(sol.expanded);
  Json att = Json::array(), sen = Json::array();
  for (const MixedStrategy& m : sol.attacker.per_type) att.push_back(VectorJson(m.probs));
  for (const MixedStrategy& m : sol.sensor.per_type) sen.push_back(VectorJson(m.probs));
  j["attacker_per_type"] = std::move(att);
  j["sensor_per_type"] = std::move(sen);
  j["value"] = sol.value;
  j["bayes_deviation_gap"] = sol.deviation_gap;
  j["certified"] = sol.deviation_gap <= kCertificationTol;
  WriteJson(dir / "bayes.json", j);
  c.out << "attacker strategy by own gain:\n" << ta
        << "sensor strategy by own gain:\n" << ts << "value " << sol.value
        << ", Bayesian deviation gap " << sol.deviation_gap << "\n";
  return kExitOk;
}

int CmdSimulate(Context& c) {
  const ExperimentConfig cfg = LoadWithOverrides(c.options);
  const GameSpec& spec = cfg.game;
  const fs::path dir = cfg.output_dir;
  const fs::path policy = cfg.simulate.policy_file.empty()
                              ? dir / "oracle_policies.csv"
                              : fs::path(cfg.simulate.policy_file);
  if (!fs::exists(policy)) {
    throw std::runtime_error("policy file not found: " + policy.string());
  }
  const auto [pa, ps] = ParsePoliciesCsv(spec, ReadTextFile(policy));
  Rng rng(cfg.seed);
  const std::vector<TrajectoryStep> traj = SimulateTrajectory(
      spec, pa, ps, cfg.simulate.horizon, cfg.simulate.start_state, rng);
  WriteTextFile(dir / "trajectory.csv", TrajectoryCsv(traj));
  long received = 0;
  for (const TrajectoryStep& s : traj) received += s.gamma;
  c.out << "steps: " << traj.size() << ", packets received: " << received
        << "\ndiscounted attacker return: "
        << DiscountedReturn(traj, spec.beta()) << "\n";
  return kExitOk;
}

const std::map<std::string, std::function<int(Context&)>>& Commands() {
  static const auto* table =
      new std::map<std::string, std::function<int(Context&)>>{
          {"steady", CmdSteady},       {"solve", CmdSolve},
          {"learn", CmdLearn},         {"equilibrium", CmdEquilibrium},
          {"monotone", CmdMonotone},   {"bayes", CmdBayes},
          {"simulate", CmdSimulate}};
  return *table;
}

}  // namespace

const std::vector<std::string>& CommandNames() {
  static const auto* names = new std::vector<std::string>{
      "steady", "solve", "learn", "equilibrium", "monotone", "bayes",
      "simulate"};
  return *names;
}

int RunCommand(const std::string& name, const CommandOptions& options,
               std::ostream& out, std::ostream& err) {
  auto it = Commands().find(name);
  if (it == Commands().end()) {
    err << "unknown command: " << name << "\n";
    return kExitConfig;
  }
  Context ctx{options, out, err};
  try {
    return it->second(ctx);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace dosgame
