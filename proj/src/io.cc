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

#include "dosgame/io.h"

#include <charconv>
#include <fstream>
#include <sstream>

namespace dosgame {
namespace {

std::string Join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const Json& Require(const Json& obj, const std::string& path,
                    const std::string& key) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(Join(path, key), "missing field");
  return *it;
}

double ToDouble(const Json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

std::int64_t ToInt(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::string ToString(const Json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

double GetDouble(const Json& obj, const std::string& path,
                 const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  return ToDouble(obj.at(key), Join(path, key));
}

std::int64_t GetInt(const Json& obj, const std::string& path,
                    const std::string& key, std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  return ToInt(obj.at(key), Join(path, key));
}

std::vector<double> ToVector(const Json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) {
    throw ConfigError(path, "expected a nonempty array of numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(ToDouble(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

// A number is read as a 1x1 matrix; otherwise an array of equal-length rows.
Eigen::MatrixXd ToMatrix(const Json& v, const std::string& path) {
  if (v.is_number()) return Eigen::MatrixXd::Constant(1, 1, v.get<double>());
  if (!v.is_array() || v.empty()) {
    throw ConfigError(path, "expected a number or an array of rows");
  }
  const std::size_t rows = v.size();
  std::vector<std::vector<double>> data;
  for (std::size_t i = 0; i < rows; ++i) {
    data.push_back(ToVector(v[i], path + "[" + std::to_string(i) + "]"));
    if (data.back().size() != data.front().size()) {
      throw ConfigError(path, "rows have different lengths");
    }
  }
  Eigen::MatrixXd m(rows, data.front().size());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < data[i].size(); ++j) m(i, j) = data[i][j];
  }
  return m;
}

template <typename T, typename Fn>
T Section(const std::string& path, Fn&& build) {
  try {
    return build();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

SystemModel ParseModel(const Json& doc) {
  const std::string p = "model";
  const Json& m = Require(doc, "", p);
  Eigen::MatrixXd A = ToMatrix(Require(m, p, "A"), p + ".A");
  Eigen::MatrixXd C = ToMatrix(Require(m, p, "C"), p + ".C");
  Eigen::MatrixXd Q = ToMatrix(Require(m, p, "Q"), p + ".Q");
  Eigen::MatrixXd R = ToMatrix(Require(m, p, "R"), p + ".R");
  Eigen::MatrixXd Pi0 = m.contains("Pi0")
                            ? ToMatrix(m.at("Pi0"), p + ".Pi0")
                            : Eigen::MatrixXd::Zero(A.rows(), A.cols());
  return Section<SystemModel>(p, [&] {
    return SystemModel(std::move(A), std::move(C), std::move(Q), std::move(R),
                       std::move(Pi0));
  });
}

ChannelSpec ParseChannel(const Json& doc) {
  const std::string p = "channel";
  const Json& c = Require(doc, "", p);
  std::vector<double> gains = ToVector(Require(c, p, "gains"), p + ".gains");
  Eigen::MatrixXd kernel = ToMatrix(Require(c, p, "kernel"), p + ".kernel");
  const double sigma2 = ToDouble(Require(c, p, "sigma2"), p + ".sigma2");
  const double alpha = GetDouble(c, p, "alpha", 1.0);
  if (!(sigma2 > 0.0)) throw ConfigError(p + ".sigma2", "must be positive");
  if (!(alpha > 0.0)) throw ConfigError(p + ".alpha", "must be positive");
  if (kernel.rows() != static_cast<int>(gains.size()) ||
      kernel.cols() != static_cast<int>(gains.size())) {
    throw ConfigError(p + ".kernel", "must be square with one row per gain");
  }
  return Section<ChannelSpec>(p, [&] {
    return ChannelSpec(std::move(gains), std::move(kernel), sigma2, alpha);
  });
}

GameParams ParseGameParams(const Json& doc) {
  const std::string p = "game";
  const Json& g = Require(doc, "", p);
  GameParams params;
  params.actions_attacker =
      ToVector(Require(g, p, "actions_attacker"), p + ".actions_attacker");
  params.actions_sensor =
      ToVector(Require(g, p, "actions_sensor"), p + ".actions_sensor");
  params.alpha_s = GetDouble(g, p, "alpha_s", params.alpha_s);
  params.alpha_a = GetDouble(g, p, "alpha_a", params.alpha_a);
  params.beta = GetDouble(g, p, "beta", params.beta);
  params.tau_max = static_cast<int>(GetInt(g, p, "tau_max", params.tau_max));
  if (!(params.beta > 0.0 && params.beta < 1.0)) {
    throw ConfigError(p + ".beta", "must lie in (0, 1)");
  }
  if (params.tau_max < 0) throw ConfigError(p + ".tau_max", "must be >= 0");
  if (params.alpha_s < 0.0) throw ConfigError(p + ".alpha_s", "must be >= 0");
  if (params.alpha_a < 0.0) throw ConfigError(p + ".alpha_a", "must be >= 0");
  if (g.contains("gain_mode")) {
    const std::string mode = ToString(g.at("gain_mode"), p + ".gain_mode");
    if (mode == "stationary") {
      params.gain_mode = GainMode::kStationary;
    } else if (mode == "markov") {
      params.gain_mode = GainMode::kMarkov;
    } else {
      throw ConfigError(p + ".gain_mode", "expected stationary or markov");
    }
  }
  return params;
}

LearnConfig ParseLearn(const Json& doc, std::uint64_t seed) {
  const std::string p = "learn";
  LearnConfig cfg;
  cfg.seed = seed;
  if (!doc.contains(p)) return cfg;
  const Json& l = doc.at(p);
  if (!l.is_object()) throw ConfigError(p, "expected an object");
  cfg.episodes = GetInt(l, p, "episodes", cfg.episodes);
  cfg.steps_per_episode =
      static_cast<int>(GetInt(l, p, "steps_per_episode", cfg.steps_per_episode));
  cfg.lr_numerator = GetDouble(l, p, "lr_numerator", cfg.lr_numerator);
  cfg.lr_offset = GetDouble(l, p, "lr_offset", cfg.lr_offset);
  cfg.exploration = GetDouble(l, p, "exploration", cfg.exploration);
  cfg.curve_every = GetInt(l, p, "curve_every", cfg.curve_every);
  if (l.contains("checkpoints")) {
    const Json& c = l.at("checkpoints");
    if (!c.is_array()) throw ConfigError(p + ".checkpoints", "expected array");
    for (std::size_t i = 0; i < c.size(); ++i) {
      cfg.checkpoints.push_back(
          ToInt(c[i], p + ".checkpoints[" + std::to_string(i) + "]"));
    }
  }
  if (l.contains("solver")) {
    const std::string s = ToString(l.at("solver"), p + ".solver");
    if (s == "zero_sum") {
      cfg.solver = StageSolver::kZeroSum;
    } else if (s == "lemke_howson") {
      cfg.solver = StageSolver::kLemkeHowson;
    } else {
      throw ConfigError(p + ".solver", "expected zero_sum or lemke_howson");
    }
  }
  if (cfg.episodes < 0) throw ConfigError(p + ".episodes", "must be >= 0");
  if (cfg.steps_per_episode <= 0) {
    throw ConfigError(p + ".steps_per_episode", "must be positive");
  }
  if (!(cfg.lr_numerator > 0.0)) {
    throw ConfigError(p + ".lr_numerator", "must be positive");
  }
  if (!(cfg.lr_offset > 0.0)) {
    throw ConfigError(p + ".lr_offset", "must be positive");
  }
  if (!(cfg.exploration >= 0.0 && cfg.exploration <= 1.0)) {
    throw ConfigError(p + ".exploration", "must lie in [0, 1]");
  }
  if (cfg.curve_every < 0) throw ConfigError(p + ".curve_every", "must be >= 0");
  Section<int>(p, [&] {
    cfg.Validate();
    return 0;
  });
  return cfg;
}

std::optional<BayesConfig> ParseBayes(const Json& doc, int tau_max) {
  const std::string p = "bayes";
  if (!doc.contains(p)) return std::nullopt;
  const Json& b = doc.at(p);
  BayesConfig cfg;
  cfg.m = static_cast<int>(ToInt(Require(b, p, "m"), p + ".m"));
  if (cfg.m < 0 || cfg.m > tau_max) {
    throw ConfigError(p + ".m", "must lie in [0, tau_max]");
  }
  if (b.contains("belief")) {
    const std::string s = ToString(b.at("belief"), p + ".belief");
    if (s == "stationary") {
      cfg.belief = BeliefMode::kStationary;
    } else if (s == "kernel") {
      cfg.belief = BeliefMode::kKernel;
    } else {
      throw ConfigError(p + ".belief", "expected stationary or kernel");
    }
  }
  if (b.contains("payoff")) {
    const std::string s = ToString(b.at("payoff"), p + ".payoff");
    if (s == "immediate") {
      cfg.payoff = BayesPayoff::kImmediate;
    } else if (s == "expected_next") {
      cfg.payoff = BayesPayoff::kExpectedNext;
    } else if (s == "lookahead") {
      cfg.payoff = BayesPayoff::kLookahead;
    } else {
      throw ConfigError(p + ".payoff",
                        "expected immediate, expected_next or lookahead");
    }
  }
  return cfg;
}

SimulateConfig ParseSimulate(const Json& doc, int num_states) {
  const std::string p = "simulate";
  SimulateConfig cfg;
  if (!doc.contains(p)) return cfg;
  const Json& s = doc.at(p);
  if (!s.is_object()) throw ConfigError(p, "expected an object");
  cfg.horizon = static_cast<int>(GetInt(s, p, "horizon", cfg.horizon));
  cfg.start_state =
      static_cast<int>(GetInt(s, p, "start_state", cfg.start_state));
  if (s.contains("policy_file")) {
    cfg.policy_file = ToString(s.at("policy_file"), p + ".policy_file");
  }
  if (cfg.horizon <= 0) throw ConfigError(p + ".horizon", "must be positive");
  if (cfg.start_state < 0 || cfg.start_state >= num_states) {
    throw ConfigError(p + ".start_state", "out of range");
  }
  return cfg;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseDouble(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw std::runtime_error("malformed number '" + s + "'");
  }
  return v;
}

std::string ActionPairLabel(const GameSpec& spec, int a, int b) {
  return "(" + FormatDouble(spec.actions_attacker()[a]) + "," +
         FormatDouble(spec.actions_sensor()[b]) + ")";
}

}  // namespace

ExperimentConfig ParseConfig(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>", "expected an object");
  const Json& seed_field = Require(doc, "", "seed");
  if (!seed_field.is_number_unsigned() && !seed_field.is_number_integer()) {
    throw ConfigError("seed", "expected a nonnegative integer");
  }
  if (seed_field.is_number_integer() && seed_field.get<std::int64_t>() < 0) {
    throw ConfigError("seed", "expected a nonnegative integer");
  }
  const std::uint64_t seed = seed_field.get<std::uint64_t>();

  SystemModel model = ParseModel(doc);
  ChannelSpec channel = ParseChannel(doc);
  GameParams params = ParseGameParams(doc);
  GameSpec game = Section<GameSpec>("game", [&] {
    return GameSpec(std::move(model), std::move(channel), std::move(params));
  });
  ExperimentConfig cfg{std::move(game), ParseLearn(doc, seed), std::nullopt,
                       SimulateConfig{}, "out", seed};
  cfg.bayes = ParseBayes(doc, cfg.game.tau_max());
  cfg.simulate = ParseSimulate(doc, cfg.game.num_states());
  if (doc.contains("output_dir")) {
    cfg.output_dir = ToString(doc.at("output_dir"), "output_dir");
  }
  return cfg;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open config");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string(), e.what());
  }
  return ParseConfig(doc);
}

std::string FormatDouble(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("cannot format number");
  return std::string(buf, ptr);
}

void WriteTextFile(const std::filesystem::path& path,
                   const std::string& content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json QTableToJson(const GameSpec& spec, const QTable& q) {
  Json doc;
  doc["attacker_actions"] = spec.actions_attacker();
  doc["sensor_actions"] = spec.actions_sensor();
  Json states = Json::object();
  for (int s = 0; s < q.num_states(); ++s) {
    const GameState st = StateOf(spec, s);
    Json entry;
    entry["tau"] = st.tau;
    entry["g_s"] = spec.channel().gain(st.g_s);
    entry["g_a"] = spec.channel().gain(st.g_a);
    Json q1 = Json::object(), q2 = Json::object(), visits = Json::object();
    for (int a = 0; a < q.num_attacker_actions(); ++a) {
      for (int b = 0; b < q.num_sensor_actions(); ++b) {
        const std::string key = ActionPairLabel(spec, a, b);
        q1[key] = q.at(1, s, a, b);
        q2[key] = q.at(2, s, a, b);
        visits[key] = q.visits()[q.Cell(s, a, b)];
      }
    }
    entry["q1"] = std::move(q1);
    entry["q2"] = std::move(q2);
    entry["visits"] = std::move(visits);
    states["s" + std::to_string(s)] = std::move(entry);
  }
  doc["states"] = std::move(states);
  return doc;
}

QTable QTableFromJson(const GameSpec& spec, const Json& doc) {
  QTable q(spec.num_states(), spec.num_attacker_actions(),
           spec.num_sensor_actions());
  const Json& states = Require(doc, "", "states");
  for (int s = 0; s < spec.num_states(); ++s) {
    const std::string sp = "states.s" + std::to_string(s);
    const Json& entry = Require(states, "states", "s" + std::to_string(s));
    const Json& q1 = Require(entry, sp, "q1");
    const Json& q2 = Require(entry, sp, "q2");
    for (int a = 0; a < spec.num_attacker_actions(); ++a) {
      for (int b = 0; b < spec.num_sensor_actions(); ++b) {
        const std::string key = ActionPairLabel(spec, a, b);
        q.at(1, s, a, b) = ToDouble(Require(q1, sp + ".q1", key), sp);
        q.at(2, s, a, b) = ToDouble(Require(q2, sp + ".q2", key), sp);
        if (entry.contains("visits")) {
          q.visits()[q.Cell(s, a, b)] =
              ToInt(Require(entry.at("visits"), sp + ".visits", key), sp);
        }
      }
    }
  }
  return q;
}

std::string QTableCsv(const GameSpec& spec, const QTable& q, int player) {
  std::ostringstream out;
  out << "state";
  for (int a = 0; a < q.num_attacker_actions(); ++a) {
    for (int b = 0; b < q.num_sensor_actions(); ++b) {
      out << ",\"" << ActionPairLabel(spec, a, b) << "\"";
    }
  }
  out << "\n";
  for (int s = 0; s < q.num_states(); ++s) {
    out << "s" << s;
    for (int a = 0; a < q.num_attacker_actions(); ++a) {
      for (int b = 0; b < q.num_sensor_actions(); ++b) {
        out << "," << FormatDouble(q.at(player, s, a, b));
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string PoliciesCsv(const GameSpec& spec,
                        const std::vector<EquilibriumResult>& eq) {
  std::ostringstream out;
  out << "state,tau,g_s,g_a";
  for (double a : spec.actions_attacker()) out << ",P(a1=" << FormatDouble(a) << ")";
  for (double b : spec.actions_sensor()) out << ",P(a2=" << FormatDouble(b) << ")";
  out << ",value_p1,value_p2,deviation_gap\n";
  for (int s = 0; s < static_cast<int>(eq.size()); ++s) {
    const GameState st = StateOf(spec, s);
    out << s << "," << st.tau << "," << FormatDouble(spec.channel().gain(st.g_s))
        << "," << FormatDouble(spec.channel().gain(st.g_a));
    for (int a = 0; a < eq[s].strat_p1.size(); ++a) {
      out << "," << FormatDouble(eq[s].strat_p1.probs(a));
    }
    for (int b = 0; b < eq[s].strat_p2.size(); ++b) {
      out << "," << FormatDouble(eq[s].strat_p2.probs(b));
    }
    out << "," << FormatDouble(eq[s].value_p1) << ","
        << FormatDouble(eq[s].value_p2) << ","
        << FormatDouble(eq[s].deviation_gap) << "\n";
  }
  return out.str();
}

std::pair<Policy, Policy> ParsePoliciesCsv(const GameSpec& spec,
                                           const std::string& text) {
  const int nA = spec.num_attacker_actions();
  const int nB = spec.num_sensor_actions();
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty policy file");
  if (static_cast<int>(SplitCsvLine(line).size()) != 7 + nA + nB) {
    throw std::runtime_error("policy header does not match the action sets");
  }
  Policy pa(spec.num_states()), ps(spec.num_states());
  std::vector<bool> seen(spec.num_states(), false);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> cells = SplitCsvLine(line);
    const std::string where = "policy line " + std::to_string(line_no);
    if (static_cast<int>(cells.size()) != 7 + nA + nB) {
      throw std::runtime_error(where + ": wrong number of fields");
    }
    const int s = static_cast<int>(ParseDouble(cells[0]));
    if (s < 0 || s >= spec.num_states() || seen[s]) {
      throw std::runtime_error(where + ": bad or repeated state");
    }
    seen[s] = true;
    pa[s].probs.resize(nA);
    ps[s].probs.resize(nB);
    for (int a = 0; a < nA; ++a) pa[s].probs(a) = ParseDouble(cells[4 + a]);
    for (int b = 0; b < nB; ++b) ps[s].probs(b) = ParseDouble(cells[4 + nA + b]);
    if (!pa[s].IsValid() || !ps[s].IsValid()) {
      throw std::runtime_error(where + ": probabilities do not form a mix");
    }
  }
  for (int s = 0; s < spec.num_states(); ++s) {
    if (!seen[s]) throw std::runtime_error("policy file misses state " +
                                           std::to_string(s));
  }
  return {pa, ps};
}

std::string TrajectoryCsv(const std::vector<TrajectoryStep>& trajectory) {
  std::ostringstream out;
  out << "step,tau,g_s,g_a,a,b,q,gamma,trace_P,r1\n";
  for (const TrajectoryStep& r : trajectory) {
    out << r.step << "," << r.tau << "," << FormatDouble(r.g_s) << ","
        << FormatDouble(r.g_a) << "," << FormatDouble(r.a) << ","
        << FormatDouble(r.b) << "," << FormatDouble(r.q) << ","
        << (r.gamma ? 1 : 0) << "," << FormatDouble(r.trace_p) << ","
        << FormatDouble(r.r1) << "\n";
  }
  return out.str();
}

std::string CurveCsv(const GameSpec& spec,
                     const std::vector<CurvePoint>& curve) {
  std::ostringstream out;
  out << "episode,step";
  for (int a = 0; a < spec.num_attacker_actions(); ++a) {
    for (int b = 0; b < spec.num_sensor_actions(); ++b) {
      out << ",\"Q1(s0," << ActionPairLabel(spec, a, b) << ")\"";
    }
  }
  out << "\n";
  for (const CurvePoint& p : curve) {
    out << p.episode << "," << p.step;
    for (double v : p.q1_s0) out << "," << FormatDouble(v);
    out << "\n";
  }
  return out.str();
}

std::string TypeStrategyCsv(const GameSpec& spec, const TypeStrategy& s,
                            int player) {
  const std::string own = player == 1 ? "g_a" : "g_s";
  const std::string act = player == 1 ? "a1" : "a2";
  const std::vector<double>& actions =
      player == 1 ? spec.actions_attacker() : spec.actions_sensor();
  std::ostringstream out;
  for (int t = 0; t < static_cast<int>(s.per_type.size()); ++t) {
    out << "," << own << "=" << FormatDouble(spec.channel().gain(t));
  }
  out << "\n";
  for (int k = 0; k < static_cast<int>(actions.size()); ++k) {
    out << "\"Pr(" << act << "=" << FormatDouble(actions[k]) << "|" << own
        << ")\"";
    for (const MixedStrategy& m : s.per_type) {
      out << "," << FormatDouble(m.probs(k));
    }
    out << "\n";
  }
  return out.str();
}

MatrixFile ParseMatrixFile(const std::string& text) {
  std::vector<std::vector<std::vector<double>>> blocks(1);
  std::optional<std::pair<std::vector<double>, std::vector<double>>> profile;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto numbers = [&](const std::string& s) {
    std::istringstream ls(s);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) {
      try {
        row.push_back(ParseDouble(tok));
      } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line_no),
                          "malformed number '" + tok + "'");
      }
    }
    return row;
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = line.substr(0, line.find('#'));
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      if (!blocks.back().empty()) blocks.emplace_back();
      continue;
    }
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "profile") {
      const std::string rest = line.substr(line.find("profile") + 7);
      const std::size_t bar = rest.find('|');
      if (bar == std::string::npos) {
        throw ConfigError("line " + std::to_string(line_no),
                          "profile needs 'row probs | column probs'");
      }
      profile.emplace(numbers(rest.substr(0, bar)), numbers(rest.substr(bar + 1)));
      continue;
    }
    blocks.back().push_back(numbers(line));
  }
  if (blocks.back().empty()) blocks.pop_back();
  if (blocks.size() != 2) {
    throw ConfigError("matrix file", "expected exactly two matrices");
  }
  auto to_matrix = [](const std::vector<std::vector<double>>& rows,
                      const std::string& name) {
    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.front().size()) {
        throw ConfigError(name, "rows have different lengths");
      }
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  };
  MatrixFile out;
  out.payoff_p1 = to_matrix(blocks[0], "first matrix");
  out.payoff_p2 = to_matrix(blocks[1], "second matrix");
  if (out.payoff_p1.rows() != out.payoff_p2.rows() ||
      out.payoff_p1.cols() != out.payoff_p2.cols()) {
    throw ConfigError("matrix file", "matrices differ in shape");
  }
  if (profile) {
    auto to_mix = [](const std::vector<double>& v) {
      MixedStrategy m{Eigen::Map<const Eigen::VectorXd>(v.data(), v.size())};
      return m;
    };
    MixedStrategy r = to_mix(profile->first), c = to_mix(profile->second);
    if (r.size() != out.payoff_p1.rows() || c.size() != out.payoff_p1.cols()) {
      throw ConfigError("profile", "sizes do not match the matrices");
    }
    if (!r.IsValid() || !c.IsValid()) {
      // Printed mixes are rounded; renormalize small drift.
      if ((r.probs.array() < 0).any() || (c.probs.array() < 0).any() ||
          std::abs(r.probs.sum() - 1.0) > 1e-3 ||
          std::abs(c.probs.sum() - 1.0) > 1e-3) {
        throw ConfigError("profile", "not a pair of distributions");
      }
      r.probs /= r.probs.sum();
      c.probs /= c.probs.sum();
    }
    out.profile.emplace(std::move(r), std::move(c));
  }
  return out;
}

}  // namespace dosgame
