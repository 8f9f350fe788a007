// Copyright 2026 The catq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "catq/bounds.hpp"
#include "catq/config.hpp"
#include "catq/dephaser.hpp"
#include "catq/error.hpp"
#include "catq/expander.hpp"
#include "catq/pqc.hpp"
#include "catq/random.hpp"
#include "catq/recurrence.hpp"
#include "catq/weyl.hpp"

namespace catq::cli {
namespace {

using nlohmann::json;

// Verification thresholds for the checking commands.
constexpr double kExactTol = 1e-10;
constexpr double kTransitionTol = 1e-8;
constexpr double kChainTol = 1e-9;
constexpr double kMachineSlack = 1e-9;
constexpr double kRecurrenceTol = 1e-9;
constexpr double kIntegerTimeTol = 1e-8;
constexpr double kFidelityGap = 1e-9;

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  std::string out_dir;
  bool deterministic = false;
  std::string tol_file;
  std::string config;
};

class Emitter {
 public:
  Emitter(std::string command_line, const Globals& g, std::ostream& out)
      : command_line_(std::move(command_line)), g_(g), out_(out) {}

  void csv(const std::string& name, const std::string& body) {
    std::ostringstream s;
    s << "# command: " << command_line_ << '\n'
      << "# seed: " << g_.seed << '\n'
      << "# version: " << CATQ_VERSION << '\n'
      << "# tolerances: " << json(tolerances()).dump() << '\n';
    if (!g_.deterministic) s << "# timestamp: " << timestamp() << '\n';
    s << body;
    write(name + ".csv", s.str());
  }

  void json_doc(const std::string& name, const json& result) {
    json meta{{"command", command_line_},
              {"seed", g_.seed},
              {"version", CATQ_VERSION},
              {"tolerances", tolerances()}};
    if (!g_.deterministic) meta["timestamp"] = timestamp();
    write(name + ".json", json{{"meta", meta}, {"result", result}}.dump(2) + "\n");
  }

 private:
  void write(const std::string& file, const std::string& text) {
    if (g_.out_dir.empty()) {
      out_ << text;
      return;
    }
    const std::filesystem::path dir(g_.out_dir);
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = dir / file;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ResourceError("cannot write " + path.string());
    f << text;
    out_ << path.string() << '\n';
  }

  static std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  std::string command_line_;
  const Globals& g_;
  std::ostream& out_;
};

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

OrthonormalBasis make_basis(const std::string& kind, std::size_t d, std::uint64_t seed) {
  if (kind == "computational") return OrthonormalBasis::computational(d);
  if (kind == "fourier") return mub_pair(d).second;
  Rng rng = stream(seed, 0);
  return OrthonormalBasis(haar_unitary(d, rng).matrix());
}

DensityMatrix make_state(const std::string& kind, std::size_t d, std::uint64_t seed, std::uint64_t index) {
  if (kind == "coherent") return maximally_coherent_state(d);
  Rng rng = stream(seed, index);
  if (kind == "pure") return DensityMatrix::pure(haar_pure_state(d, rng));
  return random_density_matrix(d, rng);
}

ComplexMatrix uniform(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return ComplexMatrix::Identity(n, n) / static_cast<double>(d);
}

void check(bool ok, const std::string& what) {
  if (!ok) throw CheckFailed(what);
}

// Flattens a JSON config into argv form: command first, then --key value.
std::vector<std::string> expand_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw CLI::ValidationError("--config", e.what());
  }
  if (!j.is_object()) throw CLI::ValidationError("--config", "config must be a JSON object");
  if (!j.contains("command") || !j["command"].is_string()) {
    throw CLI::ValidationError("--config", "config needs a string \"command\"");
  }
  std::vector<std::string> args{j["command"].get<std::string>()};
  for (const auto& [key, value] : j.items()) {
    if (key == "command") continue;
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) {
        if (!joined.empty()) joined += ',';
        joined += v.is_string() ? v.get<std::string>() : v.dump();
      }
      args.insert(args.end(), {flag, joined});
    } else if (value.is_string()) {
      args.insert(args.end(), {flag, value.get<std::string>()});
    } else if (value.is_number()) {
      args.insert(args.end(), {flag, value.dump()});
    } else {
      throw CLI::ValidationError("--config", "unsupported value for " + key);
    }
  }
  return args;
}

std::string join(const std::vector<std::string>& args) {
  std::string s = "catq";
  for (const auto& a : args) s += ' ' + a;
  return s;
}

class ToleranceScope {
 public:
  ToleranceScope() : saved_(tolerances()) {}
  ~ToleranceScope() { set_tolerances(saved_); }
  ToleranceScope(const ToleranceScope&) = delete;
  ToleranceScope& operator=(const ToleranceScope&) = delete;

 private:
  Tolerances saved_;
};

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  ToleranceScope scope;
  Globals g;
  CLI::App app{"catq: catalytic randomness experiments", "catq"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", g.seed, "master seed");
  app.add_option("--out", g.out_dir, "directory for emitted files (stdout if omitted)");
  app.add_flag("--deterministic", g.deterministic, "omit timestamps from headers");
  app.add_option("--tol-file", g.tol_file, "JSON tolerance overrides");
  app.add_option("--config", g.config, "JSON file mirroring the flags, with a \"command\" key");

  std::function<void(Emitter&)> action;

  std::size_t d = 4, trials = 50, pairs = 10, n_sys = 2, steps = 20, m = 3, samples = 64, e = 3, k = 20,
              rounds = 10, m_mix = 0;
  long long kmax = 0;
  std::string basis = "random", mode = "quantum", state = "random", sigma = "random", error = "0000",
              message = "random", kind = "quantum";
  std::vector<std::size_t> m_values{3, 5, 7};

  auto* dephase = app.add_subcommand("dephase", "quantum dephasing residuals");
  dephase->add_option("--d", d)->check(CLI::Range(2, 4096));
  dephase->add_option("--trials", trials)->check(CLI::PositiveNumber);
  dephase->add_option("--basis", basis)->check(CLI::IsMember({"computational", "fourier", "random"}));
  dephase->callback([&] {
    action = [&](Emitter& em) {
      const OrthonormalBasis b = make_basis(basis, d, g.seed);
      const NoisyChannel ch = build_dephasing_unitary(d, b);
      const std::size_t mm = ch.randomness_dim();
      std::ostringstream csv;
      csv << "trial,d,m,residual,catalyst_residual\n";
      bool ok = true;
      for (std::size_t t = 0; t < trials; ++t) {
        const DensityMatrix rho = make_state("random", d, g.seed, 1 + t);
        const double r = trace_norm(apply(ch, rho).matrix() - pinch(rho, b).matrix());
        const double c = trace_norm(ancilla_marginal(ch, rho).matrix() - uniform(mm));
        ok = ok && r <= kExactTol && c <= kExactTol;
        csv << t << ',' << d << ',' << mm << ',' << fmt(r) << ',' << fmt(c) << '\n';
      }
      em.csv("dephase", csv.str());
      check(ok, "dephasing residual above 1e-10");
    };
  });

  auto* classical = app.add_subcommand("classical-dephase", "classical Z-mixture dephasing residuals");
  classical->add_option("--d", d)->check(CLI::Range(2, 4096));
  classical->add_option("--trials", trials)->check(CLI::PositiveNumber);
  classical->callback([&] {
    action = [&](Emitter& em) {
      const NoisyChannel ch = classical_dephasing_channel(d);
      const OrthonormalBasis b = OrthonormalBasis::computational(d);
      std::ostringstream csv;
      csv << "trial,d,m,residual\n";
      bool ok = true;
      for (std::size_t t = 0; t < trials; ++t) {
        const DensityMatrix rho = make_state("random", d, g.seed, 1 + t);
        const double r = trace_norm(apply(ch, rho).matrix() - pinch(rho, b).matrix());
        ok = ok && r <= kExactTol;
        csv << t << ',' << d << ',' << ch.randomness_dim() << ',' << fmt(r) << '\n';
      }
      em.csv("classical-dephase", csv.str());
      check(ok, "dephasing residual above 1e-10");
    };
  });

  auto* transition = app.add_subcommand("transition", "majorization-driven state transitions");
  transition->add_option("--d", d)->check(CLI::Range(2, 64));
  transition->add_option("--pairs", pairs)->check(CLI::PositiveNumber);
  transition->add_option("--mode", mode)->check(CLI::IsMember({"quantum", "classical"}));
  transition->callback([&] {
    action = [&](Emitter& em) {
      const TransitionMode tm = mode == "quantum" ? TransitionMode::Quantum : TransitionMode::Classical;
      std::ostringstream csv;
      csv << "pair,d,mode,m,error\n";
      bool ok = true;
      for (std::size_t p = 0; p < pairs; ++p) {
        Rng rng = stream(g.seed, p);
        const MajorizingPair pair = random_majorizing_pair(d, rng);
        const Transition t = transition_channel(pair.rho, pair.rho_prime, tm);
        const double r = trace_norm(apply(t, pair.rho).matrix() - pair.rho_prime.matrix());
        ok = ok && r <= kTransitionTol;
        csv << p << ',' << d << ',' << mode << ',' << t.dephase.randomness_dim() << ',' << fmt(r) << '\n';
      }
      em.csv("transition", csv.str());
      check(ok, "transition error above 1e-8");
    };
  });

  auto* chain = app.add_subcommand("chain", "one catalyst dephasing several systems");
  chain->add_option("--n", n_sys)->check(CLI::Range(1, 8));
  chain->add_option("--d", d)->check(CLI::Range(2, 16));
  chain->add_option("--state", state)->check(CLI::IsMember({"coherent", "random", "pure"}));
  chain->callback([&] {
    action = [&](Emitter& em) {
      std::vector<DensityMatrix> states;
      for (std::size_t i = 0; i < n_sys; ++i) states.push_back(make_state(state, d, g.seed, i));
      const ChainResult r =
          catalytic_chain(states, std::vector<OrthonormalBasis>(n_sys, OrthonormalBasis::computational(d)));
      json mi = json::array();
      for (const auto& p : r.report.mutual_information) {
        mi.push_back({{"i", p.i}, {"j", p.j}, {"value", p.mutual_information}});
      }
      em.json_doc("chain", {{"n", n_sys},
                            {"d", d},
                            {"m", ceil_sqrt(d)},
                            {"marginal_residuals", r.report.marginal_residuals},
                            {"catalyst_residual", r.report.catalyst_residual},
                            {"mutual_information", mi}});
      bool ok = r.report.catalyst_residual <= kChainTol;
      for (double x : r.report.marginal_residuals) ok = ok && x <= kChainTol;
      check(ok, "chain residual above 1e-9");
    };
  });

  auto* machine = app.add_subcommand("machine", "iterated catalytic dephasing machine");
  machine->add_option("--d", d)->check(CLI::Range(2, 256));
  machine->add_option("--steps", steps)->check(CLI::PositiveNumber);
  machine->add_option("--state", state)->check(CLI::IsMember({"coherent", "random", "pure"}));
  machine->add_option("--sigma", sigma)->check(CLI::IsMember({"random", "pure", "uniform"}));
  machine->callback([&] {
    action = [&](Emitter& em) {
      const std::size_t mm = ceil_sqrt(d);
      const DensityMatrix rho = make_state(state, d, g.seed, 0);
      std::vector<DensityMatrix> catalysts;
      for (std::size_t i = 0; i < steps; ++i) {
        catalysts.push_back(sigma == "uniform" ? DensityMatrix::maximally_mixed(mm)
                                               : make_state(sigma, mm, g.seed, 1 + i));
      }
      const MachineReport r = machine_iterate(rho, catalysts);
      em.csv("machine", r.csv());
      bool ok = true;
      double prev = r.initial_entropy;
      for (const MachineRow& row : r.rows) {
        ok = ok && row.dist_system <= row.bound + kMachineSlack &&
             row.dist_ancilla <= row.ancilla_bound + kMachineSlack && row.entropy >= prev - kMachineSlack;
        prev = row.entropy;
      }
      check(ok, "machine bound or entropy monotonicity violated");
    };
  });

  auto* recur = app.add_subcommand("recur", "stroboscopic recurrence residuals");
  recur->add_option("--m", m)->check(CLI::Range(3, 63));
  recur->add_option("--kmax", kmax, "largest power (default 2m)");
  recur->add_option("--state", state)->check(CLI::IsMember({"coherent", "random", "pure"}));
  recur->callback([&] {
    action = [&](Emitter& em) {
      const RecurrenceSpec spec = RecurrenceSpec::make(m);
      const ControlledUnitary v = recurrence_controlled(spec);
      const OrthonormalBasis b = OrthonormalBasis::computational(spec.d);
      const DensityMatrix rho = make_state(state, spec.d, g.seed, 0);
      const long long last = kmax > 0 ? kmax : 2 * static_cast<long long>(m);
      std::ostringstream csv;
      csv << "m,k,residual\n";
      bool ok = true;
      for (long long kk = 1; kk <= last; ++kk) {
        const double r = trace_norm(stroboscopic_map(v, rho, kk).matrix() - predicted_map(kk, m, rho, b).matrix());
        ok = ok && r <= kRecurrenceTol;
        csv << m << ',' << kk << ',' << fmt(r) << '\n';
      }
      em.csv("recur", csv.str());
      check(ok, "stroboscopic map differs from the predicted map by more than 1e-9");
    };
  });

  auto* fig3 = app.add_subcommand("fig3", "continuous-time dephasing sweep, one CSV per m");
  fig3->add_option("--m", m_values)->delimiter(',');
  fig3->add_option("--samples", samples)->check(CLI::Range(2, 100000));
  fig3->callback([&] {
    action = [&](Emitter& em) {
      const std::vector<TimeSweep> sweeps = time_sweep(m_values, samples);
      bool ok = true;
      for (const TimeSweep& s : sweeps) {
        em.csv("fig3_m" + std::to_string(s.m), s.csv());
        err << "m=" << s.m << " midpoint trace-norm " << s.midpoint_distance << " hilbert-schmidt "
            << s.midpoint_hs_distance << '\n';
        ok = ok && s.max_integer_distance <= kIntegerTimeTol && s.max_recurrence_deviation <= kIntegerTimeTol;
      }
      check(ok, "integer-time distance above 1e-8");
    };
  });

  auto* pqc = app.add_subcommand("pqc", "two-qubit private quantum channel transcript");
  pqc->add_option("--message", message)->check(CLI::IsMember({"random", "pure", "coherent"}));
  pqc->add_option("--error", error, "Pauli error bits abcd");
  pqc->add_option("--rounds", rounds)->check(CLI::PositiveNumber);
  pqc->callback([&] {
    action = [&](Emitter& em) {
      const PauliError pe = PauliError::parse(error);
      const DensityMatrix rho = make_state(message, PqcKey::kMessageDim, g.seed, 0);
      const Transcript t = pqc_transmit(rho, pe, rounds, g.seed);
      em.json_doc("pqc", {{"message", matrix_to_json(t.message.matrix())},
                          {"error", pe.str()},
                          {"ciphertext_marginal_distance", t.ciphertext_marginal_distance},
                          {"syndrome", t.syndrome.str()},
                          {"verdict", t.accepted ? "accept" : "reject"},
                          {"ebits_consumed", t.ebits_consumed},
                          {"recovered_fidelity", t.recovered_fidelity}});
      check(t.ciphertext_marginal_distance <= kExactTol && t.recovered_fidelity >= 1.0 - kFidelityGap,
            "ciphertext not maximally mixed or message not recovered");
    };
  });

  auto* expander = app.add_subcommand("expander", "phase-space expander convergence");
  expander->add_option("--e", e)->check(CLI::Range(3, 31));
  expander->add_option("--k", k)->check(CLI::Range(0, 10000));
  expander->add_option("--state", state)->check(CLI::IsMember({"coherent", "random", "pure"}));
  expander->callback([&] {
    action = [&](Emitter& em) {
      const ExpanderSpec spec = ExpanderSpec::make(e, k);
      const ConvergenceReport r = expander_convergence(spec, make_state(state, spec.d, g.seed, 0));
      em.csv("expander", r.csv());
      err << "e=" << e << " fitted rate " << r.fitted_rate << '\n';
      check(r.bound_satisfied, "measured distance exceeds the bound");
    };
  });

  auto* bounds = app.add_subcommand("bounds", "epsilon-dephasing report against the lower bounds");
  bounds->add_option("--d", d)->check(CLI::Range(2, 256));
  bounds->add_option("--kind", kind)->check(CLI::IsMember({"quantum", "classical"}));
  bounds->add_option("--m", m_mix, "classical mixture size (default d)");
  bounds->callback([&] {
    action = [&](Emitter& em) {
      const OrthonormalBasis b = OrthonormalBasis::computational(d);
      const auto probes = default_probes(d, g.seed);
      json result;
      bool ok = true;
      if (kind == "classical") {
        const std::size_t size = m_mix == 0 ? d : m_mix;
        const NoisyChannel ch = truncated_classical_channel(d, size);
        const EpsilonDephasingReport r = measure_epsilon(ch, b, probes);
        const RankWitness w = rank_witness(ch);
        result = r;
        result["rank_witness"] = {{"rank", w.rank}, {"m", w.m}, {"rank_within_m", w.rank_within_m},
                                  {"epsilon_from_rank", w.epsilon_from_rank}};
        ok = r.satisfied && w.rank_within_m;
      } else {
        const NoisyChannel ch = build_dephasing_unitary(d, b);
        const EpsilonDephasingReport r = measure_epsilon(ch, b, probes);
        const EntropyBudget budget = entropy_budget_check(ch);
        result = r;
        result["entropy_budget"] = {{"joint_entropy", budget.joint_entropy},
                                    {"output_entropy", budget.output_entropy},
                                    {"ancilla_entropy_out", budget.ancilla_entropy_out},
                                    {"chain_holds", budget.chain_holds},
                                    {"saturated", budget.saturated}};
        ok = r.satisfied && budget.chain_holds;
      }
      em.json_doc("bounds", result);
      check(ok, "bound not satisfied");
    };
  });

  std::vector<std::string> args = args_in;
  try {
    // --config is expanded before parsing so its keys go through the same checks.
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string path;
      if (args[i] == "--config" && i + 1 < args.size()) {
        path = args[i + 1];
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      } else if (args[i].rfind("--config=", 0) == 0) {
        path = args[i].substr(9);
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        continue;
      }
      const std::vector<std::string> expanded = expand_config(path);
      args.insert(args.end(), expanded.begin(), expanded.end());
      break;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (!g.tol_file.empty()) {
      std::ifstream f(g.tol_file);
      if (!f) throw PreconditionError("cannot open tolerance file " + g.tol_file);
      set_tolerances(json::parse(f).get<Tolerances>());
    }
    Emitter em(join(args), g, out);
    action(em);
  } catch (const CheckFailed& ex) {
    err << "check failed: " << ex.what() << '\n';
    return kCheckFailed;
  } catch (const json::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsage;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsage;
  } catch (const std::filesystem::filesystem_error& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace catq::cli
