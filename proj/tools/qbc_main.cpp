// Copyright 2026 The qbclab Authors
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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qbc/errors.hpp"
#include "qbc/experiment.hpp"
#include "qbc/verify.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* format_opt = nullptr;
};

void add_common(CLI::App* sub, CommonOpts& o, bool with_format) {
  sub->add_option("--config", o.config_path, "JSON config file");
  o.seed_opt = sub->add_option("--seed", o.seed, "RNG seed override");
  o.out_opt = sub->add_option("--out", o.out_path, "report file path");
  if (with_format)
    o.format_opt = sub->add_option("--format", o.format,
                                   "report format: csv or json");
}

qbc::ExperimentConfig resolve_config(const CommonOpts& o) {
  qbc::ExperimentConfig cfg;
  if (!o.config_path.empty()) cfg = qbc::load_config(o.config_path);
  if (o.seed_opt && o.seed_opt->count()) cfg.seed = o.seed;
  if (o.out_opt && o.out_opt->count()) {
    qbc::OutputFormat fmt =
        cfg.output ? cfg.output->format : qbc::OutputFormat::Csv;
    cfg.output = qbc::OutputSpec{o.out_path, fmt};
  }
  if (o.format_opt && o.format_opt->count()) {
    if (!cfg.output)
      throw qbc::ConfigError(
          "--format requires --out or an output path in the config");
    if (o.format == "csv")
      cfg.output->format = qbc::OutputFormat::Csv;
    else if (o.format == "json")
      cfg.output->format = qbc::OutputFormat::Json;
    else
      throw qbc::ConfigError("unknown format '" + o.format +
                             "' (expected csv or json)");
  }
  return cfg;
}

const char* flavor_name(qbc::Flavor f) {
  switch (f) {
    case qbc::Flavor::Perfect: return "perfect";
    case qbc::Flavor::Near: return "near";
    default: return "custom";
  }
}

template <typename Report>
void persist(const qbc::ExperimentConfig& cfg, const Report& report) {
  if (!cfg.output) return;
  const std::string text = cfg.output->format == qbc::OutputFormat::Csv
                               ? qbc::to_csv(report, cfg.seed)
                               : qbc::to_json(report, cfg.seed);
  qbc::atomic_write_file(cfg.output->path, text);
  std::cout << "wrote " << cfg.output->path << "\n";
}

void print_row(const qbc::ReportRow& r) {
  std::cout << "N=" << r.N << " m=" << r.m << " d=" << r.d
            << "  delta_prime=" << qbc::format_sig12(r.delta_prime)
            << "  c=" << qbc::format_sig12(r.c_estimate)
            << "  bound=" << qbc::format_sig12(r.bound)
            << "  min_success=" << qbc::format_sig12(r.min_success)
            << "  mean_success=" << qbc::format_sig12(r.mean_success)
            << "  margin=" << qbc::format_sig12(r.margin)
            << "  all_bounds_hold=" << (r.all_bounds_hold ? "true" : "false")
            << "\n";
}

int do_conceal(const CommonOpts& o) {
  qbc::ExperimentConfig cfg = resolve_config(o);
  const qbc::ConcealReport rep = qbc::run_conceal(cfg);
  std::cout << "conceal  family=" << flavor_name(cfg.protocol.flavor)
            << " N=" << cfg.protocol.N << " samples=" << rep.rows.size()
            << "\n";
  std::cout << "max deficit = " << qbc::format_sig12(rep.max_deficit) << "\n";
  persist(cfg, rep);
  return 0;
}

int do_attack(const CommonOpts& o) {
  qbc::ExperimentConfig cfg = resolve_config(o);
  const qbc::ReportRow row = qbc::run_attack(cfg);
  std::cout << "attack  family=" << flavor_name(cfg.protocol.flavor) << "\n";
  print_row(row);
  persist(cfg, std::vector<qbc::ReportRow>{row});
  return row.all_bounds_hold ? 0 : 1;
}

int do_sweep(const CommonOpts& o) {
  qbc::ExperimentConfig cfg = resolve_config(o);
  if (!cfg.sweep) cfg.sweep = qbc::SweepSpec{};
  const std::vector<qbc::ReportRow> rows = qbc::run_sweep(cfg);
  std::cout << "sweep  family=" << flavor_name(cfg.protocol.flavor) << " N="
            << cfg.sweep->n_min << ".." << cfg.sweep->n_max << "\n";
  bool all = true;
  for (const qbc::ReportRow& r : rows) {
    print_row(r);
    all = all && r.all_bounds_hold;
  }
  persist(cfg, rows);
  return all ? 0 : 1;
}

int do_bob_sub(const CommonOpts& o) {
  qbc::ExperimentConfig cfg = resolve_config(o);
  const qbc::BobSubReport rep = qbc::run_bob_sub(cfg);
  std::cout << "bob-sub  n=" << rep.n << " m=" << rep.m
            << "  matched=" << (rep.matched ? "true" : "false") << "\n";
  std::cout << "trace_distance_b0 = " << qbc::format_sig12(rep.trace_distance_b0)
            << "\n";
  std::cout << "trace_distance_b1 = " << qbc::format_sig12(rep.trace_distance_b1)
            << "\n";
  std::cout << "collapse_prob_error = "
            << qbc::format_sig12(rep.collapse_prob_error) << "\n";
  std::cout << "collapse_state_error = "
            << qbc::format_sig12(rep.collapse_state_error) << "\n";
  std::cout << "all_bounds_hold = " << (rep.all_bounds_hold ? "true" : "false")
            << "\n";
  persist(cfg, rep);
  return rep.all_bounds_hold ? 0 : 1;
}

int do_verify(const CommonOpts& o) {
  qbc::ExperimentConfig cfg = resolve_config(o);
  const std::vector<qbc::CheckResult> results = qbc::run_verify(cfg);
  int passed = 0;
  for (const qbc::CheckResult& r : results) {
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << "  " << r.detail
              << "\n";
    if (r.passed) ++passed;
  }
  std::cout << "checks passed: " << passed << "/" << results.size() << "\n";
  if (cfg.output)
    qbc::atomic_write_file(cfg.output->path,
                           qbc::verify_to_json(results, cfg.seed));
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bit-commitment concealment and attack laboratory"};
  app.require_subcommand(1);

  CommonOpts conceal_o, attack_o, sweep_o, bobsub_o, verify_o;
  CLI::App* conceal_cmd =
      app.add_subcommand("conceal", "concealment deficits over action mixes");
  add_common(conceal_cmd, conceal_o, true);
  CLI::App* attack_cmd =
      app.add_subcommand("attack", "synthesize the mix-independent cheat");
  add_common(attack_cmd, attack_o, true);
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "attack across a security-parameter range");
  add_common(sweep_cmd, sweep_o, true);
  CLI::App* bobsub_cmd = app.add_subcommand(
      "bob-sub", "distribution substitution indistinguishability");
  add_common(bobsub_cmd, bobsub_o, true);
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the full invariant suite");
  add_common(verify_cmd, verify_o, false);  // verify reports are always JSON

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (conceal_cmd->parsed()) return do_conceal(conceal_o);
    if (attack_cmd->parsed()) return do_attack(attack_o);
    if (sweep_cmd->parsed()) return do_sweep(sweep_o);
    if (bobsub_cmd->parsed()) return do_bob_sub(bobsub_o);
    if (verify_cmd->parsed()) return do_verify(verify_o);
  } catch (const qbc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qbc::InvariantError& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;  // unreachable with require_subcommand(1)
}
