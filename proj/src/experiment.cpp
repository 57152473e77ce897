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

#include "qbc/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numeric>
#include <sstream>

#include "qbc/errors.hpp"
#include "qbc/tolerances.hpp"

namespace qbc {

using json = nlohmann::ordered_json;

// --- config parsing ---

namespace {

Complex parse_complex(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(std::string(where) + ": complex values are [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

CVec parse_cvector(const json& j, long expect, const char* where) {
  if (!j.is_array() || static_cast<long>(j.size()) != expect)
    throw ConfigError(std::string(where) + ": expected " + std::to_string(expect) +
                      " complex entries");
  CVec v(expect);
  for (long i = 0; i < expect; ++i) v(i) = parse_complex(j[i], where);
  return v;
}

CMat parse_cmatrix(const json& j, long dim, const char* where) {
  if (!j.is_array() || static_cast<long>(j.size()) != dim)
    throw ConfigError(std::string(where) + ": expected a " + std::to_string(dim) + "x" +
                      std::to_string(dim) + " row-major matrix");
  CMat m(dim, dim);
  for (long r = 0; r < dim; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<long>(row.size()) != dim)
      throw ConfigError(std::string(where) + ": ragged matrix row");
    for (long c = 0; c < dim; ++c) m(r, c) = parse_complex(row[c], where);
  }
  return m;
}

int parse_int(const json& j, const char* key, int fallback, int lo, int hi) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer())
    throw ConfigError(std::string(key) + " must be an integer");
  const long long v = j[key].get<long long>();
  if (v < lo || v > hi)
    throw ConfigError(std::string(key) + " out of range [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  return static_cast<int>(v);
}

std::vector<double> parse_weights(const json& j, const char* where) {
  if (!j.is_array() || j.empty())
    throw ConfigError(std::string(where) + ": expected a nonempty number array");
  std::vector<double> w;
  w.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw ConfigError(std::string(where) + ": non-numeric weight");
    w.push_back(x.get<double>());
  }
  return w;
}

ProtocolSpec parse_protocol(const json& j) {
  ProtocolSpec spec;
  if (!j.is_object()) throw ConfigError("protocol must be an object");
  const std::string family = j.value("family", std::string("near"));
  if (family == "perfect")
    spec.flavor = Flavor::Perfect;
  else if (family == "near")
    spec.flavor = Flavor::Near;
  else if (family == "custom")
    spec.flavor = Flavor::Custom;
  else
    throw ConfigError("protocol.family must be perfect, near or custom");

  if (spec.flavor != Flavor::Custom) {
    spec.N = parse_int(j, "N", spec.N, 1, 64);
    spec.m = parse_int(j, "m", spec.m, 1, 64);
    spec.d = parse_int(j, "d", spec.d, 2, 16);
    return spec;
  }

  // Custom fields may sit in a "custom" sub-object or flat on "protocol".
  const json& src = j.contains("custom") ? j["custom"] : j;
  if (!src.is_object()) throw ConfigError("protocol.custom must be an object");
  CustomProtocolSpec c;
  c.d_A = parse_int(src, "d_A", 0, 1, 64);
  c.d_B = parse_int(src, "d_B", 0, 1, 64);
  c.N = parse_int(src, "N", 1, 1, 64);
  if (c.d_A == 0 || c.d_B == 0)
    throw ConfigError("custom protocol requires d_A and d_B");
  if (!src.contains("phi0") || !src.contains("phi1") || !src.contains("actions"))
    throw ConfigError("custom protocol requires phi0, phi1 and actions");
  const long dim = static_cast<long>(c.d_A) * c.d_B;
  c.phi0 = parse_cvector(src["phi0"], dim, "protocol.phi0");
  c.phi1 = parse_cvector(src["phi1"], dim, "protocol.phi1");
  if (!src["actions"].is_array() || src["actions"].empty())
    throw ConfigError("protocol.actions must be a nonempty matrix array");
  for (const auto& a : src["actions"])
    c.actions.push_back(parse_cmatrix(a, c.d_B, "protocol.actions"));
  spec.N = c.N;
  spec.m = static_cast<int>(c.actions.size());
  spec.d = c.d_A;
  spec.custom = std::move(c);
  return spec;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");

  ExperimentConfig cfg;
  try {
    if (j.contains("protocol")) cfg.protocol = parse_protocol(j["protocol"]);
    cfg.omega_samples = parse_int(j, "omega_samples", cfg.omega_samples, 1, 100000);
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
        throw ConfigError("seed must be a nonnegative integer");
      if (j["seed"].is_number_integer() && j["seed"].get<long long>() < 0)
        throw ConfigError("seed must be a nonnegative integer");
      cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("sweep")) {
      if (!j["sweep"].is_object()) throw ConfigError("sweep must be an object");
      SweepSpec s;
      s.n_min = parse_int(j["sweep"], "N_min", s.n_min, 1, 64);
      s.n_max = parse_int(j["sweep"], "N_max", s.n_max, 1, 64);
      if (s.n_min > s.n_max) throw ConfigError("sweep: N_min exceeds N_max");
      cfg.sweep = s;
    }
    if (j.contains("output")) {
      if (!j["output"].is_object() || !j["output"].contains("path") ||
          !j["output"]["path"].is_string())
        throw ConfigError("output requires a string path");
      OutputSpec o;
      o.path = j["output"]["path"].get<std::string>();
      const std::string fmt = j["output"].value("format", std::string("csv"));
      if (fmt == "csv")
        o.format = OutputFormat::Csv;
      else if (fmt == "json")
        o.format = OutputFormat::Json;
      else
        throw ConfigError("output.format must be csv or json");
      cfg.output = std::move(o);
    }
    if (j.contains("bob_sub")) {
      const json& bs = j["bob_sub"];
      if (!bs.is_object() || !bs.contains("omegas") || !bs.contains("p"))
        throw ConfigError("bob_sub requires omegas and p");
      BobSubSpec b;
      if (!bs["omegas"].is_array() || bs["omegas"].empty())
        throw ConfigError("bob_sub.omegas must be a nonempty array");
      for (const auto& w : bs["omegas"])
        b.omegas.push_back(parse_weights(w, "bob_sub.omegas"));
      b.p = parse_weights(bs["p"], "bob_sub.p");
      if (bs.contains("omega0"))
        b.omega0 = parse_weights(bs["omega0"], "bob_sub.omega0");
      cfg.bob_sub = std::move(b);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ProtocolInstance build_protocol(const ProtocolSpec& spec) {
  if (spec.flavor != Flavor::Custom)
    return make_family(spec.flavor, spec.N, spec.m, spec.d);
  const CustomProtocolSpec& c = *spec.custom;
  return ProtocolInstance(c.d_A, c.d_B, c.phi0, c.phi1, c.actions, c.N, Flavor::Custom);
}

namespace {

ProtocolInstance build_checked(const ProtocolSpec& spec) {
  try {
    return build_protocol(spec);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    // A custom matrix failing its type invariants is a configuration
    // problem from the CLI's point of view.
    throw ConfigError(std::string("protocol rejected: ") + e.what());
  }
}

}  // namespace

// --- command cores ---

ConcealReport run_conceal(const ExperimentConfig& cfg) {
  const ProtocolInstance p = build_checked(cfg.protocol);
  Rng rng(cfg.seed);
  ConcealReport rep;
  for (int j = 0; j < p.m(); ++j) {
    const double d =
        concealment_deficit(p, Distribution::point_mass(p.m(), j)).deficit;
    rep.rows.push_back({"extreme", j, d});
  }
  for (int i = 0; i < cfg.omega_samples; ++i) {
    const double d = concealment_deficit(p, Distribution(rng.simplex(p.m()))).deficit;
    rep.rows.push_back({"random", i, d});
  }
  rep.max_deficit = 0.0;
  for (const ConcealRow& r : rep.rows)
    rep.max_deficit = std::max(rep.max_deficit, r.deficit);
  return rep;
}

ReportRow attack_row(const ProtocolInstance& p, int n_label, int d_label,
                     int omega_samples, Rng& rng) {
  const UniversalCheat uc = universal_cheat(p);
  const CheatReport rep = alpha_beta_decomposition(p, uc.u_alice);
  const double slack = 1e-9;

  ReportRow row;
  row.N = n_label;
  row.m = p.m();
  row.d = d_label;
  row.delta_prime = rep.delta_prime;
  row.c_estimate = rep.c_estimate;
  row.bound = rep.bound;

  bool ok = true;
  if (rep.delta_prime > 1e-12)
    ok = ok && rep.c_estimate > 0.0 && rep.c_estimate <= p.m() + 1e-12;

  std::vector<double> successes;
  auto eval = [&](const Distribution& omega) {
    const double s = cheat_success(p, omega, uc.u_alice);
    successes.push_back(s);
    ok = ok && (s > row.bound - slack);
    if (rep.delta_prime <= 1e-12) ok = ok && (s >= 1.0 - slack);
    try {
      weighted_moments(rep, omega);
    } catch (const InvariantError&) {
      ok = false;
    }
  };
  for (int j = 0; j < p.m(); ++j) eval(Distribution::point_mass(p.m(), j));
  for (int i = 0; i < omega_samples; ++i) eval(Distribution(rng.simplex(p.m())));

  for (int j = 0; j < p.m(); ++j) {
    const double a = rep.alphas[j], b = rep.betas[j];
    ok = ok && (0.5 * (a * a + b * b) <= a + 1e-12);
  }

  row.min_success = *std::min_element(successes.begin(), successes.end());
  row.mean_success =
      std::accumulate(successes.begin(), successes.end(), 0.0) / successes.size();
  row.margin = row.min_success - row.bound;
  row.all_bounds_hold = ok;
  return row;
}

ReportRow run_attack(const ExperimentConfig& cfg) {
  const ProtocolInstance p = build_checked(cfg.protocol);
  Rng rng(cfg.seed);
  return attack_row(p, cfg.protocol.N, cfg.protocol.d, cfg.omega_samples, rng);
}

std::vector<ReportRow> run_sweep(const ExperimentConfig& cfg) {
  if (!cfg.sweep) throw ConfigError("sweep requires a sweep range");
  if (cfg.protocol.flavor == Flavor::Custom)
    throw ConfigError("sweep requires a built-in family (perfect or near)");
  std::vector<ReportRow> rows;
  for (int n = cfg.sweep->n_min; n <= cfg.sweep->n_max; ++n) {
    const ProtocolInstance p = make_family(cfg.protocol.flavor, n, cfg.protocol.m,
                                           cfg.protocol.d);
    // Independent stream per row: results do not depend on evaluation order.
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(n)));
    rows.push_back(attack_row(p, n, cfg.protocol.d, cfg.omega_samples, rng));
  }
  return rows;
}

BobSubReport run_bob_sub(const ExperimentConfig& cfg) {
  const ProtocolInstance p = build_checked(cfg.protocol);

  std::vector<Distribution> omegas;
  std::vector<double> pk_w;
  std::optional<std::vector<double>> omega0_w;
  if (cfg.bob_sub) {
    try {
      for (const auto& w : cfg.bob_sub->omegas) omegas.emplace_back(w);
      pk_w = cfg.bob_sub->p;
      omega0_w = cfg.bob_sub->omega0;
    } catch (const std::exception& e) {
      throw ConfigError(std::string("bob_sub rejected: ") + e.what());
    }
  } else {
    // Default demonstration: uniform mixture of the extreme points, which
    // matches the uniform target exactly.
    for (int j = 0; j < p.m(); ++j)
      omegas.push_back(Distribution::point_mass(p.m(), j));
    pk_w.assign(p.m(), 1.0 / p.m());
  }

  BobSubReport rep;
  rep.n = static_cast<int>(omegas.size());
  rep.m = p.m();
  try {
    const Distribution pk{pk_w};
    const MetaPurification mp = meta_purify(p, omegas, pk);
    const Distribution eff = effective_distribution(omegas, pk);
    const Distribution target = omega0_w ? Distribution(*omega0_w) : eff;
    if (target.size() != p.m())
      throw ConfigError("bob_sub: omega0 length does not match action count");
    rep.effective = eff.weights();
    rep.omega0 = target.weights();

    rep.matched = true;
    for (int j = 0; j < p.m(); ++j)
      rep.matched = rep.matched && std::abs(eff.at(j) - target.at(j)) <= 1e-12;

    const DensityOperator vis0 = alice_visible(mp.state0);
    const DensityOperator vis1 = alice_visible(mp.state1);
    rep.trace_distance_b0 =
        trace_distance(vis0, alice_visible(appendix_state(p, target, 0)));
    rep.trace_distance_b1 =
        trace_distance(vis1, alice_visible(appendix_state(p, target, 1)));

    double prob_sum0 = 0.0, prob_sum1 = 0.0;
    for (int k = 0; k < rep.n; ++k) {
      if (pk.at(k) <= 0.0) continue;
      for (int b = 0; b < 2; ++b) {
        const auto [prob, state] = collapse_ancilla(mp, b, k);
        (b == 0 ? prob_sum0 : prob_sum1) += prob;
        rep.collapse_prob_error =
            std::max(rep.collapse_prob_error, std::abs(prob - pk.at(k)));
        const Complex o = overlap(state, committed_state(p, b, mp.omegas[k]));
        rep.collapse_state_error =
            std::max(rep.collapse_state_error, std::abs(1.0 - std::abs(o)));
      }
    }
    rep.collapse_prob_error =
        std::max({rep.collapse_prob_error, std::abs(prob_sum0 - 1.0),
                  std::abs(prob_sum1 - 1.0)});

    rep.all_bounds_hold = rep.matched && rep.trace_distance_b0 <= 1e-10 &&
                          rep.trace_distance_b1 <= 1e-10 &&
                          rep.collapse_prob_error <= 1e-10 &&
                          rep.collapse_state_error <= 1e-10;
  } catch (const ConfigError&) {
    throw;
  } catch (const InvariantError& e) {
    throw ConfigError(std::string("bob_sub rejected: ") + e.what());
  }
  return rep;
}

// --- serialization ---

std::string format_sig12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

const char* kRowHeader =
    "N,m,d,delta_prime,c_estimate,min_success,mean_success,bound,margin,"
    "all_bounds_hold";

std::string seed_comment(std::uint64_t seed) {
  return "# seed=" + std::to_string(seed) + "\n";
}

json row_json(const ReportRow& r) {
  json j;
  j["N"] = r.N;
  j["m"] = r.m;
  j["d"] = r.d;
  j["delta_prime"] = r.delta_prime;
  j["c_estimate"] = r.c_estimate;
  j["min_success"] = r.min_success;
  j["mean_success"] = r.mean_success;
  j["bound"] = r.bound;
  j["margin"] = r.margin;
  j["all_bounds_hold"] = r.all_bounds_hold;
  return j;
}

}  // namespace

std::string to_csv(const std::vector<ReportRow>& rows, std::uint64_t seed) {
  std::string out = seed_comment(seed);
  out += kRowHeader;
  out += '\n';
  for (const ReportRow& r : rows) {
    out += std::to_string(r.N) + ',' + std::to_string(r.m) + ',' +
           std::to_string(r.d) + ',' + format_sig12(r.delta_prime) + ',' +
           format_sig12(r.c_estimate) + ',' + format_sig12(r.min_success) + ',' +
           format_sig12(r.mean_success) + ',' + format_sig12(r.bound) + ',' +
           format_sig12(r.margin) + ',' + (r.all_bounds_hold ? "true" : "false") +
           '\n';
  }
  return out;
}

std::string to_json(const std::vector<ReportRow>& rows, std::uint64_t seed) {
  json j;
  j["seed"] = seed;
  j["rows"] = json::array();
  for (const ReportRow& r : rows) j["rows"].push_back(row_json(r));
  return j.dump(2) + "\n";
}

std::string to_csv(const ConcealReport& report, std::uint64_t seed) {
  std::string out = seed_comment(seed);
  out += "kind,index,deficit\n";
  for (const ConcealRow& r : report.rows)
    out += r.kind + ',' + std::to_string(r.index) + ',' + format_sig12(r.deficit) + '\n';
  return out;
}

std::string to_json(const ConcealReport& report, std::uint64_t seed) {
  json j;
  j["seed"] = seed;
  j["rows"] = json::array();
  for (const ConcealRow& r : report.rows) {
    json row;
    row["kind"] = r.kind;
    row["index"] = r.index;
    row["deficit"] = r.deficit;
    j["rows"].push_back(row);
  }
  j["max_deficit"] = report.max_deficit;
  return j.dump(2) + "\n";
}

std::string to_csv(const BobSubReport& report, std::uint64_t seed) {
  std::string out = seed_comment(seed);
  out +=
      "n,m,matched,trace_distance_b0,trace_distance_b1,collapse_prob_error,"
      "collapse_state_error,all_bounds_hold\n";
  out += std::to_string(report.n) + ',' + std::to_string(report.m) + ',' +
         (report.matched ? "true" : "false") + ',' +
         format_sig12(report.trace_distance_b0) + ',' +
         format_sig12(report.trace_distance_b1) + ',' +
         format_sig12(report.collapse_prob_error) + ',' +
         format_sig12(report.collapse_state_error) + ',' +
         (report.all_bounds_hold ? "true" : "false") + '\n';
  return out;
}

std::string to_json(const BobSubReport& report, std::uint64_t seed) {
  json j;
  j["seed"] = seed;
  j["n"] = report.n;
  j["m"] = report.m;
  j["effective"] = report.effective;
  j["omega0"] = report.omega0;
  j["matched"] = report.matched;
  j["trace_distance_b0"] = report.trace_distance_b0;
  j["trace_distance_b1"] = report.trace_distance_b1;
  j["collapse_prob_error"] = report.collapse_prob_error;
  j["collapse_state_error"] = report.collapse_state_error;
  j["all_bounds_hold"] = report.all_bounds_hold;
  return j.dump(2) + "\n";
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write output file '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw ConfigError("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

}  // namespace qbc
