// Copyright 2026 The Fedchain Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fedchain/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "fedchain/analytics.hpp"
#include "fedchain/digest.hpp"
#include "fedchain/game.hpp"
#include "fedchain/scenario_io.hpp"
#include "fedchain/sim.hpp"
#include "json.hpp"

namespace fedchain::cli {

namespace fs = std::filesystem;

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::IoError, "cannot write " + path.string());
  out << content;
  if (!out) fail(Errc::IoError, "write failed for " + path.string());
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string summary_text(const sim::ScenarioConfig& cfg, const std::vector<sim::EpochMetrics>& rows) {
  std::ostringstream s;
  s << "scenario " << cfg.name << "\n";
  s << "seed " << cfg.rng_seed.hex() << "\n";
  s << "epochs " << cfg.epochs << ", chains " << cfg.M << ", stakeholders " << cfg.N << "\n";
  std::size_t broken = 0;
  std::size_t halted = 0;
  for (const auto& r : rows) {
    broken += r.broken ? 1 : 0;
    halted += r.halted ? 1 : 0;
  }
  s << "broken rows " << broken << ", halted chain-epochs " << halted << "\n";
  s << "chain,max_adversarial_ratio,max_pr_cp,max_pr_cq_exact,max_confirmation_seconds,max_throughput_reduction,"
       "mean_stake_share\n";
  for (std::size_t m = 0; m < cfg.M; ++m) {
    double ratio = 0, cp = 0, cq = 0, conf = 0, theta = 0, share = 0;
    std::size_t count = 0;
    for (const auto& r : rows) {
      if (r.chain != m) continue;
      ratio = std::max(ratio, r.adversarial_ratio);
      cp = std::max(cp, r.pr_cp);
      cq = std::max(cq, r.pr_cq_exact);
      conf = std::max(conf, r.confirmation_time_seconds);
      theta = std::max(theta, r.throughput_reduction);
      double epoch_total = 0.0;
      for (const auto& o : rows)
        if (o.epoch == r.epoch) epoch_total += o.total_stake;
      share += epoch_total > 0 ? r.total_stake / epoch_total : 0.0;
      ++count;
    }
    s << m << ',' << fixed(ratio, 6) << ',' << fixed(cp, 6) << ',' << fixed(cq, 6) << ','
      << (std::isinf(conf) ? std::string("inf") : fixed(conf, 0)) << ',' << fixed(theta, 2) << ','
      << fixed(count ? share / static_cast<double>(count) : 0.0, 6) << "\n";
  }
  return s.str();
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::json j{{"scenario", m.scenario},         {"config_path", m.config_path},
                   {"output_dir", m.output_dir},     {"config_digest", m.config_digest},
                   {"started_at", m.started_at},     {"finished_at", m.finished_at}};
  return j.dump(2) + "\n";
}

}  // namespace

const std::vector<double>& default_ratios() {
  static const std::vector<double> r{0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45};
  return r;
}

std::string confirm_table(const std::vector<double>& ratios, double slot_seconds) {
  if (ratios.empty()) fail(Errc::DomainError, "no ratios given");
  std::string out = "ratio,kappa,minutes\n";
  for (double r : ratios) {
    if (r >= 0.5)
      fail(Errc::DomainError, "adversarial ratio " + fixed(r, 2) +
                                  " violates the 51% honesty bound; leader election is no longer unbiased");
    if (!(r > 0.0)) fail(Errc::DomainError, "adversarial ratio must be positive");
    const auto c = analytics::confirmation_time(r, slot_seconds);
    out += fixed(r, 2) + "," + std::to_string(c.kappa) + "," + fixed(c.minutes_one_decimal(), 1) + "\n";
  }
  return out;
}

std::string equilibrium_report(const std::string& config_text) {
  auto cfg = io::parse_equilibrium(config_text);
  std::ostringstream s;
  if (cfg.dynamic) {
    const double r = game::leader_optimum(cfg.game.budgets, cfg.game.M());
    cfg.game.rewards.assign(cfg.game.M(), r);
    s << "leader optimum R* = " << fixed(r, 6) << " per chain\n";
  }
  const auto& g = cfg.game;
  const auto eq = game::follower_equilibrium(g);
  s << "rewards";
  for (double r : g.rewards) s << ' ' << fixed(r, 6);
  s << "\nfollower allocations (rows: stakeholders, columns: chains)\n";
  for (std::size_t n = 0; n < g.N(); ++n) {
    s << "s" << n + 1 << " =";
    for (double x : eq[n]) s << ' ' << fixed(x, 2);
    s << "   U" << n + 1 << " = " << fixed(game::follower_utility(g, eq, n), 6) << "\n";
  }
  for (std::size_t m = 0; m < g.M(); ++m) {
    const auto u = game::leader_utility(g, m);
    s << "leader " << m + 1 << " utility " << fixed(u.value, 6);
    if (u.negative_weight) s << " (warning: some stake <= 1, log weight not positive)";
    s << "\n";
  }
  if (g.N() < 2) {
    s << "uniqueness check: not applicable (single stakeholder)\n";
  } else {
    s << "uniqueness check (G + G^T negative definite): " << (game::rosen_check(g, eq) ? "pass" : "fail") << "\n";
  }
  return s.str();
}

std::string content_digest(const std::string& bytes) {
  std::string blob = "blob " + std::to_string(bytes.size());
  blob.push_back('\0');
  blob += bytes;
  return sha256(blob).hex();
}

std::vector<RunManifest> simulate(const std::string& config_path, const std::string& out_dir, std::size_t workers,
                                  const std::optional<std::string>& seed_override) {
  const std::string text = read_file(config_path);
  auto scenarios = io::parse_scenarios(text);
  if (seed_override) {
    Seed s;
    try {
      s = parse_seed(*seed_override);
    } catch (const Error& e) {
      fail(Errc::ConfigError, std::string("FEDCHAIN_SEED: ") + e.what());
    }
    for (auto& c : scenarios) c.rng_seed = s;
  }
  const bool batch = scenarios.size() > 1 || text.find("\"scenarios\"") != std::string::npos;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) fail(Errc::IoError, "cannot create " + out_dir + ": " + ec.message());
  if (batch) write_file(fs::path(out_dir) / "config.json", text);

  const std::string digest = content_digest(text);
  std::vector<RunManifest> manifests(scenarios.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;

  auto work = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        const auto& cfg = scenarios[i];
        const fs::path dir = batch ? fs::path(out_dir) / cfg.name : fs::path(out_dir);
        fs::create_directories(dir);
        RunManifest m{cfg.name, config_path, dir.string(), digest, utc_now(), {}};
        const auto rows = sim::run_scenario(cfg);
        write_file(dir / "config.json", batch ? io::scenario_json(cfg) : text);
        write_file(dir / "metrics.csv", sim::metrics_csv(rows));
        write_file(dir / "summary.txt", summary_text(cfg, rows));
        m.finished_at = utc_now();
        write_file(dir / "manifest.json", manifest_json(m));
        manifests[i] = std::move(m);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  const std::size_t n_threads = std::clamp<std::size_t>(workers, 1, scenarios.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return manifests;
}

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::ConfigError:
    case Errc::DomainError:
      return 2;
    default:
      return 3;
  }
}

}  // namespace fedchain::cli
