#include "covertorus/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

#include "covertorus/error.hpp"

namespace covertorus {

namespace {

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::string indent(const std::string& text, const std::string& pad) {
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out += pad + line + "\n";
  return out;
}

std::optional<Failure> run_trial(const CheckDef& check, const CheckContext& ctx, std::size_t i) {
  const auto& cfg = ctx.config;
  CounterRng rng(cfg.seed, hash_name(check.name), i);
  std::string text;
  try {
    Document doc = check.generate(rng, cfg);
    text = print(doc);
    auto verdict = check.evaluate(doc, ctx);
    if (!verdict) return std::nullopt;
    return Failure{i, one_line(*verdict), text};
  } catch (const std::exception& e) {
    return Failure{i, one_line(std::string("exception: ") + e.what()), text};
  }
}

}  // namespace

void VerifierConfig::validate() const {
  if (max_arity == 0 || max_exponent <= 0 || kernel_bound <= 0 || jobs == 0) {
    throw Error(ErrorCode::kInvalidArgument, "verifier bounds must be positive");
  }
  for (const auto& name : only) {
    if (!find_check(name)) throw Error(ErrorCode::kInvalidArgument, "unknown check " + name);
  }
}

const CheckDef* find_check(std::string_view name) {
  for (const auto& c : all_checks()) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckReport& c) { return c.failures.empty(); });
}

CheckReport run_check(const CheckDef& check, const CheckContext& ctx) {
  ctx.config.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = ctx.config.trials;
  std::vector<std::optional<Failure>> results(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) results[i] = run_trial(check, ctx, i);
  };
  const std::size_t threads = std::min(ctx.config.jobs, n);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  CheckReport out{std::string(check.name), n, {}, 0};
  for (auto& r : results) {
    if (r) out.failures.push_back(std::move(*r));
  }
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
  return out;
}

Report run_suite(const CheckContext& ctx) {
  ctx.config.validate();
  Report r{ctx.config, {}};
  for (const auto& c : all_checks()) {
    const auto& only = ctx.config.only;
    if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
    r.checks.push_back(run_check(c, ctx));
  }
  return r;
}

std::string format_report(const Report& r, bool with_time) {
  const auto& c = r.config;
  std::string out = "verify seed=" + std::to_string(c.seed) + " trials=" +
                    std::to_string(c.trials) + " max_arity=" + std::to_string(c.max_arity) +
                    " max_exponent=" + std::to_string(c.max_exponent) +
                    " kernel_bound=" + std::to_string(c.kernel_bound) + "\n";
  for (const auto& check : r.checks) {
    out += "check=" + check.name + " trials=" + std::to_string(check.trials) +
           " failures=" + std::to_string(check.failures.size());
    if (with_time) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.0f", check.wall_ms);
      out += std::string(" wall_ms=") + buf;
    }
    out += "\n";
    for (const auto& f : check.failures) {
      out += "  failure trial=" + std::to_string(f.trial) + " detail=" + f.detail + "\n";
      out += indent(f.instance, "    ");
    }
  }
  out += std::string("result=") + (r.passed() ? "pass" : "fail") + "\n";
  return out;
}

std::vector<ReplayOutcome> replay_report(std::string_view text, const CheckContext& ctx) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line.rfind("verify ", 0) != 0) {
    throw Error(ErrorCode::kInvalidArgument, "not a verifier report");
  }
  CheckContext local = ctx;
  {
    std::istringstream fields(line.substr(7));
    std::string kv;
    while (fields >> kv) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) continue;
      auto key = kv.substr(0, eq);
      auto value = std::stoll(kv.substr(eq + 1));
      if (key == "seed") local.config.seed = static_cast<std::uint64_t>(value);
      if (key == "max_arity") local.config.max_arity = static_cast<std::size_t>(value);
      if (key == "max_exponent") local.config.max_exponent = value;
      if (key == "kernel_bound") local.config.kernel_bound = value;
    }
  }

  struct Pending {
    std::string check;
    std::size_t trial;
    std::string body;
  };
  std::vector<Pending> pending;
  std::string current;
  while (std::getline(in, line)) {
    if (line.rfind("check=", 0) == 0) {
      current = line.substr(6, line.find(' ') - 6);
    } else if (line.rfind("  failure trial=", 0) == 0) {
      pending.push_back({current, std::stoul(line.substr(16)), ""});
    } else if (line.rfind("    ", 0) == 0 && !pending.empty()) {
      pending.back().body += line.substr(4) + "\n";
    }
  }

  std::vector<ReplayOutcome> out;
  for (const auto& p : pending) {
    ReplayOutcome o{p.check, p.trial, false, ""};
    const CheckDef* def = find_check(p.check);
    if (!def) {
      o.detail = "unknown check";
      out.push_back(o);
      continue;
    }
    auto parsed = parse(p.body);
    if (!parsed.ok()) {
      o.detail = "instance does not parse: " + parsed.diagnostics[0].message;
      out.push_back(o);
      continue;
    }
    try {
      auto verdict = def->evaluate(*parsed.document, local);
      o.reproduced = verdict.has_value();
      o.detail = verdict ? one_line(*verdict) : "check passes on this instance";
    } catch (const std::exception& e) {
      o.reproduced = true;
      o.detail = one_line(std::string("exception: ") + e.what());
    }
    out.push_back(o);
  }
  return out;
}

}  // namespace covertorus
