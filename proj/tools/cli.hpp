#pragma once

// spectral_t command-line front end. run_cli() is callable in-process so the
// tests can drive every subcommand without spawning processes.
//
// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 resource cap.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spectral_t/spectral_t.hpp"

namespace spectral_t::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kInputError = 2, kResourceCap = 3 };

namespace detail {

inline std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Writes to `path`, or to `fallback` when path is empty or "-".
inline void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

inline std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InputError("bad number '" + item + "' in list");
    }
    if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos) {
      throw InputError("bad number '" + item + "' in list");
    }
    out.push_back(v);
  }
  if (out.empty()) throw InputError("empty value list");
  return out;
}

// min, min+step, ... up to max (inclusive, with a small tolerance).
inline std::vector<double> range_grid(double lo, double hi, double step) {
  if (!(step > 0)) throw InputError("grid step must be > 0");
  if (hi < lo) throw InputError("grid max below grid min");
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

template <typename T>
T pick(const std::optional<T>& flag, const nlohmann::json& config, const char* key, T fallback) {
  if (flag) return *flag;
  if (config.contains(key)) return config.at(key).get<T>();
  return fallback;
}

template <typename T>
std::optional<T> pick_opt(const std::optional<T>& flag, const nlohmann::json& config,
                          const char* key) {
  if (flag) return flag;
  if (config.contains(key) && !config.at(key).is_null()) return config.at(key).get<T>();
  return std::nullopt;
}

inline std::uint32_t infer_k(const Presentation& p, std::optional<std::uint32_t> flag) {
  if (flag) return *flag;
  if (p.k) return *p.k;
  if (p.relators.empty()) throw InputError("cannot infer k from an empty presentation; pass --k");
  const auto len = p.relators.front().size();
  for (const auto& r : p.relators) {
    if (r.size() != len) throw InputError("relators have mixed lengths; pass --k");
  }
  return static_cast<std::uint32_t>(len);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// certify

struct CertifyArgs {
  std::string file;
  std::optional<std::uint32_t> k;
  bool pipeline = false;
  double delta = 0.2;
  double epsilon = 0.25;
  std::uint64_t audit_m = 3;
};

inline int cmd_certify(const CertifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto p = parse_presentation_string(detail::read_file(a.file));
  const auto k = detail::infer_k(p, a.k);
  if (k < 3) throw InputError("k must be >= 3");
  Certificate c = a.pipeline ? certify_via_decomposition(p, k, RegularityParams{a.delta, a.epsilon}, a.audit_m)
                             : zuk_certificate(p, k);
  out << to_json(c).dump(2) << "\n";
  for (const auto& d : c.diagnostics) err << "# " << d << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// sample

struct SampleArgs {
  std::string model;
  std::uint32_t n = 2, k = 3, l = 2;
  double d = 0.0, p = 0.0;
  std::uint32_t f = 0;
  std::size_t m = 0, m1 = 0, m2 = 0;
  std::uint64_t seed = 0, stream = 0;
  bool allow_short = false;
  std::string out;
};

inline int cmd_sample(const SampleArgs& a, std::ostream& out, std::ostream& err) {
  const Seed seed{a.seed, a.stream};
  std::ostringstream text;
  auto graph_summary = [&](const MultiGraph& g) {
    const auto prof = degree_profile(g);
    err << "vertices=" << g.vertex_count() << " edges=" << g.edge_count()
        << " distinct_edges=" << g.distinct_edge_count() << " degree_min=" << prof.min
        << " degree_max=" << prof.max << " degree_mean=" << detail::num(prof.mean) << "\n";
    write_graph(text, g);
  };
  auto pres_summary = [&](const Presentation& p) {
    std::map<std::size_t, std::size_t> lengths;
    for (const auto& r : p.relators) ++lengths[r.size()];
    err << "generators=" << p.n << " relators=" << p.relators.size();
    for (const auto& [len, c] : lengths) err << " len" << len << "=" << c;
    err << "\n";
    write_presentation(text, p);
  };

  if (a.model == "strict") {
    pres_summary(sample_gamma_strict(a.n, a.k, a.d, seed));
  } else if (a.model == "p") {
    pres_summary(sample_gamma_p(a.n, a.k, a.p, seed));
  } else if (a.model == "lax") {
    pres_summary(sample_gamma_lax(a.n, LaxParams{a.k, a.d, a.f}, seed));
  } else if (a.model == "gnp") {
    graph_summary(sample_gnp(a.m, a.p, seed));
  } else if (a.model == "bgnp") {
    graph_summary(sample_bipartite_gnp(a.m1, a.m2, a.p, seed));
  } else if (a.model == "red") {
    graph_summary(sample_red(a.n, a.l, a.p, seed));
  } else if (a.model == "bred") {
    graph_summary(sample_bred(a.n, a.l, a.p, seed, BredOptions{a.allow_short}));
  } else {
    throw InputError("unknown model '" + a.model + "'");
  }
  detail::emit(a.out, text.str(), out);
  return kOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepSpec {
  std::string model = "strict";
  std::uint32_t n = 2, k = 3, f = 0;
  std::vector<double> grid;
  std::uint32_t trials = 1;
  std::uint64_t seed = 0;
  unsigned jobs = 0;  // 0: all cores
  bool pipeline = false;
  double delta = 0.2;
  std::string out;

  void validate() const {
    if (model != "strict" && model != "p" && model != "lax") {
      throw InputError("sweep model must be strict, p or lax");
    }
    if (grid.empty()) throw InputError("empty parameter grid");
    if (trials < 1) throw InputError("trials must be >= 1");
    if (k < 3) throw InputError("k must be >= 3");
  }
};

struct SweepRow {
  double d = 0;
  std::uint32_t trial = 0;
  std::size_t num_relators = 0;
  double lambda1 = 0;
  std::optional<double> pipeline_bound;
  bool certified = false;
  std::string status = "ok";
};

inline const char* kSweepHeader = "n,k,d,trial,seed,num_relators,lambda1,pipeline_bound,certified,status";

inline SweepRow run_trial(const SweepSpec& s, double x, std::uint32_t trial) {
  SweepRow row;
  row.d = x;
  row.trial = trial;
  const Seed seed{s.seed, trial};
  try {
    Presentation p;
    if (s.model == "strict") p = sample_gamma_strict(s.n, s.k, x, seed);
    if (s.model == "p") p = sample_gamma_p(s.n, s.k, x, seed);
    if (s.model == "lax") p = sample_gamma_lax(s.n, LaxParams{s.k, x, s.f}, seed);
    row.num_relators = p.relators.size();
    const auto c = s.pipeline ? certify_via_decomposition(p, s.k, RegularityParams{s.delta, 0.25})
                              : zuk_certificate(p, s.k);
    row.lambda1 = c.lambda1;
    row.pipeline_bound = c.pipeline_bound;
    row.certified = c.certified;
  } catch (const ResourceError&) {
    row.status = "resource-cap";
  } catch (const DegenerateError&) {
    row.status = "degenerate";
  }
  return row;
}

inline std::vector<SweepRow> run_sweep(const SweepSpec& s) {
  s.validate();
  struct Task { std::size_t gi; std::uint32_t trial; };
  std::vector<Task> tasks;
  for (std::size_t gi = 0; gi < s.grid.size(); ++gi)
    for (std::uint32_t t = 0; t < s.trials; ++t) tasks.push_back({gi, t});
  std::vector<SweepRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        rows[i] = run_trial(s, s.grid[tasks[i].gi], tasks[i].trial);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned jobs = s.jobs ? s.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, tasks.size()));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.d != b.d ? a.d < b.d : a.trial < b.trial;
  });
  return rows;
}

inline std::string sweep_csv(const SweepSpec& s, const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << kSweepHeader << "\n";
  for (const auto& r : rows) {
    os << s.n << ',' << s.k << ',' << detail::num(r.d) << ',' << r.trial << ',' << s.seed << ','
       << r.num_relators << ',' << (r.status == "ok" ? detail::num(r.lambda1) : "") << ','
       << (r.pipeline_bound ? detail::num(*r.pipeline_bound) : "") << ','
       << (r.certified ? "true" : "false") << ',' << r.status << "\n";
  }
  // summary footer
  std::map<double, std::pair<std::size_t, std::size_t>> rate;  // d -> (certified, total)
  for (const auto& r : rows) {
    auto& [c, t] = rate[r.d];
    c += r.certified ? 1 : 0;
    ++t;
  }
  os << "# model=" << s.model << " n=" << s.n << " k=" << s.k << " trials=" << s.trials
     << " seed=" << s.seed << "\n";
  for (const auto& [d, ct] : rate) {
    os << "# d=" << detail::num(d) << " certified=" << ct.first << "/" << ct.second
       << " rate=" << detail::num(static_cast<double>(ct.first) / static_cast<double>(ct.second))
       << "\n";
  }
  return os.str();
}

// Certification rate per grid value, read back from the rows.
inline std::map<double, double> certification_rates(const std::vector<SweepRow>& rows) {
  std::map<double, std::pair<std::size_t, std::size_t>> acc;
  for (const auto& r : rows) {
    acc[r.d].first += r.certified ? 1 : 0;
    ++acc[r.d].second;
  }
  std::map<double, double> out;
  for (const auto& [d, ct] : acc) out[d] = static_cast<double>(ct.first) / static_cast<double>(ct.second);
  return out;
}

inline int cmd_sweep(const SweepSpec& s, std::ostream& out, std::ostream& err) {
  const auto rows = run_sweep(s);
  detail::emit(s.out, sweep_csv(s, rows), out);
  std::size_t bad = 0;
  for (const auto& r : rows) bad += r.status == "ok" ? 0 : 1;
  err << rows.size() << " trials, " << bad << " not ok\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

inline int cmd_verify(const std::string& suite, std::uint64_t seed, std::ostream& out) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = verify::suite_names();
  } else {
    names.push_back(suite);
  }
  bool ok = true;
  for (const auto& name : names) {
    const auto report = verify::run_suite(name, seed);
    verify::print_report(out, name, report);
    ok = ok && verify::all_passed(report);
  }
  return ok ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Link-graph spectra, random presentations and Property (T) certificates"};
  app.require_subcommand(1);

  CertifyArgs ca;
  std::optional<std::uint32_t> cert_k;
  auto* certify = app.add_subcommand("certify", "certify a presentation file via lambda_1(Delta_k) > 1/2");
  certify->add_option("file", ca.file, "presentation file")->required();
  certify->add_option("--k", cert_k, "relator length (default: from file)");
  certify->add_flag("--pipeline", ca.pipeline, "also run the decomposition pipeline");
  certify->add_option("--delta", ca.delta, "degree-shaving fraction for the pipeline");
  certify->add_option("--epsilon", ca.epsilon, "almost-regularity tolerance");
  certify->add_option("--audit-m", ca.audit_m, "double-edge audit bound M");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "sample a random presentation or graph");
  sample->add_option("--model", sa.model, "strict | p | lax | gnp | bgnp | red | bred")
      ->required()
      ->check(CLI::IsMember({"strict", "p", "lax", "gnp", "bgnp", "red", "bred"}));
  sample->add_option("--n", sa.n, "generators");
  sample->add_option("--k", sa.k, "relator length");
  sample->add_option("--l", sa.l, "word length of graph vertices");
  sample->add_option("--d", sa.d, "density");
  sample->add_option("--p", sa.p, "probability");
  sample->add_option("--f", sa.f, "lax length window");
  sample->add_option("--m", sa.m, "vertices (gnp)");
  sample->add_option("--m1", sa.m1, "first side (bgnp)");
  sample->add_option("--m2", sa.m2, "second side (bgnp)");
  sample->add_option("--seed", sa.seed, "seed");
  sample->add_option("--stream", sa.stream, "stream id");
  sample->add_flag("--allow-short", sa.allow_short, "allow l < 3 for bred");
  sample->add_option("--out", sa.out, "output file (default stdout)");

  std::optional<std::string> sw_model, sw_out, sw_values, sw_config;
  std::optional<std::uint32_t> sw_n, sw_k, sw_f, sw_trials;
  std::optional<double> sw_min, sw_max, sw_step, sw_delta;
  std::optional<std::uint64_t> sw_seed;
  std::optional<unsigned> sw_jobs;
  bool sw_pipeline = false;
  auto* sweep = app.add_subcommand("sweep", "seeded density sweep, CSV output");
  sweep->add_option("--model", sw_model, "strict | p | lax");
  sweep->add_option("--n", sw_n, "generators");
  sweep->add_option("--k", sw_k, "relator length");
  sweep->add_option("--f", sw_f, "lax length window");
  sweep->add_option("--values", sw_values, "comma-separated grid of d (or p)");
  sweep->add_option("--min", sw_min, "grid minimum");
  sweep->add_option("--max", sw_max, "grid maximum");
  sweep->add_option("--step", sw_step, "grid step");
  sweep->add_option("--trials", sw_trials, "trials per grid point");
  sweep->add_option("--seed", sw_seed, "base seed");
  sweep->add_option("--jobs", sw_jobs, "worker threads (default: all cores)");
  sweep->add_flag("--pipeline", sw_pipeline, "also compute the pipeline bound");
  sweep->add_option("--delta", sw_delta, "degree-shaving fraction for the pipeline");
  sweep->add_option("--out", sw_out, "output CSV (default stdout)");
  sweep->add_option("--config", sw_config, "JSON config; flags take precedence");

  std::string suite;
  std::uint64_t verify_seed = 1;
  auto* verify_cmd = app.add_subcommand("verify", "run a property suite");
  verify_cmd->add_option("suite", suite, "spectra | lemmas | regularity | models | all")
      ->required()
      ->check(CLI::IsMember({"spectra", "lemmas", "regularity", "models", "all"}));
  verify_cmd->add_option("--seed", verify_seed, "seed");

  std::vector<const char*> argv{"spectral_t"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*certify) {
      ca.k = cert_k;
      return cmd_certify(ca, out, err);
    }
    if (*sample) return cmd_sample(sa, out, err);
    if (*sweep) {
      nlohmann::json config = nlohmann::json::object();
      if (sw_config) {
        try {
          config = nlohmann::json::parse(detail::read_file(*sw_config));
        } catch (const nlohmann::json::exception& e) {
          throw InputError(std::string("bad config: ") + e.what());
        }
      }
      SweepSpec s;
      try {
        s.model = detail::pick<std::string>(sw_model, config, "model", s.model);
        s.n = detail::pick(sw_n, config, "n", s.n);
        s.k = detail::pick(sw_k, config, "k", s.k);
        s.f = detail::pick(sw_f, config, "f", s.f);
        s.trials = detail::pick(sw_trials, config, "trials", s.trials);
        s.seed = detail::pick(sw_seed, config, "seed", s.seed);
        s.jobs = detail::pick(sw_jobs, config, "jobs", s.jobs);
        s.delta = detail::pick(sw_delta, config, "delta", s.delta);
        s.out = detail::pick<std::string>(sw_out, config, "out", s.out);
        s.pipeline = sw_pipeline || config.value("pipeline", false);
        const auto lo = detail::pick_opt(sw_min, config, "min");
        const auto hi = detail::pick_opt(sw_max, config, "max");
        const auto step = detail::pick_opt(sw_step, config, "step");
        if (sw_values) {
          s.grid = detail::parse_list(*sw_values);
        } else if (sw_min || sw_max || sw_step) {
          if (!lo || !hi || !step) throw InputError("--min, --max and --step go together");
          s.grid = detail::range_grid(*lo, *hi, *step);
        } else if (config.contains("values")) {
          s.grid = config.at("values").get<std::vector<double>>();
        } else if (lo && hi && step) {
          s.grid = detail::range_grid(*lo, *hi, *step);
        } else {
          throw InputError("sweep needs --values or --min/--max/--step");
        }
      } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad config value: ") + e.what());
      }
      return cmd_sweep(s, out, err);
    }
    if (*verify_cmd) return cmd_verify(suite, verify_seed, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ResourceError& e) {
    err << "resource cap: " << e.what() << "\n";
    return kResourceCap;
  } catch (const DegenerateError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const HypothesisError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace spectral_t::cli
