#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>

#include "ringxfer/analytic.hpp"
#include "ringxfer/observables.hpp"
#include "ringxfer/sweep.hpp"
#include "ringxfer/validate.hpp"

namespace ringxfer::cli {

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

struct RingArgs {
  std::size_t sites = 500;
  double hopping = 1.0;
  std::string theta = "0";
  std::string prep = "square";
  std::size_t halfwidth = 5;
  double gwidth = 2.0;
};

struct OutputArgs {
  std::string out;
  bool allow_wrap = false;
};

void add_ring_options(CLI::App& cmd, RingArgs& args, bool with_theta = true) {
  cmd.add_option("--sites", args.sites, "number of ring sites N")->capture_default_str();
  cmd.add_option("--hopping", args.hopping, "half bandwidth w")->capture_default_str();
  if (with_theta)
    cmd.add_option("--theta", args.theta, "phase in radians (accepts pi/2, -pi/2, pi/4)")
        ->capture_default_str();
  cmd.add_option("--prep", args.prep, "initial packet")
      ->check(CLI::IsMember({"atomic", "square", "gaussian"}))
      ->capture_default_str();
  cmd.add_option("--halfwidth", args.halfwidth, "square packet half-width M")->capture_default_str();
  cmd.add_option("--gwidth", args.gwidth, "gaussian packet width sigma")->capture_default_str();
}

void add_output_options(CLI::App& cmd, OutputArgs& args) {
  cmd.add_option("--out", args.out, "output file (default: stdout)");
  cmd.add_flag("--allow-wrap", args.allow_wrap, "permit times past the no-wrap horizon");
}

Preparation make_prep(const RingArgs& args) {
  if (args.prep == "atomic") return Atomic{0};
  if (args.prep == "square") return Square{0, args.halfwidth};
  return Gaussian{0, args.gwidth};
}

// Canonical command line; reproduces the output when run again.
class Manifest {
 public:
  explicit Manifest(std::string command) : command_(std::move(command)) {}

  Manifest& add(std::string_view flag, std::string value) {
    parts_.push_back(fmt::format("--{}={}", flag, value));
    return *this;
  }
  Manifest& flag(std::string_view flag) {
    parts_.push_back(fmt::format("--{}", flag));
    return *this;
  }
  Manifest& ring(const RingArgs& args, std::optional<double> theta) {
    add("sites", std::to_string(args.sites));
    add("hopping", num(args.hopping));
    if (theta) add("theta", num(*theta));
    add("prep", args.prep);
    if (args.prep == "square") add("halfwidth", std::to_string(args.halfwidth));
    if (args.prep == "gaussian") add("gwidth", num(args.gwidth));
    return *this;
  }

  std::string header() const {
    std::string cmd = command_;
    for (const auto& p : parts_) cmd += " " + p;
    return fmt::format(
        "# ringxfer {}\n# command: ringxfer {}\n"
        "# order: momentum sums in ascending index; rows in grid order\n",
        kVersion, cmd);
  }

 private:
  std::string command_;
  std::vector<std::string> parts_;
};

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? "," : "") + items[i];
  return s;
}

template <class T>
std::string join_numbers(const std::vector<T>& items) {
  std::vector<std::string> parts;
  for (const auto& v : items) {
    if constexpr (std::is_floating_point_v<T>)
      parts.push_back(num(v));
    else
      parts.push_back(std::to_string(v));
  }
  return join(parts);
}

PeakRule parse_rule(const std::string& s) {
  return s == "global" ? PeakRule::global : PeakRule::first_local;
}

void emit(const std::string& text, const OutputArgs& output, std::ostream& out) {
  if (output.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(output.out, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file " + output.out);
  file << text;
}

std::string run_profile(const RingArgs& ring, const std::vector<std::string>& times_text,
                        const OutputArgs& output) {
  const RingConfig config(ring.sites, ring.hopping, parse_angle(ring.theta));
  const auto prep = make_prep(ring);
  std::vector<double> times;
  for (const auto& t : times_text) times.push_back(std::stod(t));
  const double horizon = no_wrap_horizon(config, prep, 0);
  if (!output.allow_wrap)
    for (double t : times)
      if (std::abs(t) > horizon)
        throw HorizonError(fmt::format("time {} exceeds the no-wrap horizon {}", num(t), num(horizon)));

  Manifest manifest("profile");
  manifest.ring(ring, config.phase()).add("times", join_numbers(times));
  if (output.allow_wrap) manifest.flag("allow-wrap");

  std::string text = manifest.header() + "t,j,P_j\n";
  const auto initial = prepare(config, prep);
  const auto n = static_cast<long>(config.n_sites());
  for (std::size_t b = 0; b < times.size(); ++b) {
    if (b > 0) text += "\n\n";
    const auto p = probability_distribution(evolve(config, initial, times[b]));
    for (long j = -(n / 2); j < n - n / 2; ++j)
      text += fmt::format("{},{},{}\n", num(times[b]), j, num(p[site_index(j, config.n_sites())]));
  }
  return text;
}

struct FidelityArgs {
  std::vector<long> receivers{10, 30, 60, 90};
  std::optional<double> tmax;
  std::optional<double> dt;
  std::string rule = "first";
  std::string analytic = "none";
};

std::string run_fidelity(const RingArgs& ring, const FidelityArgs& args, const OutputArgs& output) {
  const RingConfig config(ring.sites, ring.hopping, parse_angle(ring.theta));
  const auto prep = make_prep(ring);
  const double dt = args.dt.value_or(default_time_step(config));
  const auto rule = parse_rule(args.rule);
  const auto wrap = output.allow_wrap ? WrapPolicy::allow : WrapPolicy::enforce;
  if (args.analytic == "gaussian" && (ring.prep != "square" || ring.halfwidth < 1))
    throw std::invalid_argument("--analytic gaussian needs --prep square with --halfwidth >= 1");

  Manifest manifest("fidelity");
  manifest.ring(ring, config.phase()).add("receiver", join_numbers(args.receivers));
  if (args.tmax) manifest.add("tmax", num(*args.tmax));
  manifest.add("dt", num(dt)).add("peak-rule", args.rule);
  if (args.analytic != "none") manifest.add("analytic", args.analytic);
  if (output.allow_wrap) manifest.flag("allow-wrap");

  std::string text = manifest.header();
  text += args.analytic == "none" ? "d,t,F\n" : "d,t,F,F_" + args.analytic + "\n";
  std::vector<std::string> summary;
  const std::size_t lambda = 2 * ring.halfwidth + 1;
  for (long d : args.receivers) {
    const double t_max = args.tmax.value_or(no_wrap_horizon(config, prep, d));
    const auto series = fidelity_series(config, prep, d, time_grid(t_max, dt), wrap);
    for (std::size_t i = 0; i < series.times.size(); ++i) {
      const double t = series.times[i];
      text += fmt::format("{},{},{}", d, num(t), num(series.values[i]));
      if (args.analytic == "bessel")
        text += "," + num(analytic::atomic_fidelity_limit(d, config.half_bandwidth(), t));
      else if (args.analytic == "gaussian")
        text += "," + num(analytic::gaussian_fidelity(lambda, static_cast<double>(d),
                                                      config.half_bandwidth(), config.phase(), t));
      text += "\n";
    }
    const auto peak = first_peak(series, rule);
    summary.push_back(fmt::format("{},{},{},{}\n", d, num(peak.t_star), num(peak.f_star),
                                  to_string(peak.kind)));
  }
  text += "\n\n# peaks\nd,t_star,f_star,rule\n";
  for (const auto& line : summary) text += line;
  return text;
}

struct CurveArgs {
  std::vector<std::string> thetas{"0", "-pi/4", "-pi/2"};
  std::vector<long> receivers{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::optional<double> dt;
  std::string rule = "first";
};

std::string run_maxcurve(const RingArgs& ring, const CurveArgs& args, const OutputArgs& output) {
  const RingConfig base(ring.sites, ring.hopping, 0.0);
  const auto prep = make_prep(ring);
  std::vector<double> thetas;
  for (const auto& s : args.thetas) thetas.push_back(reduce_phase(parse_angle(s)));
  const double dt = args.dt.value_or(default_time_step(base));
  TimeWindow window;
  window.dt = dt;
  window.wrap = output.allow_wrap ? WrapPolicy::allow : WrapPolicy::enforce;

  Manifest manifest("maxcurve");
  manifest.ring(ring, std::nullopt)
      .add("thetas", join_numbers(thetas))
      .add("receiver", join_numbers(args.receivers))
      .add("dt", num(dt))
      .add("peak-rule", args.rule);
  if (output.allow_wrap) manifest.flag("allow-wrap");

  std::string text = manifest.header() + "theta,d,t_star,f_star,rule\n";
  for (double theta : thetas) {
    const auto rows =
        max_fidelity_vs_distance(base.with_phase(theta), prep, args.receivers, window, parse_rule(args.rule));
    for (const auto& r : rows)
      text += fmt::format("{},{},{},{},{}\n", num(theta), r.d, num(r.peak.t_star),
                          num(r.peak.f_star), to_string(r.peak.kind));
  }
  return text;
}

struct SweepArgs {
  std::string over = "theta";
  std::vector<std::string> thetas;
  std::vector<std::size_t> halfwidths{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  long receiver = 60;
  std::optional<double> tmax;
  std::optional<double> dt;
  std::string rule = "first";
};

std::string run_sweep(const RingArgs& ring, const SweepArgs& args, const OutputArgs& output) {
  SweepSpec spec;
  spec.config = RingConfig(ring.sites, ring.hopping, parse_angle(ring.theta));
  spec.prep = make_prep(ring);
  spec.receiver = args.receiver;
  spec.window.t_max = args.tmax;
  spec.window.dt = args.dt.value_or(default_time_step(spec.config));
  spec.window.wrap = output.allow_wrap ? WrapPolicy::allow : WrapPolicy::enforce;
  spec.rule = parse_rule(args.rule);

  Manifest manifest("sweep");
  manifest.add("over", args.over);
  SweepResult result;
  if (args.over == "theta") {
    if (args.thetas.empty()) {
      for (int i = 0; i <= 32; ++i) spec.thetas.push_back(-std::numbers::pi + i * std::numbers::pi / 32.0);
    } else {
      for (const auto& s : args.thetas) spec.thetas.push_back(parse_angle(s));
    }
    manifest.ring(ring, std::nullopt).add("thetas", join_numbers(spec.thetas));
    result = sweep_theta(spec);
  } else {
    spec.half_widths = args.halfwidths;
    RingArgs shown = ring;
    shown.prep = "square";
    manifest.ring(shown, spec.config.phase()).add("halfwidths", join_numbers(args.halfwidths));
    result = sweep_width(spec);
  }
  manifest.add("receiver", std::to_string(args.receiver));
  if (args.tmax) manifest.add("tmax", num(*args.tmax));
  manifest.add("dt", num(*spec.window.dt)).add("peak-rule", args.rule);
  if (output.allow_wrap) manifest.flag("allow-wrap");

  std::string text = manifest.header() + fmt::format("{},t_star,f_star,rule\n", args.over);
  for (const auto& r : result.rows)
    text += fmt::format("{},{},{},{}\n", num(r.parameter), num(r.t_star), num(r.f_star), to_string(r.kind));
  const auto& best = result.rows[result.best];
  text += fmt::format("# argmax: {}={} t_star={} f_star={}\n", args.over, num(best.parameter),
                      num(best.t_star), num(best.f_star));
  return text;
}

int run_validate(bool json, const std::string& fault, std::ostream& out) {
  ValidationOptions options;
  options.fault.flip_phase_sign = (fault == "hopping-sign");
  const auto report = run_validation(options);
  if (json) {
    nlohmann::ordered_json doc;
    doc["passed"] = report.passed();
    nlohmann::ordered_json suites = nlohmann::ordered_json::object();
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& s : report.suites) {
      suites[s.name] = s.passed();
      for (const auto& c : s.checks)
        checks.push_back({{"suite", s.name},
                          {"check", c.name},
                          {"passed", c.passed},
                          {"measured", c.measured},
                          {"tolerance", c.tolerance}});
    }
    doc["suites"] = suites;
    doc["checks"] = checks;
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& s : report.suites) {
      out << (s.passed() ? "PASS " : "FAIL ") << s.name << "\n";
      for (const auto& c : s.checks)
        out << fmt::format("  {} {} measured={:.3e} tolerance={:.1e}\n",
                           c.passed ? "ok  " : "FAIL", c.name, c.measured, c.tolerance);
    }
    out << (report.passed() ? "all suites passed\n" : "validation FAILED\n");
  }
  return report.passed() ? kOk : kValidationFailed;
}

}  // namespace

double parse_angle(std::string_view text) {
  static const std::regex literal(R"(^\s*([+-]?)pi(?:\s*/\s*([0-9]+(?:\.[0-9]*)?))?\s*$)");
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, literal)) {
    double v = std::numbers::pi;
    if (m[2].matched) {
      const double k = std::stod(m[2].str());
      if (k == 0.0) throw std::invalid_argument("not an angle: " + s);
      v /= k;
    }
    return m[1].str() == "-" ? -v : v;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an angle: " + s);
  }
  if (s.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(v))
    throw std::invalid_argument("not an angle: " + s);
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wavepacket transfer on a tight-binding ring with a topological phase", "ringxfer"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RingArgs ring;
  OutputArgs output;

  auto* profile = app.add_subcommand("profile", "site-occupancy profiles P_j(t)");
  std::vector<std::string> times;
  add_ring_options(*profile, ring);
  profile->add_option("--times", times, "comma-separated times")->delimiter(',')->required();
  add_output_options(*profile, output);

  auto* fid = app.add_subcommand("fidelity", "transfer fidelity F_d(t) and peak summary");
  FidelityArgs fargs;
  add_ring_options(*fid, ring);
  fid->add_option("--receiver", fargs.receivers, "receiver offsets d (repeatable)")
      ->delimiter(',')
      ->capture_default_str();
  fid->add_option("--tmax", fargs.tmax, "end of time window (default: no-wrap horizon)");
  fid->add_option("--dt", fargs.dt, "sampling step (default 0.05/w)");
  fid->add_option("--peak-rule", fargs.rule)->check(CLI::IsMember({"first", "global"}))->capture_default_str();
  fid->add_option("--analytic", fargs.analytic, "overlay column")
      ->check(CLI::IsMember({"none", "bessel", "gaussian"}))
      ->capture_default_str();
  add_output_options(*fid, output);

  auto* curve = app.add_subcommand("maxcurve", "peak fidelity versus distance for several phases");
  CurveArgs cargs;
  add_ring_options(*curve, ring, false);
  curve->add_option("--thetas", cargs.thetas, "phases")->delimiter(',')->capture_default_str();
  curve->add_option("--receiver", cargs.receivers, "receiver offsets d")->delimiter(',')->capture_default_str();
  curve->add_option("--dt", cargs.dt, "sampling step (default 0.05/w)");
  curve->add_option("--peak-rule", cargs.rule)->check(CLI::IsMember({"first", "global"}))->capture_default_str();
  add_output_options(*curve, output);

  auto* sweep = app.add_subcommand("sweep", "scan the phase or the packet width at one receiver");
  SweepArgs sargs;
  add_ring_options(*sweep, ring);
  sweep->add_option("--over", sargs.over)->check(CLI::IsMember({"theta", "width"}))->capture_default_str();
  sweep->add_option("--thetas", sargs.thetas, "phase grid (default: 33 points over [-pi, 0])")->delimiter(',');
  sweep->add_option("--halfwidths", sargs.halfwidths, "half-width grid")->delimiter(',')->capture_default_str();
  sweep->add_option("--receiver", sargs.receiver)->capture_default_str();
  sweep->add_option("--tmax", sargs.tmax);
  sweep->add_option("--dt", sargs.dt);
  sweep->add_option("--peak-rule", sargs.rule)->check(CLI::IsMember({"first", "global"}))->capture_default_str();
  add_output_options(*sweep, output);

  auto* validate = app.add_subcommand("validate", "run the self-consistency suites");
  bool json = false;
  std::string fault = "none";
  validate->add_flag("--json", json, "emit a JSON report");
  validate->add_option("--inject-fault", fault, "self-test hook")
      ->check(CLI::IsMember({"none", "hopping-sign"}))
      ->group("");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("ringxfer");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArguments;
  }

  try {
    if (*validate) return run_validate(json, fault, out);
    std::string text;
    if (*profile) text = run_profile(ring, times, output);
    if (*fid) text = run_fidelity(ring, fargs, output);
    if (*curve) text = run_maxcurve(ring, cargs, output);
    if (*sweep) text = run_sweep(ring, sargs, output);
    emit(text, output, out);
    return kOk;
  } catch (const HorizonError& e) {
    err << "error: " << e.what() << " (use --allow-wrap to override)\n";
    return kHorizonViolation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadArguments;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kBadArguments;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kBadArguments;
  }
}

}  // namespace ringxfer::cli
