// sophdepth: command-line front end for measures, structure sets and the
// construction experiments. Run with --help for the flag list.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "sophdepth/sophdepth.hpp"

using namespace sophdepth;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Config {
  std::string budget = "10000";
  std::optional<std::size_t> maxlen;
  std::size_t search_len = 24;
  std::size_t workers = 0;
  std::string out = "-";
  std::optional<std::string> format;
  std::string c = "0";
  std::size_t cmax = 4;
  std::size_t imax = 16;
  std::size_t jmax = 8;
  std::optional<std::size_t> k;
  std::size_t l = 8;
  std::size_t n = 8;
  std::size_t d = 2;
  std::uint64_t t = 1000;
  std::optional<std::size_t> ceiling;
  std::size_t soph_len = 17;
  bool require_stable = false;
  bool no_seed = false;
  bool transcript = false;
  std::string measures = "C,ld,ld_bb,bennett,soph,set_soph";
  std::string x;
};

std::vector<std::size_t> parse_grid(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) return {std::stoul(text)};
    const std::size_t a = std::stoul(text.substr(0, dots));
    const std::size_t b = std::stoul(text.substr(dots + 2));
    if (a > b) throw UsageError("empty c grid: " + text);
    std::vector<std::size_t> out;
    for (std::size_t c = a; c <= b; ++c) out.push_back(c);
    return out;
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const UsageError*>(&e)) throw;
    throw UsageError("bad c grid '" + text + "' (expected a or a..b)");
  }
}

Budget parse_budget(const std::string& text) {
  Budget b;
  try {
    b = Budget::parse(text);
  } catch (const std::logic_error&) {
    throw UsageError("bad budget '" + text + "' (expected steps or steps:excursion)");
  }
  if (b.max_steps < 1) throw UsageError("budget must allow at least one step");
  return b;
}

BitString parse_x(const std::string& text) {
  return text == "-" ? BitString{} : BitString::parse(text);
}

MeasureOptions measure_options(const Config& cfg, std::size_t max_len) {
  MeasureOptions o;
  o.budget = parse_budget(cfg.budget);
  o.max_len = max_len;
  o.workers = cfg.workers;
  o.seeded = !cfg.no_seed;
  o.doubling_test = cfg.require_stable;
  o.max_soph_len = cfg.soph_len;
  check_ceiling(max_len);
  return o;
}

std::string format_or(const Config& cfg, const std::string& fallback,
                      std::initializer_list<const char*> allowed) {
  const std::string f = cfg.format.value_or(fallback);
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  throw UsageError("format '" + f + "' not supported by this command");
}

std::vector<std::string> parse_measures(const std::string& text) {
  static const std::set<std::string> known{"C", "ld", "ld_bb", "bennett", "soph", "set_soph"};
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string m; std::getline(ss, m, ',');) {
    if (!known.count(m)) throw UsageError("unknown measure '" + m + "'");
    out.push_back(m);
  }
  if (out.empty()) throw UsageError("no measures selected");
  return out;
}

int cmd_measure(const Config& cfg, std::ostream& os) {
  const BitString x = parse_x(cfg.x);
  const auto o = measure_options(cfg, cfg.maxlen.value_or(24));
  const auto cs = parse_grid(cfg.c);
  const auto names = parse_measures(cfg.measures);
  const std::string format = format_or(cfg, "csv", {"csv", "svg"});
  auto wanted = [&](const char* m) { return std::find(names.begin(), names.end(), m) != names.end(); };
  std::map<std::string, std::vector<MeasureValue>> curves;
  const MeasureValue cx = complexity(x, o);
  std::vector<MeasureValue> soph;
  if (wanted("soph")) soph = sophistication_curve(x, cs, o);
  for (std::size_t n = 0; n < cs.size(); ++n) {
    const std::size_t c = cs[n];
    if (wanted("C")) curves["C"].push_back(cx);
    if (wanted("ld")) curves["ld"].push_back(logical_depth(x, c, o));
    if (wanted("ld_bb")) curves["ld_bb"].push_back(bb_logical_depth(x, c, o));
    if (wanted("bennett")) curves["bennett"].push_back(bennett_depth(x, c, o));
    if (wanted("soph")) curves["soph"].push_back(soph[n]);
    if (wanted("set_soph")) {
      curves["set_soph"].push_back(set_sophistication(x, c, cfg.maxlen.value_or(24), o));
    }
  }
  if (format == "svg") {
    write_curves_svg(os, x, cs, curves);
  } else {
    os << kMeasureCsvHeader << '\n';
    for (std::size_t n = 0; n < cs.size(); ++n) {
      for (const auto& m : names) write_measure_row(os, x, m, cs[n], curves[m][n]);
    }
  }
  if (cfg.require_stable) {
    for (const auto& m : names) {
      for (std::size_t n = 0; n < cs.size(); ++n) {
        if (curves[m][n].lower()) {
          std::cerr << "error: " << m << " at c=" << cs[n] << " is only a LowerBound ("
                    << curves[m][n].value << ") under budget " << o.budget.to_string() << "\n";
          return 3;
        }
      }
    }
  }
  return 0;
}

int cmd_structure(const Config& cfg, std::ostream& os) {
  const BitString x = parse_x(cfg.x);
  const auto o = measure_options(cfg, cfg.maxlen.value_or(24));
  const std::string format = format_or(cfg, "csv", {"csv", "svg"});
  const auto s = structure_set(x, o.budget, cfg.imax, cfg.jmax, o.workers);
  for (const auto& gap : s.gaps) std::cerr << "note: " << gap << "\n";
  if (format == "svg") {
    write_staircase_svg(os, x, s, complexity(x, o).value, cfg.imax, cfg.jmax);
  } else {
    write_staircase_csv(os, s);
  }
  return 0;
}

int cmd_closeness(const Config& cfg, std::ostream& os) {
  format_or(cfg, "csv", {"csv"});
  const auto o = measure_options(cfg, cfg.search_len);
  const auto rep = closeness_experiment(cfg.maxlen.value_or(6), cfg.cmax, o);
  write_certificate(os, rep);
  return 0;
}

int cmd_unstable(const Config& cfg, std::ostream& os) {
  format_or(cfg, "text", {"text"});
  const auto cs = parse_grid(cfg.c);
  if (cs.size() != 1) throw UsageError("unstable takes a single --c value");
  const auto rep = unstable_string(cfg.k.value_or(8), cs.front(), parse_budget(cfg.budget), cfg.transcript);
  write_certificate(os, rep);
  return rep.verified() ? 0 : 1;
}

int cmd_deep(const Config& cfg, std::ostream& os) {
  format_or(cfg, "text", {"text"});
  const auto rep = deep_experiment(cfg.n, cfg.d, cfg.cmax, measure_options(cfg, cfg.search_len));
  write_certificate(os, rep);
  return rep.deep.exhausted ? 1 : 0;
}

int cmd_twopart(const Config& cfg, std::ostream& os) {
  format_or(cfg, "text", {"text"});
  const BitString x = parse_x(cfg.x);
  const auto o = measure_options(cfg, cfg.search_len);
  const auto cx = complexity(x, o);
  std::vector<std::size_t> ks;
  if (cfg.k) {
    if (!two_part_shorter_admissible(x.size(), *cfg.k)) {
      throw UsageError("k must satisfy k ≥ 2 and k + |bin(k)| ≤ |x|");
    }
    ks.push_back(*cfg.k);
  } else {
    for (std::size_t k = 2; two_part_shorter_admissible(x.size(), k); ++k) ks.push_back(k);
  }
  if (ks.empty()) throw UsageError("no admissible k for |x| = " + std::to_string(x.size()));
  os << "# C(x)\t" << cx.value << "\t" << bound_kind_name(cx.kind) << "\n";
  bool ok = true;
  for (std::size_t k : ks) {
    const auto r = two_part_shorter(x, k, o.budget, cx.value);
    write_certificate(os, r);
    ok = ok && r.ok();
  }
  return ok ? 0 : 1;
}

int cmd_markerseq(const Config& cfg, std::ostream& os) {
  format_or(cfg, "text", {"text"});
  const Budget b = parse_budget(cfg.budget);
  const std::size_t k = cfg.k.value_or(10);
  if (cfg.l > k) throw UsageError("need l ≤ k");
  check_ceiling(k);
  write_marker_sequence(os, marker_sequence(cfg.l, k, b, cfg.workers));
  const auto sweep = segment_sweep(cfg.l, k, b, cfg.workers);
  write_certificate(os, sweep, cfg.l, k, b);
  return sweep.verified == sweep.checked ? 0 : 1;
}

int cmd_bb(const Config& cfg, std::ostream& os) {
  format_or(cfg, "csv", {"csv"});
  check_ceiling(cfg.l);
  const auto v = busy_beaver(cfg.l, parse_budget(cfg.budget), cfg.workers);
  os << "l,value,kind,witness\n"
     << v.argument << ',' << v.value << ',' << bb_kind_name(v.kind) << ',' << v.witness.field() << '\n';
  return 0;
}

int cmd_omega(const Config& cfg, std::ostream& os) {
  format_or(cfg, "csv", {"csv"});
  const std::size_t ceiling = cfg.ceiling.value_or(max_len_ceiling());
  check_ceiling(ceiling);
  const auto v = omega_lower_bound(cfg.t, ceiling, cfg.workers);
  os << "t,ceiling,numerator,exponent,value\n"
     << cfg.t << ',' << ceiling << ',' << v.numerator << ',' << v.exponent << ',' << v.to_string()
     << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budgeted sophistication and logical depth on a 3-bit micro-VM"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags win");
  Config cfg;

  app.add_option("--budget", cfg.budget, "steps or steps:excursion")->capture_default_str();
  app.add_option("--maxlen", cfg.maxlen,
                 "enumeration maxLen (measure, structure); |x| bound (closeness)");
  app.add_option("--search-len", cfg.search_len, "enumeration maxLen inside experiments")
      ->capture_default_str();
  app.add_option("--workers", cfg.workers, "threads, 0 = all cores")->capture_default_str();
  app.add_option("--out", cfg.out, "output path, - for stdout")->capture_default_str();
  app.add_option("--format", cfg.format, "csv, svg or text");
  app.add_option("--c", cfg.c, "significance a or a..b")->capture_default_str();
  app.add_option("--cmax", cfg.cmax, "largest c (closeness, deep)")->capture_default_str();
  app.add_option("--imax", cfg.imax, "largest describing program (structure)")->capture_default_str();
  app.add_option("--jmax", cfg.jmax, "largest log-size (structure)")->capture_default_str();
  app.add_option("--k", cfg.k, "k (unstable, twopart, markerseq)");
  app.add_option("--l", cfg.l, "l (markerseq, bb)")->capture_default_str();
  app.add_option("--n", cfg.n, "string length (deep)")->capture_default_str();
  app.add_option("--d", cfg.d, "deficiency (deep)")->capture_default_str();
  app.add_option("--t", cfg.t, "step bound (omega)")->capture_default_str();
  app.add_option("--ceiling", cfg.ceiling, "Kraft ceiling (omega)");
  app.add_option("--soph-len", cfg.soph_len, "raw program lengths searched by soph")
      ->capture_default_str();
  app.add_option("--measures", cfg.measures, "comma list of C,ld,ld_bb,bennett,soph,set_soph")
      ->capture_default_str();
  app.add_flag("--require-stable", cfg.require_stable,
               "doubling test; fail when a value is only a LowerBound");
  app.add_flag("--no-seed", cfg.no_seed, "pure enumeration, no synthesized witnesses");
  app.add_flag("--transcript", cfg.transcript, "include the marking log (unstable)");

  auto* measure = app.add_subcommand("measure", "all measures of x over a c grid");
  measure->add_option("x", cfg.x, "bit string, \"\" or - for the empty string")->required();
  auto* structure = app.add_subcommand("structure", "structure set staircase of x");
  structure->add_option("x", cfg.x, "bit string")->required();
  auto* experiment = app.add_subcommand("experiment", "construction experiments");
  experiment->require_subcommand(1);
  auto* closeness = experiment->add_subcommand("closeness", "soph vs ld^bb over all |x| ≤ maxlen");
  auto* unstable = experiment->add_subcommand("unstable", "instability marking process");
  auto* deep = experiment->add_subcommand("deep", "deep incompressible string and composition");
  auto* twopart = experiment->add_subcommand("twopart", "two-part codes shorter than C(x)");
  twopart->add_option("x", cfg.x, "bit string")->required();
  auto* markerseq = experiment->add_subcommand("markerseq", "marker sequence and segment codes");
  auto* bb = experiment->add_subcommand("bb", "busy beaver value");
  auto* omega = experiment->add_subcommand("omega", "halting probability lower bound");

  CLI11_PARSE(app, argc, argv);

  std::ostringstream buf;
  int status = 0;
  try {
    if (*measure) status = cmd_measure(cfg, buf);
    else if (*structure) status = cmd_structure(cfg, buf);
    else if (*closeness) status = cmd_closeness(cfg, buf);
    else if (*unstable) status = cmd_unstable(cfg, buf);
    else if (*deep) status = cmd_deep(cfg, buf);
    else if (*twopart) status = cmd_twopart(cfg, buf);
    else if (*markerseq) status = cmd_markerseq(cfg, buf);
    else if (*bb) status = cmd_bb(cfg, buf);
    else if (*omega) status = cmd_omega(cfg, buf);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (cfg.out == "-") {
    std::cout << buf.str();
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file || !(file << buf.str()) || !file.flush()) {
      std::cerr << "error: cannot write output path '" << cfg.out << "'\n";
      return 1;
    }
  }
  return status;
}
