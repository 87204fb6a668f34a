#include <CLI11.hpp>

#include "formats.hpp"
#include "salemca/analysis.hpp"
#include "salemca/closedform.hpp"
#include "salemca/engine.hpp"
#include "salemca/rules.hpp"
#include "salemca/salem.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace salemca;

namespace {

constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResourceCap = 3;

struct EngineFlags {
  int threads = 1;
  std::size_t mem_cap = std::size_t{2} << 30;

  EngineOptions options() const { return EngineOptions{threads, mem_cap}; }
};

void add_engine_flags(CLI::App* cmd, EngineFlags& flags) {
  cmd->add_option("--threads", flags.threads, "worker threads for the update kernel")
      ->check(CLI::Range(1, 1024));
  cmd->add_option("--mem-cap", flags.mem_cap, "engine allocation cap in bytes");
}

std::string join_command_line(int argc, char** argv) {
  std::string joined;
  for (int i = 0; i < argc; ++i) {
    if (i) joined += ' ';
    joined += argv[i];
  }
  return joined;
}

BigRat parse_alpha(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return BigRat(BigInt(text));
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (num.empty() || den.empty()) throw std::invalid_argument("");
    if (BigInt(den) == 0) throw std::invalid_argument("");
    return BigRat(BigInt(num), BigInt(den));
  } catch (const std::exception&) {
    throw std::invalid_argument("alpha must be a rational like 1/5, got '" + text + "'");
  }
}

int floor_div2(int v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

int lattice_dims_of(const Rule& rule) {
  return rule.lattice.type == LatticeType::Square ? rule.lattice.dim : 2;
}

// Spatial pattern of window `w` cropped to its own light cone; axes/fixed
// select a 2-D cross-section when the lattice has more than two axes.
Grid2D render_frame(const PatternWindow& w, const std::vector<int>& growth, int axis_r,
                    int axis_c, const std::vector<int>& fixed) {
  const int d = static_cast<int>(w.radius.size());
  Grid2D g;
  if (d == 1) {
    const int bound = growth[0] * w.time;
    g.rows = 1;
    g.cols = 2 * bound + 1;
    g.row0 = 0;
    g.col0 = -bound;
    g.bits.assign(static_cast<std::size_t>(g.cols), 0);
    for (int c = 0; c < g.cols; ++c) {
      const int cell[1] = {g.col0 + c};
      g.bits[c] = w.get(cell) ? 1 : 0;
    }
    return g;
  }

  const int bound_r = growth[axis_r] * w.time;
  const int bound_c = growth[axis_c] * w.time;
  g.rows = 2 * bound_r + 1;
  g.cols = 2 * bound_c + 1;
  g.row0 = -bound_r;
  g.col0 = -bound_c;
  g.bits.assign(static_cast<std::size_t>(g.rows) * g.cols, 0);

  std::vector<int> cell(d, 0);
  std::size_t fi = 0;
  for (int a = 0; a < d; ++a) {
    if (a == axis_r || a == axis_c) continue;
    cell[a] = fixed[fi++];
  }
  for (int r = 0; r < g.rows; ++r) {
    cell[axis_r] = g.row0 + r;
    for (int c = 0; c < g.cols; ++c) {
      cell[axis_c] = g.col0 + c;
      g.bits[static_cast<std::size_t>(r) * g.cols + c] = w.get(cell) ? 1 : 0;
    }
  }
  return g;
}

// Axial -> offset-row conversion for hexagonal frames: each row (axial q)
// shifts its columns by floor(q/2), giving the staggered raster.
Grid2D offset_rows(const Grid2D& g) {
  int lo = 0, hi = 0;
  for (int r = 0; r < g.rows; ++r) {
    const int shift = floor_div2(g.row0 + r);
    lo = std::min(lo, g.col0 + shift);
    hi = std::max(hi, g.col0 + g.cols - 1 + shift);
  }
  Grid2D out;
  out.rows = g.rows;
  out.cols = hi - lo + 1;
  out.row0 = g.row0;
  out.col0 = lo;
  out.bits.assign(static_cast<std::size_t>(out.rows) * out.cols, 0);
  for (int r = 0; r < g.rows; ++r) {
    const int shift = floor_div2(g.row0 + r);
    for (int c = 0; c < g.cols; ++c) {
      const int col = g.col0 + c + shift - lo;
      out.bits[static_cast<std::size_t>(r) * out.cols + col] = g.at(r, c);
    }
  }
  return out;
}

std::optional<ClosedFormFamily> family_for(const Rule& rule) {
  for (const std::string& a : rule.aliases) {
    if (a.rfind("F:", 0) == 0) return ClosedFormFamily::axis_rule(std::stoi(a.substr(2)));
    if (a.rfind("G:", 0) == 0) return ClosedFormFamily::corner_rule(std::stoi(a.substr(2)));
  }
  if (rule.name == "hex:H2") return ClosedFormFamily::hex_h2();
  if (rule.name == "hex:H3") return ClosedFormFamily::hex_h3();
  return std::nullopt;
}

// ---- verify suites -------------------------------------------------------

bool suite_takahashi(int dim, int steps, const EngineOptions& opts) {
  for (const Rule& rule : enumerate_rules(Lattice::square(dim))) {
    if (!takahashi_check(rule, steps, opts)) {
      std::printf("suite takahashi: FAIL (rule %s, steps %d)\n", rule.name.c_str(), steps);
      return false;
    }
  }
  std::printf("suite takahashi: pass (dim %d, steps %d, %zu rules)\n", dim, steps,
              enumerate_rules(Lattice::square(dim)).size());
  return true;
}

bool expect_match(const Rule& rule, int k_max, const BigInt& expected_m,
                  const EngineOptions& opts) {
  const ClassificationReport report = classify_salem(rule, k_max, opts);
  if (report.verdict != Verdict::Match || *report.salem_m != expected_m) {
    std::printf("suite salem-equality: FAIL (rule %s, k_max %d)\n", rule.name.c_str(), k_max);
    return false;
  }
  return true;
}

bool suite_salem_equality(std::optional<int> dim, const std::optional<Rule>& rule, int k_max,
                          const EngineOptions& opts) {
  if (rule) {
    const auto fam = family_for(*rule);
    if (!fam) throw std::invalid_argument("no exact singular-function result for " + rule->name);
    if (!expect_match(*rule, k_max, fam->branching, opts)) return false;
    std::printf("suite salem-equality: pass (rule %s, k_max %d)\n", rule->name.c_str(), k_max);
    return true;
  }
  if (!dim) throw std::invalid_argument("salem-equality needs --dim or --rule");
  if (!expect_match(make_FD(*dim), k_max, BigInt(2 * *dim), opts)) return false;
  if (!expect_match(make_GD(*dim), k_max, BigInt(1) << *dim, opts)) return false;
  std::printf("suite salem-equality: pass (dim %d, k_max %d)\n", *dim, k_max);
  return true;
}

bool suite_closedform(const Rule& rule, int steps, const EngineOptions& opts) {
  const auto fam = family_for(rule);
  if (!fam) throw std::invalid_argument("no closed form for " + rule.name);
  const CountSeries counts = run_counts(rule, steps, opts);
  int k = 0;
  while ((1LL << k) <= steps) ++k;
  for (int n = 0; n <= steps; ++n) {
    if (counts.num[n] != closed_num(*fam, static_cast<std::uint64_t>(n)) ||
        counts.cum[n] != cum_decompose(*fam, static_cast<std::uint64_t>(n) + 1, k + 1)) {
      std::printf("suite closedform: FAIL (rule %s at n=%d)\n", rule.name.c_str(), n);
      return false;
    }
  }
  std::printf("suite closedform: pass (rule %s, steps %d)\n", rule.name.c_str(), steps);
  return true;
}

// ---- command bodies ------------------------------------------------------

struct PatternArgs {
  std::string rule_spec;
  int step = -1;
  std::string range;
  std::string out = "pattern.pbm";
  std::string out_prefix = "pattern";
  std::vector<int> axes;
  std::vector<int> fixed;
  bool offset = false;
  EngineFlags engine;
};

int cmd_pattern(const PatternArgs& args, const std::string& cmdline) {
  const Rule rule = parse_rule(args.rule_spec);
  const int d = lattice_dims_of(rule);

  int first = 0, last = 0;
  bool range_mode = false;
  if (!args.range.empty()) {
    if (args.step >= 0) throw std::invalid_argument("give either --step or --range, not both");
    const auto colon = args.range.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("range must look like A:B");
    first = std::stoi(args.range.substr(0, colon));
    last = std::stoi(args.range.substr(colon + 1));
    if (first < 0 || last < first) throw std::invalid_argument("bad step range");
    range_mode = true;
  } else {
    if (args.step < 0) throw std::invalid_argument("pattern needs --step or --range");
    first = last = args.step;
  }

  int axis_r = 0, axis_c = 1;
  if (!args.axes.empty()) {
    if (args.axes.size() != 2) throw std::invalid_argument("--axes takes two axis indices");
    axis_r = args.axes[0];
    axis_c = args.axes[1];
  }
  if (d > 1) {
    if (axis_r < 0 || axis_r >= d || axis_c < 0 || axis_c >= d || axis_r == axis_c) {
      throw std::invalid_argument("slice axes must be two distinct lattice axes");
    }
    if (static_cast<int>(args.fixed.size()) != d - 2) {
      throw std::invalid_argument("need exactly " + std::to_string(d - 2) +
                                  " fixed coordinates for the remaining axes");
    }
  }
  if (args.offset && rule.lattice.type != LatticeType::Hexagonal) {
    throw std::invalid_argument("--offset-rows applies to hexagonal patterns only");
  }

  const Stencil st = expand_stencil(rule);
  const std::vector<int> growth = st.growth();
  std::vector<int> radius = growth;
  for (int& r : radius) r *= last;

  BigInt window_bits = 1;
  for (int r : radius) window_bits *= 2 * r + 1;
  const int buffers = st.parity_split ? 4 : 2;
  if (window_bits > BigInt(8) * args.engine.mem_cap / buffers) {
    throw ResourceLimitError("pattern window would exceed the memory cap");
  }
  PatternWindow w = seed(rule.lattice, radius);

  int suffix_width = 4;
  for (long long v = 10000; v <= last; v *= 10) ++suffix_width;

  for (int n = 0; n <= last; ++n) {
    if (n > 0) w = step(w, rule, args.engine.options());
    if (n < first) continue;
    Grid2D frame = render_frame(w, growth, axis_r, axis_c, args.fixed);
    if (args.offset) frame = offset_rows(frame);
    std::filesystem::path path;
    if (range_mode) {
      std::string suffix = std::to_string(n);
      if (static_cast<int>(suffix.size()) < suffix_width) {
        suffix.insert(0, suffix_width - suffix.size(), '0');
      }
      path = args.out_prefix + "_" + suffix + ".pbm";
    } else {
      path = args.out;
    }
    formats::write_with_sidecar(path, formats::pattern_pbm(frame), cmdline);
  }
  return 0;
}

struct VerifyArgs {
  std::string suite;
  std::optional<int> dim;
  int steps = 32;
  int kmax = 6;
  std::string rule_spec;
  EngineFlags engine;
};

int cmd_verify(const VerifyArgs& args) {
  const EngineOptions opts = args.engine.options();
  std::optional<Rule> rule;
  if (!args.rule_spec.empty()) rule = parse_rule(args.rule_spec);

  bool ok = true;
  if (args.suite == "takahashi") {
    ok = suite_takahashi(args.dim.value_or(2), args.steps, opts);
  } else if (args.suite == "salem-equality") {
    ok = suite_salem_equality(args.dim, rule, args.kmax, opts);
  } else if (args.suite == "closedform") {
    if (!rule) throw std::invalid_argument("closedform suite needs --rule");
    ok = suite_closedform(*rule, args.steps, opts);
  } else if (args.suite == "all") {
    for (int d = 1; d <= 3; ++d) ok = suite_takahashi(d, d == 3 ? 12 : 24, opts) && ok;
    for (int d = 1; d <= 2; ++d) ok = suite_salem_equality(d, std::nullopt, 6, opts) && ok;
    for (const char* spec : {"hex:H2", "hex:H3"}) {
      ok = suite_salem_equality(std::nullopt, parse_rule(spec), 6, opts) && ok;
    }
    for (const char* spec : {"F:1", "F:2", "G:2", "hex:H2", "hex:H3"}) {
      ok = suite_closedform(parse_rule(spec), 63, opts) && ok;
    }
  } else {
    throw std::invalid_argument("unknown suite: " + args.suite);
  }
  return ok ? 0 : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cmdline = join_command_line(argc, argv);

  CLI::App app{"exact simulation and singular-function classification of linear symmetric CAs"};
  app.require_subcommand(1);

  // counts
  std::string rule_spec, out_path;
  int steps = 0;
  EngineFlags counts_engine;
  auto* counts_cmd = app.add_subcommand("counts", "write n,num,cum as CSV");
  counts_cmd->add_option("--rule", rule_spec, "rule spec")->required();
  counts_cmd->add_option("--steps", steps, "horizon N")->required()->check(CLI::NonNegativeNumber);
  counts_cmd->add_option("--out", out_path, "output file")->default_val("counts.csv");
  add_engine_flags(counts_cmd, counts_engine);

  // simulate
  std::string sim_rule;
  int sim_steps = 0;
  EngineFlags sim_engine;
  auto* sim_cmd = app.add_subcommand("simulate", "run a rule and print n,num,cum to stdout");
  sim_cmd->add_option("--rule", sim_rule, "rule spec")->required();
  sim_cmd->add_option("--steps", sim_steps, "horizon N")->required()->check(CLI::NonNegativeNumber);
  add_engine_flags(sim_cmd, sim_engine);

  // fsample
  std::string fs_rule, fs_out;
  int fs_k = 1;
  EngineFlags fs_engine;
  auto* fs_cmd = app.add_subcommand("fsample", "write the normalized cumulative-count function");
  fs_cmd->add_option("--rule", fs_rule, "rule spec")->required();
  fs_cmd->add_option("--k", fs_k, "dyadic precision")->required()->check(CLI::Range(1, 24));
  fs_cmd->add_option("--out", fs_out, "output file")->default_val("fsample.csv");
  add_engine_flags(fs_cmd, fs_engine);

  // salem
  std::string alpha_text, salem_out;
  int salem_k = 1;
  auto* salem_cmd = app.add_subcommand("salem", "sample the singular function L_alpha exactly");
  salem_cmd->add_option("--alpha", alpha_text, "parameter as p/q")->required();
  salem_cmd->add_option("--k", salem_k, "dyadic precision")->required()->check(CLI::Range(1, 24));
  salem_cmd->add_option("--out", salem_out, "output file")->default_val("salem.csv");

  // classify
  std::string cls_rule, cls_out;
  int cls_kmax = 8;
  EngineFlags cls_engine;
  auto* cls_cmd = app.add_subcommand("classify", "screen one rule against the L_{1/M} family");
  cls_cmd->add_option("--rule", cls_rule, "rule spec")->required();
  cls_cmd->add_option("--kmax", cls_kmax, "largest precision")->required()->check(CLI::Range(2, 24));
  cls_cmd->add_option("--out", cls_out, "output file")->default_val("classify.json");
  add_engine_flags(cls_cmd, cls_engine);

  // screen
  std::string screen_lattice, screen_out;
  int screen_dim = 0, screen_kmax = 8;
  EngineFlags screen_engine;
  auto* screen_cmd = app.add_subcommand("screen", "classify a whole rule family");
  screen_cmd->add_option("--lattice", screen_lattice, "sq, tri or hex")->required();
  screen_cmd->add_option("--dim", screen_dim, "dimension (square lattice only)");
  screen_cmd->add_option("--kmax", screen_kmax, "largest precision")->required()->check(CLI::Range(2, 24));
  screen_cmd->add_option("--out", screen_out, "output file")->default_val("screen.json");
  add_engine_flags(screen_cmd, screen_engine);

  // pattern
  PatternArgs pat;
  auto* pat_cmd = app.add_subcommand("pattern", "export spatial patterns as plain PBM");
  pat_cmd->add_option("--rule", pat.rule_spec, "rule spec")->required();
  pat_cmd->add_option("--step", pat.step, "single time step");
  pat_cmd->add_option("--range", pat.range, "step range A:B, one file per step");
  pat_cmd->add_option("--out", pat.out, "output file (single step)");
  pat_cmd->add_option("--out-prefix", pat.out_prefix, "output prefix (range mode)");
  pat_cmd->add_option("--axes", pat.axes, "two axes of the rendered plane")->delimiter(',');
  pat_cmd->add_option("--fixed", pat.fixed, "coordinates of the remaining axes")->delimiter(',');
  pat_cmd->add_flag("--offset-rows", pat.offset, "staggered raster for hexagonal patterns");
  add_engine_flags(pat_cmd, pat.engine);

  // verify
  VerifyArgs ver;
  int ver_dim = -1;
  auto* ver_cmd = app.add_subcommand("verify", "run built-in invariant suites");
  ver_cmd->add_option("--suite", ver.suite, "takahashi | salem-equality | closedform | all")
      ->required();
  ver_cmd->add_option("--dim", ver_dim, "square dimension");
  ver_cmd->add_option("--steps", ver.steps, "horizon for evolution suites");
  ver_cmd->add_option("--kmax", ver.kmax, "precision for table suites")->check(CLI::Range(2, 24));
  ver_cmd->add_option("--rule", ver.rule_spec, "rule spec");
  add_engine_flags(ver_cmd, ver.engine);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (counts_cmd->parsed()) {
      const CountSeries counts = run_counts(parse_rule(rule_spec), steps, counts_engine.options());
      formats::write_with_sidecar(out_path, formats::counts_csv(counts), cmdline);
      return 0;
    }
    if (sim_cmd->parsed()) {
      const CountSeries counts = run_counts(parse_rule(sim_rule), sim_steps, sim_engine.options());
      std::fputs(formats::counts_csv(counts).c_str(), stdout);
      return 0;
    }
    if (fs_cmd->parsed()) {
      const Rule rule = parse_rule(fs_rule);
      const CountSeries counts = run_counts(rule, (1 << fs_k) - 1, fs_engine.options());
      const FunctionTable table = build_function_table(counts, fs_k);
      formats::write_with_sidecar(fs_out, formats::table_csv(table), cmdline);
      return 0;
    }
    if (salem_cmd->parsed()) {
      const SalemParams params{parse_alpha(alpha_text)};
      formats::write_with_sidecar(salem_out, formats::salem_csv(params, salem_k), cmdline);
      return 0;
    }
    if (cls_cmd->parsed()) {
      const ClassificationReport report =
          classify_salem(parse_rule(cls_rule), cls_kmax, cls_engine.options());
      formats::write_with_sidecar(cls_out, formats::reports_json({report}), cmdline);
      return 0;
    }
    if (screen_cmd->parsed()) {
      Lattice lat;
      if (screen_lattice == "sq") {
        if (screen_dim < 1) throw std::invalid_argument("square screening needs --dim >= 1");
        lat = Lattice::square(screen_dim);
      } else if (screen_lattice == "tri") {
        lat = Lattice::triangular();
      } else if (screen_lattice == "hex") {
        lat = Lattice::hexagonal();
      } else {
        throw std::invalid_argument("lattice must be sq, tri or hex");
      }
      const auto reports = screen_family(lat, screen_kmax, screen_engine.options());
      formats::write_with_sidecar(screen_out, formats::reports_json(reports), cmdline);
      return 0;
    }
    if (pat_cmd->parsed()) return cmd_pattern(pat, cmdline);
    if (ver_cmd->parsed()) {
      if (ver_dim >= 0) ver.dim = ver_dim;
      return cmd_verify(ver);
    }
  } catch (const ResourceLimitError& e) {
    std::fprintf(stderr, "resource cap: %s\n", e.what());
    return kExitResourceCap;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitVerificationFailure;
  }
  return kExitUsage;
}
