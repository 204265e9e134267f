#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ordgraph/actions.hpp"
#include "ordgraph/boundary.hpp"
#include "ordgraph/conditions.hpp"
#include "ordgraph/correspondence.hpp"
#include "ordgraph/report.hpp"
#include "ordgraph/shift.hpp"

using namespace ordgraph;

namespace {

struct Options {
  bool json = false;
  bool parallel = false;
  int alpha = 0;
  bool alpha_set = false;
  unsigned long max_n = 0;
  std::size_t prefix = 1;
  std::size_t cycle = 2;
  std::string levels;
  int zeta = -1;
  long radius = 1;
  std::size_t samples = 25;
  std::uint64_t seed = 1;
  std::string small_rep;
};

// Raised for malformed input; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool use_color() {
  const char* c = std::getenv("ORDGRAPH_COLOR");
  if (c && std::string(c) == "never") return false;
  if (c && std::string(c) == "always") return true;
  return isatty(STDOUT_FILENO) != 0;
}

int emit(const Report& r, const Options& o, bool value_only = false) {
  if (o.json) std::cout << to_json(r);
  else if (value_only && r.result) std::cout << *r.result << "\n";
  else std::cout << to_text(r, use_color());
  return r.exit_code();
}

Ordinal ordinal_arg(const std::string& s) {
  try {
    return parse_ordinal(s);
  } catch (const OrdinalParseError& e) {
    throw UsageError(std::string("malformed ordinal '") + s + "': " + e.what());
  }
}

int vertex_arg(const Presentation& p, const std::string& s) {
  std::string name = s.rfind("id:", 0) == 0 ? s.substr(3) : s;
  auto v = p.find_vertex(name);
  if (!v) throw UsageError("unknown vertex '" + s + "'");
  return *v;
}

std::string join(const std::vector<std::string>& xs, const char* sep = " ") {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
  return out;
}

std::string vertex_list(const Presentation& p, const std::vector<int>& vs) {
  std::vector<std::string> names;
  for (int v : vs) names.push_back(p.vertex_name(v));
  return "{" + join(names, ",") + "}";
}

Report cmd_validate(const std::string& cmd, const std::string& file) {
  Report r{cmd};
  RawPresentation raw = parse_presentation_json([&] {
    std::ifstream in(file);
    if (!in) throw SchemaError("cannot read " + file);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }());
  Presentation p = Presentation::build(raw);
  auto issues = validate(p);
  if (!issues.empty()) {
    r.status = "invalid";
    for (const auto& i : issues) r.findings.push_back({i.check, i.message, i.witness});
  }
  r.sort_findings();
  return r;
}

Report cmd_check(const std::string& cmd, const std::string& what, const Presentation& p, const Options& o) {
  Report r{cmd};
  if (what == "regular") {
    std::vector<int> levels;
    if (o.alpha_set) levels.push_back(o.alpha);
    else
      for (int k = 0; k <= p.max_level(); ++k) levels.push_back(k);
    for (int k : levels) {
      for (int v = 0; v < p.vertex_count(); ++v) {
        auto rr = regularity(p, v, k);
        std::string state = rr.regular ? "regular" : rr.source_regular ? "not row-finite" : "not source-regular";
        r.findings.push_back({"regular@" + std::to_string(k), p.vertex_name(v), state});
      }
    }
  } else if (what == "condition-c") {
    if (auto w = condition_c(p)) {
      r.status = "fail";
      r.findings.push_back({"condition-c@" + std::to_string(w->level), p.name(w->atom), format_path(p, w->word)});
    }
  } else if (what == "condition-s") {
    unsigned long n = o.max_n ? o.max_n : default_max_n(p);
    auto s = condition_s(p, n, 2, o.parallel);
    if (s.verified) {
      r.status = "verified_up_to(" + std::to_string(s.n) + ")";
    } else {
      r.status = "fail";
      r.findings.push_back({"condition-s@" + std::to_string(s.level), vertex_list(p, s.component), "no non-returning full path of length " + std::to_string(s.n)});
    }
  } else {
    throw UsageError("unknown check '" + what + "' (regular, condition-c, condition-s)");
  }
  r.sort_findings();
  return r;
}

Report cmd_ordinal(const std::string& cmd, const std::string& op, const std::string& a, const std::string& b) {
  Report r{cmd};
  Ordinal x = ordinal_arg(a), y = ordinal_arg(b);
  if (op == "add") r.result = format(x + y);
  else if (op == "mul") r.result = format(x * y);
  else if (op == "sub") r.result = format(left_sub(x, y));
  else if (op == "cmp") {
    auto c = cmp(x, y);
    r.result = c < 0 ? "less" : c > 0 ? "greater" : "equal";
  } else throw UsageError("unknown ordinal operation '" + op + "' (add, mul, sub, cmp)");
  return r;
}

Report cmd_path(const std::string& cmd, const std::string& op, const Presentation& p, const std::vector<std::string>& args) {
  Report r{cmd};
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw UsageError("path " + op + " takes " + std::to_string(n) + " arguments");
  };
  auto is_star = [](const std::string& s) { return s.find('(') != std::string::npos; };
  if (op == "normalize") {
    need(1);
    r.result = format_star(p, parse_star(p, args[0]));
  } else if (op == "degree") {
    need(1);
    StarPath f = parse_star(p, args[0]);
    r.result = f.is_finite() ? format(degree(p, f.path())) : "L=" + format(star_length(p, f));
  } else if (op == "compose") {
    need(2);
    r.result = format_star(p, star_compose(p, parse_path(p, args[0]), parse_star(p, args[1])));
  } else if (op == "head") {
    need(2);
    Ordinal b = ordinal_arg(args[1]);
    r.result = format_path(p, is_star(args[0]) ? star_head(p, parse_star(p, args[0]), b) : head(p, parse_path(p, args[0]), b));
  } else if (op == "tail") {
    need(2);
    Ordinal b = ordinal_arg(args[1]);
    r.result = is_star(args[0]) ? format_star(p, star_tail(p, parse_star(p, args[0]), b)) : format_path(p, tail(p, parse_path(p, args[0]), b));
  } else if (op == "divides") {
    need(2);
    bool d = star_divides(p, parse_path(p, args[0]), parse_star(p, args[1]));
    r.result = d ? "true" : "false";
  } else {
    throw UsageError("unknown path operation '" + op + "' (normalize, degree, compose, head, tail, divides)");
  }
  return r;
}

Report cmd_boundary(const std::string& cmd, const Presentation& p, const std::string& vertex, const Options& o) {
  Report r{cmd};
  std::vector<std::string> lines;
  for (const auto& f : enumerate_boundary(p, vertex_arg(p, vertex), o.prefix, o.cycle)) {
    lines.push_back(format_star(p, f));
    r.findings.push_back({"boundary", lines.back(), std::nullopt});
  }
  r.result = join(lines, "\n");
  return r;
}

Report cmd_shift(const std::string& cmd, const Presentation& p, const std::string& literal, const Options& o) {
  Report r{cmd};
  StarPath f = parse_star(p, literal);
  if (o.alpha < 0 || o.alpha > p.max_level()) throw UsageError("--alpha out of range");
  if (auto w = is_cancellative(p, f, o.alpha)) {
    r.status = "fail";
    r.result = "not " + std::to_string(o.alpha) + "-cancellative: epsilon=" + format(w->epsilon) + " beta=" + format(w->beta);
    r.findings.push_back({"cancellative@" + std::to_string(o.alpha), format_star(p, f), "epsilon=" + format(w->epsilon) + " beta=" + format(w->beta)});
    return r;
  }
  r.result = std::to_string(shift_v(p, f, o.alpha));
  return r;
}

void add_failures(Report& r, const RelationReport& rel) {
  for (const auto& f : rel.failures) r.findings.push_back({f.relation, f.instance, f.residual});
  r.status = rel.passed() ? "pass" : "fail";
  r.result = std::to_string(rel.checked) + " relation instances checked, " + std::to_string(rel.failures.size()) + " failed";
}

std::optional<std::set<int>> parse_levels(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::set<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int k = std::stoi(item, &used);
      if (used != item.size() || k < 0) throw std::invalid_argument(item);
      out.insert(k);
    } catch (const std::exception&) {
      throw UsageError("bad level list '" + s + "'");
    }
  }
  return out;
}

Report cmd_rep(const std::string& cmd, const std::string& op, const Presentation& p, const std::string& rep_file, const Options& o) {
  Report r{cmd};
  if (op == "verify") {
    if (rep_file.empty()) throw UsageError("rep verify needs a representation file");
    add_failures(r, verify_ck(p, load_representation_file(rep_file), parse_levels(o.levels), o.parallel));
  } else if (op == "correspondence") {
    if (rep_file.empty()) throw UsageError("rep correspondence needs a representation file");
    Representation big = load_representation_file(rep_file);
    Representation small = o.small_rep.empty() ? restrict_representation(p, big, o.alpha) : load_representation_file(o.small_rep);
    add_failures(r, verify_correspondence(p, o.alpha, small, big, {o.samples, o.seed}));
  } else if (op == "tau") {
    add_failures(r, verify_tau(p, boundary_samples(p, o.prefix, o.cycle)));
  } else if (op == "pi") {
    int zeta = o.zeta < 0 ? p.max_level() + 1 : o.zeta;
    add_failures(r, verify_pi(p, shift_samples(boundary_samples(p, o.prefix, o.cycle), zeta, o.radius), zeta));
  } else {
    throw UsageError("unknown rep operation '" + op + "' (verify, correspondence, tau, pi)");
  }
  r.sort_findings();
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for finitely presented ordinal graphs", "ograph"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Structured JSON report");
  app.add_flag("--parallel", o.parallel, "Check independent cases in parallel");

  std::string file, a, b, op, rep_file;
  std::vector<std::string> rest;

  auto* validate_cmd = app.add_subcommand("validate", "Load and validate a presentation");
  validate_cmd->add_option("file", file)->required();

  auto* check = app.add_subcommand("check", "Regularity and conditions (C)/(S)");
  check->add_option("what", op, "regular | condition-c | condition-s")->required();
  check->add_option("file", file)->required();
  auto* alpha_opt = check->add_option("--alpha", o.alpha, "Level");
  check->add_option("--max-n", o.max_n, "Bound for condition (S)");

  auto* ord = app.add_subcommand("ordinal", "Ordinal arithmetic");
  ord->add_option("op", op, "add | mul | sub | cmp")->required();
  ord->add_option("a", a)->required();
  ord->add_option("b", b)->required();

  auto* path = app.add_subcommand("path", "Path operations");
  path->add_option("op", op, "normalize | degree | compose | head | tail | divides")->required();
  path->add_option("file", file)->required();
  path->add_option("args", rest)->required();

  auto* bnd = app.add_subcommand("boundary", "Enumerate boundary paths from a vertex");
  bnd->add_option("file", file)->required();
  bnd->add_option("vertex", a)->required();
  bnd->add_option("--prefix", o.prefix, "Prefix word length bound");
  bnd->add_option("--cycle", o.cycle, "Loop word length bound");

  auto* sh = app.add_subcommand("shift", "Cancellativity and the shift value");
  sh->add_option("file", file)->required();
  sh->add_option("path", a)->required();
  sh->add_option("--alpha", o.alpha, "Level");

  auto* rep = app.add_subcommand("rep", "Representation checks");
  rep->add_option("op", op, "verify | correspondence | tau | pi")->required();
  rep->add_option("file", file)->required();
  rep->add_option("rep", rep_file);
  rep->add_option("--levels", o.levels, "Comma-separated levels for verify");
  rep->add_option("--alpha", o.alpha, "Level for correspondence");
  rep->add_option("--small", o.small_rep, "Representation of the lower algebra (default: restriction)");
  rep->add_option("--samples", o.samples, "Random elements for correspondence");
  rep->add_option("--seed", o.seed, "Random seed");
  rep->add_option("--prefix", o.prefix, "Boundary sample prefix bound");
  rep->add_option("--cycle", o.cycle, "Boundary sample loop bound");
  rep->add_option("--zeta", o.zeta, "Number of shift levels for pi");
  rep->add_option("--radius", o.radius, "Shift sample box radius for pi");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  o.alpha_set = alpha_opt->count() > 0;

  std::vector<std::string> words(argv + 1, argv + argc);
  std::string cmd = join(words);
  try {
    if (validate_cmd->parsed()) return emit(cmd_validate(cmd, file), o);
    if (ord->parsed()) return emit(cmd_ordinal(cmd, op, a, b), o, true);
    Presentation p = load_presentation_file(file);
    if (check->parsed()) return emit(cmd_check(cmd, op, p, o), o);
    if (path->parsed()) return emit(cmd_path(cmd, op, p, rest), o, true);
    if (bnd->parsed()) return emit(cmd_boundary(cmd, p, a, o), o, true);
    if (sh->parsed()) return emit(cmd_shift(cmd, p, a, o), o, true);
    if (rep->parsed()) return emit(cmd_rep(cmd, op, p, rep_file, o), o);
  } catch (const ValidationError& e) {
    Report r{cmd, "invalid"};
    for (const auto& i : e.issues()) r.findings.push_back({i.check, i.message, i.witness});
    r.sort_findings();
    return emit(r, o);
  } catch (const std::exception& e) {
    // Schema, parse, path and precondition errors are all invalid input.
    std::cerr << "ograph: error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
