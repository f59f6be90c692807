#include "cli.hpp"

#include "kscert/coloring.hpp"
#include "kscert/dimacs.hpp"
#include "kscert/errors.hpp"
#include "kscert/rayset_io.hpp"
#include "kscert/spin.hpp"
#include "kscert/structures.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace kscert::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

bool is_file(const std::string& path) { return std::filesystem::is_regular_file(path); }

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << x;
  return os.str();
}

std::string join(const std::vector<int>& ids) {
  std::ostringstream os;
  for (std::size_t k = 0; k < ids.size(); ++k) os << (k ? " " : "") << ids[k];
  return os.str();
}

std::string format_residual(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Files override built-in names.
RaySet load_rays(const std::string& spec) {
  if (is_file(spec)) return read_rayset(read_file(spec));
  if (auto set = builtin_rayset(spec)) return *set;
  std::string names;
  for (const auto& n : builtin_rayset_names()) names += " " + n;
  throw UsageError("unknown ray set '" + spec + "' (not a file; built-ins:" + names + ")");
}

}  // namespace

const std::vector<std::string>& builtin_cover_names() {
  static const std::vector<std::string> names{"rays18-ks",  "rays18-gks",  "24cell-ks",
                                              "24cell-gks", "peres24-ks", "hexagon-gks"};
  return names;
}

std::optional<CoverStructure> builtin_cover(const std::string& name, double tol) {
  if (name == "rays18-ks") return build_ks_cover(build_18ray());
  if (name == "rays18-gks") {
    const std::vector<Group> groups{Group{std::vector<std::string>{"T1", "T5", "T7"}},
                                    Group{std::vector<std::string>{"T2", "T4", "T8"}},
                                    Group{std::vector<std::string>{"T3", "T6", "T9"}}};
    return build_gks_cover(build_18ray(), groups, Rational(1, 3));
  }
  if (name == "24cell-ks") return build_ks_cover(build_24cell_rays());
  if (name == "24cell-gks") {
    std::vector<Group> groups;
    for (const auto& t : inscribed_tesseracts()) groups.emplace_back(t);
    return build_gks_cover(build_24cell_rays(), groups, Rational(1, 2));
  }
  if (name == "peres24-ks") return build_ks_cover(build_peres24());
  if (name == "hexagon-gks") {
    const std::vector<Group> groups{Group{std::vector<int>{1, 2, 4, 5}}, Group{std::vector<int>{1, 3, 4, 6}},
                                    Group{std::vector<int>{2, 3, 5, 6}}};
    return build_gks_cover(build_hexagon_rays(), groups, Rational(1, 2), tol);
  }
  return std::nullopt;
}

namespace {

/// --cover names a file (paired with --rays) or a built-in cover; without
/// --cover the basis cover of --rays is used.
CoverStructure load_cover(const std::string& cover_spec, const std::string& rays_spec, double tol) {
  if (cover_spec.empty()) {
    if (rays_spec.empty()) throw UsageError("need --cover or --rays");
    return build_ks_cover(load_rays(rays_spec), tol);
  }
  if (is_file(cover_spec)) {
    if (rays_spec.empty()) throw UsageError("cover file '" + cover_spec + "' needs --rays");
    const CoverFile file = parse_cover(read_file(cover_spec));
    return attach(file, std::make_shared<const RaySet>(load_rays(rays_spec)));
  }
  if (auto cover = builtin_cover(cover_spec, tol)) return *cover;
  std::string names;
  for (const auto& n : builtin_cover_names()) names += " " + n;
  throw UsageError("unknown cover '" + cover_spec + "' (not a file; built-ins:" + names + ")");
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) out << text;
  else write_file(out_path, text);
}

struct Options {
  std::string rays;
  std::string cover;
  std::string out;
  std::string semantics = "drop";
  unsigned jobs = 1;
  double tolerance = kTolIdentity;
  std::string source;       // rayset
  std::string expect;       // search
  bool oracle = false;      // search
  std::string model;        // cnf
  bool check = false;       // cnf
  std::string j = "1/2";    // spin
  int r = 2;
  std::string dirs;
  int n = 0;
  int planar = 0;
  std::uint64_t seed = 1;
  bool search = false;
  unsigned n_max = 0;       // params
};

class Report {
 public:
  Report(std::ostream& out, const std::vector<std::string>& args) : out_(out) {
    out_ << "# command: kscert";
    for (const auto& a : args) out_ << ' ' << a;
    out_ << '\n';
  }
  void inputs(std::string_view canonical_inputs) {
    out_ << "# inputs: fnv1a64 " << hex64(fnv1a(canonical_inputs)) << '\n';
  }
  std::ostream& line() { return out_; }

 private:
  std::ostream& out_;
};

std::string cover_inputs(const CoverStructure& cover) {
  return write_rayset(cover.rays()) + write_cover(cover);
}

std::string incidence_summary(const std::map<int, int>& incidence) {
  std::set<int> counts;
  for (const auto& [id, n] : incidence) counts.insert(n);
  if (counts.size() == 1) return "all " + std::to_string(*counts.begin());
  return "mixed";
}

void print_certificate(std::ostream& os, const ParityCertificate& cert) {
  os << "parity: N=" << cert.context_count << (cert.context_count % 2 ? " odd" : " even") << ", incidence "
     << incidence_summary(cert.incidence_counts) << " -> certificate " << (cert.valid ? "VALID" : "INVALID") << '\n';
}

int cmd_rayset(const Options& o, std::ostream& out) {
  if (o.source.empty()) throw UsageError("rayset needs a name or file");
  emit(write_rayset(load_rays(o.source)), o.out, out);
  return 0;
}

int cmd_bases(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  if (o.rays.empty()) throw UsageError("bases needs --rays");
  const CoverStructure cover = build_ks_cover(load_rays(o.rays), o.tolerance);
  std::ostringstream os;
  Report report(os, args);
  report.inputs(write_rayset(cover.rays()));
  os << "# rays: " << cover.rays().size() << ", bases: " << cover.contexts().size() << ", incidence "
     << incidence_summary(cover.incidence()) << '\n';
  os << write_cover(cover);
  emit(os.str(), o.out, out);
  return 0;
}

int cmd_verify(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  const CoverStructure cover = load_cover(o.cover, o.rays, o.tolerance);
  Report report(out, args);
  report.inputs(cover_inputs(cover));
  const auto& rays = cover.rays();
  out << "rays: " << rays.size() << " (dim " << rays.dim() << ", "
      << (rays.backend() == Backend::exact ? "exact" : "floating") << ")\n";
  out << "kind: " << to_string(cover.kind()) << '\n';
  const CoverVerification check = verify_cover(cover, o.tolerance);
  double worst = 0.0;
  std::size_t failures = 0;
  for (std::size_t k = 0; k < check.contexts.size(); ++k) {
    const auto& c = check.contexts[k];
    out << "ctx " << c.name << ' ' << (c.ok ? "ok" : "FAILED") << " [" << join(cover.contexts()[k].element_ids) << "]\n";
    if (!c.ok) {
      ++failures;
      std::istringstream detail(c.detail);
      for (std::string l; std::getline(detail, l);) out << "  " << l << '\n';
    }
    worst = std::max(worst, c.residual);
  }
  out << "incidence:";
  for (const auto& [id, n] : cover.incidence()) out << ' ' << id << ':' << n;
  out << '\n';
  const ParityCertificate cert = parity_certificate(cover);
  print_certificate(out, cert);
  const std::string cert_text = std::string("parity certificate ") + (cert.valid ? "VALID" : "INVALID");
  if (!check.ok) {
    out << "summary: verification FAILED (" << failures << " of " << check.contexts.size() << " contexts)\n";
    return 1;
  }
  if (cover.kind() == CoverKind::basis) {
    out << "summary: " << cover.contexts().size() << " contexts, incidence " << incidence_summary(cover.incidence())
        << ", " << cert_text << '\n';
  } else {
    out << "summary: " << cover.contexts().size() << " POVMs complete ("
        << (check.exact ? std::string("exact") : "tolerance " + format_residual(o.tolerance) +
                                                       ", max residual " + format_residual(worst))
        << "), " << cert_text << '\n';
  }
  return 0;
}

int cmd_search(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  const CoverStructure cover = load_cover(o.cover, o.rays, o.tolerance);
  Report report(out, args);
  report.inputs(cover_inputs(cover));
  const SearchResult r = search_assignment(cover, SearchOptions{o.jobs});
  out << "elements: " << cover.element_ids().size() << '\n';
  out << "contexts: " << cover.contexts().size() << '\n';
  out << "status: " << to_string(r.status) << '\n';
  if (o.jobs <= 1) out << "nodes: " << r.nodes_visited << '\n';
  if (r.witness) out << "witness: [" << join(r.witness->ones()) << "]\n";
  int status = 0;
  if (o.oracle) {
    const SearchResult slow = exhaustive_oracle(cover);
    out << "oracle: " << to_string(slow.status) << " (" << slow.nodes_visited << " assignments, "
        << *slow.witness_count << " witnesses)\n";
    if (slow.status != r.status) {
      out << "oracle: DISAGREES with search\n";
      status = 2;
    }
  }
  if (!o.expect.empty()) {
    const bool want_sat = o.expect == "sat";
    if (want_sat != (r.status == SearchStatus::sat)) {
      out << "expect: " << o.expect << " FAILED\n";
      status = std::max(status, 1);
    }
  }
  return status;
}

int cmd_critical(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  const CoverStructure cover = load_cover(o.cover, o.rays, o.tolerance);
  const DeletionSemantics semantics =
      o.semantics == "shrink" ? DeletionSemantics::shrink_context : DeletionSemantics::drop_context;
  Report report(out, args);
  report.inputs(cover_inputs(cover));
  out << "semantics: " << (semantics == DeletionSemantics::drop_context ? "drop-context" : "shrink-context") << '\n';
  out << "baseline: " << to_string(search_assignment(cover, SearchOptions{o.jobs}).status) << '\n';
  const CriticalityReport crit = criticality_report(cover, semantics, SearchOptions{o.jobs});
  out << format_criticality(crit);
  const auto collapses = std::count_if(crit.per_element.begin(), crit.per_element.end(),
                                       [](const auto& kv) { return kv.second.collapses; });
  out << "collapses: " << collapses << '/' << crit.per_element.size() << '\n';
  out << "verdict: " << (crit.critical ? "CRITICAL" : "NOT CRITICAL") << '\n';
  return 0;
}

int cmd_cnf(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  const CoverStructure cover = load_cover(o.cover, o.rays, o.tolerance);
  const Cnf cnf = export_cnf(cover);
  if (!o.model.empty()) {
    const bool ok = verify_model(cover, parse_model(read_file(o.model)));
    Report report(out, args);
    report.inputs(cover_inputs(cover) + read_file(o.model));
    out << "model: " << (ok ? "VALID" : "INVALID") << '\n';
    return ok ? 0 : 1;
  }
  const std::string text = to_dimacs(cnf);
  if (o.check) {
    Report report(out, args);
    report.inputs(cover_inputs(cover));
    const Cnf back = parse_dimacs(text);
    const bool identical = back.clauses == cnf.clauses && back.num_vars == cnf.num_vars;
    const SearchStatus cnf_status = solve_cnf(back).status;
    const SearchStatus cover_status = search_assignment(cover).status;
    out << "cnf: " << cnf.num_vars << " variables, " << cnf.clauses.size() << " clauses\n";
    out << "round-trip: " << (identical ? "identical" : "DIFFERS") << '\n';
    out << "cnf status: " << to_string(cnf_status) << '\n';
    out << "cover status: " << to_string(cover_status) << '\n';
    const bool ok = identical && cnf_status == cover_status;
    out << "summary: " << (ok ? "consistent" : "INCONSISTENT") << '\n';
    if (!o.out.empty()) write_file(o.out, text);
    return ok ? 0 : 1;
  }
  emit(text, o.out, out);
  return 0;
}

int cmd_spin(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  const Spin j = Spin::parse(o.j);
  std::vector<Direction> dirs;
  const int sources = !o.dirs.empty() + (o.n > 0) + (o.planar > 0);
  if (sources != 1) throw UsageError("spin needs exactly one of --dirs, --n, --planar");
  if (!o.dirs.empty()) dirs = parse_directions(read_file(o.dirs));
  else if (o.n > 0) dirs = random_directions(static_cast<std::size_t>(o.n), o.seed);
  else dirs = planar_directions(static_cast<std::size_t>(o.planar));

  const GksConstruction gks = generate_gks(j, dirs, o.r, o.tolerance);
  const auto& p = gks.params;
  const std::string rays_text = write_rayset(gks.cover.rays());
  const std::string cover_text = write_cover(gks.cover);
  Report report(out, args);
  report.inputs(write_directions(dirs));
  out << "spin: j=" << j.to_string() << " d=" << p.d << " n=" << p.n << " r=" << p.r << '\n';
  out << "N: " << p.N << '\n';
  out << "M: " << p.M << '\n';
  out << "parity_ok: " << (p.parity_ok ? "yes" : "no") << '\n';
  out << "elements: " << gks.elements.size() << '\n';
  double worst = 0.0;
  for (const auto& c : verify_cover(gks.cover, o.tolerance).contexts) worst = std::max(worst, c.residual);
  out << "povms: " << gks.cover.contexts().size() << " complete (tolerance " << format_residual(o.tolerance)
      << ", max residual " << format_residual(worst) << ")\n";
  print_certificate(out, parity_certificate(gks.cover));
  if (o.search) out << "search: " << to_string(search_assignment(gks.cover, SearchOptions{o.jobs}).status) << '\n';
  if (!o.out.empty()) {
    write_file(o.out + ".rays", rays_text);
    write_file(o.out + ".cover", cover_text);
    write_file(o.out + ".dirs", write_directions(dirs));
    out << "wrote: " << o.out << ".rays " << o.out << ".cover " << o.out << ".dirs\n";
  }
  return 0;
}

int cmd_params(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  const auto list = find_parity_params(o.n_max);
  Report report(out, args);
  report.inputs("n_max=" + std::to_string(o.n_max));
  out << "# n r N M\n";
  for (const auto& p : list) out << p.n << ' ' << p.r << ' ' << p.N << ' ' << p.M << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kochen-Specker and generalized Kochen-Specker proof checker", "kscert"};
  app.require_subcommand(1);
  Options o;

  auto add_cover_flags = [&](CLI::App* sub) {
    sub->add_option("--rays", o.rays, "ray set file or built-in name");
    sub->add_option("--cover", o.cover, "cover file or built-in cover name");
    sub->add_option("--tolerance", o.tolerance, "floating backend tolerance")->check(CLI::PositiveNumber);
  };

  auto* rayset = app.add_subcommand("rayset", "print a ray set in canonical form");
  rayset->add_option("source", o.source, "built-in name or ray set file")->required();
  rayset->add_option("--out", o.out, "output file");

  auto* bases = app.add_subcommand("bases", "enumerate orthogonal bases");
  bases->add_option("--rays", o.rays, "ray set file or built-in name")->required();
  bases->add_option("--out", o.out, "output file");
  bases->add_option("--tolerance", o.tolerance, "floating backend tolerance")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "re-verify a cover and print its parity certificate");
  add_cover_flags(verify);

  auto* search = app.add_subcommand("search", "decide exactly-one colorability");
  add_cover_flags(search);
  search->add_option("--jobs", o.jobs, "parallel workers")->check(CLI::PositiveNumber);
  search->add_flag("--oracle", o.oracle, "cross-check with exhaustive enumeration");
  search->add_option("--expect", o.expect, "fail unless the status matches")->check(CLI::IsMember({"sat", "unsat"}));

  auto* critical = app.add_subcommand("critical", "delete each element and re-run the search");
  add_cover_flags(critical);
  critical->add_option("--semantics", o.semantics, "deletion semantics")->check(CLI::IsMember({"drop", "shrink"}));
  critical->add_option("--jobs", o.jobs, "parallel workers")->check(CLI::PositiveNumber);

  auto* cnf = app.add_subcommand("cnf", "export a cover as DIMACS CNF");
  add_cover_flags(cnf);
  cnf->add_option("--out", o.out, "output file");
  cnf->add_option("--model", o.model, "verify a solver model against the cover");
  cnf->add_flag("--check", o.check, "round-trip the export and compare satisfiability");

  auto* spin = app.add_subcommand("spin", "generate a spin-j GKS construction");
  spin->add_option("--j", o.j, "spin, e.g. 1/2, 1, 3/2");
  spin->add_option("--r", o.r, "directions per POVM");
  spin->add_option("--dirs", o.dirs, "direction file");
  spin->add_option("--n", o.n, "number of random directions");
  spin->add_option("--seed", o.seed, "seed for random directions");
  spin->add_option("--planar", o.planar, "n evenly spaced directions in the x-z plane");
  spin->add_option("--tolerance", o.tolerance, "completeness tolerance")->check(CLI::PositiveNumber);
  spin->add_option("--jobs", o.jobs, "parallel workers")->check(CLI::PositiveNumber);
  spin->add_flag("--search", o.search, "also run the exactly-one search");
  spin->add_option("--out", o.out, "write <out>.rays, <out>.cover and <out>.dirs");

  auto* params = app.add_subcommand("params", "list (n, r) with N odd and M even");
  params->add_option("n_max", o.n_max, "largest n")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*rayset) return cmd_rayset(o, out);
    if (*bases) return cmd_bases(o, args, out);
    if (*verify) return cmd_verify(o, args, out);
    if (*search) return cmd_search(o, args, out);
    if (*critical) return cmd_critical(o, args, out);
    if (*cnf) return cmd_cnf(o, args, out);
    if (*spin) return cmd_spin(o, args, out);
    if (*params) return cmd_params(o, args, out);
  } catch (const std::exception& e) {
    err << "kscert: error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace kscert::cli
