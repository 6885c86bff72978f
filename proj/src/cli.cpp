#include "sdesign/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdesign/design_io.hpp"
#include "sdesign/errors.hpp"
#include "sdesign/harmonic.hpp"
#include "sdesign/planner.hpp"
#include "sdesign/sidon.hpp"

namespace sdesign {
namespace {

using nlohmann::json;

struct BudgetFlags {
  std::optional<std::uint64_t> max_nodes;
  std::optional<double> time_limit_seconds;

  SearchBudget budget() const {
    SearchBudget b;
    b.max_nodes = max_nodes;
    if (time_limit_seconds) {
      b.max_time = std::chrono::milliseconds(
          static_cast<std::int64_t>(std::llround(*time_limit_seconds * 1000.0)));
    }
    return b;
  }
};

void add_budget_flags(CLI::App* cmd, BudgetFlags& flags) {
  cmd->add_option("--budget", flags.max_nodes, "Search node limit per modulus")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--time-limit", flags.time_limit_seconds, "Wall-clock limit per modulus (s)")
      ->check(CLI::PositiveNumber);
}

void add_format_flag(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

std::string set_text(const std::vector<int>& elements) {
  return fmt::format("{{{}}}", fmt::join(elements, ","));
}

json report_json(const VerificationReport& r) {
  return {{"passed", r.passed},
          {"strength", r.checked_strength},
          {"tolerance", r.tolerance},
          {"norm_max_deviation", r.norm_max_deviation},
          {"max_residual_by_degree",
           std::vector<double>(r.max_residual_by_degree.begin() + 1,
                               r.max_residual_by_degree.begin() + 1 + r.checked_strength)},
          {"worst_polynomial", r.worst_polynomial},
          {"worst_residual", r.worst_residual}};
}

void print_report(std::ostream& os, std::string_view name, const VerificationReport& r) {
  os << fmt::format("{}: {} (t = {}, tol = {:.3g})\n", name, r.passed ? "PASS" : "FAIL",
                    r.checked_strength, r.tolerance);
  os << fmt::format("  column norm deviation: {:.3g}\n", r.norm_max_deviation);
  for (int s = 1; s <= r.checked_strength; ++s) {
    os << fmt::format("  degree {} max residual: {:.3g}\n", s,
                      r.max_residual_by_degree[static_cast<std::size_t>(s)]);
  }
  if (!r.worst_polynomial.empty()) {
    os << fmt::format("  worst: {} = {:.17g}\n", r.worst_polynomial, r.worst_residual);
  }
}

FileFormat parse_format(const std::string& format) {
  return format == "json" ? FileFormat::Json : FileFormat::Text;
}

// ---- construct ----

struct ConstructArgs {
  int dim = 0;
  int points = 0;
  std::string output;
  std::string format = "text";
  std::optional<double> tol;
};

int cmd_construct(const ConstructArgs& a, std::ostream& out, std::ostream& err) {
  const Feasibility f = classify(a.dim, a.points);
  if (f.status != FeasibilityStatus::Constructible) {
    err << fmt::format("cannot construct a 3-design of size {} on S^{}: {}\n", a.points, a.dim,
                       f.reason);
    if (!f.note.empty()) err << "note: " << f.note << "\n";
    return kExitNotConstructible;
  }
  const Recipe recipe = plan(a.dim, a.points);
  const DesignMatrix design = build(a.dim, a.points);
  const double tol = a.tol.value_or(default_tolerance(design.size()));
  const VerificationReport harmonic = verify_design(design, 3, tol);
  const VerificationReport moments = moment_check(design, 3, tol);
  const FileFormat format = parse_format(a.format);

  // Without --output the design itself is the data on stdout.
  std::ostream& summary = a.output.empty() ? err : out;
  if (a.output.empty()) {
    out << render(design, format);
  } else {
    write_design_file(a.output, design, format);
  }
  summary << "recipe: " << recipe.describe() << "\n";
  print_report(summary, "harmonic basis", harmonic);
  print_report(summary, "monomial moments", moments);
  return harmonic.passed && moments.passed ? kExitOk : kExitCheckFailed;
}

// ---- verify ----

struct VerifyArgs {
  std::string file;
  std::optional<int> strength;
  std::optional<double> tol;
  std::string format = "text";
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const DesignMatrix design = read_design_file(a.file);
  const int t = a.strength.value_or(design.strength());
  const double tol = a.tol.value_or(default_tolerance(design.size()));
  const VerificationReport harmonic = verify_design(design, t, tol);
  const VerificationReport moments = moment_check(design, t, tol);
  const bool passed = harmonic.passed && moments.passed;
  if (a.format == "json") {
    const json doc = {{"d", design.dimension()},
                      {"n", design.size()},
                      {"recipe", design.provenance()},
                      {"passed", passed},
                      {"harmonic", report_json(harmonic)},
                      {"moments", report_json(moments)}};
    out << doc.dump(2) << "\n";
  } else {
    out << fmt::format("design: d = {}, n = {}, recipe: {}\n", design.dimension(), design.size(),
                       design.provenance());
    print_report(out, "harmonic basis", harmonic);
    print_report(out, "monomial moments", moments);
  }
  return passed ? kExitOk : kExitCheckFailed;
}

// ---- sidon ----

struct SidonArgs {
  int n = 0;
  int t = 3;
  int max_n = 0;
  int jobs = 1;
  std::string format = "text";
  BudgetFlags budget;
};

int cmd_sidon_construct(const SidonArgs& a, std::ostream& out) {
  const SidonSet set = construct_bound_set(a.n, a.t);
  if (a.format == "json") {
    out << json{{"n", a.n}, {"t", a.t}, {"size", set.size()}, {"set", set.elements()}}.dump()
        << "\n";
  } else {
    out << set_text(set.elements()) << "\n";
  }
  return kExitOk;
}

int cmd_sidon_search(const SidonArgs& a, std::ostream& out, std::ostream& err) {
  const SidonSearchResult r = max_sidon_search(a.n, a.t, a.budget.budget());
  const int bound = lower_bound_size(a.n, a.t);
  if (a.format == "json") {
    out << json{{"n", a.n},
                {"t", a.t},
                {"s", r.max_cardinality},
                {"witness", r.witness.elements()},
                {"lower_bound", bound},
                {"complete", r.complete},
                {"nodes", r.nodes_explored}}
               .dump()
        << "\n";
  } else {
    out << fmt::format("s({},{}) {} {}, witness {}\n", a.n, a.t, r.complete ? "=" : ">=",
                       r.max_cardinality, set_text(r.witness.elements()));
  }
  if (!r.complete) {
    err << fmt::format("BUDGET EXHAUSTED after {} nodes: s({},{}) is not certified\n",
                       r.nodes_explored, a.n, a.t);
    return kExitCheckFailed;
  }
  if (r.max_cardinality != bound) {
    err << fmt::format("MISMATCH: s({},{}) = {} but the explicit construction has size {}\n",
                       a.n, a.t, r.max_cardinality, bound);
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_sidon_table(const SidonArgs& a, std::ostream& out, std::ostream& err) {
  const auto rows = bound_exactness_report(a.max_n, a.budget.budget(), a.jobs);
  int incomplete = 0;
  int mismatched = 0;
  json doc = json::array();
  if (a.format != "json") out << "n\tbound\ts(n,3)\tequal\twitness\n";
  for (const ExactnessRow& row : rows) {
    if (!row.complete) ++incomplete;
    else if (!row.equal) ++mismatched;
    if (a.format == "json") {
      doc.push_back({{"n", row.n},
                     {"lower_bound", row.lower_bound},
                     {"exact", row.exact},
                     {"equal", row.equal},
                     {"complete", row.complete},
                     {"witness", row.witness},
                     {"nodes", row.nodes}});
    } else {
      out << fmt::format("{}\t{}\t{}{}\t{}\t{}\n", row.n, row.lower_bound,
                         row.complete ? "" : ">=", row.exact, row.equal ? "yes" : "NO",
                         set_text(row.witness));
    }
  }
  if (a.format == "json") out << doc.dump(1) << "\n";
  if (incomplete > 0) {
    err << fmt::format("BUDGET EXHAUSTED for {} moduli: table is not certified\n", incomplete);
  }
  if (mismatched > 0) {
    err << fmt::format("MISMATCH: {} moduli have s(n,3) above the lower bound\n", mismatched);
  }
  if (incomplete > 0 || mismatched > 0) return kExitCheckFailed;
  err << fmt::format("s(n,3) equals the lower bound for every 2 <= n <= {}\n", a.max_n);
  return kExitOk;
}

// ---- table ----

struct TableArgs {
  int max_d = 9;
  bool check = false;
  std::string format = "text";
};

int cmd_table(const TableArgs& a, std::ostream& out, std::ostream& err) {
  const auto rows = results_table(a.max_d, a.check);
  bool ok = true;
  json doc = json::array();
  for (const ResultsRow& row : rows) {
    ok = ok && row.check_passed;
    if (a.format == "json") {
      json entry = {{"d", row.d},
                    {"tight_size", row.tight_size},
                    {"isolated_sizes", row.isolated_sizes},
                    {"all_from", row.all_from},
                    {"sizes", row.sizes_text}};
      if (a.check) {
        entry["checked"] = row.checked;
        entry["check_passed"] = row.check_passed;
      }
      doc.push_back(std::move(entry));
    } else {
      out << fmt::format("{}\t{}\t{}", row.d, row.tight_size, row.sizes_text);
      if (a.check) out << fmt::format("\t{} built, {}", row.checked,
                                      row.check_passed ? "all verified" : "FAILED");
      out << "\n";
    }
  }
  if (a.format == "json") out << doc.dump(1) << "\n";
  if (!ok) {
    err << "FAILED: some constructed designs did not verify\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

// ---- scan ----

struct ScanArgs {
  int max_d = 0;
  int jobs = 1;
  std::string format = "text";
  BudgetFlags budget;
};

int cmd_scan(const ScanArgs& a, std::ostream& out, std::ostream& err) {
  const NonexistenceScan scan = regular_nonexistence_scan(a.max_d, a.budget.budget(), a.jobs);
  json doc = json::array();
  if (a.format != "json") out << "d\tn\tneeded\ts(n,3)\n";
  for (const ScanEntry& e : scan.entries) {
    if (a.format == "json") {
      doc.push_back({{"d", e.d},
                     {"n", e.n},
                     {"needed", e.needed},
                     {"sidon_max", e.sidon_max},
                     {"complete", e.complete},
                     {"counterexample", e.counterexample}});
    } else {
      out << fmt::format("{}\t{}\t{}\t{}{}{}\n", e.d, e.n, e.needed, e.complete ? "" : ">=",
                         e.sidon_max, e.counterexample ? "\tCOUNTEREXAMPLE" : "");
    }
  }
  if (a.format == "json") out << doc.dump(1) << "\n";
  if (scan.any_counterexample) {
    err << "COUNTEREXAMPLE: a regular 3-design exists at a size conjectured impossible\n";
    return kExitCheckFailed;
  }
  if (!scan.complete) {
    err << "BUDGET EXHAUSTED: scan is not certified\n";
    return kExitCheckFailed;
  }
  err << fmt::format("no regular 3-design for odd d <= {} and odd 2d+2 <= n < 5(d+1)/2\n",
                     a.max_d);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spherical 3-design constructions, verification and Sidon-type set search",
               "sdesign"};
  app.require_subcommand(1);

  ConstructArgs construct_args;
  auto* construct = app.add_subcommand("construct", "Build and verify a 3-design on S^d");
  construct->add_option("--dim", construct_args.dim, "Sphere dimension d")
      ->required()
      ->check(CLI::Range(1, 10000));
  construct->add_option("--points", construct_args.points, "Number of points n")
      ->required()
      ->check(CLI::Range(1, 10000000));
  construct->add_option("--output,-o", construct_args.output,
                        "Design file (stdout when omitted)");
  add_format_flag(construct, construct_args.format);
  construct->add_option("--tol", construct_args.tol, "Residual tolerance (default 1e-9*n)")
      ->check(CLI::NonNegativeNumber);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Check a design file");
  verify->add_option("file", verify_args.file, "Design file (text or JSON)")->required();
  verify->add_option("--strength,-t", verify_args.strength, "Strength (default: from the file)")
      ->check(CLI::Range(1, 3));
  verify->add_option("--tol", verify_args.tol, "Residual tolerance (default 1e-9*n)")
      ->check(CLI::NonNegativeNumber);
  add_format_flag(verify, verify_args.format);

  SidonArgs sidon_args;
  auto* sidon = app.add_subcommand("sidon", "Sidon-type sets modulo n");
  sidon->require_subcommand(1);
  auto* sidon_construct = sidon->add_subcommand("construct", "Explicit lower-bound set");
  auto* sidon_search = sidon->add_subcommand("search", "Exact s(n,t) by exhaustive search");
  for (auto* cmd : {sidon_construct, sidon_search}) {
    cmd->add_option("--n", sidon_args.n, "Modulus")->required()->check(CLI::Range(2, 100000));
    cmd->add_option("--t", sidon_args.t, "Strength")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
    add_format_flag(cmd, sidon_args.format);
  }
  add_budget_flags(sidon_search, sidon_args.budget);
  auto* sidon_table = sidon->add_subcommand("table", "s(n,3) against the lower bound");
  sidon_table->add_option("--max-n", sidon_args.max_n, "Largest modulus")
      ->required()
      ->check(CLI::Range(2, 100000));
  sidon_table->add_option("--jobs,-j", sidon_args.jobs, "Worker threads")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  add_budget_flags(sidon_table, sidon_args.budget);
  add_format_flag(sidon_table, sidon_args.format);

  TableArgs table_args;
  auto* table = app.add_subcommand("table", "Constructible sizes per dimension");
  table->add_option("--max-d", table_args.max_d, "Largest dimension")
      ->check(CLI::Range(1, 1000))
      ->capture_default_str();
  table->add_flag("--check", table_args.check, "Build and verify every listed size");
  add_format_flag(table, table_args.format);

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "Nonexistence scan for regular 3-designs");
  scan->add_option("--max-d", scan_args.max_d, "Largest odd dimension")
      ->required()
      ->check(CLI::Range(3, 1001));
  scan->add_option("--jobs,-j", scan_args.jobs, "Worker threads")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  add_budget_flags(scan, scan_args.budget);
  add_format_flag(scan, scan_args.format);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (construct->parsed()) return cmd_construct(construct_args, out, err);
    if (verify->parsed()) return cmd_verify(verify_args, out);
    if (sidon_construct->parsed()) return cmd_sidon_construct(sidon_args, out);
    if (sidon_search->parsed()) return cmd_sidon_search(sidon_args, out, err);
    if (sidon_table->parsed()) return cmd_sidon_table(sidon_args, out, err);
    if (table->parsed()) return cmd_table(table_args, out, err);
    if (scan->parsed()) return cmd_scan(scan_args, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no command given\n";
  return kExitUsage;
}

}  // namespace sdesign
