// briberynet: command-line front end for the bribery-network bargaining model.
//
//   briberynet equilibrium [--config F] [--out DIR]
//   briberynet figures     [--config F] [--out DIR] [--format csv|csv+svg]
//   briberynet verify      [--config F] [--samples N] [--seed S]
//   briberynet chain       [--config F] [--bribe B] [--elite-rank R]
//
// Exit codes are listed in exit_code_for() below and in the README.

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "briberynet/briberynet.hpp"
#include "briberynet/cli/config.hpp"
#include "briberynet/cli/csv.hpp"
#include "briberynet/cli/figures.hpp"
#include "briberynet/cli/run_record.hpp"
#include "briberynet/cli/verify.hpp"

namespace bn = briberynet;
namespace cli = briberynet::cli;

namespace {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfigError = 2,
  kDomainError = 3,
  kSingularity = 4,
  kDegenerateObjective = 5,
  kInfeasible = 6,
  kVerificationFailed = 7,
  kBoundaryHit = 8,
  kNoNetwork = 9,
  kIoError = 10,
};

int exit_code_for(bn::ErrorKind kind) {
  switch (kind) {
    case bn::ErrorKind::Config: return kConfigError;
    case bn::ErrorKind::Domain: return kDomainError;
    case bn::ErrorKind::Singularity: return kSingularity;
    case bn::ErrorKind::DegenerateObjective: return kDegenerateObjective;
    case bn::ErrorKind::Infeasible: return kInfeasible;
    case bn::ErrorKind::BoundaryHit: return kBoundaryHit;
    case bn::ErrorKind::NoNetwork: return kNoNetwork;
    case bn::ErrorKind::Io: return kIoError;
  }
  return kDomainError;
}

struct Options {
  std::string config_path;
  std::string out_dir;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::string convention;
  std::string format = "csv+svg";
  std::optional<double> bribe;
  std::optional<int> elite_rank;
  std::optional<int> max_rank;
};

cli::ScenarioConfig load(const Options& o) {
  cli::ScenarioConfig c = o.config_path.empty() ? cli::default_config() : cli::load_config(o.config_path);
  if (!o.convention.empty()) c.convention = cli::parse_convention(o.convention);
  if (o.seed) c.seed = *o.seed;
  if (o.samples) c.verify_samples = *o.samples;
  if (o.bribe) c.chain.bribe = *o.bribe;
  if (o.elite_rank) c.chain.elite_rank = *o.elite_rank;
  if (o.max_rank) c.chain.max_rank = *o.max_rank;
  return c;
}

void row(const std::string& label, const std::string& value) {
  std::cout << "  " << std::left << std::setw(30) << label << value << '\n';
}

std::string num(double v) { return std::isfinite(v) ? cli::format_number(v) : std::string("n/a"); }

const char* yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_equilibrium(const Options& o) {
  const cli::ScenarioConfig c = load(o);
  const bn::ModelParams& m = c.params;
  const bn::Equilibrium eq = bn::equilibrium_bribe_closed_form(m);

  std::cout << "equilibrium (" << c.name << ")\n";
  row("B*", num(eq.bribe));
  row("U_C*", num(eq.citizen_utility));
  row("U_O*", num(eq.network_utility));
  row("feasible", yes_no(eq.feasible));
  row("U_C* (single-fine award)", num(bn::citizen_utility_single_fine_award(m)));

  std::optional<bn::Equilibrium> oracle;
  try {
    oracle = bn::equilibrium_bribe_numerical(m, c.search_max.value_or(bn::default_search_max(m)));
    row("B* (numerical oracle)", num(oracle->bribe));
    row("|closed - oracle|", num(std::abs(oracle->bribe - eq.bribe)));
  } catch (const bn::Error& e) {
    row("B* (numerical oracle)", e.what());
  }

  const bn::FeasibilityReport f = bn::feasibility_report(m, std::max(0.0, eq.bribe));
  std::cout << "feasibility clauses\n";
  row("x > p", yes_no(f.share_exceeds_detection));
  row("p > x/(2+x(n-1))", yes_no(f.detection_above_network_floor));
  row("p/n > p_h", yes_no(f.harassment_below_per_officer));
  row("p_h > (B+pF_C)/(B+nF_O)", yes_no(f.harassment_above_award_ratio));
  row("P >= P_min", yes_no(f.payoff_meets_reservation));
  row("activity", f.activity == bn::Activity::Active ? "active" : "no bribery");

  if (!o.out_dir.empty()) {
    std::ostringstream csv;
    csv << "quantity,value\n"
        << "B_star," << cli::format_number(eq.bribe) << '\n'
        << "U_C_star," << cli::format_number(eq.citizen_utility) << '\n'
        << "U_O_star," << cli::format_number(eq.network_utility) << '\n'
        << "feasible," << cli::format_flag(eq.feasible) << '\n';
    if (oracle) csv << "B_star_oracle," << cli::format_number(oracle->bribe) << '\n';
    cli::RunRecord record;
    record.command = "equilibrium";
    record.config = c.snapshot();
    record.seed = c.seed;
    cli::write_output(o.out_dir, "equilibrium.csv", csv.str(), record);
    cli::write_run_record(o.out_dir, record);
  }
  return eq.feasible ? kOk : kInfeasible;
}

int cmd_figures(const Options& o) {
  const cli::ScenarioConfig c = load(o);
  const std::filesystem::path dir = o.out_dir.empty() ? c.output_dir : o.out_dir;
  const cli::RunRecord record = cli::write_figures(c, dir, cli::parse_format(o.format), bn::worker_count());
  cli::write_run_record(dir, record);
  for (const auto& e : record.outputs) std::cout << (dir / e.file).string() << "  sha256=" << e.sha256 << '\n';
  return kOk;
}

int cmd_verify(const Options& o) {
  const cli::ScenarioConfig c = load(o);
  if (c.verify_samples < 1) throw bn::Error(bn::ErrorKind::Config, "--samples must be >= 1");
  const cli::VerificationReport report =
      cli::run_verification(c.ranges, static_cast<std::size_t>(c.verify_samples), c.seed, bn::worker_count());
  std::cout << "verification: " << report.samples << " draws, seed " << report.seed << '\n';
  for (const auto& s : report.suites) {
    std::cout << "  [" << (s.passed() ? "PASS" : "FAIL") << "] " << std::left << std::setw(26) << s.name
              << " checked=" << s.checked << " excluded=" << s.excluded << " failures=" << s.failures
              << " worst=" << num(s.worst_deviation) << " tol=" << s.tolerance << '\n';
  }
  if (!o.out_dir.empty()) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : report.suites)
      j.push_back({{"suite", s.name}, {"checked", s.checked}, {"excluded", s.excluded},
                   {"failures", s.failures}, {"worst_deviation", s.worst_deviation}, {"tolerance", s.tolerance}});
    cli::RunRecord record;
    record.command = "verify";
    record.config = c.snapshot();
    record.seed = c.seed;
    cli::write_output(o.out_dir, "verify.json", j.dump(2) + "\n", record);
    cli::write_run_record(o.out_dir, record);
  }
  return report.passed() ? kOk : kVerificationFailed;
}

int cmd_chain(const Options& o) {
  const cli::ScenarioConfig c = load(o);
  const bn::ModelParams& m = c.params;
  const double bribe = c.chain.bribe ? *c.chain.bribe : bn::equilibrium_bribe_closed_form(m).bribe;
  if (bribe < 0.0) throw bn::Error(bn::ErrorKind::Infeasible, "equilibrium bribe is negative; pass --bribe");
  const bn::OfficerChain chain = bn::build_chain(m, bribe, c.chain.max_rank);

  std::cout << "chain for B = " << num(bribe) << '\n';
  std::cout << "  rank  share            utility          in_network\n";
  for (const auto& e : chain.entries) {
    std::cout << "  " << std::left << std::setw(6) << e.rank << std::setw(17) << num(e.share) << std::setw(17)
              << num(e.utility) << yes_no(e.in_network) << '\n';
    if (!e.in_network && e.rank > chain.termination_index + 2) break;
  }
  if (chain.termination_index == 0) {
    std::cout << "empty chain: no officer accepts the bribe\n";
  } else {
    row("termination index n*", std::to_string(chain.termination_index));
    row("approver rank", std::to_string(chain.approver_rank));
    row("closed-form n*", chain.closed_form_index ? std::to_string(*chain.closed_form_index) : "unbounded");
    if (chain.truncated)
      std::cout << "warning: utility still positive at max_rank " << c.chain.max_rank
                << "; chain truncated\n";
    const bn::CollusionCheck col = bn::collusion_check(m, bribe, c.chain.max_rank);
    row("stop payoff", num(col.stop_payoff));
    row("share-further payoff", num(col.share_further_payoff));
    row("accept payoff", num(col.accept_payoff));
    row("reject payoff", num(col.reject_payoff));
    row("(stop, reject) is Nash", yes_no(col.is_nash));
  }
  if (c.chain.elite_rank) {
    const bn::EliteOutcome elite = bn::elite_injection(m, bribe, *c.chain.elite_rank, c.chain.max_rank);
    row("elite at rank " + std::to_string(*c.chain.elite_rank),
        elite.status == bn::ChainStatus::Active ? "active" : "failed");
  }
  if (!o.out_dir.empty()) {
    cli::RunRecord record;
    record.command = "chain";
    record.config = c.snapshot();
    record.seed = c.seed;
    cli::write_output(o.out_dir, "chain.csv", cli::chain_csv(chain), record);
    cli::write_run_record(o.out_dir, record);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bribery-network bargaining model: equilibria, chains, sweeps and checks"};
  app.set_version_flag("--version", std::string(bn::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--config", o.config_path, "Scenario file (JSON)")->check(CLI::ExistingFile);
  app.add_option("--out", o.out_dir, "Output directory");
  app.add_option("--convention", o.convention, "Bribe-count budget convention")
      ->check(CLI::IsMember({"as-printed", "gross-of-share"}));
  app.add_option("--seed", o.seed, "Seed for verification draws");

  auto* equilibrium = app.add_subcommand("equilibrium", "Closed-form and numerical bargaining equilibrium");
  auto* figures = app.add_subcommand("figures", "Write fig1..fig4 sweep tables and plots");
  figures->add_option("--format", o.format, "csv or csv+svg")->check(CLI::IsMember({"csv", "csv+svg"}));
  auto* verify = app.add_subcommand("verify", "Run the seeded cross-check suites");
  verify->add_option("--samples", o.samples, "Number of random draws")->check(CLI::PositiveNumber);
  auto* chain = app.add_subcommand("chain", "Officer chain, termination and collusion analysis");
  chain->add_option("--bribe", o.bribe, "Bribe size (defaults to the equilibrium bribe)");
  chain->add_option("--elite-rank", o.elite_rank, "Rank of an incorruptible officer");
  chain->add_option("--max-rank", o.max_rank, "Number of ranks to evaluate")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*equilibrium) return cmd_equilibrium(o);
    if (*figures) return cmd_figures(o);
    if (*verify) return cmd_verify(o);
    if (*chain) return cmd_chain(o);
  } catch (const bn::Error& e) {
    std::cerr << "briberynet: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "briberynet: " << e.what() << '\n';
    return kIoError;
  }
  return kUsage;
}
