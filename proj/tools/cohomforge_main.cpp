// Command-line front end: cohomology tables, comparison maps, E1 pages and
// the reproduction suite, in text, JSON or CSV.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "cohomforge/e1page.hpp"
#include "cohomforge/papercheck.hpp"

namespace {

using namespace cohomforge;

struct JobSpec {
  std::string group, module;
  std::string theory = "classical";
  std::string format = "text";
  std::string out;
  int max_degree = 6;
  int pmax = 5;
  int qmax = 4;
  int threads = 0;  // 0: use COHOMFORGE_THREADS or 1
  std::size_t max_basis = kDefaultMaxBasis;
};

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("COHOMFORGE_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

void emit(const JobSpec& job, const std::string& text) {
  if (job.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(job.out);
  if (!out) throw std::invalid_argument("cannot open output file " + job.out);
  out << text;
}

CochainComplex build_for_theory(const JobSpec& job, const GroupPtr& g, const GModulePtr& m) {
  BuildOptions opts{job.max_basis};
  if (job.theory == "classical") return homogeneous_k(g, m, job.max_degree, opts);
  if (job.theory == "normalized") return normalized_k(g, m, job.max_degree, opts);
  if (job.theory == "symmetric" || job.theory == "ks")
    return antisymmetric_ks(g, m, job.max_degree, opts);
  if (job.theory == "exterior") return exterior_k_lambda(g, m, job.max_degree, opts);
  if (job.theory == "delta") return delta_hom_complex(g, m, job.max_degree, opts);
  throw std::invalid_argument("unknown theory '" + job.theory + "'");
}

void add_common(CLI::App* cmd, JobSpec& job, bool with_module = true) {
  cmd->add_option("--group", job.group, "group spec: C<n>, D<n>, S<n>, C<n>xC<m>, @file.json")
      ->required();
  if (with_module)
    cmd->add_option("--module", job.module, "module spec: Z, Z/<k>, F2, Zsign, ZG, @file.json")
        ->required();
  cmd->add_option("--format", job.format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--out", job.out, "write the report to a file instead of stdout");
  cmd->add_option("--threads", job.threads, "worker threads (or COHOMFORGE_THREADS)");
  cmd->add_option("--max-basis", job.max_basis, "size-guard override (basis elements)");
}

int cmd_cohomology(const JobSpec& job) {
  auto g = std::make_shared<const Group>(parse_group_spec(job.group));
  auto m = std::make_shared<const GModule>(parse_module_spec(g, job.module));
  CochainComplex cx = build_for_theory(job, g, m);
  CohomologyTable table = cohomology(cx, resolve_threads(job.threads), job.theory);
  if (job.format == "json")
    emit(job, render_json(table).dump(2) + "\n");
  else if (job.format == "csv")
    emit(job, render_csv(table));
  else
    emit(job, render_text(table));
  return 0;
}

int cmd_compare(const JobSpec& job) {
  auto g = std::make_shared<const Group>(parse_group_spec(job.group));
  auto m = std::make_shared<const GModule>(parse_module_spec(g, job.module));
  ComparisonMaps cmp =
      comparison_maps(g, m, job.max_degree, BuildOptions{job.max_basis}, resolve_threads(job.threads));
  if (job.format == "json")
    emit(job, render_json(cmp).dump(2) + "\n");
  else if (job.format == "csv")
    emit(job, render_csv(cmp));
  else
    emit(job, render_text(cmp));
  return 0;
}

int cmd_e1(const JobSpec& job) {
  auto g = std::make_shared<const Group>(parse_group_spec(job.group));
  auto m = std::make_shared<const GModule>(parse_module_spec(g, job.module));
  E1Page page = e1_page(g, m, job.pmax, job.qmax, BuildOptions{job.max_basis},
                        resolve_threads(job.threads));
  if (job.format == "json")
    emit(job, render_json(page).dump(2) + "\n");
  else if (job.format == "csv")
    emit(job, render_csv(page));
  else
    emit(job, render_text(page));
  return 0;
}

int cmd_papercheck(const JobSpec& job) {
  CheckReport report =
      run_papercheck(job.max_basis, resolve_threads(job.threads),
                     job.format == "text" && job.out.empty() ? &std::cout : nullptr);
  if (job.format == "json")
    emit(job, render_json(report).dump(2) + "\n");
  else if (!job.out.empty())
    emit(job, render_json(report).dump(2) + "\n");
  return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cohomforge: exact symmetric/exterior/classical group cohomology workbench"};
  app.require_subcommand(1);
  JobSpec job;

  auto* coh = app.add_subcommand("cohomology", "cohomology table of one theory");
  add_common(coh, job);
  coh->add_option("--theory", job.theory,
                  "classical, normalized, symmetric, exterior, delta or ks")
      ->check(CLI::IsMember({"classical", "normalized", "symmetric", "exterior", "delta", "ks"}));
  coh->add_option("--max-degree", job.max_degree, "highest reported degree (default 6)");

  auto* cmp = app.add_subcommand("compare", "comparison maps alpha, beta, gamma per degree");
  add_common(cmp, job);
  cmp->add_option("--max-degree", job.max_degree, "highest reported degree (default 6)");

  auto* e1 = app.add_subcommand("e1", "E1 page of the exterior-resolution spectral sequence");
  add_common(e1, job);
  e1->add_option("--pmax", job.pmax, "highest column (default 5)");
  e1->add_option("--qmax", job.qmax, "highest row (default 4)");

  auto* pc = app.add_subcommand("papercheck", "run the full reproduction manifest");
  pc->add_option("--format", job.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  pc->add_option("--out", job.out, "write the JSON manifest to a file");
  pc->add_option("--threads", job.threads, "worker threads (or COHOMFORGE_THREADS)");
  pc->add_option("--max-basis", job.max_basis, "size-guard override (basis elements)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (coh->parsed()) return cmd_cohomology(job);
    if (cmp->parsed()) return cmd_compare(job);
    if (e1->parsed()) return cmd_e1(job);
    if (pc->parsed()) return cmd_papercheck(job);
  } catch (const cohomforge::SizeGuardError& e) {
    std::cerr << "size guard: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
