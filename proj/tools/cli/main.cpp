#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "abekit/tools/commands.hpp"

using namespace abekit::tools;

int main(int argc, char** argv) {
  CLI::App app{"abekit: build, transform and validate non-commutative formulas, circuits and ABPs"};
  app.require_subcommand(1);

  GlobalOptions g;
  std::string format = "text";
  app.add_option("--max-degree", g.max_degree, "Expansion degree guard")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for random generators")->capture_default_str();
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "machine"}))->capture_default_str();

  std::string gen_spec, gen_out;
  auto* gen = app.add_subcommand("gen", "Write a construction or random model");
  gen->add_option("spec", gen_spec,
                  "lchsym-abp:n:d | lchsym-formula:n:d | chsym-formula:n:d | oracle:KIND:n:d | comb:k | "
                  "random-{formula,abc-formula,circuit,abc-circuit,abp,abc-abp}[:nodes[:vars]]")
      ->required();
  gen->add_option("-o,--output", gen_out, "Output path (default stdout)");

  XformOptions xf;
  std::string xf_buckets;
  auto* xform = app.add_subcommand("xform", "Apply a transform pass");
  xform->add_option("pass", xf.pass, "Pass id")->required()->check(CLI::IsMember(pass_ids()));
  xform->add_option("input", xf.input, "Input document")->required();
  xform->add_option("-o,--output", xf.output, "Output path (default stdout)");
  auto* xf_b = xform->add_option("--buckets", xf_buckets, "singletons:n | rows:n | position:n:d | subscript:n:d | single:n");
  xform->add_option("--degree", xf.degree, "homogenize: target degree");
  xform->add_option("--a", xf.a, "subpoly: lower bucket");
  xform->add_option("--b", xf.b, "subpoly: upper bucket");
  xform->add_option("--linked", xf.linked, "amplify: linked formula document");
  xform->add_flag("--normalize", xf.normalize, "abp2formula: layer-normalize first");
  xform->add_option("--base", xf.base, "depth-reduce: recursion base")->capture_default_str();

  CheckOptionsCli ck;
  std::string ck_buckets;
  bool ck_structural = false;
  auto* check = app.add_subcommand("check", "Run validators");
  check->add_option("input", ck.input, "Input document")->required();
  check->add_option("-c,--check", ck.checks, "Checker name (repeatable)")->check(CLI::IsMember(check_names()));
  auto* ck_b = check->add_option("--buckets", ck_buckets, "Bucketing system");
  check->add_flag("--structural-only", ck_structural, "Skip gate-level expansion checks");

  std::string diff_l, diff_r;
  auto* diff = app.add_subcommand("diff", "Compare expansions");
  diff->add_option("left", diff_l)->required();
  diff->add_option("right", diff_r)->required();

  std::string stats_in;
  auto* stats = app.add_subcommand("stats", "Print metrics");
  stats->add_option("input", stats_in)->required();

  PipelineOptionsCli pl;
  int target = 0;
  bool pl_structural = false;
  auto* pipeline = app.add_subcommand("pipeline", "Run the lchsym to esym reduction chain");
  pipeline->add_option("-n", pl.n, "4 or 8")->capture_default_str();
  pipeline->add_option("--amplifications", pl.amplifications)->capture_default_str();
  auto* pl_t = pipeline->add_option("--target-degree", target, "Amplify until this degree is reached");
  pipeline->add_flag("--structural-only", pl_structural, "Skip gate-level expansion checks");
  pipeline->add_option("-o,--output", pl.output, "Write the final formula here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  g.machine = format == "machine";

  if (*gen) return cmd_gen(gen_spec, gen_out, g, std::cout, std::cerr);
  if (*xform) {
    if (*xf_b) xf.buckets = xf_buckets;
    return cmd_xform(xf, g, std::cout, std::cerr);
  }
  if (*check) {
    if (*ck_b) ck.buckets = ck_buckets;
    ck.semantic = !ck_structural;
    return cmd_check(ck, g, std::cout, std::cerr);
  }
  if (*diff) return cmd_diff(diff_l, diff_r, g, std::cout, std::cerr);
  if (*stats) return cmd_stats(stats_in, g, std::cout, std::cerr);
  if (*pl_t) pl.target_degree = target;
  pl.semantic = !pl_structural;
  return cmd_pipeline(pl, g, std::cout, std::cerr);
}
