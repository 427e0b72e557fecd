// gssdc command-line front end: graph-gen / design / experiment.

#include <CLI11.hpp>

#include "gssdc/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"vertex-wise graph signal sampling operator design"};
  app.require_subcommand(1);

  gssdc::GraphGenArgs gg;
  auto* graph_gen = app.add_subcommand("graph-gen", "generate a random sensor graph");
  graph_gen->add_option("--n", gg.n, "vertex count")->capture_default_str();
  graph_gen->add_option("--k", gg.k, "nearest neighbours per vertex")->capture_default_str();
  graph_gen->add_option("--seed", gg.seed, "draw seed")->capture_default_str();
  graph_gen->add_option("--theta", gg.theta, "kernel width (0 = mean kNN distance)")
      ->capture_default_str();
  graph_gen->add_option("--out", gg.out, "output weight matrix file")->required();

  gssdc::DesignArgs da;
  auto* design = app.add_subcommand("design", "design a sampling operator on a graph");
  design->add_option("--graph", da.graph_path, "weight matrix file")->required();
  design->add_option("--prior", da.prior, "prior kind (sb|sm|st), overrides config");
  design->add_option("--config", da.config_path, "key=value config file")->required();
  design->add_option("--out", da.out_path, "output operator matrix file")->required();
  design->add_option("--trace", da.trace_path, "per-iteration trace CSV");
  design->add_option("--partition", da.partition_path, "vertex partition file");

  gssdc::ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "run a batch of design/recovery trials");
  experiment->add_option("--config", ea.config_path, "key=value config file")->required();
  experiment->add_option("--out", ea.out_dir, "output directory")->required();
  experiment->add_option("--jobs", ea.jobs, "worker threads (overrides config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exits 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (graph_gen->parsed()) return gssdc::cmd_graph_gen(gg);
  if (design->parsed()) return gssdc::cmd_design(da);
  return gssdc::cmd_experiment(ea);
}
