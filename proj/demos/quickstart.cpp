// Generates one network and runs every solver on it.

#include "bbnet/bbnet.hpp"

#include <iostream>

int main() {
  bbnet::GeneratorConfig gen;
  gen.seed = 7;
  const auto inst = bbnet::generate_instance(gen, 1.0);

  const auto h = bbnet::hessian(inst, bbnet::nearest_assignment(inst));
  std::cout << "stable fixed-step interval: (0, " << bbnet::stable_step_interval(h).upper << ")\n";

  for (auto method : {bbnet::Method::SdExact, bbnet::Method::Newton, bbnet::Method::Cg}) {
    bbnet::SolverConfig cfg;
    cfg.method = method;
    const auto res = bbnet::optimize(inst, cfg);
    std::cout << bbnet::to_string(method) << ": " << res.report.initial_cost.total << " -> "
              << res.report.final_cost.total << " in " << res.report.iterations << " iterations ("
              << bbnet::to_string(res.report.termination) << ")\n";
  }

  const auto ref = bbnet::oracle_optimize(inst);
  std::cout << "reference: " << ref.cost.total << " after " << ref.alternations << " alternations\n";
}
