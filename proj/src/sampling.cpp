#include "bcnf/sampling.hpp"

#include "bcnf/param_space.hpp"

namespace bcnf {

double uniform_open(Rng& rng, double a, double b) {
  std::uniform_real_distribution<double> U(a, b);
  for (;;) {
    const double v = U(rng);
    if (v > a && v < b) return v;
  }
}

Params sample_phi(Rng& rng, double delta_max, double tau_L_span) {
  Params xi;
  xi.delta_L = uniform_open(rng, 0.0, delta_max);
  xi.delta_R = uniform_open(rng, 0.0, delta_max);
  xi.tau_L = uniform_open(rng, xi.delta_L + 1.0, xi.delta_L + 1.0 + tau_L_span);
  xi.tau_R = uniform_open(rng, -5.0, -xi.delta_R - 1.0);
  return xi;
}

Params sample_phi_byg(Rng& rng) {
  for (;;) {
    Params xi;
    xi.delta_L = uniform_open(rng, 0.0, 1.0);
    xi.delta_R = uniform_open(rng, 0.0, 1.0);
    const double ls = lambda_star(xi.delta_L, xi.delta_R);
    xi.tau_L = uniform_open(rng, xi.delta_L + 1.0, ls + xi.delta_L / ls);
    xi.tau_R = uniform_open(rng, -5.0, -xi.delta_R - 1.0);
    if (in_phi_byg(xi)) return xi;
  }
}

}  // namespace bcnf
