#include "symseq/ascent.hpp"

#include "symseq/parallel.hpp"

#include <cmath>

namespace symseq {

namespace {

struct StartOutcome {
  double best = 0.0;
  Vec witness;
  double at_80 = 0.0;  // best value when 80% of iterations were done
};

StartOutcome run_start(const SpaceSpec& E, const RayObjective& f, Vec x,
                       const AscentOptions& opt) {
  StartOutcome out;
  if (opt.nonneg) x = x.cwiseAbs();
  double nx = norm(E, x);
  if (nx == 0.0) return out;
  x /= nx;

  out.best = f.value(x);
  out.witness = x;
  int mark = std::max(1, (opt.iters * 4) / 5);
  for (int t = 1; t <= opt.iters; ++t) {
    double fx = f.value(x);
    Vec gf = f.grad(x);
    Vec ge = norm_subgradient(E, x);
    Vec d = gf - fx * ge;  // gradient of f(x)/||x|| at unit norm
    double dn = d.norm();
    if (dn < 1e-15 * std::max(1.0, fx)) break;
    double eta = opt.step0 / (std::sqrt(static_cast<double>(t)) * dn);
    x += eta * d;
    if (opt.nonneg) x = x.cwiseMax(0.0);
    nx = norm(E, x);
    if (nx <= 0.0) break;
    x /= nx;
    double v = f.value(x);
    if (v > out.best) {
      out.best = v;
      out.witness = x;
    }
    if (t == mark) out.at_80 = out.best;
  }
  if (out.at_80 == 0.0) out.at_80 = out.best;
  return out;
}

}  // namespace

AscentResult maximize_on_ball(const SpaceSpec& E, const RayObjective& f,
                              const std::vector<Vec>& starts, const AscentOptions& opt) {
  AscentResult res;
  int n = static_cast<int>(starts.size());
  if (n == 0) return res;
  std::vector<StartOutcome> outs = parallel_map<StartOutcome>(
      n, [&](int i) { return run_start(E, f, starts[static_cast<size_t>(i)], opt); });
  res.finals.reserve(static_cast<size_t>(n));
  int best_i = -1;
  for (int i = 0; i < n; ++i) {
    res.finals.push_back(outs[static_cast<size_t>(i)].best);
    if (outs[static_cast<size_t>(i)].best > res.best) {
      res.best = outs[static_cast<size_t>(i)].best;
      best_i = i;
    }
  }
  if (best_i >= 0) {
    const StartOutcome& w = outs[static_cast<size_t>(best_i)];
    res.witness = w.witness;
    res.tail_improvement = w.best > 0.0 ? (w.best - w.at_80) / w.best : 0.0;
  }
  return res;
}

}  // namespace symseq
