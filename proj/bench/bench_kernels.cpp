// Serial reference kernels against their OpenMP counterparts.
#include <chrono>
#include <cstdio>
#include <functional>

#include "sewkit/kernels.hpp"
#include "sewkit/knitting.hpp"
#include "sewkit/models.hpp"
#include "sewkit/sewing.hpp"

using namespace sewkit;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-24s serial %9.4f s  parallel %9.4f s  speedup %5.2f  %s\n", name, serial, parallel,
              serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", kernels::thread_count());

  const auto m = make_linear_euler({0.0, 1.0, -1.0, 0.0}, {0.0, 0.0}, 2, {2.0, 160, 1.0});
  const auto f = compose_dyadic(m, Subdivision::regular(0, 1, 8), 7);
  const auto g = compose_dyadic(m, Subdivision::regular(0, 1, 8), 6);
  const auto& probes = m->space_at(1)->probes();

  std::vector<Point> a, b;
  const double ts = seconds([&] { b = probes; kernels::serial::apply(f, b); }, 3);
  const double tp = seconds([&] { a = probes; kernels::apply(f, a); }, 3);
  report("apply (25600 probes)", ts, tp, a == b);

  ExtDistance ds, dp;
  const double ms = seconds([&] { ds = kernels::serial::map_distance(f, g); }, 3);
  const double mp = seconds([&] { dp = map_distance(f, g); }, 3);
  report("map_distance", ms, mp, ds == dp);

  const auto pm = make_flat_connection(ConnectionRule::midpoint, 0.5, 64);
  const auto net = build_net(ellipse_family(1.0, 0.6), 64);
  std::vector<LadderStep> ls, lp;
  const double ks = seconds([&] { ls = serial::ladder_step_report(net, pm); }, 1);
  const double kp = seconds([&] { lp = ladder_step_report(net, pm); }, 1);
  bool same = ls.size() == lp.size();
  for (std::size_t i = 0; same && i < ls.size(); ++i) same = ls[i].lhs == lp[i].lhs && ls[i].rhs == lp[i].rhs;
  report("ladder_step_report k=64", ks, kp, same);
  return 0;
}
