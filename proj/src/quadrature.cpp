#include "opvd/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace opvd::quad {

namespace {

// Gauss-Kronrod 7-15 nodes on [0,1] (abscissa, Gauss weight, Kronrod weight).
// Gauss weight 0 marks Kronrod-only nodes.
constexpr double kNW[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529}};

struct Panel {
  double a, b;
  double value;
  double err;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a,
                     double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double y0 = f(mid);
  double g7 = kNW[0][1] * y0;
  double k15 = kNW[0][2] * y0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kNW[i][0];
    const double yi = f(mid + dx) + f(mid - dx);
    g7 += kNW[i][1] * yi;
    k15 += kNW[i][2] * yi;
  }
  g7 *= half;
  k15 *= half;

  // quadpack-style sharpened estimate: |K-G| overestimates the Kronrod
  // error for smooth integrands.
  double err = std::fabs(k15 - g7);
  const double sharp = std::pow(200.0 * err, 1.5);
  if (sharp < err) err = sharp;
  return {a, b, k15, err};
}

struct WorstFirst {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.err != y.err) return x.err < y.err;
    return x.a > y.a;  // deterministic tie-break
  }
};

Result adapt(const std::function<double(double)>& f,
             std::vector<std::pair<double, double>> seeds,
             const Options& opt) {
  std::priority_queue<Panel, std::vector<Panel>, WorstFirst> heap;
  double total = 0.0, toterr = 0.0;
  auto push = [&](const Panel& p) {
    total += p.value;
    toterr += p.err;
    heap.push(p);
  };
  for (auto [a, b] : seeds) push(evaluate_panel(f, a, b));

  std::vector<Panel> done;
  int budget = opt.max_panels - static_cast<int>(seeds.size());
  while (true) {
    const double goal =
        std::max(opt.abs_tol, opt.rel_tol * std::fabs(total));
    if (toterr <= goal || heap.empty()) break;
    if (budget <= 0) {
      if (opt.throw_on_failure)
        throw QuadratureError(
            "adaptive quadrature did not converge (panel budget exhausted; "
            "estimated error " + std::to_string(toterr) + ")");
      break;
    }
    Panel worst = heap.top();
    heap.pop();
    if (worst.err <= 0.0 ||
        worst.b - worst.a <= 64.0 * std::numeric_limits<double>::epsilon() *
                                 (std::fabs(worst.a) + std::fabs(worst.b))) {
      done.push_back(worst);  // cannot usefully split further
      continue;
    }
    total -= worst.value;
    toterr -= worst.err;
    const double mid = 0.5 * (worst.a + worst.b);
    push(evaluate_panel(f, worst.a, mid));
    push(evaluate_panel(f, mid, worst.b));
    budget -= 2;
  }

  while (!heap.empty()) {
    done.push_back(heap.top());
    heap.pop();
  }
  std::sort(done.begin(), done.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });

  Result r;
  r.panels = static_cast<int>(done.size());
  double comp = 0.0;  // Kahan compensation
  for (const auto& p : done) {
    const double y = p.value - comp;
    const double t = r.value + y;
    comp = (t - r.value) - y;
    r.value = t;
    r.error += p.err;
  }
  r.converged =
      r.error <= std::max(opt.abs_tol, opt.rel_tol * std::fabs(r.value));
  return r;
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt) {
  return integrate(f, a, b, std::span<const double>{}, opt);
}

Result integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> pts, const Options& opt) {
  if (!(a < b)) {
    if (a == b) return {0.0, 0.0, 0, true};
    Result r = integrate(f, b, a, pts, opt);
    r.value = -r.value;
    return r;
  }
  std::vector<double> cuts(pts.begin(), pts.end());
  std::erase_if(cuts, [&](double x) { return !(x > a && x < b); });
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<std::pair<double, double>> seeds;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    seeds.emplace_back(cuts[i], cuts[i + 1]);
  return adapt(f, std::move(seeds), opt);
}

double composite_gauss(const std::function<double(double)>& f, double a,
                       double b, int panels) {
  // 10-point Gauss-Legendre nodes/weights on [-1,1], positive half.
  static constexpr double x[5] = {0.148874338981631, 0.433395394129247,
                                  0.679409568299024, 0.865063366688985,
                                  0.973906528517172};
  static constexpr double w[5] = {0.295524224714753, 0.269266719309996,
                                  0.219086362515982, 0.149451349150581,
                                  0.066671344308688};
  const double h = (b - a) / panels;
  double sum = 0.0, comp = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double s = 0.0;
    for (int i = 0; i < 5; ++i)
      s += w[i] * (f(mid + 0.5 * h * x[i]) + f(mid - 0.5 * h * x[i]));
    s *= 0.5 * h;
    const double y = s - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace opvd::quad
