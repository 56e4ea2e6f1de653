#include "vvps/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <queue>
#include <thread>

namespace vvps {
namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Segment {
  double a;
  double b;
  T value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename T, typename F>
Segment<T> kronrod15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    kronrod += (f1 + f2) * kWgk[i];
    if (i % 2 == 1) gauss += (f1 + f2) * kWg[i / 2];
  }
  Segment<T> s{a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
  return s;
}

template <typename T, typename F>
QuadResult<T> adaptive(const F& f, std::vector<std::pair<double, double>> init,
                       const QuadOptions& opts) {
  std::priority_queue<Segment<T>> queue;
  int evaluations = 0;
  for (const auto& [a, b] : init) {
    queue.push(kronrod15<T>(f, a, b));
    evaluations += 15;
  }
  auto totals = [&queue]() {
    auto copy = queue;
    T value{};
    double error = 0.0;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
    return std::pair<T, double>{value, error};
  };
  auto [value, error] = totals();
  int splits = 0;
  while (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(value)) &&
         splits < opts.max_subdivisions) {
    const Segment<T> worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      queue.push(worst);
      break;
    }
    const auto left = kronrod15<T>(f, worst.a, mid);
    const auto right = kronrod15<T>(f, mid, worst.b);
    evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++splits;
  }
  // Re-sum from the segments to shed the running-update rounding.
  std::vector<Segment<T>> segs;
  while (!queue.empty()) {
    segs.push_back(queue.top());
    queue.pop();
  }
  std::sort(segs.begin(), segs.end(),
            [](const auto& l, const auto& r) { return l.a < r.a; });
  QuadResult<T> out;
  out.evaluations = evaluations;
  if constexpr (std::is_same_v<T, double>) {
    CompensatedSum s;
    for (const auto& seg : segs) s.add(seg.value);
    out.value = s.value();
  } else {
    CompensatedComplexSum s;
    for (const auto& seg : segs) s.add(seg.value);
    out.value = s.value();
  }
  for (const auto& seg : segs) out.error += seg.error;
  return out;
}

}  // namespace

QuadResult<double> integrate(const std::function<double(double)>& f, double a,
                             double b, const QuadOptions& opts) {
  if (a == b) return {};
  if (a > b) {
    auto r = integrate(f, b, a, opts);
    r.value = -r.value;
    return r;
  }
  return adaptive<double>(f, {{a, b}}, opts);
}

QuadResult<Complex> integrate_complex(const std::function<Complex(double)>& f,
                                      double a, double b,
                                      const QuadOptions& opts) {
  if (a == b) return {};
  if (a > b) {
    auto r = integrate_complex(f, b, a, opts);
    r.value = -r.value;
    return r;
  }
  return adaptive<Complex>(f, {{a, b}}, opts);
}

QuadResult<double> integrate_to_infinity(const std::function<double(double)>& f,
                                         double a, const QuadOptions& opts) {
  auto mapped = [&f, a](double t) {
    const double s = 1.0 - t;
    const double x = a + t / s;
    const double v = f(x);
    return v == 0.0 ? 0.0 : v / (s * s);
  };
  // Split at t = 1/2 (x = a + 1) so the bulk near a is resolved separately.
  return adaptive<double>(mapped, {{0.0, 0.5}, {0.5, 1.0}}, opts);
}

QuadResult<Complex> integrate_geometric(const std::function<Complex(double)>& f,
                                        double lo, double hi, int panels,
                                        const QuadOptions& opts) {
  if (!(lo > 0.0 && hi > lo)) throw ArgumentError("integrate_geometric: need 0 < lo < hi");
  panels = std::max(panels, 1);
  std::vector<std::pair<double, double>> init;
  const double ratio = std::pow(hi / lo, 1.0 / panels);
  double left = lo;
  for (int i = 0; i < panels; ++i) {
    const double right = (i + 1 == panels) ? hi : left * ratio;
    init.emplace_back(left, right);
    left = right;
  }
  return adaptive<Complex>(f, std::move(init), opts);
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw ArgumentError("gauss_legendre: n must be positive");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int m = 2; m <= n; ++m) {
      const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("VVPS_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> failures(workers);
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, &failures, w, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : failures)
    if (e) std::rethrow_exception(e);
}

}  // namespace vvps
