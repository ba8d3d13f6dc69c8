/*
 * Copyright 2026 The aptvdf Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef APTVDF_PROTOTYPE_DESIGN_HPP
#define APTVDF_PROTOTYPE_DESIGN_HPP

// Linear-phase lowpass prototype design: Parks-McClellan (Remez exchange)
// with a Kaiser-window fallback. Only even orders (type I) are produced so
// the delay complement N/2 is an integer number of stages.

#include <aptvdf/error.hpp>
#include <aptvdf/filter_core.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

namespace aptvdf {

struct RemezBand {
  double lo = 0.0; // normalized, 1.0 = Nyquist
  double hi = 0.0;
  double desired = 0.0;
  double weight = 1.0;
};

struct RemezResult {
  std::vector<double> coefficients;
  double deviation = 0.0; // weighted equiripple error
  int iterations = 0;
  bool converged = false;
};

namespace detail {

// Barycentric weights 1 / prod_{j != i} 2 (x_i - x_j); the factor 2 keeps the
// products away from underflow for moderately large point sets.
inline std::vector<double> barycentric_weights(const std::vector<double> &x,
                                               std::size_t count) {
  std::vector<double> w(count);
  for (std::size_t i = 0; i < count; ++i) {
    double d = 1.0;
    for (std::size_t j = 0; j < count; ++j)
      if (j != i)
        d *= 2.0 * (x[i] - x[j]);
    w[i] = 1.0 / d;
  }
  return w;
}

inline double barycentric_eval(double x, const std::vector<double> &nodes,
                               const std::vector<double> &weights,
                               const std::vector<double> &values) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double diff = x - nodes[i];
    if (std::abs(diff) < 1e-14)
      return values[i];
    const double c = weights[i] / diff;
    num += c * values[i];
    den += c;
  }
  return num / den;
}

} // namespace detail

// Equiripple type I FIR of even `order` for the given bands.
inline RemezResult remez_type1(std::size_t order,
                               const std::vector<RemezBand> &bands,
                               std::size_t grid_density = 16,
                               int max_iterations = 60) {
  if (order < 2 || order % 2 != 0)
    throw PreconditionError("remez_type1 needs an even order >= 2");
  if (bands.empty())
    throw PreconditionError("remez_type1 needs at least one band");

  const std::size_t r = order / 2 + 1; // cosine terms
  const double step = 1.0 / double(grid_density * r);

  // Dense grid in cos(pi f).
  std::vector<double> gx, gd, gw;
  for (const RemezBand &b : bands) {
    if (!(b.lo >= 0.0 && b.hi <= 1.0 && b.lo < b.hi && b.weight > 0.0))
      throw PreconditionError("invalid Remez band");
    const auto n = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::ceil((b.hi - b.lo) / step)) + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double f = b.lo + (b.hi - b.lo) * double(i) / double(n - 1);
      gx.push_back(std::cos(std::numbers::pi * f));
      gd.push_back(b.desired);
      gw.push_back(b.weight);
    }
  }
  const std::size_t ng = gx.size();
  if (ng < r + 1)
    throw PreconditionError("Remez grid is too small for the order");

  std::vector<std::size_t> ext(r + 1);
  for (std::size_t i = 0; i <= r; ++i)
    ext[i] = i * (ng - 1) / r;

  RemezResult result;
  std::vector<double> ex(r + 1), ey(r), err(ng);
  std::vector<double> interp_w;
  double delta = 0.0;

  for (int it = 0; it < max_iterations; ++it) {
    result.iterations = it + 1;
    for (std::size_t i = 0; i <= r; ++i)
      ex[i] = gx[ext[i]];

    const auto ad = detail::barycentric_weights(ex, r + 1);
    double num = 0.0, den = 0.0, sign = 1.0;
    for (std::size_t i = 0; i <= r; ++i) {
      num += ad[i] * gd[ext[i]];
      den += sign * ad[i] / gw[ext[i]];
      sign = -sign;
    }
    delta = num / den;

    sign = 1.0;
    for (std::size_t i = 0; i < r; ++i) {
      ey[i] = gd[ext[i]] - sign * delta / gw[ext[i]];
      sign = -sign;
    }
    interp_w = detail::barycentric_weights(ex, r);
    const std::vector<double> nodes(ex.begin(), ex.begin() + r);

    for (std::size_t j = 0; j < ng; ++j)
      err[j] = gw[j] *
               (gd[j] - detail::barycentric_eval(gx[j], nodes, interp_w, ey));

    // Local extrema of the weighted error.
    std::vector<std::size_t> found;
    for (std::size_t j = 0; j < ng; ++j) {
      const double e = err[j];
      const double prev = j > 0 ? err[j - 1] : -e;
      const double next = j + 1 < ng ? err[j + 1] : -e;
      const bool is_max = e > 0.0 && e >= prev && e > next;
      const bool is_min = e < 0.0 && e <= prev && e < next;
      const bool edge_max = (j == 0 || j + 1 == ng) && e > 0.0 &&
                            e >= (j == 0 ? next : prev);
      const bool edge_min = (j == 0 || j + 1 == ng) && e < 0.0 &&
                            e <= (j == 0 ? next : prev);
      if (is_max || is_min || edge_max || edge_min)
        found.push_back(j);
    }

    // Enforce alternation, keeping the larger of same-signed neighbours.
    std::vector<std::size_t> alt;
    for (std::size_t j : found) {
      if (!alt.empty() && (err[alt.back()] > 0.0) == (err[j] > 0.0)) {
        if (std::abs(err[j]) > std::abs(err[alt.back()]))
          alt.back() = j;
      } else {
        alt.push_back(j);
      }
    }
    while (alt.size() > r + 1) {
      if (std::abs(err[alt.front()]) < std::abs(err[alt.back()]))
        alt.erase(alt.begin());
      else
        alt.pop_back();
    }
    if (alt.size() < r + 1)
      break;

    double emax = 0.0, emin = std::numeric_limits<double>::infinity();
    for (std::size_t j : alt) {
      emax = std::max(emax, std::abs(err[j]));
      emin = std::min(emin, std::abs(err[j]));
    }
    ext = alt;
    if (emax > 0.0 && (emax - emin) / emax < 1e-6) {
      result.converged = true;
      break;
    }
  }

  // Recover h by sampling the amplitude at N + 1 equally spaced frequencies.
  for (std::size_t i = 0; i <= r; ++i)
    ex[i] = gx[ext[i]];
  {
    double sign = 1.0;
    for (std::size_t i = 0; i < r; ++i) {
      ey[i] = gd[ext[i]] - sign * delta / gw[ext[i]];
      sign = -sign;
    }
  }
  interp_w = detail::barycentric_weights(ex, r);
  const std::vector<double> nodes(ex.begin(), ex.begin() + r);

  const std::size_t len = order + 1;
  const std::size_t mid = order / 2;
  std::vector<double> amp(len);
  for (std::size_t k = 0; k < len; ++k) {
    const double w = 2.0 * std::numbers::pi * double(k) / double(len);
    amp[k] = detail::barycentric_eval(std::cos(w), nodes, interp_w, ey);
  }
  result.coefficients.assign(len, 0.0);
  for (std::size_t n = 0; n < len; ++n) {
    const double m = double(n) - double(mid);
    double acc = 0.0;
    for (std::size_t k = 0; k < len; ++k)
      acc += amp[k] *
             std::cos(2.0 * std::numbers::pi * double(k) * m / double(len));
    result.coefficients[n] = acc / double(len);
  }
  // Exact symmetry.
  for (std::size_t n = 0; n < mid; ++n) {
    const double avg =
        0.5 * (result.coefficients[n] + result.coefficients[order - n]);
    result.coefficients[n] = result.coefficients[order - n] = avg;
  }
  result.deviation = std::abs(delta);
  return result;
}

inline double kaiser_beta(double atten_db) {
  if (atten_db > 50.0)
    return 0.1102 * (atten_db - 8.7);
  if (atten_db >= 21.0)
    return 0.5842 * std::pow(atten_db - 21.0, 0.4) +
           0.07886 * (atten_db - 21.0);
  return 0.0;
}

// Windowed-sinc lowpass with the cutoff centred in the transition band.
inline std::vector<double> kaiser_lowpass(std::size_t order, double cutoff,
                                          double beta) {
  const double mid = double(order) / 2.0;
  const double i0b = std::cyl_bessel_i(0.0, beta);
  std::vector<double> h(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    const double m = double(n) - mid;
    const double sinc =
        m == 0.0 ? cutoff
                 : std::sin(std::numbers::pi * cutoff * m) /
                       (std::numbers::pi * m);
    const double ratio = m / mid;
    const double win =
        std::cyl_bessel_i(0.0, beta * std::sqrt(std::max(0.0, 1.0 - ratio * ratio))) /
        i0b;
    h[n] = sinc * win;
  }
  return h;
}

struct SpecCheck {
  double ripple_db = 0.0; // peak-to-peak over the passband
  double atten_db = 0.0;  // worst stopband attenuation below unity
  bool meets = false;
};

// Measures a prototype against spec on a grid of at least 1024 points per
// unit frequency, plus the band edges.
inline SpecCheck check_spec(const PrototypeFilter &p, const FrequencySpec &spec,
                            std::size_t grid_size = 4096) {
  grid_size = std::max<std::size_t>(grid_size, 1024);
  double pmax = 0.0, pmin = std::numeric_limits<double>::infinity();
  double smax = 0.0;
  auto visit = [&](double f) {
    const double mag = std::abs(p.response_at(f));
    if (f <= spec.cutoff) {
      pmax = std::max(pmax, mag);
      pmin = std::min(pmin, mag);
    }
    if (f >= spec.stopband_edge())
      smax = std::max(smax, mag);
  };
  for (std::size_t i = 0; i < grid_size; ++i)
    visit(double(i) / double(grid_size - 1));
  visit(spec.cutoff);
  visit(spec.stopband_edge());

  SpecCheck c;
  c.ripple_db = pmin > 0.0 ? 20.0 * std::log10(pmax / pmin)
                           : std::numeric_limits<double>::infinity();
  c.atten_db = smax > 0.0 ? -20.0 * std::log10(smax)
                          : std::numeric_limits<double>::infinity();
  c.meets = c.ripple_db <= spec.passband_ripple_db &&
            c.atten_db >= spec.stopband_atten_db;
  return c;
}

enum class DesignMethod { equiripple, kaiser };

struct DesignOptions {
  std::size_t max_order = 400;
  std::size_t grid_density = 16;
  // Stopband/passband weight ratios tried at each order, as multiples of
  // the nominal ratio delta_p / delta_s.
  std::vector<double> weight_scales = {1.0,  0.7, 0.5, 0.35, 0.25,
                                       1.4, 2.0, 2.8, 4.0,  0.18};
};

struct DesignReport {
  PrototypeFilter filter;
  DesignMethod method;
  SpecCheck check;
  double stop_weight = 0.0;
};

namespace detail {

inline std::vector<double> unit_dc_gain(std::vector<double> h) {
  const double dc = std::accumulate(h.begin(), h.end(), 0.0);
  if (!(std::abs(dc) > 0.0) || !std::isfinite(dc))
    return h;
  for (double &c : h)
    c /= dc;
  return h;
}

inline std::size_t kaiser_order_estimate(const FrequencySpec &spec) {
  const double a = spec.stopband_atten_db;
  const double dw = std::numbers::pi * spec.transition_bw;
  const double n = (a - 7.95) / (2.285 * dw);
  return static_cast<std::size_t>(std::max(2.0, std::ceil(n)));
}

} // namespace detail

// Minimal even-order lowpass meeting `spec`, normalized to unit DC gain so
// the delay complement has an exact null where the lowpass passes DC.
inline DesignReport design_prototype_report(const FrequencySpec &spec,
                                            const DesignOptions &opt = {}) {
  spec.validate();
  const double g = std::pow(10.0, spec.passband_ripple_db / 20.0);
  const double dp = (g - 1.0) / (g + 1.0);
  const double ds = std::pow(10.0, -spec.stopband_atten_db / 20.0);
  const double nominal = dp / ds;

  // Equiripple designs beat the Kaiser estimate, so begin well below it.
  std::size_t start = detail::kaiser_order_estimate(spec) / 2;
  start = std::max<std::size_t>(2, start - start % 2);

  for (std::size_t n = start; n <= opt.max_order; n += 2) {
    bool any_converged = false;
    for (double scale : opt.weight_scales) {
      const double w = nominal * scale;
      RemezResult rr;
      try {
        rr = remez_type1(n,
                         {{0.0, spec.cutoff, 1.0, 1.0},
                          {spec.stopband_edge(), 1.0, 0.0, w}},
                         opt.grid_density);
      } catch (const PreconditionError &) {
        continue;
      }
      if (!rr.converged)
        continue;
      any_converged = true;
      PrototypeFilter p(detail::unit_dc_gain(std::move(rr.coefficients)));
      const SpecCheck c = check_spec(p, spec);
      if (c.meets)
        return {std::move(p), DesignMethod::equiripple, c, w};
    }
    if (!any_converged) {
      PrototypeFilter p(detail::unit_dc_gain(kaiser_lowpass(
          n, spec.cutoff + spec.transition_bw / 2.0,
          kaiser_beta(spec.stopband_atten_db))));
      const SpecCheck c = check_spec(p, spec);
      if (c.meets)
        return {std::move(p), DesignMethod::kaiser, c, 0.0};
    }
  }
  throw DesignError("no prototype of even order <= " +
                    std::to_string(opt.max_order) + " meets the specification");
}

inline PrototypeFilter design_prototype(const FrequencySpec &spec,
                                        const DesignOptions &opt = {}) {
  return design_prototype_report(spec, opt).filter;
}

} // namespace aptvdf

#endif // APTVDF_PROTOTYPE_DESIGN_HPP
