#include "hcncov/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fastmath.hpp"
#include "hcncov/network.hpp"

namespace hcncov {

namespace {

constexpr std::uint64_t kShadowStream = 0x5348444f57ull;  // shadow pairs
constexpr std::uint64_t kSynthBase = 1ull << 40;

inline double wrap_delta(double d, double side, double half) {
  d = std::abs(d);
  return d > half ? side - d : d;
}

// Standard normal for the (trial, ue, ap) shadowing pair.
inline double shadow_z(std::uint64_t trial_seed, std::uint64_t ue,
                       std::uint64_t ap) {
  const std::uint64_t h = mix64(mix64(trial_seed, kShadowStream), mix64(ue, ap));
  return detail::fast_invnorm(u64_to_unit(h));
}

struct ScanContext {
  const Model* m;
  const Deployment* dep;
  const std::vector<double>* logw;  // per tier, ln of association weight
  double sigma_ln;
  double slack;   // prune_sigmas * sigma_ln
  double alpha;
  double half;
};

// Weighted-association argmax over all APs for the point (px, py).
// Candidates are visited per grid ring; an AP is skipped without sampling
// shadowing when even a slack-sized shadow swing cannot beat the running
// best. When stop_score >= 0 is given, returns early (ap = UINT32_MAX) as
// soon as any AP other than `self` scores above stop_score (used for the
// synthetic-UE accept test, where self must be the argmax).
struct ScanHit {
  std::uint32_t ap = UINT32_MAX;
  double score = -HUGE_VAL;  // ln(weight / path loss)
};

ScanHit scan_argmax(const ScanContext& c, double px, double py,
                    std::uint64_t ue_id, double stop_score = -1.0,
                    std::uint32_t self = UINT32_MAX) {
  const Deployment& dep = *c.dep;
  const std::size_t ntier = c.logw->size();
  ScanHit hit;
  const bool race = self != UINT32_MAX;
  double best = race ? stop_score : -HUGE_VAL;
  const double* logw = c.logw->data();

  // Tiers in descending weight: a strong early best shrinks the scan radii
  // of the weaker tiers. The squared-distance cutoff per tier bounds where
  // a slack-sized shadow swing could still beat the running best.
  std::size_t order[16];
  for (std::size_t t = 0; t < ntier; ++t) order[t] = t;
  std::sort(order, order + ntier,
            [&](std::size_t a, std::size_t b) { return logw[a] > logw[b]; });

  auto cut_for = [&](std::size_t t, double b) {
    const double e = 2.0 / c.alpha * (logw[t] + c.slack - b);
    return e > 700.0 ? HUGE_VAL : std::exp(e);
  };

  for (std::size_t oi = 0; oi < ntier; ++oi) {
    const std::size_t t = order[oi];
    const auto& g = dep.grid[t];
    if (g.x.empty()) continue;
    const int n = g.n;
    const double cell = dep.side / n;
    const int cx = std::min(static_cast<int>(px * g.inv_cell), n - 1);
    const int cy = std::min(static_cast<int>(py * g.inv_cell), n - 1);
    double d2cut = cut_for(t, best);

    const int max_ring = n / 2;
    for (int r = 0; r <= max_ring; ++r) {
      if (r >= 2) {
        const double dmin = (r - 1) * cell;
        if (dmin * dmin >= d2cut) break;
      }
      const int lo = -r, hi = r;
      for (int dj = lo; dj <= hi; ++dj) {
        const int step = (dj == lo || dj == hi || hi == lo) ? 1 : hi - lo;
        for (int di = lo; di <= hi; di += step) {
          int gx = cx + di, gy = cy + dj;
          if (gx < 0) gx += n;
          if (gx >= n) gx -= n;
          if (gy < 0) gy += n;
          if (gy >= n) gy -= n;
          const std::uint32_t begin = g.cell_start[gy * n + gx];
          const std::uint32_t end = g.cell_start[gy * n + gx + 1];
          for (std::uint32_t idx = begin; idx < end; ++idx) {
            const double dx = wrap_delta(px - g.x[idx], dep.side, c.half);
            const double dy = wrap_delta(py - g.y[idx], dep.side, c.half);
            double d2 = dx * dx + dy * dy;
            if (d2 >= d2cut) continue;
            if (d2 < 1e-20) d2 = 1e-20;
            const std::uint32_t ap = g.id[idx];
            const double raw =
                logw[t] - 0.5 * c.alpha * detail::fast_log(d2);
            const double score =
                raw - c.sigma_ln * shadow_z(dep.trial_seed, ue_id, ap);
            if (score > best) {
              if (race && ap != self) return hit;  // someone beats self
              best = score;
              d2cut = cut_for(t, best);
              if (!race) {
                hit.ap = ap;
                hit.score = score;
              }
            }
          }
        }
      }
    }
  }
  if (race) {
    hit.ap = self;
    hit.score = stop_score;
  }
  return hit;
}

ScanContext make_context(const Model& m, const Deployment& dep,
                         const std::vector<double>& logw, double prune_sigmas) {
  if (logw.size() > 16)
    throw std::invalid_argument("simulator supports at most 16 tiers");
  ScanContext c;
  c.m = &m;
  c.dep = &dep;
  c.logw = &logw;
  c.sigma_ln = m.cfg.shadow_sigma_db * std::numbers::ln10 / 10.0;
  c.slack = prune_sigmas * c.sigma_ln;
  c.alpha = m.cfg.alpha;
  c.half = dep.side * 0.5;
  return c;
}

std::vector<double> log_weights(const std::vector<double>& w) {
  std::vector<double> lw(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) lw[i] = std::log(w[i]);
  return lw;
}

// Path loss between a UE (by shadow id) and an AP.
double pair_path_loss(const Model& m, const Deployment& dep, double px,
                      double py, std::uint64_t ue_id, std::uint32_t ap) {
  const double half = dep.side * 0.5;
  const double dx = wrap_delta(px - dep.ap_x[ap], dep.side, half);
  const double dy = wrap_delta(py - dep.ap_y[ap], dep.side, half);
  double d2 = dx * dx + dy * dy;
  if (d2 < 1e-20) d2 = 1e-20;
  const double sigma_ln = m.cfg.shadow_sigma_db * std::numbers::ln10 / 10.0;
  const double lnS = sigma_ln * shadow_z(dep.trial_seed, ue_id, ap);
  return std::exp(lnS + 0.5 * m.cfg.alpha * std::log(d2));
}

}  // namespace

double default_window_km(const NetworkConfig& cfg) {
  double min_density = HUGE_VAL;
  for (const auto& t : cfg.tiers) min_density = std::min(min_density, t.density);
  const double side = std::sqrt(500.0 / min_density);
  return std::clamp(side, 4.0, 40.0);
}

Deployment generate_deployment(const Model& m, double window_km,
                               std::uint64_t trial_seed, double user_density) {
  if (!(window_km > 0.0))
    throw std::invalid_argument("generate_deployment: window must be positive");
  Deployment dep;
  dep.side = window_km;
  dep.trial_seed = trial_seed;
  const double area = window_km * window_km;
  SplitMix rng(mix64(trial_seed, 0xDEA11ull));


  dep.tier_start.resize(m.cfg.num_tiers() + 1, 0);
  for (std::size_t k = 0; k < m.cfg.num_tiers(); ++k) {
    const auto nk = rng.poisson(m.cfg.tiers[k].density * area);
    dep.tier_start[k + 1] = dep.tier_start[k] + static_cast<std::uint32_t>(nk);
    for (std::uint64_t i = 0; i < nk; ++i) {
      dep.ap_x.push_back(rng.next_unit() * window_km);
      dep.ap_y.push_back(rng.next_unit() * window_km);
      dep.ap_tier.push_back(static_cast<std::uint32_t>(k));
    }

  }
  const auto nu = rng.poisson(user_density * area);
  dep.ue_x.resize(nu);
  dep.ue_y.resize(nu);
  for (std::uint64_t i = 0; i < nu; ++i) {
    dep.ue_x[i] = rng.next_unit() * window_km;
    dep.ue_y[i] = rng.next_unit() * window_km;
  }

  // per-tier grids, cell size matched to the tier density (~3 APs per cell)
  dep.grid.resize(m.cfg.num_tiers());
  for (std::size_t k = 0; k < m.cfg.num_tiers(); ++k) {
    auto& g = dep.grid[k];
    const double target_cell = std::sqrt(3.0 / m.cfg.tiers[k].density);
    g.n = std::clamp(static_cast<int>(window_km / target_cell), 1, 512);
    g.inv_cell = g.n / window_km;
    const int ncell = g.n * g.n;
    auto cell_of = [&](double x, double y) {
      const int ix = std::min(static_cast<int>(x * g.inv_cell), g.n - 1);
      const int iy = std::min(static_cast<int>(y * g.inv_cell), g.n - 1);
      return iy * g.n + ix;
    };
    const std::uint32_t begin = dep.tier_start[k];
    const std::uint32_t end = dep.tier_start[k + 1];
    std::vector<std::uint32_t> counts(ncell, 0);
    for (std::uint32_t i = begin; i < end; ++i)
      counts[cell_of(dep.ap_x[i], dep.ap_y[i])]++;
    g.cell_start.assign(ncell + 1, 0);
    for (int i = 0; i < ncell; ++i)
      g.cell_start[i + 1] = g.cell_start[i] + counts[i];
    const std::uint32_t nk = end - begin;
    g.x.resize(nk);
    g.y.resize(nk);
    g.id.resize(nk);
    std::vector<std::uint32_t> fill(g.cell_start.begin(),
                                    g.cell_start.end() - 1);
    for (std::uint32_t i = begin; i < end; ++i) {
      const std::uint32_t slot = fill[cell_of(dep.ap_x[i], dep.ap_y[i])]++;
      g.x[slot] = dep.ap_x[i];
      g.y[slot] = dep.ap_y[i];
      g.id[slot] = i;
    }
  }
  return dep;
}

PointAssoc associate_point(const Model& m, const Deployment& dep, double px,
                           double py, std::uint64_t ue_id,
                           const std::vector<double>& weights,
                           double prune_sigmas) {
  const auto logw = log_weights(weights);
  const auto ctx = make_context(m, dep, logw, prune_sigmas);
  const ScanHit hit = scan_argmax(ctx, px, py, ue_id);
  if (hit.ap == UINT32_MAX)
    throw std::runtime_error("associate_point: no AP found");
  PointAssoc out;
  out.ap = hit.ap;
  out.path_loss = std::exp(logw[dep.ap_tier[hit.ap]] - hit.score);
  return out;
}

AssocResult associate(const Model& m, const Deployment& dep,
                      const std::vector<double>& weights, double prune_sigmas) {
  const auto logw = log_weights(weights);
  const auto ctx = make_context(m, dep, logw, prune_sigmas);
  AssocResult out;
  const std::size_t nue = dep.ue_x.size();
  out.serving_ap.resize(nue);
  out.path_loss.resize(nue);
  out.cell_count.assign(dep.ap_x.size(), 0);
  // visit UEs in spatial order for grid locality
  std::vector<std::uint32_t> order(nue);
  for (std::size_t i = 0; i < nue; ++i) order[i] = static_cast<std::uint32_t>(i);
  if (!dep.grid.empty()) {
    const auto& g0 = dep.grid.back();
    auto key = [&](std::uint32_t i) {
      const int ix = std::min(static_cast<int>(dep.ue_x[i] * g0.inv_cell), g0.n - 1);
      const int iy = std::min(static_cast<int>(dep.ue_y[i] * g0.inv_cell), g0.n - 1);
      return iy * g0.n + ix;
    };
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
  }
  for (std::uint32_t i : order) {
    const ScanHit hit =
        scan_argmax(ctx, dep.ue_x[i], dep.ue_y[i], static_cast<std::uint64_t>(i + 1));
    out.serving_ap[i] = hit.ap;
    out.path_loss[i] = std::exp(logw[dep.ap_tier[hit.ap]] - hit.score);
    out.cell_count[hit.ap]++;
  }
  return out;
}

std::uint32_t count_members(const Model& m, const Deployment& dep,
                            std::uint32_t ap, const std::vector<double>& weights,
                            double prune_sigmas) {
  const auto logw = log_weights(weights);
  const auto ctx = make_context(m, dep, logw, prune_sigmas);
  const double sigma_ln = ctx.sigma_ln;
  const std::uint32_t tier = dep.ap_tier[ap];
  std::uint32_t count = 0;
  for (std::size_t i = 0; i < dep.ue_x.size(); ++i) {
    const double px = dep.ue_x[i], py = dep.ue_y[i];
    const double dx = wrap_delta(px - dep.ap_x[ap], dep.side, ctx.half);
    const double dy = wrap_delta(py - dep.ap_y[ap], dep.side, ctx.half);
    double d2 = dx * dx + dy * dy;
    if (d2 < 1e-20) d2 = 1e-20;
    const double raw = logw[tier] - 0.5 * ctx.alpha * detail::fast_log(d2);
    const double score =
        raw - sigma_ln * shadow_z(dep.trial_seed, i + 1, ap);
    const ScanHit win = scan_argmax(ctx, px, py, i + 1, score, ap);
    if (win.ap == ap) ++count;
  }
  return count;
}

std::optional<ScheduledRealization> schedule_uplink(
    const Model& m, const Deployment& dep, const AssocResult& assoc,
    double prune_sigmas, SplitMix& rng) {
  const std::size_t nap = dep.ap_x.size();
  if (nap == 0) return std::nullopt;
  const auto logw = log_weights(m.dc.ul_weight);
  const auto ctx = make_context(m, dep, logw, prune_sigmas);

  ScheduledRealization out;
  {
    const ScanHit hit = scan_argmax(ctx, 0.0, 0.0, 0);
    out.tagged_ap = hit.ap;
    out.tagged_tier = dep.ap_tier[hit.ap];
    out.tagged_pl = std::exp(logw[out.tagged_tier] - hit.score);
  }

  // per-AP user lists (CSR over the association result)
  std::vector<std::uint32_t> offs(nap + 1, 0);
  for (std::size_t a = 0; a < nap; ++a)
    offs[a + 1] = offs[a] + assoc.cell_count[a];
  std::vector<std::uint32_t> members(dep.ue_x.size());
  {
    std::vector<std::uint32_t> fill(offs.begin(), offs.end() - 1);
    for (std::size_t i = 0; i < dep.ue_x.size(); ++i)
      members[fill[assoc.serving_ap[i]]++] = static_cast<std::uint32_t>(i);
  }

  const double sigma_ln = m.cfg.shadow_sigma_db * std::numbers::ln10 / 10.0;
  for (std::uint32_t a = 0; a < nap; ++a) {
    if (a == out.tagged_ap) continue;
    const std::uint32_t count = assoc.cell_count[a];
    if (count > 0) {
      const std::uint32_t pick =
          members[offs[a] + static_cast<std::uint32_t>(rng.next_below(count))];
      out.intf_x.push_back(dep.ue_x[pick]);
      out.intf_y.push_back(dep.ue_y[pick]);
      out.intf_own_pl.push_back(assoc.path_loss[pick]);
      out.intf_ue.push_back(pick + 1);
      out.intf_ap.push_back(a);
      continue;
    }
    // Empty cell: one synthetic UE, uniform on the cell. Disc proposals
    // around the AP; accept iff the AP wins the association argmax at the
    // proposed point. Stage schedule: mean-cell radius first, then a wide
    // disc for large cells, then shrinking discs for the rare AP whose cell
    // is microscopic (a low-weight AP right next to a strong one).
    const std::uint32_t tier = dep.ap_tier[a];
    const double mean_cell =
        m.dc.assoc_ul[tier] / m.cfg.tiers[tier].density;
    const double r0 = 2.0 * std::sqrt(mean_cell / std::numbers::pi);
    double radius = r0;
    bool placed = false;
    for (int attempt = 0; attempt < 1344; ++attempt) {
      if (attempt == 192) radius = 4.0 * r0;
      if (attempt >= 384 && attempt % 96 == 0)
        radius = std::max(radius * 0.25, 1e-4);
      const double rr = radius * std::sqrt(rng.next_unit());
      const double th = 2.0 * std::numbers::pi * rng.next_unit();
      double px = dep.ap_x[a] + rr * std::cos(th);
      double py = dep.ap_y[a] + rr * std::sin(th);
      px -= std::floor(px / dep.side) * dep.side;
      py -= std::floor(py / dep.side) * dep.side;
      const std::uint64_t ue_id =
          kSynthBase + (static_cast<std::uint64_t>(a) << 14) +
          static_cast<std::uint64_t>(attempt);
      // score to the candidate AP itself
      const double half = dep.side * 0.5;
      const double dx = wrap_delta(px - dep.ap_x[a], dep.side, half);
      const double dy = wrap_delta(py - dep.ap_y[a], dep.side, half);
      double d2 = dx * dx + dy * dy;
      if (d2 < 1e-20) d2 = 1e-20;
      const double raw = logw[tier] - 0.5 * m.cfg.alpha * detail::fast_log(d2);
      const double score_self =
          raw - sigma_ln * shadow_z(dep.trial_seed, ue_id, a);
      const ScanHit win = scan_argmax(ctx, px, py, ue_id, score_self, a);
      if (win.ap != a) continue;  // a competitor beats the AP
      out.intf_x.push_back(px);
      out.intf_y.push_back(py);
      out.intf_own_pl.push_back(std::exp(logw[tier] - score_self));
      out.intf_ue.push_back(ue_id);
      out.intf_ap.push_back(a);
      placed = true;
      break;
    }
    if (!placed) return std::nullopt;
  }
  return out;
}

std::vector<double> measure_ul_sinr(const Model& m, const Deployment& dep,
                                    const ScheduledRealization& sched,
                                    const std::vector<double>& pcf_values,
                                    SplitMix& rng) {
  const std::size_t ni = sched.intf_x.size();
  std::vector<double> h(ni);
  for (std::size_t i = 0; i < ni; ++i) h[i] = rng.next_exponential();
  const double h0 = rng.next_exponential();

  std::vector<double> pl_tag(ni);
  for (std::size_t i = 0; i < ni; ++i)
    pl_tag[i] = pair_path_loss(m, dep, sched.intf_x[i], sched.intf_y[i],
                               sched.intf_ue[i], sched.tagged_ap);

  const double inv_snr = 1.0 / m.cfg.snr_linear();
  std::vector<double> out(pcf_values.size());
  for (std::size_t e = 0; e < pcf_values.size(); ++e) {
    const double eps = pcf_values[e];
    double interference = 0.0;
    for (std::size_t i = 0; i < ni; ++i)
      interference += std::pow(sched.intf_own_pl[i], eps) * h[i] / pl_tag[i];
    const double signal = h0 * std::pow(sched.tagged_pl, eps - 1.0);
    out[e] = signal / (inv_snr + interference);
  }
  return out;
}

namespace {

struct TrialCore {
  Deployment dep;
  AssocResult assoc;
  ScheduledRealization sched;
  SplitMix rng;
};

// Deployment + association + scheduling with resampling on the (rare)
// synthetic placement failure.
TrialCore run_trial_core(const Model& m, double window, std::uint64_t seed,
                         double user_density, double prune_sigmas) {
  for (int attempt = 0;; ++attempt) {
    const std::uint64_t s = mix64(seed, 0xC0DEull + attempt);
    TrialCore core{generate_deployment(m, window, s, user_density),
                   {},
                   {},
                   SplitMix(mix64(s, 0xFAD1ull))};
    if (core.dep.ap_x.empty()) {
      if (attempt > 64)
        throw std::runtime_error("simulation window contains no APs");
      continue;
    }
    core.assoc = associate(m, core.dep, m.dc.ul_weight, prune_sigmas);
    auto sched =
        schedule_uplink(m, core.dep, core.assoc, prune_sigmas, core.rng);
    if (!sched) {
      if (attempt > 64)
        throw std::runtime_error("synthetic UE placement kept failing");
      continue;
    }
    core.sched = std::move(*sched);
    return core;
  }
}

double resolve_window(const Model& m, const SimOptions& opt) {
  return opt.window_km > 0.0 ? opt.window_km : default_window_km(m.cfg);
}

double resolve_sinr_density(const Model& m, const SimOptions& opt) {
  if (opt.sinr_user_density >= 0.0) return opt.sinr_user_density;
  double total = 0.0;
  for (const auto& t : m.cfg.tiers) total += t.density;
  return std::min(m.cfg.user_density, 2.0 * total);
}

}  // namespace

SinrBatch run_sinr_batch(const Model& m, std::size_t trials,
                         const std::vector<double>& pcf_values,
                         const SimOptions& opt) {
  const double window = resolve_window(m, opt);
  const double density = resolve_sinr_density(m, opt);
  SinrBatch out;
  out.samples.assign(pcf_values.size(), std::vector<double>(trials));
  out.serving_tier.resize(trials);
  parallel_for(trials, opt.exec, [&](std::size_t t) {
    TrialCore core = run_trial_core(m, window, mix64(opt.seed, t), density,
                                    opt.prune_sigmas);
    const auto sinr =
        measure_ul_sinr(m, core.dep, core.sched, pcf_values, core.rng);
    for (std::size_t e = 0; e < pcf_values.size(); ++e)
      out.samples[e][t] = sinr[e];
    out.serving_tier[t] = core.sched.tagged_tier;
  });
  return out;
}

RateBatch run_rate_batch(const Model& m, std::size_t trials,
                         const SimOptions& opt) {
  const double window = resolve_window(m, opt);
  RateBatch out;
  out.ul_sinr.resize(trials);
  out.ul_rate.resize(trials);
  out.ul_tier.resize(trials);
  out.ul_load.resize(trials);
  const double w_ul = m.cfg.uplink_fraction * m.cfg.bandwidth_hz;
  parallel_for(trials, opt.exec, [&](std::size_t t) {
    TrialCore core = run_trial_core(m, window, mix64(opt.seed, t),
                                    m.cfg.user_density, opt.prune_sigmas);
    const auto sinr =
        measure_ul_sinr(m, core.dep, core.sched, {m.cfg.pcf}, core.rng);
    const std::uint32_t load = core.assoc.cell_count[core.sched.tagged_ap] + 1;
    out.ul_sinr[t] = sinr[0];
    out.ul_load[t] = load;
    out.ul_tier[t] = core.sched.tagged_tier;
    out.ul_rate[t] = w_ul / load * std::log2(1.0 + sinr[0]);
  });
  return out;
}

RateBatch run_joint_batch(const Model& m, std::size_t trials,
                          const SimOptions& opt) {
  const double window = resolve_window(m, opt);
  RateBatch out;
  out.ul_sinr.resize(trials);
  out.ul_rate.resize(trials);
  out.ul_tier.resize(trials);
  out.ul_load.resize(trials);
  out.dl_sir.resize(trials);
  out.dl_rate.resize(trials);
  out.dl_tier.resize(trials);
  out.dl_load.resize(trials);
  const double w_ul = m.cfg.uplink_fraction * m.cfg.bandwidth_hz;
  const double w_dl = (1.0 - m.cfg.uplink_fraction) * m.cfg.bandwidth_hz;
  parallel_for(trials, opt.exec, [&](std::size_t t) {
    TrialCore core = run_trial_core(m, window, mix64(opt.seed, t),
                                    m.cfg.user_density, opt.prune_sigmas);
    const auto sinr =
        measure_ul_sinr(m, core.dep, core.sched, {m.cfg.pcf}, core.rng);
    const std::uint32_t ul_load =
        core.assoc.cell_count[core.sched.tagged_ap] + 1;
    out.ul_sinr[t] = sinr[0];
    out.ul_load[t] = ul_load;
    out.ul_tier[t] = core.sched.tagged_tier;
    out.ul_rate[t] = w_ul / ul_load * std::log2(1.0 + sinr[0]);

    // downlink side: same deployment, downlink weights, shared shadowing
    const PointAssoc dl_serv = associate_point(
        m, core.dep, 0.0, 0.0, 0, m.dc.dl_weight, opt.prune_sigmas);
    const std::uint32_t dl_tier = core.dep.ap_tier[dl_serv.ap];
    double interference = 0.0;
    for (std::uint32_t a = 0; a < core.dep.ap_x.size(); ++a) {
      if (a == dl_serv.ap) continue;
      const double pl = pair_path_loss(m, core.dep, 0.0, 0.0, 0, a);
      interference +=
          m.cfg.tiers[core.dep.ap_tier[a]].tx_power * core.rng.next_exponential() / pl;
    }
    const double num = m.cfg.tiers[dl_tier].tx_power *
                       core.rng.next_exponential() / dl_serv.path_loss;
    const double dl_sir = interference > 0.0 ? num / interference : HUGE_VAL;
    const std::uint32_t dl_load =
        count_members(m, core.dep, dl_serv.ap, m.dc.dl_weight,
                      opt.prune_sigmas) + 1;
    out.dl_sir[t] = dl_sir;
    out.dl_tier[t] = dl_tier;
    out.dl_load[t] = dl_load;
    out.dl_rate[t] = w_dl / dl_load * std::log2(1.0 + dl_sir);
  });
  return out;
}

IntensitySamples collect_interferer_pl(const Model& m, std::size_t trials,
                                       std::size_t tagged_tier,
                                       double /*max_distance_km*/,
                                       const SimOptions& opt) {
  const double window = resolve_window(m, opt);
  const double density = resolve_sinr_density(m, opt);
  std::vector<std::vector<std::vector<double>>> per_trial(trials);
  std::vector<char> used(trials, 0);
  parallel_for(trials, opt.exec, [&](std::size_t t) {
    TrialCore core = run_trial_core(m, window, mix64(opt.seed, t), density,
                                    opt.prune_sigmas);
    if (core.sched.tagged_tier != tagged_tier) return;
    used[t] = 1;
    auto& rec = per_trial[t];
    rec.assign(m.cfg.num_tiers(), {});
    for (std::size_t i = 0; i < core.sched.intf_x.size(); ++i) {
      const double pl =
          pair_path_loss(m, core.dep, core.sched.intf_x[i],
                         core.sched.intf_y[i], core.sched.intf_ue[i],
                         core.sched.tagged_ap);
      rec[core.dep.ap_tier[core.sched.intf_ap[i]]].push_back(pl);
    }
  });
  IntensitySamples out;
  out.pl_by_tier.assign(m.cfg.num_tiers(), {});
  for (std::size_t t = 0; t < trials; ++t) {
    if (!used[t]) continue;
    out.trials_used++;
    for (std::size_t k = 0; k < m.cfg.num_tiers(); ++k)
      out.pl_by_tier[k].insert(out.pl_by_tier[k].end(),
                               per_trial[t][k].begin(),
                               per_trial[t][k].end());
  }
  return out;
}

EmpiricalCcdf empirical_ccdf(const std::vector<double>& samples,
                             const std::vector<double>& thresholds) {
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  const double z = 1.959963984540054;  // 95%
  EmpiricalCcdf out;
  out.thresholds = thresholds;
  out.value.resize(thresholds.size());
  out.wilson_halfwidth.resize(thresholds.size());
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    const auto it =
        std::upper_bound(sorted.begin(), sorted.end(), thresholds[i]);
    const double k = static_cast<double>(sorted.end() - it);
    const double p = n > 0 ? k / n : 0.0;
    out.value[i] = p;
    if (n > 0) {
      const double denom = 1.0 + z * z / n;
      out.wilson_halfwidth[i] =
          z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    } else {
      out.wilson_halfwidth[i] = 1.0;
    }
  }
  return out;
}

}  // namespace hcncov
