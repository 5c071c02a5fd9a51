#include "bugnav/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "bugnav/svg.hpp"
#include "bugnav/text.hpp"

namespace bugnav {

std::string_view to_string(NoiseAxis a) {
  switch (a) {
    case NoiseAxis::OdomSigma: return "odom_sigma";
    case NoiseAxis::PFp: return "p_fp";
    case NoiseAxis::PFn: return "p_fn";
    case NoiseAxis::DtSigma: return "dt_sigma";
  }
  return "?";
}

double axis_value(const NoiseConfig& n, NoiseAxis a) {
  switch (a) {
    case NoiseAxis::OdomSigma: return n.odom_sigma;
    case NoiseAxis::PFp: return n.p_fp;
    case NoiseAxis::PFn: return n.p_fn;
    case NoiseAxis::DtSigma: return n.dt_sigma;
  }
  return 0.0;
}

std::string group_label(Algorithm a, const NoiseConfig& n) {
  std::string s(to_string(a));
  for (NoiseAxis axis : kAllAxes) {
    const double v = axis_value(n, axis);
    if (v != 0.0) s += " " + std::string(to_string(axis)) + "=" + format_double(v);
  }
  if (n.p_fp != 0.0 && n.fp_mode == FpMode::PerEpisode) s += " per_episode";
  return s;
}

namespace {

NoiseConfig unseeded(NoiseConfig n) {
  n.noise_seed = 0;
  return n;
}

struct Group {
  Algorithm algorithm;
  NoiseConfig noise;
  std::vector<const RunRecord*> runs;
};

std::vector<Group> group_runs(const std::vector<RunRecord>& records) {
  std::vector<const RunRecord*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const RunRecord* a, const RunRecord* b) { return a->run_id < b->run_id; });
  std::vector<Group> groups;
  for (const RunRecord* r : sorted) {
    const NoiseConfig n = unseeded(r->noise);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return g.algorithm == r->algorithm && g.noise == n; });
    if (it == groups.end()) {
      groups.push_back({r->algorithm, n, {}});
      it = groups.end() - 1;
    }
    it->runs.push_back(r);
  }
  return groups;
}

std::vector<double> lengths(const Group& g) {
  std::vector<double> v;
  for (const auto* r : g.runs) v.push_back(r->normalized_length);
  return v;
}

}  // namespace

std::vector<GroupSummary> summarize(const std::vector<RunRecord>& records) {
  std::vector<GroupSummary> out;
  for (const auto& g : group_runs(records)) {
    GroupSummary s;
    s.algorithm = g.algorithm;
    s.noise = g.noise;
    s.label = group_label(g.algorithm, g.noise);
    s.runs = static_cast<int>(g.runs.size());
    for (const auto* r : g.runs) s.successes += r->success ? 1 : 0;
    s.success_rate = static_cast<double>(s.successes) / s.runs;
    const auto nl = lengths(g);
    const double qs[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (int k = 0; k < 5; ++k) s.length_quartiles[static_cast<std::size_t>(k)] = quantile(nl, qs[k]);
    s.mean_length = mean(nl);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<RegressionRow> regressions(const std::vector<RunRecord>& records) {
  std::vector<RegressionRow> out;
  std::vector<Algorithm> algs;
  for (const auto& r : records)
    if (std::find(algs.begin(), algs.end(), r.algorithm) == algs.end()) algs.push_back(r.algorithm);
  std::sort(algs.begin(), algs.end());

  for (Algorithm a : algs) {
    for (NoiseAxis axis : kAllAxes) {
      std::vector<double> x, y;
      std::vector<bool> ok;
      std::set<double> distinct;
      for (const auto& r : records) {
        if (r.algorithm != a) continue;
        bool others_zero = true;
        for (NoiseAxis other : kAllAxes)
          if (other != axis && axis_value(r.noise, other) != 0.0) others_zero = false;
        if (!others_zero) continue;
        x.push_back(axis_value(r.noise, axis));
        y.push_back(r.normalized_length);
        ok.push_back(r.success);
        distinct.insert(x.back());
      }
      if (distinct.size() < 2) continue;  // the axis was not swept for this algorithm
      RegressionRow row;
      row.algorithm = a;
      row.axis = axis;
      row.n = x.size();
      try {
        row.logistic = logistic_regression(x, ok);
        row.has_logistic = true;
      } catch (const StatsError& e) {
        row.note = std::string("logistic: ") + e.what();
      }
      try {
        row.linear = linear_regression(x, y);
        row.has_linear = true;
      } catch (const StatsError& e) {
        if (!row.note.empty()) row.note += "; ";
        row.note += std::string("linear: ") + e.what();
      }
      out.push_back(std::move(row));
    }
  }
  return out;
}

Analysis analyze(const std::vector<RunRecord>& records, std::uint64_t seed, int n_resamples) {
  if (records.empty()) throw std::invalid_argument("no runs to analyze");
  Analysis a;
  a.groups = summarize(records);
  const auto groups = group_runs(records);
  Rng rng(seed, Stream::Statistics);
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      if (!(groups[i].noise == groups[j].noise)) continue;
      const auto la = lengths(groups[i]);
      const auto lb = lengths(groups[j]);
      if (la.size() < 2 || lb.size() < 2) continue;
      PairTest t;
      t.a = group_label(groups[i].algorithm, groups[i].noise);
      t.b = group_label(groups[j].algorithm, groups[j].noise);
      t.mean_a = mean(la);
      t.mean_b = mean(lb);
      try {
        t.p_value = bootstrap_test(la, lb, n_resamples, rng);
      } catch (const StatsError&) {
        continue;
      }
      a.pairs.push_back(std::move(t));
    }
  a.regressions = regressions(records);
  return a;
}

namespace {

std::string fixed(double v, int digits) {
  if (!std::isfinite(v)) return format_double(v);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string pad_right(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

}  // namespace

std::string report_text(const Analysis& a) {
  std::string out = "Success and normalized trajectory length (failed runs included)\n\n";
  std::size_t w = 8;
  for (const auto& g : a.groups) w = std::max(w, g.label.size() + 2);
  out += pad_right("group", w) + "runs  success   min     q1      median  q3      max     mean\n";
  for (const auto& g : a.groups) {
    out += pad_right(g.label, w) + pad_right(std::to_string(g.runs), 6) +
           pad_right(fixed(100.0 * g.success_rate, 1) + "%", 10);
    for (double q : g.length_quartiles) out += pad_right(fixed(q, 3), 8);
    out += fixed(g.mean_length, 3) + "\n";
  }

  out += "\nBootstrap tests on mean normalized length (pooled resampling)\n\n";
  if (a.pairs.empty()) out += "(no pairs share a noise setting)\n";
  for (const auto& p : a.pairs)
    out += p.a + " vs " + p.b + ": means " + fixed(p.mean_a, 3) + " / " + fixed(p.mean_b, 3) +
           ", p = " + fixed(p.p_value, 4) + "\n";

  out += "\nRegression on each swept noise axis (other axes at zero)\n\n";
  if (a.regressions.empty()) out += "(no noise axis was swept)\n";
  for (const auto& r : a.regressions) {
    out += std::string(to_string(r.algorithm)) + " ~ " + std::string(to_string(r.axis)) + " (n=" +
           std::to_string(r.n) + "): ";
    if (r.has_logistic) {
      out += "logistic coef " + fixed(r.logistic.coefficient, 4) + " (se " + fixed(r.logistic.coefficient_se, 4) +
             "), pseudo-R2 " + fixed(r.logistic.pseudo_r_squared, 4);
      if (r.logistic.separated) out += " [perfect separation]";
    }
    if (r.has_linear) {
      if (r.has_logistic) out += "; ";
      out += "length slope " + fixed(r.linear.slope, 4) + ", R2 " + fixed(r.linear.r_squared, 4);
    }
    if (!r.note.empty()) out += " [" + r.note + "]";
    out += "\n";
  }
  return out;
}

std::string success_csv(const Analysis& a) {
  std::string out =
      "algorithm,odom_sigma,p_fp,p_fn,dt_sigma,fp_mode,runs,successes,success_rate,nl_min,nl_q1,nl_median,nl_q3,"
      "nl_max,nl_mean\n";
  for (const auto& g : a.groups) {
    out += std::string(to_string(g.algorithm)) + "," + format_double(g.noise.odom_sigma) + "," +
           format_double(g.noise.p_fp) + "," + format_double(g.noise.p_fn) + "," + format_double(g.noise.dt_sigma) +
           "," + std::string(to_string(g.noise.fp_mode)) + "," + std::to_string(g.runs) + "," +
           std::to_string(g.successes) + "," + format_double(g.success_rate);
    for (double q : g.length_quartiles) out += "," + format_double(q);
    out += "," + format_double(g.mean_length) + "\n";
  }
  return out;
}

std::string bootstrap_csv(const Analysis& a) {
  std::string out = "group_a,group_b,mean_a,mean_b,p_value\n";
  for (const auto& p : a.pairs)
    out += p.a + "," + p.b + "," + format_double(p.mean_a) + "," + format_double(p.mean_b) + "," +
           format_double(p.p_value) + "\n";
  return out;
}

std::string regression_csv(const Analysis& a) {
  std::string out =
      "algorithm,axis,n,logit_coef,logit_se,logit_intercept,pseudo_r2,separated,converged,lin_slope,lin_intercept,"
      "lin_r2,note\n";
  for (const auto& r : a.regressions) {
    out += std::string(to_string(r.algorithm)) + "," + std::string(to_string(r.axis)) + "," + std::to_string(r.n);
    if (r.has_logistic)
      out += "," + format_double(r.logistic.coefficient) + "," + format_double(r.logistic.coefficient_se) + "," +
             format_double(r.logistic.intercept) + "," + format_double(r.logistic.pseudo_r_squared) + "," +
             (r.logistic.separated ? "true" : "false") + "," + (r.logistic.converged ? "true" : "false");
    else
      out += ",,,,,,";
    if (r.has_linear)
      out += "," + format_double(r.linear.slope) + "," + format_double(r.linear.intercept) + "," +
             format_double(r.linear.r_squared);
    else
      out += ",,,";
    std::string note = r.note;
    std::replace(note.begin(), note.end(), ',', ';');
    out += "," + note + "\n";
  }
  return out;
}

std::string analysis_svg(const Analysis& a) {
  std::vector<SummaryEntry> entries;
  for (const auto& g : a.groups) entries.push_back({g.label, g.success_rate, g.length_quartiles});
  return summary_svg(entries, "Success rate and normalized trajectory length");
}

void write_analysis(const Analysis& a, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::pair<const char*, std::string> files[] = {
      {"report.txt", report_text(a)},         {"success.csv", success_csv(a)},
      {"bootstrap.csv", bootstrap_csv(a)},    {"regression.csv", regression_csv(a)},
      {"summary.svg", analysis_svg(a)},
  };
  for (const auto& [name, text] : files) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed: " + (dir / name).string());
  }
}

}  // namespace bugnav
