#include "compare.hpp"

#include <algorithm>
#include <optional>

namespace ellik {

namespace {

// Candidate orderings for the tag columns. Declaration order breaks exact
// ties deterministically.
constexpr BoundFamily upper_families[] = {BoundFamily::new_upper, BoundFamily::wclc_upper,
                                          BoundFamily::ar_upper, BoundFamily::avv_upper};
constexpr BoundFamily lower_families[] = {BoundFamily::new_lower, BoundFamily::wclc_lower};

template <class Real>
struct PointValues {
  Real r;
  BoundSample<Real> sample;

  Real upper_of(BoundFamily f) const {
    switch (f) {
      case BoundFamily::new_upper: return sample.new_upper;
      case BoundFamily::wclc_upper: return sample.wclc_upper;
      case BoundFamily::ar_upper: return sample.ar_upper;
      case BoundFamily::avv_upper: return sample.avv_upper;
      default: throw InvalidArgument("not an upper family");
    }
  }
  Real lower_of(BoundFamily f) const {
    switch (f) {
      case BoundFamily::new_lower: return sample.new_lower;
      case BoundFamily::wclc_lower: return sample.wclc_lower;
      default: throw InvalidArgument("not a lower family");
    }
  }
};

template <class Real>
ComparisonRow make_row(const PointValues<Real>& p, unsigned digits) {
  auto fmt = [&](const Real& v) { return RealOps<Real>::format(v, digits); };
  BoundFamily best_upper = upper_families[0];
  for (BoundFamily f : upper_families)
    if (p.upper_of(f) < p.upper_of(best_upper)) best_upper = f;
  BoundFamily best_lower = lower_families[0];
  for (BoundFamily f : lower_families)
    if (p.lower_of(f) > p.lower_of(best_lower)) best_lower = f;

  ComparisonRow row;
  row.r = fmt(p.r);
  row.k = fmt(p.sample.k);
  row.new_lower = fmt(p.sample.new_lower);
  row.new_upper = fmt(p.sample.new_upper);
  row.ar_upper = fmt(p.sample.ar_upper);
  row.avv_upper = fmt(p.sample.avv_upper);
  row.wclc_lower = fmt(p.sample.wclc_lower);
  row.wclc_upper = fmt(p.sample.wclc_upper);
  row.tightest_lower = to_string(best_lower);
  row.tightest_upper = to_string(best_upper);
  row.new_lower_from_f = fmt(p.sample.lower_branches.from_f);
  row.new_lower_from_g = fmt(p.sample.lower_branches.from_g);
  row.new_upper_from_f = fmt(p.sample.upper_branches.from_f);
  row.new_upper_from_g = fmt(p.sample.upper_branches.from_g);
  return row;
}

// Sandwich check with the same noise discipline as the verifier: a hardware
// margin inside the rounding gate is retried at extended precision before it
// may count as a violation.
template <class Real>
bool point_violates(const GridSpec* grid, const std::string* single_r, std::size_t i,
                    const PointValues<Real>& p) {
  const auto margins = sandwich_margins(p.sample);
  const Real one = 1;
  const Real gate = 64 * RealOps<Real>::eps() * (p.sample.k > one ? p.sample.k : one);
  bool noisy = false;
  for (const auto& m : margins) noisy = noisy || !(m > gate);
  if (!noisy) return false;
  if constexpr (std::is_same_v<Real, double>) {
    ExtendedScope scope(PrecisionContext::default_extended_digits);
    const auto c = BoundConstants<BigFloat>::evaluate();
    const BigFloat r =
        grid != nullptr ? grid->point<BigFloat>(i) : RealOps<BigFloat>::parse(*single_r);
    const auto sample = sample_bounds(Modulus<BigFloat>(r, ModulusRange::open), c);
    const BigFloat egate = 64 * RealOps<BigFloat>::eps() * sample.k;
    for (const auto& m : sandwich_margins(sample))
      if (!(m > egate)) return true;
    return false;
  }
  return true;
}

struct RunBuilder {
  std::vector<std::optional<bool>> wclc_tighter; // nullopt on exact ties
};

template <class Real>
CompareResult run_over(const GridSpec* grid, const std::string* single_r,
                       const std::vector<Real>& points, unsigned digits) {
  const auto c = BoundConstants<Real>::evaluate();
  CompareResult result;

  std::vector<PointValues<Real>> values;
  values.reserve(points.size());
  for (const Real& r : points)
    values.push_back({r, sample_bounds(Modulus<Real>(r, ModulusRange::open), c)});

  for (std::size_t i = 0; i < values.size(); ++i) {
    result.rows.push_back(make_row(values[i], digits));
    if (point_violates(grid, single_r, i, values[i])) {
      ++result.violations;
      if (result.first_violation.empty()) result.first_violation = result.rows.back().r;
    }
  }

  // Pairwise dominance sub-ranges.
  auto collect = [&](BoundFamily a, BoundFamily b, auto&& value_of, bool tighter_is_smaller) {
    PairDominance pair{a, b, {}, {}};
    std::optional<bool> current; // true = a tighter
    std::size_t run_start = 0;
    auto close_run = [&](std::size_t end_index) {
      if (!current) return;
      auto& dest = *current ? pair.a_tighter : pair.b_tighter;
      dest.push_back({result.rows[run_start].r, result.rows[end_index].r});
    };
    for (std::size_t i = 0; i < values.size(); ++i) {
      const Real va = value_of(values[i], a);
      const Real vb = value_of(values[i], b);
      std::optional<bool> winner;
      if (va != vb) winner = tighter_is_smaller ? (va < vb) : (va > vb);
      if (winner != current) {
        if (i > 0) close_run(i - 1);
        current = winner;
        run_start = i;
      }
    }
    if (!values.empty()) close_run(values.size() - 1);
    result.summary.pairs.push_back(std::move(pair));
  };
  auto upper_value = [](const PointValues<Real>& p, BoundFamily f) { return p.upper_of(f); };
  auto lower_value = [](const PointValues<Real>& p, BoundFamily f) { return p.lower_of(f); };
  for (std::size_t i = 0; i < std::size(upper_families); ++i)
    for (std::size_t j = i + 1; j < std::size(upper_families); ++j)
      collect(upper_families[i], upper_families[j], upper_value, true);
  collect(lower_families[0], lower_families[1], lower_value, false);

  // Non-dominance witnesses for the two quartic-correction uppers.
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Real wclc = values[i].sample.wclc_upper;
    const Real mine = values[i].sample.new_upper;
    if (wclc < mine && result.summary.wclc_upper_tighter_at.empty())
      result.summary.wclc_upper_tighter_at = result.rows[i].r;
    if (mine < wclc && result.summary.new_upper_tighter_at.empty())
      result.summary.new_upper_tighter_at = result.rows[i].r;
  }
  return result;
}

} // namespace

CompareResult run_compare(const GridSpec& grid, const PrecisionContext& ctx) {
  CompareResult result = with_real(ctx, [&](auto tag) {
    using Real = typename decltype(tag)::type;
    std::vector<Real> points;
    points.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) points.push_back(grid.point<Real>(i));
    return run_over<Real>(&grid, nullptr, points, ctx.digits());
  });
  result.grid = grid.text();
  return result;
}

CompareResult run_compare_single(const std::string& r, const PrecisionContext& ctx) {
  CompareResult result = with_real(ctx, [&](auto tag) {
    using Real = typename decltype(tag)::type;
    std::vector<Real> points{RealOps<Real>::parse(r)};
    return run_over<Real>(nullptr, &r, points, ctx.digits());
  });
  result.grid = r;
  return result;
}

std::string compare_csv(const CompareResult& result) {
  std::string out =
      "r,k,new_lower,new_upper,ar_upper,avv_upper,wclc_lower,wclc_upper,"
      "tightest_lower,tightest_upper\n";
  for (const auto& row : result.rows) {
    out += row.r + ',' + row.k + ',' + row.new_lower + ',' + row.new_upper + ',' + row.ar_upper +
           ',' + row.avv_upper + ',' + row.wclc_lower + ',' + row.wclc_upper + ',' +
           row.tightest_lower + ',' + row.tightest_upper + '\n';
  }
  return out;
}

nlohmann::ordered_json compare_row_json(const ComparisonRow& row) {
  nlohmann::ordered_json j;
  j["r"] = row.r;
  j["k"] = row.k;
  j["new_lower"] = row.new_lower;
  j["new_upper"] = row.new_upper;
  j["ar_upper"] = row.ar_upper;
  j["avv_upper"] = row.avv_upper;
  j["wclc_lower"] = row.wclc_lower;
  j["wclc_upper"] = row.wclc_upper;
  j["tightest_lower"] = row.tightest_lower;
  j["tightest_upper"] = row.tightest_upper;
  j["new_lower_from_f"] = row.new_lower_from_f;
  j["new_lower_from_g"] = row.new_lower_from_g;
  j["new_upper_from_f"] = row.new_upper_from_f;
  j["new_upper_from_g"] = row.new_upper_from_g;
  return j;
}

nlohmann::ordered_json compare_summary_json(const CompareSummary& summary) {
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (const auto& pair : summary.pairs) {
    nlohmann::ordered_json p;
    p["a"] = to_string(pair.a);
    p["b"] = to_string(pair.b);
    p["a_tighter"] = pair.a_tighter;
    p["b_tighter"] = pair.b_tighter;
    pairs.push_back(std::move(p));
  }
  nlohmann::ordered_json j;
  j["pairs"] = std::move(pairs);
  j["wclc_upper_tighter_at"] =
      summary.wclc_upper_tighter_at.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(summary.wclc_upper_tighter_at);
  j["new_upper_tighter_at"] =
      summary.new_upper_tighter_at.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(summary.new_upper_tighter_at);
  return j;
}

nlohmann::ordered_json compare_json(const CompareResult& result) {
  nlohmann::ordered_json j;
  j["grid"] = result.grid;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) rows.push_back(compare_row_json(row));
  j["rows"] = std::move(rows);
  j["violations"] = result.violations;
  j["first_violation"] =
      result.first_violation.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(result.first_violation);
  j["summary"] = compare_summary_json(result.summary);
  return j;
}

} // namespace ellik
