#ifndef ELLIK_COMPARE_HPP
#define ELLIK_COMPARE_HPP

#include <json.hpp>

#include <array>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "grid.hpp"
#include "precision.hpp"

namespace ellik {

/// One grid point's bound values, serialized in the context's format, plus
/// the family tags of the tightest bound on each side.
struct ComparisonRow {
  std::string r;
  std::string k;
  std::string new_lower;
  std::string new_upper;
  std::string ar_upper;
  std::string avv_upper;
  std::string wclc_lower;
  std::string wclc_upper;
  std::string tightest_lower;
  std::string tightest_upper;
  // Branch diagnostics; not part of the CSV contract.
  std::string new_lower_from_f;
  std::string new_lower_from_g;
  std::string new_upper_from_f;
  std::string new_upper_from_g;
};

/// For one (a, b) family pair: the maximal grid sub-ranges on which each
/// member supplies the strictly tighter bound.
struct PairDominance {
  BoundFamily a;
  BoundFamily b;
  std::vector<std::array<std::string, 2>> a_tighter; // inclusive [from, to]
  std::vector<std::array<std::string, 2>> b_tighter;
};

struct CompareSummary {
  std::vector<PairDominance> pairs;
  // Remark-level evidence that neither quartic-correction bound dominates:
  // one grid point each way, found by search, both present on a healthy grid.
  std::string wclc_upper_tighter_at; // empty if never
  std::string new_upper_tighter_at;  // empty if never
};

struct CompareResult {
  std::string grid;
  std::vector<ComparisonRow> rows;
  std::size_t violations = 0;
  std::string first_violation; // empty if none
  CompareSummary summary;
};

/// Evaluates every bound family over the grid. Hardware contexts decide
/// would-be violations inside rounding noise at extended precision before
/// counting them.
CompareResult run_compare(const GridSpec& grid, const PrecisionContext& ctx);

/// Single-point variant used by the per-r bound inspection command.
CompareResult run_compare_single(const std::string& r, const PrecisionContext& ctx);

/// The fixed CSV surface: header
/// r,k,new_lower,new_upper,ar_upper,avv_upper,wclc_lower,wclc_upper,tightest_lower,tightest_upper
/// with LF line endings; bit-identical across runs for a fixed configuration.
std::string compare_csv(const CompareResult& result);

nlohmann::ordered_json compare_row_json(const ComparisonRow& row);
nlohmann::ordered_json compare_summary_json(const CompareSummary& summary);
nlohmann::ordered_json compare_json(const CompareResult& result);

} // namespace ellik

#endif
