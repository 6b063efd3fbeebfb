// Command-line front end. Talks to the core exclusively through the C API
// in ellik/ellik.h; output assembly and exit-code policy live here.
//
// Exit codes: 0 all good, 1 a verified claim failed or a bound was violated,
// 2 usage error, 3 numerical failure.

#include <ellik/ellik.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_claim_failure = 1;
constexpr int exit_usage = 2;
constexpr int exit_numerical = 3;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void bail(ellik_status status) {
  const std::string detail = ellik_last_error();
  std::string message = ellik_status_message(status);
  if (!detail.empty()) message += ": " + detail;
  const int code = status == ELLIK_EINVAL ? exit_usage : exit_numerical;
  throw CliError{code, message};
}

void check(ellik_status status) {
  if (status != ELLIK_OK) bail(status);
}

using ContextPtr = std::unique_ptr<ellik_context, decltype(&ellik_context_destroy)>;
using TablePtr = std::unique_ptr<ellik_table, decltype(&ellik_table_destroy)>;
using ReportsPtr = std::unique_ptr<ellik_reports, decltype(&ellik_reports_destroy)>;

ContextPtr make_context(unsigned digits) {
  ellik_context* raw = nullptr;
  if (digits == 0) check(ellik_context_create(ELLIK_MODE_HARDWARE, 0, &raw));
  else check(ellik_context_create(ELLIK_MODE_EXTENDED, digits, &raw));
  return ContextPtr(raw, &ellik_context_destroy);
}

// Scalar getters: buffers sized off the digit count, with one retry on
// ELLIK_EBUFFER for safety.
std::string get_value(const ellik_context* ctx,
                      const std::function<ellik_status(char*, size_t)>& fn) {
  std::vector<char> buf(ellik_context_digits(ctx) + 64);
  ellik_status status = fn(buf.data(), buf.size());
  if (status == ELLIK_EBUFFER) {
    buf.resize(buf.size() * 8);
    status = fn(buf.data(), buf.size());
  }
  check(status);
  return std::string(buf.data());
}

// Bulk getters use the size-query protocol.
std::string get_sized(const std::function<ellik_status(char*, size_t, size_t*)>& fn) {
  size_t needed = 0;
  check(fn(nullptr, 0, &needed));
  std::vector<char> buf(needed);
  check(fn(buf.data(), buf.size(), &needed));
  return std::string(buf.data());
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw CliError{exit_usage, "cannot open output file: " + out_path};
  out << payload;
}

const char* method_name(ellik_method m) {
  switch (m) {
    case ELLIK_METHOD_SERIES: return "series";
    case ELLIK_METHOD_AGM: return "agm";
    case ELLIK_METHOD_QUADRATURE: return "quadrature";
    default: return "auto";
  }
}

struct CommonOptions {
  unsigned digits = 0; // 0 = hardware
  std::string format = "table";
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOptions& opts, unsigned default_digits) {
  opts.digits = default_digits;
  cmd->add_option("--digits", opts.digits,
                  "significant decimal digits (>= 16 switches to extended precision; 0 = "
                  "hardware doubles)")
      ->capture_default_str();
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts.out_path, "write the payload to this file instead of stdout");
}

int cmd_eval(const std::string& r, const std::string& method_text, const CommonOptions& opts) {
  ellik_method method = ELLIK_METHOD_AUTO;
  if (method_text == "series") method = ELLIK_METHOD_SERIES;
  else if (method_text == "agm") method = ELLIK_METHOD_AGM;
  else if (method_text == "quadrature") method = ELLIK_METHOD_QUADRATURE;
  else if (method_text != "auto") throw CliError{exit_usage, "unknown method: " + method_text};

  auto ctx = make_context(opts.digits);
  std::vector<char> value(ellik_context_digits(ctx.get()) + 64);
  std::vector<char> err(64);
  ellik_method used = ELLIK_METHOD_AUTO;
  check(ellik_eval_k(ctx.get(), r.c_str(), method, value.data(), value.size(), err.data(),
                     err.size(), &used));

  std::string payload;
  if (opts.format == "json") {
    nlohmann::ordered_json j;
    j["r"] = r;
    j["method"] = method_name(used);
    j["value"] = value.data();
    j["abs_error_estimate"] = err.data();
    payload = j.dump(2) + "\n";
  } else if (opts.format == "csv") {
    payload = "r,method,value,abs_error_estimate\n";
    payload += r + "," + method_name(used) + "," + value.data() + "," + err.data() + "\n";
  } else {
    payload = "K(" + r + ") = " + value.data() + "\n";
    payload += std::string("method = ") + method_name(used) + "\n";
    payload += std::string("abs_error_estimate = ") + err.data() + "\n";
  }
  emit(payload, opts.out_path);
  return exit_ok;
}

int cmd_bounds(const std::string& r, const CommonOptions& opts) {
  auto ctx = make_context(opts.digits);
  ellik_table* raw = nullptr;
  check(ellik_compare_single(ctx.get(), r.c_str(), &raw));
  TablePtr table(raw, &ellik_table_destroy);

  const size_t violations = ellik_table_violations(table.get());
  std::string payload;
  if (opts.format == "csv") {
    payload = get_sized([&](char* buf, size_t cap, size_t* needed) {
      return ellik_table_csv(table.get(), buf, cap, needed);
    });
  } else if (opts.format == "json") {
    payload = get_sized([&](char* buf, size_t cap, size_t* needed) {
      return ellik_table_json(table.get(), buf, cap, needed);
    });
    payload += "\n";
  } else {
    auto cell = [&](ellik_column col) {
      return get_value(ctx.get(), [&](char* buf, size_t cap) {
        return ellik_table_cell(table.get(), 0, col, buf, cap);
      });
    };
    payload += "r               = " + cell(ELLIK_COL_R) + "\n";
    payload += "k               = " + cell(ELLIK_COL_K) + "\n";
    payload += "new_lower       = " + cell(ELLIK_COL_NEW_LOWER) + "\n";
    payload += "new_upper       = " + cell(ELLIK_COL_NEW_UPPER) + "\n";
    payload += "ar_upper        = " + cell(ELLIK_COL_AR_UPPER) + "\n";
    payload += "avv_upper       = " + cell(ELLIK_COL_AVV_UPPER) + "\n";
    payload += "wclc_lower      = " + cell(ELLIK_COL_WCLC_LOWER) + "\n";
    payload += "wclc_upper      = " + cell(ELLIK_COL_WCLC_UPPER) + "\n";
    payload += "tightest_lower  = " + cell(ELLIK_COL_TIGHTEST_LOWER) + "\n";
    payload += "tightest_upper  = " + cell(ELLIK_COL_TIGHTEST_UPPER) + "\n";
    payload += "new_lower_from_f = " + cell(ELLIK_COL_NEW_LOWER_FROM_F) + "\n";
    payload += "new_lower_from_g = " + cell(ELLIK_COL_NEW_LOWER_FROM_G) + "\n";
    payload += "new_upper_from_f = " + cell(ELLIK_COL_NEW_UPPER_FROM_F) + "\n";
    payload += "new_upper_from_g = " + cell(ELLIK_COL_NEW_UPPER_FROM_G) + "\n";
    payload += "violations      = " + std::to_string(violations) + "\n";
  }
  emit(payload, opts.out_path);
  return violations == 0 ? exit_ok : exit_claim_failure;
}

int cmd_compare(const std::string& grid, const CommonOptions& opts) {
  auto ctx = make_context(opts.digits);
  ellik_table* raw = nullptr;
  check(ellik_compare_run(ctx.get(), grid.c_str(), &raw));
  TablePtr table(raw, &ellik_table_destroy);

  const std::string summary = get_sized([&](char* buf, size_t cap, size_t* needed) {
    return ellik_table_summary_json(table.get(), buf, cap, needed);
  });

  std::string payload;
  if (opts.format == "json") {
    payload = get_sized([&](char* buf, size_t cap, size_t* needed) {
      return ellik_table_json(table.get(), buf, cap, needed);
    });
    payload += "\n";
  } else {
    // csv and table both carry the fixed-header row block; the summary goes
    // to stderr so the payload stays machine-readable.
    payload = get_sized([&](char* buf, size_t cap, size_t* needed) {
      return ellik_table_csv(table.get(), buf, cap, needed);
    });
    std::cerr << summary << "\n";
  }
  emit(payload, opts.out_path);
  return ellik_table_violations(table.get()) == 0 ? exit_ok : exit_claim_failure;
}

int cmd_verify(const std::string& target_text, unsigned long n_max, const std::string& grid,
               const CommonOptions& opts) {
  ellik_verify_target target;
  if (target_text == "constants") target = ELLIK_VERIFY_CONSTANTS;
  else if (target_text == "lemma") target = ELLIK_VERIFY_LEMMA;
  else if (target_text == "coefficients") target = ELLIK_VERIFY_COEFFICIENTS;
  else if (target_text == "sandwich") target = ELLIK_VERIFY_SANDWICH;
  else if (target_text == "shape") target = ELLIK_VERIFY_SHAPE;
  else if (target_text == "all") target = ELLIK_VERIFY_ALL;
  else throw CliError{exit_usage, "unknown verify target: " + target_text};

  auto ctx = make_context(opts.digits);
  ellik_reports* raw = nullptr;
  check(ellik_verify_run(ctx.get(), target, n_max, grid.empty() ? nullptr : grid.c_str(), &raw));
  ReportsPtr reports(raw, &ellik_reports_destroy);

  const size_t count = ellik_reports_count(reports.get());
  std::string payload;
  if (opts.format == "json") {
    nlohmann::ordered_json j;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (size_t i = 0; i < count; ++i) {
      const std::string one = get_sized([&](char* buf, size_t cap, size_t* needed) {
        return ellik_report_json(reports.get(), i, buf, cap, needed);
      });
      list.push_back(nlohmann::ordered_json::parse(one));
    }
    j["reports"] = std::move(list);
    j["all_passed"] = ellik_reports_all_passed(reports.get()) != 0;
    payload = j.dump(2) + "\n";
  } else if (opts.format == "csv") {
    payload = "claim_id,range,min_margin,passed,first_failure,digits_used\n";
    for (size_t i = 0; i < count; ++i) {
      const std::string one = get_sized([&](char* buf, size_t cap, size_t* needed) {
        return ellik_report_json(reports.get(), i, buf, cap, needed);
      });
      const auto j = nlohmann::ordered_json::parse(one);
      payload += j["claim_id"].get<std::string>() + ",\"" + j["range"].get<std::string>() +
                 "\"," + j["min_margin"].dump() + "," + (j["passed"].get<bool>() ? "true" : "false") +
                 ",\"" + (j["first_failure"].is_null() ? "" : j["first_failure"].get<std::string>()) +
                 "\"," + j["digits_used"].dump() + "\n";
    }
  } else {
    for (size_t i = 0; i < count; ++i) {
      int passed = 0;
      double margin = 0;
      unsigned digits = 0;
      check(ellik_report_passed(reports.get(), i, &passed));
      check(ellik_report_min_margin(reports.get(), i, &margin));
      check(ellik_report_digits_used(reports.get(), i, &digits));
      const std::string claim = get_value(ctx.get(), [&](char* buf, size_t cap) {
        return ellik_report_claim_id(reports.get(), i, buf, cap);
      });
      const std::string range = get_value(ctx.get(), [&](char* buf, size_t cap) {
        return ellik_report_range(reports.get(), i, buf, cap);
      });
      const std::string failure = get_value(ctx.get(), [&](char* buf, size_t cap) {
        return ellik_report_first_failure(reports.get(), i, buf, cap);
      });
      char line[512];
      std::snprintf(line, sizeof(line), "[%s] %-32s range=%s min_margin=%.6g digits=%u%s%s\n",
                    passed ? "PASS" : "FAIL", claim.c_str(), range.c_str(), margin, digits,
                    failure.empty() ? "" : " first_failure=", failure.c_str());
      payload += line;
    }
    payload += ellik_reports_all_passed(reports.get()) ? "all claims passed\n"
                                                       : "one or more claims FAILED\n";
  }
  emit(payload, opts.out_path);
  return ellik_reports_all_passed(reports.get()) ? exit_ok : exit_claim_failure;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"complete elliptic integral K(r): evaluation, sharp elementary bounds, and "
               "verification of the bound machinery"};
  app.require_subcommand(1);

  std::string eval_r, eval_method = "auto";
  CommonOptions eval_opts;
  CLI::App* eval = app.add_subcommand("eval", "evaluate K(r)");
  eval->add_option("--r", eval_r, "modulus in [0,1)")->required();
  eval->add_option("--method", eval_method, "series|agm|quadrature|auto")
      ->check(CLI::IsMember({"auto", "series", "agm", "quadrature"}))
      ->capture_default_str();
  add_common(eval, eval_opts, 0);

  std::string bounds_r;
  CommonOptions bounds_opts;
  CLI::App* bounds = app.add_subcommand("bounds", "all bound families at one modulus");
  bounds->add_option("--r", bounds_r, "modulus in (0,1)")->required();
  add_common(bounds, bounds_opts, 0);

  std::string compare_grid = "0.01:0.99:0.01";
  CommonOptions compare_opts;
  CLI::App* compare = app.add_subcommand("compare", "bound comparison table over a grid");
  compare->add_option("--grid", compare_grid, "start:stop:step over (0,1)")
      ->capture_default_str();
  add_common(compare, compare_opts, 0);

  std::string verify_target;
  std::string verify_grid;
  unsigned long verify_n_max = 10000;
  CommonOptions verify_opts;
  CLI::App* verify = app.add_subcommand("verify", "run verification claims");
  verify->add_option("target", verify_target, "constants|lemma|coefficients|sandwich|shape|all")
      ->required();
  verify->add_option("--max-n", verify_n_max, "sequence range for lemma/coefficient sweeps")
      ->capture_default_str();
  verify->add_option("--grid", verify_grid, "override the target's default grid");
  add_common(verify, verify_opts, 50);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (eval->parsed()) return cmd_eval(eval_r, eval_method, eval_opts);
    if (bounds->parsed()) return cmd_bounds(bounds_r, bounds_opts);
    if (compare->parsed()) return cmd_compare(compare_grid, compare_opts);
    if (verify->parsed()) return cmd_verify(verify_target, verify_n_max, verify_grid, verify_opts);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_numerical;
  }
  return exit_usage;
}
