#include "ellik/ellik.h"

#include <cstring>
#include <new>
#include <string>

#include "bounds.hpp"
#include "compare.hpp"
#include "eval.hpp"
#include "grid.hpp"
#include "modulus.hpp"
#include "power_series.hpp"
#include "precision.hpp"
#include "sequences.hpp"
#include "special.hpp"
#include "verify.hpp"

using namespace ellik;

struct ellik_context {
  PrecisionContext ctx;
};

struct ellik_table {
  CompareResult result;
};

struct ellik_reports {
  VerifySuite suite;
};

namespace {

thread_local std::string t_last_error;

ellik_status fail(ellik_status status, const char* message) {
  t_last_error = message;
  return status;
}

// Exceptions stop at the ABI boundary and turn into status codes.
template <class Fn>
ellik_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const DomainError& e) {
    return fail(ELLIK_EDOMAIN, e.what());
  } catch (const InvalidArgument& e) {
    return fail(ELLIK_EINVAL, e.what());
  } catch (const ConvergenceError& e) {
    return fail(ELLIK_ECONVERGENCE, e.what());
  } catch (const ToleranceError& e) {
    return fail(ELLIK_ETOLERANCE, e.what());
  } catch (const PrecisionLossError& e) {
    return fail(ELLIK_EPRECISION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ELLIK_EINTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ELLIK_EINTERNAL, e.what());
  } catch (...) {
    return fail(ELLIK_EINTERNAL, "unknown failure");
  }
}

ellik_status copy_out(const std::string& text, char* value, size_t value_cap,
                      size_t* needed = nullptr) {
  if (needed != nullptr) *needed = text.size() + 1;
  if (value == nullptr) {
    if (needed != nullptr) return ELLIK_OK;
    return fail(ELLIK_EINVAL, "output buffer is NULL");
  }
  if (value_cap < text.size() + 1) return fail(ELLIK_EBUFFER, "output buffer too small");
  std::memcpy(value, text.c_str(), text.size() + 1);
  return ELLIK_OK;
}

ellik_status require(bool ok, const char* message) {
  return ok ? ELLIK_OK : fail(ELLIK_EINVAL, message);
}

// Evaluates a per-context scalar and serializes it.
template <class Fn>
ellik_status scalar_out(const ellik_context* ctx, char* value, size_t value_cap, Fn&& fn) {
  if (ctx == nullptr) return fail(ELLIK_EINVAL, "context is NULL");
  return guarded([&] {
    const std::string text = with_real(ctx->ctx, [&](auto tag) {
      using Real = typename decltype(tag)::type;
      const Real v = fn(tag);
      return RealOps<Real>::format(v, ctx->ctx.digits());
    });
    return copy_out(text, value, value_cap);
  });
}

} // namespace

extern "C" {

const char* ellik_version(void) { return "1.0.0"; }

const char* ellik_status_message(ellik_status status) {
  switch (status) {
    case ELLIK_OK: return "ok";
    case ELLIK_EINVAL: return "invalid argument";
    case ELLIK_EDOMAIN: return "argument outside the operation's domain";
    case ELLIK_ECONVERGENCE: return "series did not converge within its term cap";
    case ELLIK_ETOLERANCE: return "quadrature budget exhausted before reaching the tolerance";
    case ELLIK_EPRECISION: return "catastrophic cancellation beyond the context's digits";
    case ELLIK_EBUFFER: return "output buffer too small";
    case ELLIK_EINTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ellik_last_error(void) { return t_last_error.c_str(); }

ellik_status ellik_context_create(ellik_mode mode, unsigned digits, ellik_context** out) {
  if (out == nullptr) return fail(ELLIK_EINVAL, "out pointer is NULL");
  *out = nullptr;
  return guarded([&] {
    PrecisionContext ctx = mode == ELLIK_MODE_HARDWARE
                               ? PrecisionContext::hardware()
                               : PrecisionContext::extended(
                                     digits == 0 ? PrecisionContext::default_extended_digits
                                                 : digits);
    *out = new ellik_context{ctx};
    return ELLIK_OK;
  });
}

void ellik_context_destroy(ellik_context* ctx) { delete ctx; }

ellik_mode ellik_context_mode(const ellik_context* ctx) {
  return ctx != nullptr && ctx->ctx.mode() == Mode::extended ? ELLIK_MODE_EXTENDED
                                                             : ELLIK_MODE_HARDWARE;
}

unsigned ellik_context_digits(const ellik_context* ctx) {
  return ctx == nullptr ? 0 : ctx->ctx.digits();
}

ellik_status ellik_eval_k(const ellik_context* ctx, const char* r, ellik_method method,
                          char* value, size_t value_cap, char* err_estimate,
                          size_t err_estimate_cap, ellik_method* method_used) {
  if (ctx == nullptr || r == nullptr) return fail(ELLIK_EINVAL, "NULL argument");
  return guarded([&] {
    KMethod m = KMethod::automatic;
    switch (method) {
      case ELLIK_METHOD_AUTO: m = KMethod::automatic; break;
      case ELLIK_METHOD_SERIES: m = KMethod::series; break;
      case ELLIK_METHOD_AGM: m = KMethod::agm; break;
      case ELLIK_METHOD_QUADRATURE: m = KMethod::quadrature; break;
      default: return fail(ELLIK_EINVAL, "unknown method");
    }
    const EvalResult result = eval_k(r, m, ctx->ctx);
    ellik_status status = copy_out(result.value, value, value_cap);
    if (status != ELLIK_OK) return status;
    if (err_estimate != nullptr) {
      status = copy_out(result.abs_error_estimate, err_estimate, err_estimate_cap);
      if (status != ELLIK_OK) return status;
    }
    if (method_used != nullptr) {
      switch (result.method_used) {
        case KMethod::series: *method_used = ELLIK_METHOD_SERIES; break;
        case KMethod::agm: *method_used = ELLIK_METHOD_AGM; break;
        case KMethod::quadrature: *method_used = ELLIK_METHOD_QUADRATURE; break;
        case KMethod::automatic: *method_used = ELLIK_METHOD_AUTO; break;
      }
    }
    return ELLIK_OK;
  });
}

ellik_status ellik_constant_value(const ellik_context* ctx, ellik_constant which, char* value,
                                  size_t value_cap) {
  return scalar_out(ctx, value, value_cap, [&](auto tag) {
    using Real = typename decltype(tag)::type;
    const auto c = BoundConstants<Real>::evaluate();
    switch (which) {
      case ELLIK_CONST_THETA: return c.theta;
      case ELLIK_CONST_LAMBDA: return c.lambda;
      case ELLIK_CONST_ALPHA: return c.alpha;
      case ELLIK_CONST_BETA: return c.beta;
      case ELLIK_CONST_DELTA: return c.delta;
      case ELLIK_CONST_ZETA: return c.zeta;
      case ELLIK_CONST_ALPHA_STAR: return c.alpha_star;
      case ELLIK_CONST_BETA_STAR: return c.beta_star;
    }
    throw InvalidArgument("unknown constant");
  });
}

ellik_status ellik_bound_value(const ellik_context* ctx, ellik_bound which, const char* r,
                               char* value, size_t value_cap) {
  ellik_status pre = require(r != nullptr, "r is NULL");
  if (pre != ELLIK_OK) return pre;
  return scalar_out(ctx, value, value_cap, [&](auto tag) {
    using Real = typename decltype(tag)::type;
    const Modulus<Real> m(RealOps<Real>::parse(r), ModulusRange::open);
    const auto c = BoundConstants<Real>::evaluate();
    switch (which) {
      case ELLIK_BOUND_AR_UPPER: return upper_ar(m);
      case ELLIK_BOUND_AVV_UPPER: return upper_avv(m);
      case ELLIK_BOUND_WCLC_LOWER: return wclc_bounds(m, c).lower;
      case ELLIK_BOUND_WCLC_UPPER: return wclc_bounds(m, c).upper;
      case ELLIK_BOUND_NEW_LOWER: return new_lower(m, c);
      case ELLIK_BOUND_NEW_UPPER: return new_upper(m, c);
      case ELLIK_BOUND_NEW_LOWER_FROM_F: return new_lower_branches(m, c).from_f;
      case ELLIK_BOUND_NEW_LOWER_FROM_G: return new_lower_branches(m, c).from_g;
      case ELLIK_BOUND_NEW_UPPER_FROM_F: return new_upper_branches(m, c).from_f;
      case ELLIK_BOUND_NEW_UPPER_FROM_G: return new_upper_branches(m, c).from_g;
    }
    throw InvalidArgument("unknown bound family");
  });
}

ellik_status ellik_f1(const ellik_context* ctx, const char* r, char* value, size_t value_cap) {
  ellik_status pre = require(r != nullptr, "r is NULL");
  if (pre != ELLIK_OK) return pre;
  return scalar_out(ctx, value, value_cap, [&](auto tag) {
    using Real = typename decltype(tag)::type;
    const Modulus<Real> m(RealOps<Real>::parse(r), ModulusRange::open);
    return f1_direct(m, BoundConstants<Real>::evaluate());
  });
}

ellik_status ellik_g1(const ellik_context* ctx, const char* r, char* value, size_t value_cap) {
  ellik_status pre = require(r != nullptr, "r is NULL");
  if (pre != ELLIK_OK) return pre;
  return scalar_out(ctx, value, value_cap, [&](auto tag) {
    using Real = typename decltype(tag)::type;
    const Modulus<Real> m(RealOps<Real>::parse(r), ModulusRange::open);
    return g1_direct(m, BoundConstants<Real>::evaluate());
  });
}

ellik_status ellik_pochhammer(const ellik_context* ctx, const char* a, unsigned long n,
                              char* value, size_t value_cap) {
  ellik_status pre = require(a != nullptr, "a is NULL");
  if (pre != ELLIK_OK) return pre;
  return scalar_out(ctx, value, value_cap, [&](auto tag) {
    using Real = typename decltype(tag)::type;
    return pochhammer(RealOps<Real>::parse(a), n);
  });
}

ellik_status ellik_gamma_half_ratio(const ellik_context* ctx, unsigned long n, char* value,
                                    size_t value_cap) {
  return scalar_out(ctx, value, value_cap, [&](auto tag) {
    using Real = typename decltype(tag)::type;
    return gamma_half_ratio<Real>(n);
  });
}

ellik_status ellik_sequence_term(const ellik_context* ctx, unsigned long n, char* q, size_t q_cap,
                                 char* p, size_t p_cap, char* c, size_t c_cap) {
  if (ctx == nullptr) return fail(ELLIK_EINVAL, "context is NULL");
  return guarded([&] {
    std::string q_text, p_text, c_text;
    with_real(ctx->ctx, [&](auto tag) {
      using Real = typename decltype(tag)::type;
      q_text = RealOps<Real>::format(q_n<Real>(n), ctx->ctx.digits());
      p_text = RealOps<Real>::format(p_n<Real>(n), ctx->ctx.digits());
      if (n >= 3)
        c_text = RealOps<Real>::format(coefficient<Real>(n).c, ctx->ctx.digits());
      return 0;
    });
    ellik_status status = ELLIK_OK;
    if (q != nullptr && (status = copy_out(q_text, q, q_cap)) != ELLIK_OK) return status;
    if (p != nullptr && (status = copy_out(p_text, p, p_cap)) != ELLIK_OK) return status;
    if (c != nullptr && (status = copy_out(c_text, c, c_cap)) != ELLIK_OK) return status;
    return ELLIK_OK;
  });
}

ellik_status ellik_kershaw(const ellik_context* ctx, const char* x, const char* s, char* lower,
                           size_t lower_cap, char* upper, size_t upper_cap) {
  if (ctx == nullptr || x == nullptr || s == nullptr) return fail(ELLIK_EINVAL, "NULL argument");
  return guarded([&] {
    std::string lower_text, upper_text;
    with_real(ctx->ctx, [&](auto tag) {
      using Real = typename decltype(tag)::type;
      const auto pair = kershaw(RealOps<Real>::parse(x), RealOps<Real>::parse(s));
      lower_text = RealOps<Real>::format(pair.first, ctx->ctx.digits());
      upper_text = RealOps<Real>::format(pair.second, ctx->ctx.digits());
      return 0;
    });
    ellik_status status = copy_out(lower_text, lower, lower_cap);
    if (status != ELLIK_OK) return status;
    return copy_out(upper_text, upper, upper_cap);
  });
}

ellik_status ellik_series_csv(const ellik_context* ctx, const char* name, unsigned order,
                              char* value, size_t value_cap, size_t* needed) {
  if (ctx == nullptr || name == nullptr) return fail(ELLIK_EINVAL, "NULL argument");
  return guarded([&] {
    const std::string which = name;
    const std::string text = with_real(ctx->ctx, [&](auto tag) {
      using Real = typename decltype(tag)::type;
      if (which == "f") return series_table_csv(build_f_series<Real>(order), ctx->ctx.digits());
      if (which == "g") return series_table_csv(build_g_series<Real>(order), ctx->ctx.digits());
      throw InvalidArgument("series name must be \"f\" or \"g\"");
    });
    return copy_out(text, value, value_cap, needed);
  });
}

ellik_status ellik_compare_run(const ellik_context* ctx, const char* grid, ellik_table** out) {
  if (ctx == nullptr || grid == nullptr || out == nullptr)
    return fail(ELLIK_EINVAL, "NULL argument");
  *out = nullptr;
  return guarded([&] {
    *out = new ellik_table{run_compare(GridSpec::parse(grid), ctx->ctx)};
    return ELLIK_OK;
  });
}

ellik_status ellik_compare_single(const ellik_context* ctx, const char* r, ellik_table** out) {
  if (ctx == nullptr || r == nullptr || out == nullptr) return fail(ELLIK_EINVAL, "NULL argument");
  *out = nullptr;
  return guarded([&] {
    *out = new ellik_table{run_compare_single(r, ctx->ctx)};
    return ELLIK_OK;
  });
}

void ellik_table_destroy(ellik_table* table) { delete table; }

size_t ellik_table_rows(const ellik_table* table) {
  return table == nullptr ? 0 : table->result.rows.size();
}

size_t ellik_table_violations(const ellik_table* table) {
  return table == nullptr ? 0 : table->result.violations;
}

ellik_status ellik_table_cell(const ellik_table* table, size_t row, ellik_column column,
                              char* value, size_t value_cap) {
  if (table == nullptr) return fail(ELLIK_EINVAL, "table is NULL");
  if (row >= table->result.rows.size()) return fail(ELLIK_EINVAL, "row index out of range");
  const ComparisonRow& r = table->result.rows[row];
  const std::string* cell = nullptr;
  switch (column) {
    case ELLIK_COL_R: cell = &r.r; break;
    case ELLIK_COL_K: cell = &r.k; break;
    case ELLIK_COL_NEW_LOWER: cell = &r.new_lower; break;
    case ELLIK_COL_NEW_UPPER: cell = &r.new_upper; break;
    case ELLIK_COL_AR_UPPER: cell = &r.ar_upper; break;
    case ELLIK_COL_AVV_UPPER: cell = &r.avv_upper; break;
    case ELLIK_COL_WCLC_LOWER: cell = &r.wclc_lower; break;
    case ELLIK_COL_WCLC_UPPER: cell = &r.wclc_upper; break;
    case ELLIK_COL_TIGHTEST_LOWER: cell = &r.tightest_lower; break;
    case ELLIK_COL_TIGHTEST_UPPER: cell = &r.tightest_upper; break;
    case ELLIK_COL_NEW_LOWER_FROM_F: cell = &r.new_lower_from_f; break;
    case ELLIK_COL_NEW_LOWER_FROM_G: cell = &r.new_lower_from_g; break;
    case ELLIK_COL_NEW_UPPER_FROM_F: cell = &r.new_upper_from_f; break;
    case ELLIK_COL_NEW_UPPER_FROM_G: cell = &r.new_upper_from_g; break;
  }
  if (cell == nullptr) return fail(ELLIK_EINVAL, "unknown column");
  return copy_out(*cell, value, value_cap);
}

ellik_status ellik_table_csv(const ellik_table* table, char* value, size_t value_cap,
                             size_t* needed) {
  if (table == nullptr) return fail(ELLIK_EINVAL, "table is NULL");
  return guarded([&] { return copy_out(compare_csv(table->result), value, value_cap, needed); });
}

ellik_status ellik_table_json(const ellik_table* table, char* value, size_t value_cap,
                              size_t* needed) {
  if (table == nullptr) return fail(ELLIK_EINVAL, "table is NULL");
  return guarded(
      [&] { return copy_out(compare_json(table->result).dump(2), value, value_cap, needed); });
}

ellik_status ellik_table_summary_json(const ellik_table* table, char* value, size_t value_cap,
                                      size_t* needed) {
  if (table == nullptr) return fail(ELLIK_EINVAL, "table is NULL");
  return guarded([&] {
    return copy_out(compare_summary_json(table->result.summary).dump(2), value, value_cap,
                    needed);
  });
}

ellik_status ellik_verify_run(const ellik_context* ctx, ellik_verify_target target,
                              unsigned long n_max, const char* grid, ellik_reports** out) {
  if (ctx == nullptr || out == nullptr) return fail(ELLIK_EINVAL, "NULL argument");
  *out = nullptr;
  return guarded([&] {
    VerifyTarget t;
    switch (target) {
      case ELLIK_VERIFY_CONSTANTS: t = VerifyTarget::constants; break;
      case ELLIK_VERIFY_LEMMA: t = VerifyTarget::lemma; break;
      case ELLIK_VERIFY_COEFFICIENTS: t = VerifyTarget::coefficients; break;
      case ELLIK_VERIFY_SANDWICH: t = VerifyTarget::sandwich; break;
      case ELLIK_VERIFY_SHAPE: t = VerifyTarget::shape; break;
      case ELLIK_VERIFY_ALL: t = VerifyTarget::all; break;
      default: return fail(ELLIK_EINVAL, "unknown verify target");
    }
    VerifyOptions options;
    if (n_max != 0) options.n_max = n_max;
    if (grid != nullptr) options.grid = GridSpec::parse(grid);
    *out = new ellik_reports{run_verify(t, options, ctx->ctx)};
    return ELLIK_OK;
  });
}

void ellik_reports_destroy(ellik_reports* reports) { delete reports; }

size_t ellik_reports_count(const ellik_reports* reports) {
  return reports == nullptr ? 0 : reports->suite.reports.size();
}

int ellik_reports_all_passed(const ellik_reports* reports) {
  return reports != nullptr && reports->suite.all_passed ? 1 : 0;
}

namespace {

ellik_status report_at(const ellik_reports* reports, size_t index,
                       const VerificationReport** out) {
  if (reports == nullptr) return fail(ELLIK_EINVAL, "reports is NULL");
  if (index >= reports->suite.reports.size())
    return fail(ELLIK_EINVAL, "report index out of range");
  *out = &reports->suite.reports[index];
  return ELLIK_OK;
}

} // namespace

ellik_status ellik_report_passed(const ellik_reports* reports, size_t index, int* passed) {
  const VerificationReport* r = nullptr;
  ellik_status status = report_at(reports, index, &r);
  if (status != ELLIK_OK) return status;
  if (passed == nullptr) return fail(ELLIK_EINVAL, "passed is NULL");
  *passed = r->passed ? 1 : 0;
  return ELLIK_OK;
}

ellik_status ellik_report_min_margin(const ellik_reports* reports, size_t index, double* margin) {
  const VerificationReport* r = nullptr;
  ellik_status status = report_at(reports, index, &r);
  if (status != ELLIK_OK) return status;
  if (margin == nullptr) return fail(ELLIK_EINVAL, "margin is NULL");
  *margin = r->min_margin;
  return ELLIK_OK;
}

ellik_status ellik_report_digits_used(const ellik_reports* reports, size_t index,
                                      unsigned* digits) {
  const VerificationReport* r = nullptr;
  ellik_status status = report_at(reports, index, &r);
  if (status != ELLIK_OK) return status;
  if (digits == nullptr) return fail(ELLIK_EINVAL, "digits is NULL");
  *digits = r->digits_used;
  return ELLIK_OK;
}

ellik_status ellik_report_claim_id(const ellik_reports* reports, size_t index, char* value,
                                   size_t value_cap) {
  const VerificationReport* r = nullptr;
  ellik_status status = report_at(reports, index, &r);
  if (status != ELLIK_OK) return status;
  return copy_out(r->claim_id, value, value_cap);
}

ellik_status ellik_report_range(const ellik_reports* reports, size_t index, char* value,
                                size_t value_cap) {
  const VerificationReport* r = nullptr;
  ellik_status status = report_at(reports, index, &r);
  if (status != ELLIK_OK) return status;
  return copy_out(r->range, value, value_cap);
}

ellik_status ellik_report_first_failure(const ellik_reports* reports, size_t index, char* value,
                                        size_t value_cap) {
  const VerificationReport* r = nullptr;
  ellik_status status = report_at(reports, index, &r);
  if (status != ELLIK_OK) return status;
  return copy_out(r->first_failure.value_or(""), value, value_cap);
}

ellik_status ellik_report_json(const ellik_reports* reports, size_t index, char* value,
                               size_t value_cap, size_t* needed) {
  const VerificationReport* r = nullptr;
  ellik_status status = report_at(reports, index, &r);
  if (status != ELLIK_OK) return status;
  return guarded([&] { return copy_out(r->to_json().dump(), value, value_cap, needed); });
}

} // extern "C"
