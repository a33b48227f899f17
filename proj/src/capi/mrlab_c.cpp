#include "mrlab.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "mrlab/certificates.hpp"
#include "mrlab/decomposition.hpp"
#include "mrlab/error.hpp"
#include "mrlab/estimator.hpp"
#include "mrlab/instance_io.hpp"
#include "mrlab/oracle.hpp"
#include "mrlab/report.hpp"

struct mrlab_family {
  mrlab::Family family;
};

struct mrlab_instance {
  mrlab::Instance instance;
};

struct mrlab_estimate {
  mrlab::Family family;
  mrlab::EstimateResult result;
};

namespace {

thread_local std::string g_last_error;

mrlab_status status_of(mrlab::ErrorCode code) {
  switch (code) {
    case mrlab::ErrorCode::kInvalidInstance: return MRLAB_INVALID_INSTANCE;
    case mrlab::ErrorCode::kInvalidArgument: return MRLAB_INVALID_ARGUMENT;
    case mrlab::ErrorCode::kUnsupported: return MRLAB_UNSUPPORTED;
    case mrlab::ErrorCode::kNumerical: return MRLAB_NUMERICAL;
    case mrlab::ErrorCode::kIo: return MRLAB_IO;
  }
  return MRLAB_INTERNAL;
}

// Runs f, translating exceptions into a status and the thread's last error.
template <class F>
mrlab_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return MRLAB_OK;
  } catch (const mrlab::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return MRLAB_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (p == nullptr) mrlab::fail(mrlab::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

mrlab::EstimatorOptions to_options(const mrlab_estimate_options* o) {
  mrlab_estimate_options d;
  mrlab_estimate_options_default(&d);
  if (o == nullptr) o = &d;
  mrlab::require(o->restarts >= 1, "restarts must be at least 1");
  mrlab::require(o->iterations >= 1, "iterations must be at least 1");
  mrlab::require(o->inner_steps >= 0, "inner steps must be nonnegative");
  mrlab::require(o->measure_points >= 0, "measure points must be nonnegative");
  mrlab::require(o->relative_tolerance >= 0, "tolerance must be nonnegative");
  mrlab::EstimatorOptions out;
  out.measure_points = static_cast<Eigen::Index>(o->measure_points);
  out.restarts = o->restarts;
  out.iterations = o->iterations;
  out.inner_steps = o->inner_steps;
  out.relative_tolerance = o->relative_tolerance;
  out.seed = o->seed;
  out.workers = o->workers < 1 ? 1 : o->workers;
  if (o->progress != nullptr) {
    auto* sink = o->progress;
    void* user = o->progress_user;
    out.progress = [sink, user](const std::string& message) { sink(message.c_str(), user); };
  }
  return out;
}

mrlab::BoundCertificate to_certificate(const mrlab_constants* c) {
  mrlab::BoundCertificate cert;
  if (c != nullptr) {
    cert.alpha_hat = c->alpha_hat;
    cert.base_kind = c->base_log_plus_one ? mrlab::BaseBoundKind::kLogPlusOne : mrlab::BaseBoundKind::kLog;
    cert.rec_factor = c->rec_factor;
    for (int i = 0; i < 5; ++i) cert.c[static_cast<std::size_t>(i)] = c->c[i];
    cert.tri_base = c->tri_base;
  }
  cert.validate();
  return cert;
}

mrlab::MassSplit to_split(const double p[4]) { return {p[0], p[1], p[2], p[3]}; }

}  // namespace

extern "C" {

const char* mrlab_last_error(void) { return g_last_error.c_str(); }
void mrlab_string_free(char* s) { delete[] s; }
const char* mrlab_version(void) { return "1.0.0"; }

mrlab_status mrlab_family_create(const char* descriptor, int64_t line_cut_cap, mrlab_family** out) {
  return guarded([&] {
    need(descriptor, "descriptor");
    need(out, "out");
    const auto desc = mrlab::FamilyDescriptor::parse(descriptor);
    const auto cap = line_cut_cap > 0 ? line_cut_cap : mrlab::kDefaultLineCutCap;
    *out = new mrlab_family{mrlab::enumerate_family(desc, cap)};
  });
}

void mrlab_family_free(mrlab_family* family) { delete family; }
size_t mrlab_family_size(const mrlab_family* family) { return family ? family->family.size() : 0; }
size_t mrlab_family_dimension(const mrlab_family* family) {
  return family ? family->family.dimension() : 0;
}

mrlab_status mrlab_family_csv(const mrlab_family* family, int per_point, char** out) {
  return guarded([&] {
    need(family, "family");
    need(out, "out");
    *out = dup_string(per_point ? mrlab::family_points_csv(family->family) : mrlab::families_csv(family->family));
  });
}

mrlab_status mrlab_split_htri_csv(const char* a, const char* b, const char* c, int64_t m, char** out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(c, "c");
    need(out, "out");
    const auto shape = mrlab::make_triangle(mrlab::parse_rational(a), mrlab::parse_rational(b), mrlab::parse_rational(c));
    *out = dup_string(mrlab::decomposition_csv(mrlab::split_htri(shape, m)));
  });
}

mrlab_status mrlab_split_tri_csv(int64_t n, char** out) {
  return guarded([&] {
    need(out, "out");
    *out = dup_string(mrlab::decomposition_csv(mrlab::split_tri(n)));
  });
}

mrlab_status mrlab_classify_tri_member_csv(const char* a, const char* b, int64_t n, char** out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    const auto d = mrlab::classify_tri_member(mrlab::parse_rational(a), mrlab::parse_rational(b), n);
    *out = dup_string(mrlab::decomposition_csv(d));
  });
}

mrlab_status mrlab_instance_load(const char* path, mrlab_instance** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new mrlab_instance{mrlab::load_instance(path)};
  });
}

mrlab_status mrlab_instance_parse(const char* text, mrlab_instance** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new mrlab_instance{mrlab::parse_instance(text)};
  });
}

mrlab_status mrlab_instance_save(const mrlab_instance* instance, const char* path) {
  return guarded([&] {
    need(instance, "instance");
    need(path, "path");
    mrlab::save_instance(instance->instance, path);
  });
}

mrlab_status mrlab_instance_format(const mrlab_instance* instance, char** out) {
  return guarded([&] {
    need(instance, "instance");
    need(out, "out");
    *out = dup_string(mrlab::format_instance(instance->instance));
  });
}

void mrlab_instance_free(mrlab_instance* instance) { delete instance; }

size_t mrlab_instance_points(const mrlab_instance* instance) {
  return instance ? static_cast<size_t>(instance->instance.system.points()) : 0;
}
size_t mrlab_instance_functions(const mrlab_instance* instance) {
  return instance ? static_cast<size_t>(instance->instance.system.functions()) : 0;
}
size_t mrlab_instance_family_size(const mrlab_instance* instance) {
  return instance ? instance->instance.family.size() : 0;
}

mrlab_status mrlab_instance_value(const mrlab_instance* instance, int naive, double* out) {
  return guarded([&] {
    need(instance, "instance");
    need(out, "out");
    const auto& in = instance->instance;
    *out = mrlab::operator_value(in.system, in.coeffs, in.family,
                                 naive ? mrlab::EvaluationPath::kNaive : mrlab::EvaluationPath::kIncremental);
  });
}

mrlab_status mrlab_instance_maximal_function(const mrlab_instance* instance, int naive, double* out, size_t len) {
  return guarded([&] {
    need(instance, "instance");
    need(out, "out");
    const auto& in = instance->instance;
    mrlab::require(len >= static_cast<size_t>(in.system.points()), "output buffer too small");
    const auto g = mrlab::maximal_function(in.system, in.coeffs, in.family,
                                           naive ? mrlab::EvaluationPath::kNaive : mrlab::EvaluationPath::kIncremental);
    for (Eigen::Index x = 0; x < g.size(); ++x) out[x] = g(x);
  });
}

mrlab_status mrlab_instance_gram_residual(const mrlab_instance* instance, double* out) {
  return guarded([&] {
    need(instance, "instance");
    need(out, "out");
    *out = mrlab::gram_residual(instance->instance.system);
  });
}

mrlab_status mrlab_instance_reduce_rectangles(const mrlab_instance* instance, mrlab_instance** out) {
  return guarded([&] {
    need(instance, "instance");
    need(out, "out");
    const auto& in = instance->instance;
    mrlab::require(in.family.descriptor.kind == mrlab::FamilyKind::kRectangles,
                   "reduction needs a rectangle family");
    auto reduced = mrlab::reduce_rectangles_to_intervals(in.system, in.coeffs, in.family.ground);
    *out = new mrlab_instance{{std::move(reduced.family), std::move(reduced.system), std::move(reduced.coeffs)}};
  });
}

void mrlab_estimate_options_default(mrlab_estimate_options* options) {
  if (options == nullptr) return;
  const mrlab::EstimatorOptions d;
  options->measure_points = d.measure_points;
  options->restarts = d.restarts;
  options->iterations = d.iterations;
  options->inner_steps = d.inner_steps;
  options->relative_tolerance = d.relative_tolerance;
  options->seed = d.seed;
  options->workers = d.workers;
  options->progress = nullptr;
  options->progress_user = nullptr;
}

mrlab_status mrlab_estimate_run(const mrlab_family* family, const mrlab_estimate_options* options,
                                const mrlab_instance* warm_start, mrlab_estimate** out) {
  return guarded([&] {
    need(family, "family");
    need(out, "out");
    const auto opts = to_options(options);
    mrlab::EstimateResult result;
    if (warm_start != nullptr) {
      const auto& in = warm_start->instance;
      const mrlab::Candidate start{in.family.ground, in.system, in.coeffs};
      result = mrlab::estimate_mr(family->family, opts, &start);
    } else {
      result = mrlab::estimate_mr(family->family, opts);
    }
    *out = new mrlab_estimate{family->family, std::move(result)};
  });
}

void mrlab_estimate_free(mrlab_estimate* estimate) { delete estimate; }

mrlab_status mrlab_estimate_csv(const mrlab_estimate* estimate, char** out) {
  return guarded([&] {
    need(estimate, "estimate");
    need(out, "out");
    *out = dup_string(mrlab::estimate_csv(estimate->family, estimate->result));
  });
}

double mrlab_estimate_best_value(const mrlab_estimate* estimate) {
  return estimate ? estimate->result.best_record().value : 0.0;
}
int mrlab_estimate_best_restart(const mrlab_estimate* estimate) {
  return estimate ? estimate->result.best_record().restart : -1;
}
size_t mrlab_estimate_record_count(const mrlab_estimate* estimate) {
  return estimate ? estimate->result.records.size() : 0;
}

mrlab_status mrlab_estimate_trace(const mrlab_estimate* estimate, size_t index, double* out, size_t len,
                                  size_t* count) {
  return guarded([&] {
    need(estimate, "estimate");
    mrlab::require(index < estimate->result.records.size(), "record index out of range");
    const auto& trace = estimate->result.records[index].trace;
    if (count != nullptr) *count = trace.size();
    for (size_t t = 0; t < trace.size() && t < len && out != nullptr; ++t) out[t] = trace[t];
  });
}

mrlab_status mrlab_estimate_record_value(const mrlab_estimate* estimate, size_t index, double* out) {
  return guarded([&] {
    need(estimate, "estimate");
    need(out, "out");
    mrlab::require(index < estimate->result.records.size(), "record index out of range");
    *out = estimate->result.records[index].value;
  });
}

mrlab_status mrlab_estimate_best_instance(const mrlab_estimate* estimate, mrlab_instance** out) {
  return guarded([&] {
    need(estimate, "estimate");
    need(out, "out");
    const auto& c = estimate->result.best_record().candidate;
    *out = new mrlab_instance{{estimate->family, c.system, c.coeffs}};
  });
}

mrlab_status mrlab_scaling_run(const char* kind, const char* mode, const int64_t* ns, size_t count,
                               const mrlab_estimate_options* options, char** csv_out, char** svg_out) {
  return guarded([&] {
    need(kind, "kind");
    need(ns, "ns");
    need(csv_out, "csv_out");
    const auto k = mrlab::parse_family_kind(kind);
    const auto md = mode ? mrlab::parse_enumeration_mode(mode) : mrlab::EnumerationMode::kIntegerGrid;
    const auto study = mrlab::run_scaling(k, md, std::vector<std::int64_t>(ns, ns + count), to_options(options));
    std::string csv = mrlab::scaling_csv(study);
    std::string svg = svg_out ? mrlab::scaling_svg(study) : std::string();
    *csv_out = dup_string(csv);
    if (svg_out) *svg_out = dup_string(svg);
  });
}

mrlab_status mrlab_oracle(const mrlab_family* family, int resolution, double tolerance, double* out) {
  return guarded([&] {
    need(family, "family");
    need(out, "out");
    *out = mrlab::brute_force_oracle(family->family, resolution, tolerance).value;
  });
}

void mrlab_constants_default(mrlab_constants* constants) {
  if (constants == nullptr) return;
  const mrlab::BoundCertificate d;
  constants->alpha_hat = d.alpha_hat;
  constants->base_log_plus_one = d.base_kind == mrlab::BaseBoundKind::kLogPlusOne;
  constants->rec_factor = d.rec_factor;
  for (int i = 0; i < 5; ++i) constants->c[i] = d.c[static_cast<std::size_t>(i)];
  constants->tri_base = d.tri_base;
}

mrlab_status mrlab_gamma(mrlab_gamma_report* out) {
  return guarded([&] {
    need(out, "out");
    const auto g = mrlab::gamma_eigenvalue();
    out->value = g.value;
    for (int i = 0; i < 4; ++i) out->eigenvector[i] = g.eigenvector[static_cast<std::size_t>(i)];
    out->iterations = g.iterations;
    out->closed_form_residual = g.closed_form_residual;
    out->charpoly_residual = g.charpoly_residual;
    out->eigen_residual = g.eigen_residual;
    out->solver_value = g.solver_value;
  });
}

double mrlab_quadratic_form(const double p[4]) { return p ? mrlab::quadratic_form(to_split(p)) : 0.0; }
double mrlab_tri_growth_exponent(void) { return mrlab::tri_growth_exponent(); }

mrlab_status mrlab_master(double a, double b, double c, int log_power, int* case_id, double* exponent,
                          int* log_power_out) {
  return guarded([&] {
    const auto s = mrlab::master_exponent({a, b, c, log_power});
    if (case_id) *case_id = s.case_id;
    if (exponent) *exponent = s.exponent;
    if (log_power_out) *log_power_out = s.log_power;
  });
}

mrlab_status mrlab_tri_step_bound(const double p[4], double a, double r, double h, double* out) {
  return guarded([&] {
    need(p, "p");
    need(out, "out");
    *out = mrlab::tri_step_bound(to_split(p), a, r, h);
  });
}

mrlab_status mrlab_unroll_htri(int k, int64_t m, const mrlab_constants* constants, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = mrlab::unroll_htri(k, m, to_certificate(constants));
  });
}

mrlab_status mrlab_tri_bound_table(int max_k, const mrlab_constants* constants, double* bounds,
                                   double* envelopes) {
  return guarded([&] {
    const auto table = mrlab::tri_bound_table(max_k, to_certificate(constants));
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
      if (bounds) bounds[k] = table.rows[k].bound;
      if (envelopes) envelopes[k] = table.rows[k].envelope;
    }
  });
}

mrlab_status mrlab_certify_csv(int max_k, const mrlab_constants* constants, char** out) {
  return guarded([&] {
    need(out, "out");
    const auto cert = to_certificate(constants);
    *out = dup_string(mrlab::certify_csv(mrlab::tri_bound_table(max_k, cert), cert));
  });
}

mrlab_status mrlab_htri_csv(int max_k, int64_t m, const mrlab_constants* constants, char** out) {
  return guarded([&] {
    need(out, "out");
    *out = dup_string(mrlab::htri_csv(max_k, m, to_certificate(constants)));
  });
}

int mrlab_ceil_log2(uint64_t n) { return mrlab::ceil_log2(n); }

}  // extern "C"
