#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "mrlab.h"

namespace {

// Flat "key=value" lines apply to the subcommand being run; [section]
// headers still work as usual.
class ScopedConfig : public CLI::ConfigTOML {
 public:
  explicit ScopedConfig(std::string scope) : scope_(std::move(scope)) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigTOML::from_config(input);
    for (auto& item : items)
      if (item.parents.empty() && !scope_.empty()) item.parents.push_back(scope_);
    return items;
  }

 private:
  std::string scope_;
};

struct CliError {
  int code;
  std::string message;
};

int exit_code(mrlab_status s) {
  switch (s) {
    case MRLAB_OK: return 0;
    case MRLAB_INVALID_INSTANCE: return 2;
    case MRLAB_INVALID_ARGUMENT:
    case MRLAB_IO: return 3;
    case MRLAB_UNSUPPORTED: return 4;
    case MRLAB_NUMERICAL: return 5;
    default: return 1;
  }
}

void check(mrlab_status s) {
  if (s != MRLAB_OK) throw CliError{exit_code(s), mrlab_last_error()};
}

// Owning wrappers for C API strings and handles.
struct StringDeleter {
  void operator()(char* s) const { mrlab_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct FamilyDeleter {
  void operator()(mrlab_family* f) const { mrlab_family_free(f); }
};
struct InstanceDeleter {
  void operator()(mrlab_instance* i) const { mrlab_instance_free(i); }
};
struct EstimateDeleter {
  void operator()(mrlab_estimate* e) const { mrlab_estimate_free(e); }
};
using FamilyPtr = std::unique_ptr<mrlab_family, FamilyDeleter>;
using InstancePtr = std::unique_ptr<mrlab_instance, InstanceDeleter>;
using EstimatePtr = std::unique_ptr<mrlab_estimate, EstimateDeleter>;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{3, "cannot write '" + path + "'"};
  out << text;
  if (!out.flush()) throw CliError{3, "write to '" + path + "' failed"};
}

std::string format_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct FamilyArgs {
  std::string kind;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::string mode = "integer-grid";
  std::int64_t cap = 64;

  void add_to(CLI::App* app, bool require_kind) {
    auto* k = app->add_option("--kind,--family", kind,
                              "intervals, rec, htri, tri, or a full descriptor such as 'kind=rec m=3 n=2'");
    if (require_kind) k->required();
    app->add_option("--n", n, "size parameter (m for intervals)")->check(CLI::NonNegativeNumber);
    app->add_option("--m", m, "width for rec/htri (default: n)")->check(CLI::NonNegativeNumber);
    app->add_option("--mode", mode, "tri enumeration: integer-grid or line-cut")
        ->check(CLI::IsMember({"integer-grid", "grid", "line-cut"}));
    app->add_option("--cap", cap, "largest n accepted in line-cut mode")->check(CLI::PositiveNumber);
  }

  std::string descriptor() const {
    if (kind.find('=') != std::string::npos) return kind;
    std::ostringstream os;
    os << "kind=" << kind;
    if (kind == "intervals") {
      os << " m=" << n;
    } else if (kind == "tri") {
      os << " n=" << n << " mode=" << mode;
    } else {
      os << " m=" << (m > 0 ? m : n) << " n=" << n;
    }
    return os.str();
  }

  FamilyPtr create() const {
    mrlab_family* f = nullptr;
    check(mrlab_family_create(descriptor().c_str(), cap, &f));
    return FamilyPtr(f);
  }
};

struct EstimatorArgs {
  mrlab_estimate_options options{};
  int workers = 1;
  bool quiet = false;

  EstimatorArgs() {
    mrlab_estimate_options_default(&options);
    const unsigned hw = std::thread::hardware_concurrency();
    workers = hw == 0 ? 1 : static_cast<int>(hw);
  }

  void add_to(CLI::App* app) {
    app->add_option("--points", options.measure_points, "measure points M (0: twice the ground set)")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--restarts", options.restarts, "independent restarts")->check(CLI::PositiveNumber);
    app->add_option("--iters", options.iterations, "alternation cap per restart")->check(CLI::PositiveNumber);
    app->add_option("--inner-steps", options.inner_steps, "system ascent steps per alternation")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--tol", options.relative_tolerance, "relative improvement threshold")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--seed", options.seed, "base seed")->required();
    app->add_option("--workers", workers, "worker threads (default: logical cores)")->check(CLI::PositiveNumber);
    app->add_flag("--quiet", quiet, "no progress log on stderr");
  }

  mrlab_estimate_options resolved() {
    mrlab_estimate_options o = options;
    o.workers = workers;
    if (!quiet) {
      o.progress = [](const char* message, void*) {
        static std::mutex mu;
        std::lock_guard<std::mutex> lock(mu);
        std::cerr << message << '\n';
      };
    }
    return o;
  }
};

struct ConstantArgs {
  mrlab_constants constants{};
  std::string beta = "log-plus-one";

  ConstantArgs() { mrlab_constants_default(&constants); }

  void add_to(CLI::App* app) {
    app->add_option("--alpha", constants.alpha_hat, "classical constant alpha_hat");
    app->add_option("--beta", beta, "base bound beta(m): log-plus-one or log")
        ->check(CLI::IsMember({"log-plus-one", "log"}));
    app->add_option("--rec-factor", constants.rec_factor, "rho(m) = factor * beta(m)");
    app->add_option("--c1", constants.c[0]);
    app->add_option("--c2", constants.c[1]);
    app->add_option("--c3", constants.c[2]);
    app->add_option("--c4", constants.c[3]);
    app->add_option("--c5", constants.c[4], "forcing constant of the triangle recursion");
    app->add_option("--base", constants.tri_base, "B(1)");
  }

  const mrlab_constants* resolved() {
    constants.base_log_plus_one = beta == "log-plus-one";
    return &constants;
  }
};

std::string subcommand_in(int argc, char** argv, const std::vector<std::string>& names) {
  for (int k = 1; k < argc; ++k)
    for (const auto& n : names)
      if (n == argv[k]) return n;
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> commands = {"families", "decompose", "eval", "estimate",
                                             "scaling", "certify", "master", "gamma"};
  CLI::App app{"Numerical laboratory for maximal operators of orthonormal partial sums."};
  app.set_config("--config", "", "key=value file; flags given on the command line take precedence");
  app.config_formatter(std::make_shared<ScopedConfig>(subcommand_in(argc, argv, commands)));
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  std::string output;

  // families
  auto* families = app.add_subcommand("families", "enumerate a family, one row per member");
  FamilyArgs fam_args;
  fam_args.add_to(families, true);
  std::string fam_format = "members";
  families->add_option("--format", fam_format, "members or points")->check(CLI::IsMember({"members", "points"}));
  families->add_option("-o,--output", output, "output CSV (default stdout)");

  // decompose
  auto* decompose = app.add_subcommand("decompose", "split a triangle into recursion pieces");
  std::string shape;
  std::string da = "0", db = "0", dc = "0";
  std::int64_t dn = 0, dm = 0;
  decompose->add_option("--shape", shape, "tri (split of Tri(0,n,n)), htri (Tri(a,b,c)), member (Tri(0,a,b) in TRI_n)")
      ->required()
      ->check(CLI::IsMember({"tri", "htri", "member"}));
  decompose->add_option("--a", da, "rational");
  decompose->add_option("--b", db, "rational");
  decompose->add_option("--c", dc, "rational (htri height)");
  decompose->add_option("--n", dn)->check(CLI::NonNegativeNumber);
  decompose->add_option("--m", dm, "bound on a, b for htri")->check(CLI::NonNegativeNumber);
  decompose->add_option("-o,--output", output, "output CSV (default stdout)");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate the operator on an instance file");
  std::string instance_path, reduce_path;
  bool naive = false, pointwise = false;
  eval->add_option("--instance", instance_path)->required();
  eval->add_flag("--naive", naive, "recompute each partial sum from scratch");
  eval->add_flag("--pointwise", pointwise, "also list the maximal function per measure point");
  eval->add_option("--reduce", reduce_path, "write the reduced interval instance (rectangle families)");
  eval->add_option("-o,--output", output, "output CSV (default stdout)");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "lower bounds for mr(S) by alternating maximization");
  FamilyArgs est_family;
  est_family.add_to(estimate, true);
  EstimatorArgs est_args;
  est_args.add_to(estimate);
  std::string warm_path, save_best;
  estimate->add_option("--warm-start", warm_path, "instance file used as an extra starting point");
  estimate->add_option("--save-best", save_best, "write the best candidate as an instance file");
  estimate->add_option("-o,--output", output, "output CSV (default stdout)");

  // scaling
  auto* scaling = app.add_subcommand("scaling", "estimates over a list of sizes");
  FamilyArgs sc_family;
  sc_family.add_to(scaling, true);
  EstimatorArgs sc_args;
  sc_args.add_to(scaling);
  std::vector<std::int64_t> ns;
  std::string svg_path;
  scaling->add_option("--ns", ns, "sizes, e.g. 2,4,8")->required()->delimiter(',')->check(CLI::PositiveNumber);
  scaling->add_option("--svg", svg_path, "also write a log-log chart");
  scaling->add_option("-o,--output", output, "output CSV (default stdout)");

  // certify
  auto* certify = app.add_subcommand("certify", "evaluate the upper-bound recursion B(2^k)");
  ConstantArgs cert_args;
  cert_args.add_to(certify);
  std::uint64_t cert_n = 0;
  int cert_k = -1;
  std::int64_t htri_m = 0;
  std::string htri_path;
  auto* cn = certify->add_option("--n", cert_n, "table up to the smallest 2^K >= n")->check(CLI::PositiveNumber);
  certify->add_option("--k", cert_k, "table up to 2^K")->check(CLI::Range(0, 60))->excludes(cn);
  certify->add_option("--htri-m", htri_m, "also tabulate the unrolled HTRI bound for this m")
      ->check(CLI::PositiveNumber);
  certify->add_option("--htri-output", htri_path, "HTRI table destination (default: after the main table)");
  certify->add_option("-o,--output", output, "output CSV (default stdout)");

  // master
  auto* master = app.add_subcommand("master", "solve T(n) <= a T(n/b) + O(n^c ln^p n)");
  double ma = 0, mb = 0, mc = 0;
  int mp = 0;
  master->add_option("--a", ma)->required();
  master->add_option("--b", mb)->required();
  master->add_option("--c", mc)->required();
  master->add_option("--log-power", mp)->check(CLI::NonNegativeNumber);

  // gamma
  auto* gamma = app.add_subcommand("gamma", "largest eigenvalue of the mass-split quadratic form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    if (*families) {
      auto f = fam_args.create();
      char* csv = nullptr;
      check(mrlab_family_csv(f.get(), fam_format == "points", &csv));
      emit(CString(csv).get(), output);
    } else if (*decompose) {
      char* csv = nullptr;
      if (shape == "tri") {
        check(mrlab_split_tri_csv(dn, &csv));
      } else if (shape == "htri") {
        check(mrlab_split_htri_csv(da.c_str(), db.c_str(), dc.c_str(), dm, &csv));
      } else {
        check(mrlab_classify_tri_member_csv(da.c_str(), db.c_str(), dn, &csv));
      }
      emit(CString(csv).get(), output);
    } else if (*eval) {
      mrlab_instance* raw = nullptr;
      check(mrlab_instance_load(instance_path.c_str(), &raw));
      InstancePtr in(raw);
      double value = 0, residual = 0;
      check(mrlab_instance_value(in.get(), naive, &value));
      check(mrlab_instance_gram_residual(in.get(), &residual));
      std::ostringstream os;
      os << "# mrlab eval v1\npoints,functions,family_size,value,gram_residual\n"
         << mrlab_instance_points(in.get()) << ',' << mrlab_instance_functions(in.get()) << ','
         << mrlab_instance_family_size(in.get()) << ',' << format_g(value) << ',' << format_g(residual) << '\n';
      if (pointwise) {
        std::vector<double> g(mrlab_instance_points(in.get()));
        check(mrlab_instance_maximal_function(in.get(), naive, g.data(), g.size()));
        os << "# maximal function\nx,max\n";
        for (std::size_t x = 0; x < g.size(); ++x) os << x + 1 << ',' << format_g(g[x]) << '\n';
      }
      if (!reduce_path.empty()) {
        mrlab_instance* reduced = nullptr;
        check(mrlab_instance_reduce_rectangles(in.get(), &reduced));
        InstancePtr r(reduced);
        check(mrlab_instance_save(r.get(), reduce_path.c_str()));
      }
      emit(os.str(), output);
    } else if (*estimate) {
      auto f = est_family.create();
      InstancePtr warm;
      if (!warm_path.empty()) {
        mrlab_instance* raw = nullptr;
        check(mrlab_instance_load(warm_path.c_str(), &raw));
        warm.reset(raw);
      }
      const auto options = est_args.resolved();
      mrlab_estimate* raw = nullptr;
      check(mrlab_estimate_run(f.get(), &options, warm.get(), &raw));
      EstimatePtr est(raw);
      char* csv = nullptr;
      check(mrlab_estimate_csv(est.get(), &csv));
      emit(CString(csv).get(), output);
      if (!save_best.empty()) {
        mrlab_instance* best = nullptr;
        check(mrlab_estimate_best_instance(est.get(), &best));
        InstancePtr b(best);
        check(mrlab_instance_save(b.get(), save_best.c_str()));
      }
    } else if (*scaling) {
      const auto options = sc_args.resolved();
      const std::string kind = sc_family.kind.find('=') == std::string::npos ? sc_family.kind : std::string();
      if (kind.empty()) throw CliError{3, "scaling takes a family kind, not a descriptor"};
      char* csv = nullptr;
      char* svg = nullptr;
      check(mrlab_scaling_run(kind.c_str(), sc_family.mode.c_str(), ns.data(), ns.size(), &options, &csv,
                              svg_path.empty() ? nullptr : &svg));
      CString csv_owned(csv), svg_owned(svg);
      emit(csv_owned.get(), output);
      if (svg_owned) emit(svg_owned.get(), svg_path);
    } else if (*certify) {
      int k = cert_k;
      if (k < 0) {
        if (cert_n == 0) throw CliError{3, "certify needs --n or --k"};
        k = mrlab_ceil_log2(cert_n);
        if (k > 60) throw CliError{3, "n too large (2^60 at most)"};
      }
      const auto* constants = cert_args.resolved();
      char* csv = nullptr;
      check(mrlab_certify_csv(k, constants, &csv));
      std::string text = CString(csv).get();
      if (htri_m > 0) {
        char* htri = nullptr;
        check(mrlab_htri_csv(k, htri_m, constants, &htri));
        CString owned(htri);
        if (htri_path.empty())
          text += owned.get();
        else
          emit(owned.get(), htri_path);
      }
      emit(text, output);
    } else if (*master) {
      int case_id = 0, lp = 0;
      double exponent = 0;
      check(mrlab_master(ma, mb, mc, mp, &case_id, &exponent, &lp));
      std::ostringstream os;
      os << "# mrlab master v1\ncase,exponent,log_power\n" << case_id << ',' << format_g(exponent) << ',' << lp
         << '\n';
      emit(os.str(), output);
    } else if (*gamma) {
      mrlab_gamma_report g{};
      check(mrlab_gamma(&g));
      char line[256];
      std::ostringstream os;
      std::snprintf(line, sizeof line, "gamma=%.15f\n", g.value);
      os << "# mrlab gamma v1\n" << line;
      std::snprintf(line, sizeof line, "eigenvector=%.15f,%.15f,%.15f,%.15f\n", g.eigenvector[0],
                    g.eigenvector[1], g.eigenvector[2], g.eigenvector[3]);
      os << line << "iterations=" << g.iterations << '\n'
         << "closed_form_residual=" << format_g(g.closed_form_residual) << '\n'
         << "charpoly_residual=" << format_g(g.charpoly_residual) << '\n'
         << "eigen_residual=" << format_g(g.eigen_residual) << '\n'
         << "dense_solver_value=" << format_g(g.solver_value) << '\n';
      emit(os.str(), output);
    }
  } catch (const CliError& e) {
    std::cerr << "mrlab: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "mrlab: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
