// diagsum command-line surface.
//
// Subcommands:
//   constant  closed-form best constant C(m,n,p,s) and its regime
//   norm      norm estimate for a product / random / file-loaded form
//   verify    randomized inequality check; exit 3 on any violation
//   search    empirical best-ratio search over forms
//   fit       growth-exponent fit of the searched constants over an n-grid
//
// Exit codes: 0 success, 1 usage error, 2 out-of-regime parameters,
// 3 inequality violation found by `verify`.

#include <complex>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diagsum/diagsum.hpp"

namespace {

using namespace diagsum;

struct CommonOpts {
  std::string format = "table";
  std::string out;
  bool complex_mode = false;
  std::uint64_t seed = 12345;  // fixed default so bare invocations reproduce
};

std::vector<Exponent> parse_exponent_list(const std::string& text) {
  std::vector<Exponent> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) out.push_back(Exponent::parse(token));
  }
  if (out.empty()) throw ParseError("empty exponent list");
  return out;
}

std::vector<long long> parse_int_list(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) out.push_back(detail::parse_integer(token));
  }
  if (out.empty()) throw ParseError("empty integer list");
  return out;
}

void emit(const CommonOpts& common, const std::string& text) {
  if (common.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(common.out, std::ios::binary);
  if (!file) throw IoError("cannot write '" + common.out + "'");
  file << text;
}

std::string local_timestamp() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", std::localtime(&now));
  return buf;
}

// ---------------------------------------------------------------------------
// constant

struct ConstantArgs {
  int m = 2;
  long long n = 1;
  std::string p_list;
  std::string s_text;
  bool theorem1 = false;
};

int run_constant(const ConstantArgs& args, const CommonOpts& common) {
  const std::vector<Exponent> ps = parse_exponent_list(args.p_list);
  if (static_cast<int>(ps.size()) != args.m) {
    throw ParseError("--p needs exactly m exponents");
  }
  const Rational s = parse_rational(args.s_text);
  const ConstantQuery query(args.m, args.n, SpaceSpec(ps), s);

  Json j = query_to_json(query);
  std::ostringstream table;

  if (args.theorem1) {
    const Exponent& p = query.exponents.common_exponent();
    const RegimeTag tag = equal_exponent_regime(args.m, p, s);
    const double bound = pow_rational(args.n, tag.exponent_of_n);
    j["regime"] = to_string(tag.label);
    j["exponent"] = to_string(tag.exponent_of_n);
    j["exponent_float"] = to_double(tag.exponent_of_n);
    j["value"] = bound;
    table << "equal-exponent diagonal bound (m=" << args.m << ", n=" << args.n
          << ", p=" << p.str() << ", s=" << to_string(s) << ")\n"
          << "  regime    " << to_string(tag.label) << "\n"
          << "  exponent  " << to_string(tag.exponent_of_n) << "\n"
          << "  bound     n^(" << to_string(tag.exponent_of_n) << ") = " << format_double(bound)
          << "\n";
    if (p.is_finite() && p.compare(Rational(1)) > 0 && p.compare(Rational(2)) < 0) {
      const LowPComparison cmp = compare_low_p_bounds(args.m, p, s);
      j["sharp_regime"] = to_string(cmp.sharp.label);
      j["sharp_exponent"] = to_string(cmp.sharp.exponent_of_n);
      j["gap"] = to_string(cmp.gap);
      table << "  sharp regime    " << to_string(cmp.sharp.label) << "\n"
            << "  sharp exponent  " << to_string(cmp.sharp.exponent_of_n) << "\n"
            << "  exponent gap    " << to_string(cmp.gap)
            << "  (slack of the direct 1<p<2 route)\n";
    }
  } else {
    const RegimeTag tag = best_constant_regime(query);
    const double value = best_constant(query);
    j["exponent"] = to_string(tag.exponent_of_n);
    j["exponent_float"] = to_double(tag.exponent_of_n);
    j["value"] = value;
    table << "best constant C(m=" << args.m << ", n=" << args.n
          << ", p=" << query.exponents.str() << ", s=" << to_string(s) << ")\n"
          << "  regime    " << to_string(tag.label) << "\n"
          << "  exponent  " << to_string(tag.exponent_of_n) << "\n"
          << "  value     " << format_double(value) << "\n";
  }

  if (common.format == "json") {
    emit(common, j.dump() + "\n");
  } else if (common.format == "csv") {
    std::string header = "m,n,p_list,s,regime,exponent,value";
    std::string p_joined;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i > 0) p_joined += ";";
      p_joined += ps[i].str();
    }
    emit(common, header + "\n" + std::to_string(args.m) + "," + std::to_string(args.n) + "," +
                     p_joined + "," + to_string(s) + "," + j["regime"].get<std::string>() + "," +
                     j["exponent"].get<std::string>() + "," +
                     format_double(j["value"].get<double>()) + "\n");
  } else {
    emit(common, table.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// norm

struct NormArgs {
  std::string form = "product";
  std::string file;
  std::string dist = "gaussian";
  int m = 2;
  long long n = 2;
  std::string p_list;
  int starts = 32;
  double tol = 1e-10;
  int max_sweeps = 500;
};

template <ScalarType S>
int run_norm_typed(const NormArgs& args, const CommonOpts& common, MultilinearForm<S> form) {
  const std::vector<Exponent> ps = parse_exponent_list(args.p_list);
  if (static_cast<int>(ps.size()) != form.order()) {
    throw ParseError("--p needs exactly one exponent per argument slot");
  }
  const SpaceSpec spec{ps};
  const AscentOptions budget{args.starts, args.tol, args.max_sweeps, common.seed};
  const NormEstimate<S> est = best_available_norm(form, spec, budget);

  Json j;
  j["m"] = form.order();
  j["n"] = form.dim();
  Json p = Json::array();
  for (const Exponent& e : ps) p.push_back(e.str());
  j["p"] = std::move(p);
  j["scalar_mode"] = scalar_mode_name<S>();
  j["value"] = est.value;
  j["kind"] = to_string(est.kind);
  j["sweeps"] = est.sweeps;
  j["starts_used"] = est.starts_used;
  j["degenerate"] = est.degenerate;
  Json witnesses = Json::array();
  for (const auto& w : est.witnesses) {
    Json row = Json::array();
    for (const S& e : w) {
      if constexpr (std::is_same_v<S, double>) {
        row.push_back(e);
      } else {
        row.push_back(Json::array({e.real(), e.imag()}));
      }
    }
    witnesses.push_back(std::move(row));
  }
  j["witnesses"] = std::move(witnesses);

  if (common.format == "json") {
    emit(common, j.dump() + "\n");
  } else if (common.format == "csv") {
    std::string p_joined;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i > 0) p_joined += ";";
      p_joined += ps[i].str();
    }
    emit(common, "m,n,p_list,value,kind,sweeps,starts_used\n" + std::to_string(form.order()) +
                     "," + std::to_string(form.dim()) + "," + p_joined + "," +
                     format_double(est.value) + "," + to_string(est.kind) + "," +
                     std::to_string(est.sweeps) + "," + std::to_string(est.starts_used) + "\n");
  } else {
    std::ostringstream table;
    table << "norm estimate (m=" << form.order() << ", n=" << form.dim()
          << ", p=" << spec.str() << ", mode=" << scalar_mode_name<S>() << ")\n"
          << "  value   " << format_double(est.value) << "\n"
          << "  kind    " << to_string(est.kind) << "\n"
          << "  sweeps  " << est.sweeps << "\n"
          << "  starts  " << est.starts_used << "\n";
    if (form.dim() <= 16) {
      for (std::size_t i = 0; i < est.witnesses.size(); ++i) {
        table << "  witness[" << (i + 1) << "]  (";
        for (std::size_t k = 0; k < est.witnesses[i].size(); ++k) {
          if (k > 0) table << ", ";
          if constexpr (std::is_same_v<S, double>) {
            table << format_double(est.witnesses[i][k]);
          } else {
            table << format_double(est.witnesses[i][k].real()) << (est.witnesses[i][k].imag() < 0 ? "-" : "+")
                  << format_double(std::abs(est.witnesses[i][k].imag())) << "i";
          }
        }
        table << ")\n";
      }
    }
    emit(common, table.str());
  }
  return 0;
}

int run_norm(const NormArgs& args, const CommonOpts& common) {
  if (args.form == "file") {
    if (args.file.empty()) throw ParseError("--form file needs --file PATH");
    const Json j = load_json_file(args.file);
    if (scalar_mode_of(j) == "complex") {
      return run_norm_typed<std::complex<double>>(args, common,
                                                  form_from_json<std::complex<double>>(j));
    }
    return run_norm_typed<double>(args, common, form_from_json<double>(j));
  }
  const auto build = [&]<ScalarType S>() {
    if (args.form == "product") return MultilinearForm<S>::product(args.m, static_cast<int>(args.n));
    if (args.form == "random") {
      return MultilinearForm<S>::random(args.m, static_cast<int>(args.n), common.seed,
                                        Distribution::parse(args.dist));
    }
    throw ParseError("--form must be product, random, or file");
  };
  if (common.complex_mode) {
    return run_norm_typed<std::complex<double>>(args, common,
                                                build.operator()<std::complex<double>>());
  }
  return run_norm_typed<double>(args, common, build.operator()<double>());
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  int m = 2;
  long long n = 2;
  std::string p_list;
  std::string s_text;
  int trials = 100;
};

template <ScalarType S>
int run_verify_typed(const VerifyArgs& args, const CommonOpts& common) {
  const std::vector<Exponent> ps = parse_exponent_list(args.p_list);
  if (static_cast<int>(ps.size()) != args.m) throw ParseError("--p needs exactly m exponents");
  const ConstantQuery query(args.m, args.n, SpaceSpec(ps), parse_rational(args.s_text));
  const VerifyReport report = verify_inequality<S>(query, args.trials, common.seed);

  if (common.format == "json") {
    Json j = to_json(report);
    j["scalar_mode"] = scalar_mode_name<S>();
    emit(common, j.dump() + "\n");
  } else if (common.format == "csv") {
    std::string text = "trial,form_seed,measured_ratio,bound,tolerance,norm_kind,norm_value\n";
    for (const Violation& v : report.violations) {
      text += std::to_string(v.trial) + "," + std::to_string(v.form_seed) + "," +
              format_double(v.measured_ratio) + "," + format_double(v.bound) + "," +
              format_double(v.tolerance) + "," + to_string(v.norm_kind) + "," +
              format_double(v.norm_value) + "\n";
    }
    emit(common, text);
  } else {
    std::ostringstream table;
    table << "inequality check (m=" << args.m << ", n=" << args.n
          << ", p=" << query.exponents.str() << ", s=" << to_string(query.s)
          << ", mode=" << scalar_mode_name<S>() << ")\n"
          << "  trials                " << report.trials << "\n"
          << "  theoretical constant  " << format_double(report.theoretical_constant) << "\n"
          << "  max measured ratio    " << format_double(report.max_ratio) << "\n"
          << "  tolerances            " << format_double(report.tol_oracle) << " (oracle), "
          << format_double(report.tol_lower_bound) << " (lower-bound)\n"
          << "  violations            " << report.violations.size() << "\n";
    for (const Violation& v : report.violations) {
      table << "    trial " << v.trial << ": ratio " << format_double(v.measured_ratio)
            << " > " << format_double(v.bound) << " * (1 + " << format_double(v.tolerance)
            << ")  [form seed " << v.form_seed << ", " << to_string(v.norm_kind) << " norm "
            << format_double(v.norm_value) << "]\n";
    }
    emit(common, table.str());
  }

  if (!report.violations.empty()) {
    if (common.complex_mode) {
      std::cerr << "note: complex-mode discrepancies are informational, not failures\n";
      return 0;
    }
    return 3;
  }
  return 0;
}

int run_verify(const VerifyArgs& args, const CommonOpts& common) {
  return common.complex_mode ? run_verify_typed<std::complex<double>>(args, common)
                             : run_verify_typed<double>(args, common);
}

// ---------------------------------------------------------------------------
// search

struct SearchArgs {
  int m = 2;
  long long n = 2;
  std::string p_list;
  std::string s_text;
  int trials = 50;
  int steps = 50;
};

template <ScalarType S>
int run_search_typed(const SearchArgs& args, const CommonOpts& common) {
  const std::vector<Exponent> ps = parse_exponent_list(args.p_list);
  if (static_cast<int>(ps.size()) != args.m) throw ParseError("--p needs exactly m exponents");
  const ConstantQuery query(args.m, args.n, SpaceSpec(ps), parse_rational(args.s_text));
  SearchBudget budget;
  budget.random_trials = args.trials;
  budget.ascent_steps = args.steps;
  budget.seed = common.seed;
  SearchOutcome<S> outcome = search_best_constant<S>(query, budget);

  if (common.format == "json") {
    emit(common, to_json(outcome.record).dump() + "\n");
  } else if (common.format == "csv") {
    emit(common, record_csv_header() + "\n" + record_to_csv_row(outcome.record) + "\n");
  } else {
    ExperimentRecord rec = outcome.record;
    rec.timestamp = local_timestamp();
    std::ostringstream table;
    table << "best-ratio search (m=" << args.m << ", n=" << args.n
          << ", p=" << query.exponents.str() << ", s=" << to_string(query.s)
          << ", mode=" << scalar_mode_name<S>() << ")\n"
          << "  theoretical constant  " << format_double(rec.theoretical_constant) << "\n"
          << "  best measured ratio   " << format_double(rec.measured_ratio) << "\n"
          << "  form                  " << rec.form.str() << "\n"
          << "  norm                  " << format_double(rec.norm.value) << " ("
          << to_string(rec.norm.kind) << ")\n"
          << "  time                  " << rec.timestamp << "\n";
    emit(common, table.str());
  }
  return 0;
}

int run_search(const SearchArgs& args, const CommonOpts& common) {
  return common.complex_mode ? run_search_typed<std::complex<double>>(args, common)
                             : run_search_typed<double>(args, common);
}

// ---------------------------------------------------------------------------
// fit

struct FitArgs {
  int m = 2;
  std::string p_list;
  std::string s_text;
  std::string ngrid;
  int trials = 50;
  int steps = 50;
};

template <ScalarType S>
int run_fit_typed(const FitArgs& args, const CommonOpts& common) {
  const std::vector<Exponent> ps = parse_exponent_list(args.p_list);
  if (static_cast<int>(ps.size()) != args.m) throw ParseError("--p needs exactly m exponents");
  const Rational s = parse_rational(args.s_text);
  const std::vector<long long> grid =
      args.ngrid.empty() ? default_fit_grid(args.m) : parse_int_list(args.ngrid);
  SearchBudget budget;
  budget.random_trials = args.trials;
  budget.ascent_steps = args.steps;
  budget.seed = common.seed;
  const FitOutcome outcome = fit_growth_exponent<S>(args.m, ps, s, grid, budget);

  // plot-ready data: ln n against ln of the measured constant
  const std::string plot_path = common.out.empty() ? "fit_plot.dat" : common.out + ".plot";
  {
    std::ofstream plot(plot_path, std::ios::binary);
    if (!plot) throw IoError("cannot write '" + plot_path + "'");
    plot << "# ln_n ln_ratio\n";
    plot << "# slope=" << format_double(outcome.fit.slope)
         << " intercept=" << format_double(outcome.fit.intercept)
         << " residual=" << format_double(outcome.fit.residual) << "\n";
    for (const FitPoint& pt : outcome.fit.points) {
      plot << format_double(std::log(static_cast<double>(pt.n))) << " "
           << format_double(std::log(pt.value)) << "\n";
    }
  }

  if (common.format == "json") {
    std::string text;
    for (const ExperimentRecord& rec : outcome.records) text += to_json(rec).dump() + "\n";
    Json j = to_json(outcome.fit);
    j["plot_file"] = plot_path;
    text += j.dump() + "\n";
    emit(common, text);
  } else if (common.format == "csv") {
    std::string text = record_csv_header() + "\n";
    for (const ExperimentRecord& rec : outcome.records) text += record_to_csv_row(rec) + "\n";
    emit(common, text);
  } else {
    std::ostringstream table;
    table << "growth-exponent fit (m=" << args.m << ", p=(";
    for (std::size_t i = 0; i < ps.size(); ++i) table << (i ? "," : "") << ps[i].str();
    table << "), s=" << to_string(s) << ", mode=" << scalar_mode_name<S>() << ")\n";
    const auto pad = [](std::string text, std::size_t width) {
      if (text.size() < width) text.append(width - text.size(), ' ');
      return text;
    };
    table << "  " << pad("n", 6) << pad("ratio", 24) << "theoretical\n";
    for (const ExperimentRecord& rec : outcome.records) {
      table << "  " << pad(std::to_string(rec.query.n), 6)
            << pad(format_double(rec.measured_ratio), 24)
            << format_double(rec.theoretical_constant) << "\n";
    }
    table << "  slope      " << format_double(outcome.fit.slope) << "\n"
          << "  intercept  " << format_double(outcome.fit.intercept) << "\n"
          << "  residual   " << format_double(outcome.fit.residual) << "\n"
          << "  plot file  " << plot_path << "\n";
    emit(common, table.str());
  }
  return 0;
}

int run_fit(const FitArgs& args, const CommonOpts& common) {
  return common.complex_mode ? run_fit_typed<std::complex<double>>(args, common)
                             : run_fit_typed<double>(args, common);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diagonal sums of multilinear forms on lp spaces: exact constants, norm "
               "estimation, and verification experiments"};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--format", common.format, "output format")->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--out", common.out, "write output to a file instead of stdout");
  app.add_option("--seed", common.seed, "seed for all randomized pieces (default 12345)");
  app.add_flag("--complex", common.complex_mode, "complex scalar mode (informational)");

  ConstantArgs constant_args;
  CLI::App* constant = app.add_subcommand("constant", "closed-form best constant and regime");
  constant->fallthrough();
  constant->add_option("--m", constant_args.m, "number of argument slots")->required();
  constant->add_option("--n", constant_args.n, "dimension")->required();
  constant->add_option("--p", constant_args.p_list, "comma-separated exponents, e.g. 4,4 or inf,2")->required();
  constant->add_option("--s", constant_args.s_text, "diagonal sum exponent (rational)")->required();
  constant->add_flag("--theorem1", constant_args.theorem1,
                     "restrict to the equal-exponent bound family and report its exponent");

  NormArgs norm_args;
  CLI::App* norm = app.add_subcommand("norm", "norm estimate for a form");
  norm->fallthrough();
  norm->add_option("--form", norm_args.form, "product | random | file");
  norm->add_option("--file", norm_args.file, "tensor JSON path for --form file");
  norm->add_option("--dist", norm_args.dist, "distribution for --form random");
  norm->add_option("--m", norm_args.m, "number of argument slots");
  norm->add_option("--n", norm_args.n, "dimension");
  norm->add_option("--p", norm_args.p_list, "comma-separated exponents")->required();
  norm->add_option("--starts", norm_args.starts, "ascent starts");
  norm->add_option("--tol", norm_args.tol, "ascent relative improvement tolerance");
  norm->add_option("--max-sweeps", norm_args.max_sweeps, "ascent sweep cap");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "randomized inequality check (exit 3 on violation)");
  verify->fallthrough();
  verify->add_option("--m", verify_args.m, "number of argument slots")->required();
  verify->add_option("--n", verify_args.n, "dimension")->required();
  verify->add_option("--p", verify_args.p_list, "comma-separated exponents")->required();
  verify->add_option("--s", verify_args.s_text, "diagonal sum exponent (rational)")->required();
  verify->add_option("--trials", verify_args.trials, "number of random forms");

  SearchArgs search_args;
  CLI::App* search = app.add_subcommand("search", "empirical best-ratio search");
  search->fallthrough();
  search->add_option("--m", search_args.m, "number of argument slots")->required();
  search->add_option("--n", search_args.n, "dimension")->required();
  search->add_option("--p", search_args.p_list, "comma-separated exponents")->required();
  search->add_option("--s", search_args.s_text, "diagonal sum exponent (rational)")->required();
  search->add_option("--trials", search_args.trials, "random candidate forms");
  search->add_option("--steps", search_args.steps, "hill-climbing steps");

  FitArgs fit_args;
  CLI::App* fit = app.add_subcommand("fit", "growth-exponent fit over an n-grid");
  fit->fallthrough();
  fit->add_option("--m", fit_args.m, "number of argument slots")->required();
  fit->add_option("--p", fit_args.p_list, "comma-separated exponents")->required();
  fit->add_option("--s", fit_args.s_text, "diagonal sum exponent (rational)")->required();
  fit->add_option("--ngrid", fit_args.ngrid, "comma-separated n values (default 2,4,8,16,32)");
  fit->add_option("--trials", fit_args.trials, "random candidate forms per n");
  fit->add_option("--steps", fit_args.steps, "hill-climbing steps per n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*constant) return run_constant(constant_args, common);
    if (*norm) return run_norm(norm_args, common);
    if (*verify) return run_verify(verify_args, common);
    if (*search) return run_search(search_args, common);
    if (*fit) return run_fit(fit_args, common);
  } catch (const OutOfRegimeError& e) {
    std::cerr << "out-of-regime: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
