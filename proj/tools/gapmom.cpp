// Command-line front end: point evaluation, parameter sweeps, moment tables,
// and the certification suite, emitting CSV or JSON.

#include <atomic>
#include <mutex>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gapmom/errors.hpp"
#include "gapmom/geometry.hpp"
#include "gapmom/moments.hpp"
#include "gapmom/quadrature.hpp"
#include "gapmom/verify.hpp"

namespace {

using gapmom::Method;
using gapmom::MomentQuery;
using gapmom::MomentValue;
using gapmom::SetKind;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SetKind parse_set(const std::string& s) {
  if (s == "full") return SetKind::FullRange;
  if (s == "half") return SetKind::HalfRange;
  if (s == "e2") return SetKind::E2;
  if (s == "e4") return SetKind::E4;
  throw gapmom::domain_error("unknown set '" + s + "' (expected full|half|e2|e4)");
}

Method parse_method(const std::string& s) {
  if (s == "closed") return Method::ClosedForm;
  if (s == "series") return Method::Series;
  if (s == "quad") return Method::Quadrature;
  throw gapmom::domain_error("unknown method '" + s + "' (expected closed|series|quad)");
}

const char* method_name(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed";
    case Method::Series: return "series";
    case Method::Quadrature: return "quad";
  }
  return "?";
}

int thread_count() {
  const char* env = std::getenv("GAPMOM_THREADS");
  if (env == nullptr) return 1;
  const int n = std::atoi(env);
  return n < 1 ? 1 : (n > 64 ? 64 : n);
}

// Evaluates fn(0..count-1) on the configured number of threads; results must
// be written to pre-sized slots so output order is independent of scheduling.
// The first worker exception is rethrown on the calling thread.
template <class Fn>
void parallel_for(int count, Fn&& fn) {
  const int threads = std::min(thread_count(), count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      try {
        for (int i; (i = next.fetch_add(1)) < count;) {
          if (failed.load()) return;
          fn(i);
        }
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) error = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::string csv_quote(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n') c = ';';
  return s;
}

// ---- moment ----

struct MomentArgs {
  std::string set;
  int n = 0;
  double mu = 0;
  double b = 0;
  std::string method = "closed";
  double tol = 1e-12;
  bool json = false;
};

int run_moment(const MomentArgs& a) {
  const MomentQuery q{parse_set(a.set), a.n, a.mu, a.b};
  const MomentValue mv = gapmom::moment(q, parse_method(a.method), a.tol);
  if (a.json) {
    nlohmann::json obj{{"b", q.b},          {"n", q.n},
                       {"mu", q.mu},        {"method", method_name(mv.method)},
                       {"value", mv.value}, {"err", mv.error_estimate},
                       {"count", mv.terms_or_nodes}};
    std::printf("%s\n", obj.dump().c_str());
    return 0;
  }
  std::printf("b,n,mu,method,value,err,count\n");
  std::printf("%s,%d,%s,%s,%s,%s,%ld\n", fmt17(q.b).c_str(), q.n, fmt17(q.mu).c_str(),
              method_name(mv.method), fmt17(mv.value).c_str(), fmt17(mv.error_estimate).c_str(),
              mv.terms_or_nodes);
  return 0;
}

// ---- sweep ----

struct SweepArgs {
  std::string set;
  int n = 1;
  double mu = 0;
  double b_start = 0;
  double b_stop = 0;
  int count = 50;
  std::vector<std::string> methods{"closed"};
  std::string profile;
  std::vector<double> profile_b;
  double tol = 1e-12;
  bool json = false;
};

int run_profile(const SweepArgs& a) {
  const SetKind kind = parse_set(a.set);
  if (kind != SetKind::E2 && kind != SetKind::E4)
    throw gapmom::domain_error("--profile cosphi needs --set e2 or e4");
  if (a.profile_b.empty())
    throw gapmom::domain_error("--profile cosphi needs at least one --b value");
  if (a.count < 2) throw gapmom::domain_error("--profile needs --count >= 2");
  nlohmann::json rows = nlohmann::json::array();
  if (!a.json) std::printf("b,x,cosphi\n");
  for (double b : a.profile_b) {
    const gapmom::IntervalSet set = gapmom::make_set(kind, b);
    for (const gapmom::Interval& iv : set.intervals)
      for (int j = 0; j < a.count; ++j) {
        const double x = iv.lo + (iv.hi - iv.lo) * j / (a.count - 1);
        const double c = kind == SetKind::E2 ? gapmom::cos_phi_e2(x, b)
                                             : gapmom::cos_phi_e4(x, b);
        if (a.json)
          rows.push_back({{"b", b}, {"x", x}, {"cosphi", c}});
        else
          std::printf("%s,%s,%s\n", fmt17(b).c_str(), fmt17(x).c_str(), fmt17(c).c_str());
      }
  }
  if (a.json) std::printf("%s\n", rows.dump().c_str());
  return 0;
}

int run_sweep(const SweepArgs& a) {
  if (!a.profile.empty()) {
    if (a.profile != "cosphi")
      throw gapmom::domain_error("unknown profile '" + a.profile + "' (expected cosphi)");
    return run_profile(a);
  }
  const SetKind kind = parse_set(a.set);
  if (a.count < 2) throw gapmom::domain_error("sweep needs --count >= 2");
  if (a.methods.empty()) throw gapmom::domain_error("sweep needs at least one method");
  gapmom::validate_b(kind, a.b_start);
  gapmom::validate_b(kind, a.b_stop);
  std::vector<Method> methods;
  for (const auto& m : a.methods) methods.push_back(parse_method(m));

  struct Row {
    double b = 0;
    std::vector<std::optional<double>> values;
    std::string err;
  };
  std::vector<Row> rows(static_cast<size_t>(a.count));
  parallel_for(a.count, [&](int i) {
    Row& row = rows[static_cast<size_t>(i)];
    row.b = a.b_start + (a.b_stop - a.b_start) * i / (a.count - 1);
    row.values.resize(methods.size());
    for (size_t m = 0; m < methods.size(); ++m) {
      try {
        row.values[m] = gapmom::moment({kind, a.n, a.mu, row.b}, methods[m], a.tol).value;
      } catch (const std::exception& e) {
        if (!row.err.empty()) row.err += "; ";
        row.err += std::string(method_name(methods[m])) + ": " + e.what();
      }
    }
  });

  bool any_ok = false;
  for (const Row& r : rows)
    for (const auto& v : r.values) any_ok = any_ok || v.has_value();

  if (a.json) {
    nlohmann::json out = nlohmann::json::array();
    for (const Row& r : rows) {
      nlohmann::json obj{{"b", r.b}, {"n", a.n}, {"mu", a.mu}};
      for (size_t m = 0; m < methods.size(); ++m)
        obj[method_name(methods[m])] =
            r.values[m] ? nlohmann::json(*r.values[m]) : nlohmann::json();
      if (!r.err.empty()) obj["err"] = r.err;
      out.push_back(std::move(obj));
    }
    std::printf("%s\n", out.dump().c_str());
  } else {
    std::string header = "b";
    for (Method m : methods) header += std::string(",") + method_name(m);
    std::printf("%s,err\n", header.c_str());
    for (const Row& r : rows) {
      std::string line = fmt17(r.b);
      for (const auto& v : r.values) line += "," + (v ? fmt17(*v) : std::string());
      std::printf("%s,%s\n", line.c_str(), csv_quote(r.err).c_str());
    }
  }
  return any_ok ? 0 : 2;
}

// ---- table ----

struct TableArgs {
  std::string set;
  double mu = 0;
  int n_max = 0;
  double b = 0;
  bool b_given = false;
  bool check = false;
  double tol = 1e-12;
  bool json = false;
};

int run_table(const TableArgs& a) {
  const SetKind kind = parse_set(a.set);
  if ((kind == SetKind::E2 || kind == SetKind::E4) && !a.b_given)
    throw gapmom::domain_error("table over " + a.set + " needs --b");
  struct Row {
    MomentValue mv;
    std::optional<double> quad;
  };
  std::vector<Row> rows(static_cast<size_t>(a.n_max) + 1);
  parallel_for(a.n_max + 1, [&](int n) {
    const MomentQuery q{kind, n, a.mu, a.b};
    Row& row = rows[static_cast<size_t>(n)];
    row.mv = gapmom::moment(q, Method::ClosedForm, a.tol);
    if (a.check) row.quad = gapmom::moment(q, Method::Quadrature, a.tol).value;
  });

  if (a.json) {
    nlohmann::json out = nlohmann::json::array();
    for (int n = 0; n <= a.n_max; ++n) {
      const Row& r = rows[static_cast<size_t>(n)];
      nlohmann::json obj{{"b", a.b},           {"n", n},
                         {"mu", a.mu},         {"method", method_name(r.mv.method)},
                         {"value", r.mv.value}, {"err", r.mv.error_estimate},
                         {"count", r.mv.terms_or_nodes}};
      if (r.quad) {
        obj["quad"] = *r.quad;
        obj["delta"] = r.mv.value - *r.quad;
      }
      out.push_back(std::move(obj));
    }
    std::printf("%s\n", out.dump().c_str());
    return 0;
  }
  std::printf("b,n,mu,method,value,err,count%s\n", a.check ? ",quad,delta" : "");
  for (int n = 0; n <= a.n_max; ++n) {
    const Row& r = rows[static_cast<size_t>(n)];
    std::string line = fmt17(a.b) + "," + std::to_string(n) + "," + fmt17(a.mu) + "," +
                       method_name(r.mv.method) + "," + fmt17(r.mv.value) + "," +
                       fmt17(r.mv.error_estimate) + "," + std::to_string(r.mv.terms_or_nodes);
    if (r.quad) line += "," + fmt17(*r.quad) + "," + fmt17(r.mv.value - *r.quad);
    std::printf("%s\n", line.c_str());
  }
  return 0;
}

// ---- verify ----

int run_verify(bool quick, bool perturb, bool json) {
  const auto results = gapmom::run_verification({quick, perturb});
  bool all_pass = true;
  if (json) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : results) {
      out.push_back({{"name", r.name},
                     {"max_dev", r.max_dev},
                     {"tol", r.tol},
                     {"pass", r.pass},
                     {"detail", r.detail}});
      all_pass = all_pass && r.pass;
    }
    std::printf("%s\n", out.dump().c_str());
  } else {
    for (const auto& r : results) {
      std::printf("%-48s max dev %9.3e  tol %7.1e  %s\n", r.name.c_str(), r.max_dev, r.tol,
                  r.pass ? "PASS" : "FAIL");
      if (!r.detail.empty()) std::printf("    %s\n", r.detail.c_str());
      all_pass = all_pass && r.pass;
    }
    std::printf("%s\n", all_pass ? "ALL PASS" : "FAILURES PRESENT");
  }
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized ultraspherical moments on one- and two-gap interval sets"};
  app.require_subcommand(1);

  MomentArgs ma;
  CLI::App* moment = app.add_subcommand("moment", "evaluate a single moment");
  moment->add_option("--set", ma.set, "full|half|e2|e4")->required();
  moment->add_option("--n", ma.n, "literal power of cos phi (or x)")->required();
  moment->add_option("--mu", ma.mu, "weight exponent, > -1/2")->required();
  moment->add_option("--b", ma.b, "gap parameter (e2/e4)");
  moment->add_option("--method", ma.method, "closed|series|quad");
  moment->add_option("--tol", ma.tol, "series/quadrature tolerance");
  moment->add_flag("--json", ma.json, "emit JSON instead of CSV");

  SweepArgs sa;
  CLI::App* sweep = app.add_subcommand("sweep", "moment values along a b grid");
  sweep->add_option("--set", sa.set, "e2|e4")->required();
  sweep->add_option("--n", sa.n, "literal power of cos phi");
  sweep->add_option("--mu", sa.mu, "weight exponent");
  sweep->add_option("--b-start", sa.b_start, "grid start");
  sweep->add_option("--b-stop", sa.b_stop, "grid stop");
  sweep->add_option("--count", sa.count, "grid points (>= 2) or profile points per interval");
  sweep->add_option("--methods", sa.methods, "comma-separated: closed,series,quad")
      ->delimiter(',');
  sweep->add_option("--profile", sa.profile, "cosphi: dump x, cos phi rows instead");
  sweep->add_option("--b", sa.profile_b, "b values for --profile (repeatable)");
  sweep->add_option("--tol", sa.tol, "series/quadrature tolerance");
  sweep->add_flag("--json", sa.json, "emit JSON instead of CSV");

  TableArgs ta;
  CLI::App* table = app.add_subcommand("table", "closed-form table over n = 0..n-max");
  table->add_option("--set", ta.set, "full|half|e2|e4")->required();
  table->add_option("--mu", ta.mu, "weight exponent")->required();
  table->add_option("--n-max", ta.n_max, "largest literal power")->required();
  table->add_option("--b", ta.b, "gap parameter (e2/e4)")->each([&ta](const std::string&) {
    ta.b_given = true;
  });
  table->add_flag("--check", ta.check, "add quadrature cross-check columns");
  table->add_option("--tol", ta.tol, "quadrature tolerance for --check");
  table->add_flag("--json", ta.json, "emit JSON instead of CSV");

  bool quick = false, perturb = false, vjson = false;
  CLI::App* verify = app.add_subcommand("verify", "run the certification suite");
  verify->add_flag("--quick", quick, "reduced grids");
  verify->add_flag("--json", vjson, "emit JSON instead of text");
  verify->add_flag("--perturb", perturb)->group("");  // fault-injection hook

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (moment->parsed()) return run_moment(ma);
    if (sweep->parsed()) return run_sweep(sa);
    if (table->parsed()) return run_table(ta);
    if (verify->parsed()) return run_verify(quick, perturb, vjson);
  } catch (const gapmom::convergence_error& e) {
    std::fprintf(stderr, "convergence failure: %s (partial %.17g after %ld terms)\n", e.what(),
                 e.partial(), e.count());
    return 2;
  } catch (const gapmom::domain_error& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return 1;
  }
  return 0;
}
