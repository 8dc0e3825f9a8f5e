// rmtcli: seeded, reproducible command-line front door.
//
//   sample      ensemble eigenvalue draws            -> CSV (or JSON)
//   charpoly    averaged characteristic polynomials  -> JSON
//   kernel      extended / general kernels on a grid -> CSV (or JSON)
//   simulate    noncolliding trajectories            -> CSV + JSON manifest
//   verify      time-shift equivalence reports       -> JSON
//   identities  deterministic identity battery       -> JSON
//
// Floats are printed with 17 significant digits; fixed flags give
// byte-identical output, and --threads never changes an estimate.
// Exit codes: 0 ok, 1 numerical verification failed, 2 usage error.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rmt/biorth.hpp"
#include "rmt/charpoly.hpp"
#include "rmt/densities.hpp"
#include "rmt/detkit.hpp"
#include "rmt/ensembles.hpp"
#include "rmt/equivalence.hpp"
#include "rmt/processes.hpp"
#include "rmt/quadrature.hpp"
#include "rmt/specfun.hpp"

namespace {

using namespace rmt;

std::string fmt(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_cplx(cplx v) {
  return "{\"re\":" + fmt(v.real()) + ",\"im\":" + fmt(v.imag()) + "}";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t end = s.find(sep, start);
    if (end == std::string::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

double parse_double(const std::string& s) {
  size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("could not parse number '" + s + "'");
  }
  if (pos != s.size())
    throw std::invalid_argument("could not parse number '" + s + "'");
  return v;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const std::string& tok : split(s, ',')) out.push_back(parse_double(tok));
  return out;
}

// `re` or `re+imi` / `re-imi` (also a bare `imi`), e.g. 1.5, 1+2i, -0.5-1i
cplx parse_alpha(const std::string& tok) {
  if (tok.empty()) throw std::invalid_argument("empty alpha entry");
  if (tok.back() != 'i') return {parse_double(tok), 0.0};
  std::string body = tok.substr(0, tok.size() - 1);
  // split at the last +/- that is not an exponent sign and not leading
  for (size_t k = body.size(); k-- > 1;) {
    char c = body[k];
    if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      std::string im = body.substr(k);
      if (im == "+") im = "1";
      if (im == "-") im = "-1";
      return {parse_double(body.substr(0, k)), parse_double(im)};
    }
  }
  return {0.0, parse_double(body)};  // pure imaginary
}

std::vector<cplx> parse_alpha_list(const std::string& s) {
  std::vector<cplx> out;
  for (const std::string& tok : split(s, ',')) out.push_back(parse_alpha(tok));
  return out;
}

Family parse_family(const std::string& s) {
  if (s == "bm") return Family::bm;
  if (s == "besq") return Family::besq;
  throw std::invalid_argument("unknown family '" + s + "'");
}

EnsembleSpec make_spec(const std::string& ensemble, int N, double nu,
                       double sigma2) {
  if (ensemble == "gue") return EnsembleSpec::gue(N, sigma2);
  if (ensemble == "chgue") return EnsembleSpec::chgue(N, nu, sigma2);
  if (ensemble == "classc") return EnsembleSpec::class_c(N, sigma2);
  if (ensemble == "classd") return EnsembleSpec::class_d(N, sigma2);
  throw std::invalid_argument("unknown ensemble '" + ensemble + "'");
}

// writes to --out if given, else to stdout
struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file.open(path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open '" + path + "'");
    os = &file;
  }
};

struct Global {
  uint64_t seed = 12345;
  long samples = 10000;
  std::string out;
  std::string format;  // empty = the subcommand's natural format
  int threads = 1;
  int exit_code = 0;

  std::string pick_format(const std::string& natural) const {
    return format.empty() ? natural : format;
  }
};

// ---------------------------------------------------------------- sample

struct SampleOpts {
  std::string ensemble = "gue";
  int N = 0;
  double nu = 0.0;
  double sigma2 = 1.0;
};

void run_sample(Global& g, const SampleOpts& o) {
  EnsembleSpec spec = make_spec(o.ensemble, o.N, o.nu, o.sigma2);
  spec.validate();
  std::string format = g.pick_format("csv");
  Sink sink(g.out);
  std::vector<Configuration> draws(static_cast<size_t>(g.samples));
  for (long i = 0; i < g.samples; ++i) {
    PhiloxStream rng(g.seed, static_cast<uint64_t>(i));
    draws[static_cast<size_t>(i)] = sample_configuration(spec, rng);
  }
  if (format == "csv") {
    *sink.os << "index";
    for (int j = 1; j <= o.N; ++j) *sink.os << ",x_" << j;
    *sink.os << "\n";
    for (long i = 0; i < g.samples; ++i) {
      *sink.os << i;
      for (double v : draws[static_cast<size_t>(i)]) *sink.os << ',' << fmt(v);
      *sink.os << "\n";
    }
  } else {
    std::string s = "{\"op\":\"sample\",\"ensemble\":\"" + o.ensemble +
                    "\",\"N\":" + std::to_string(o.N) + ",\"nu\":" +
                    fmt(spec.effective_nu()) + ",\"sigma2\":" + fmt(o.sigma2) +
                    ",\"seed\":" + std::to_string(g.seed) + ",\"samples\":" +
                    std::to_string(g.samples) + ",\"draws\":[";
    for (size_t i = 0; i < draws.size(); ++i) {
      if (i) s += ',';
      s += '[';
      for (size_t j = 0; j < draws[i].size(); ++j) {
        if (j) s += ',';
        s += fmt(draws[i][j]);
      }
      s += ']';
    }
    s += "]}";
    *sink.os << s << "\n";
  }
}

// -------------------------------------------------------------- charpoly

struct CharpolyOpts {
  std::string ensemble = "gue";
  int N = 0;
  double nu = 0.0;
  double sigma2 = 1.0;
  std::string alpha;
  bool with_mc = false;
};

void run_charpoly(Global& g, const CharpolyOpts& o) {
  std::vector<cplx> alpha = parse_alpha_list(o.alpha);
  EnsembleSpec spec = make_spec(o.ensemble, o.N, o.nu, o.sigma2);
  spec.validate();
  bool have_closed = !alpha.empty() && alpha.size() % 2 == 0;
  cplx closed{};
  if (have_closed) {
    int n = static_cast<int>(alpha.size()) / 2;
    switch (spec.kind) {
      case EnsembleKind::gue:
        closed = m_gue_pair_form(n, alpha, o.N, o.sigma2);
        break;
      case EnsembleKind::chgue:
        closed = m_nu_pair_form(n, alpha, o.N, o.nu, o.sigma2);
        break;
      case EnsembleKind::class_c:
        closed = m_class(MatrixClass::c, n, alpha, o.N, o.sigma2);
        break;
      case EnsembleKind::class_d:
        closed = m_class(MatrixClass::d, n, alpha, o.N, o.sigma2);
        break;
    }
  }
  bool run_mc = o.with_mc || !have_closed;
  McReport mc;
  if (run_mc) mc = mc_charpoly(spec, alpha, g.samples, g.seed, g.threads);

  std::string s = "{\"op\":\"charpoly\",\"ensemble\":\"" + o.ensemble +
                  "\",\"N\":" + std::to_string(o.N) + ",\"nu\":" +
                  fmt(spec.effective_nu()) + ",\"sigma2\":" + fmt(o.sigma2) +
                  ",\"alpha\":[";
  for (size_t i = 0; i < alpha.size(); ++i) {
    if (i) s += ',';
    s += fmt_cplx(alpha[i]);
  }
  s += "],\"method\":\"";
  s += have_closed ? "closed" : "mc";
  s += "\",\"estimate\":";
  s += fmt_cplx(have_closed ? closed : mc.estimate);
  if (have_closed) s += ",\"closed_form\":" + fmt_cplx(closed);
  if (run_mc) {
    s += ",\"mc\":{\"estimate\":" + fmt_cplx(mc.estimate) + ",\"stderr\":" +
         fmt(mc.stderr_val) + ",\"samples\":" + std::to_string(mc.samples) +
         ",\"seed\":" + std::to_string(mc.seed);
    if (have_closed && mc.stderr_val > 0.0)
      s += ",\"z\":" + fmt(std::abs(mc.estimate - closed) / mc.stderr_val);
    s += '}';
  }
  s += '}';
  Sink sink(g.out);
  *sink.os << s << "\n";
}

// ---------------------------------------------------------------- kernel

struct KernelOpts {
  std::string family = "bm";
  int N = 0;
  double nu = 0.0;
  double T = 0.0;  // extended mode when > 0
  double s = 0.0;
  double t = 0.0;
  std::string xs, ys, init;
};

void run_kernel(Global& g, const KernelOpts& o) {
  Family family = parse_family(o.family);
  std::vector<double> xs = parse_doubles(o.xs), ys = parse_doubles(o.ys);
  bool extended = o.T > 0.0;
  InitialConfig xi;
  int n_part = o.N;
  if (!extended) {
    if (o.s <= 0.0 || o.t <= 0.0)
      throw std::invalid_argument("kernel: need --T, or both --s and --t");
    if (!o.init.empty()) {
      xi = InitialConfig(parse_doubles(o.init));
      n_part = xi.size();
    } else {
      if (n_part < 1) throw std::invalid_argument("kernel: need --N or --init");
      xi = InitialConfig::dirac_origin(n_part);
    }
  } else if (n_part < 1) {
    throw std::invalid_argument("kernel: extended mode needs --N");
  }

  std::vector<double> vals;
  vals.reserve(xs.size() * ys.size());
  for (double x : xs)
    for (double y : ys) {
      double v;
      if (extended)
        v = (family == Family::bm) ? ext_hermite_kernel(n_part, o.T, x, y)
                                   : ext_laguerre_kernel(n_part, o.nu, o.T, x, y);
      else
        v = corr_kernel({family, o.nu, xi, o.s, x, o.t, y});
      vals.push_back(v);
    }

  std::string format = g.pick_format("csv");
  Sink sink(g.out);
  if (format == "csv") {
    *sink.os << "x,y,value\n";
    size_t idx = 0;
    for (double x : xs)
      for (double y : ys)
        *sink.os << fmt(x) << ',' << fmt(y) << ',' << fmt(vals[idx++]) << "\n";
  } else {
    std::string s = "{\"op\":\"kernel\",\"family\":\"" + o.family +
                    "\",\"N\":" + std::to_string(n_part) + ",\"nu\":" +
                    fmt(o.nu) + ",\"mode\":\"";
    s += extended ? "extended" : "general";
    s += '"';
    if (extended)
      s += ",\"T\":" + fmt(o.T);
    else
      s += ",\"s\":" + fmt(o.s) + ",\"t\":" + fmt(o.t);
    auto arr = [&](const char* key, const std::vector<double>& v) {
      s += ",\"";
      s += key;
      s += "\":[";
      for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += fmt(v[i]);
      }
      s += ']';
    };
    arr("x", xs);
    arr("y", ys);
    arr("value", vals);
    s += '}';
    *sink.os << s << "\n";
  }
}

// -------------------------------------------------------------- simulate

struct SimulateOpts {
  std::string family = "bm";
  int N = 0;
  double nu = 0.0;
  std::string method = "euler";
  std::string x0;
  double dt = 1e-3;
  double T = 1.0;
  double record_dt = 0.0;
  std::string times;
  uint64_t stream = 0;
};

void run_simulate(Global& g, const SimulateOpts& o) {
  Family family = parse_family(o.family);
  Trajectory traj;
  if (o.method == "euler") {
    if (o.x0.empty())
      throw std::invalid_argument("simulate: euler needs --x0");
    Configuration x0 = parse_doubles(o.x0);
    int N = o.N > 0 ? o.N : static_cast<int>(x0.size());
    traj = simulate_euler(family, N, o.nu, x0, o.dt, o.T, g.seed, o.record_dt,
                          o.stream);
  } else if (o.method == "matrix") {
    if (o.times.empty())
      throw std::invalid_argument("simulate: matrix needs --times");
    if (o.N < 1) throw std::invalid_argument("simulate: matrix needs --N");
    traj = simulate_matrix(family, o.N, o.nu, parse_doubles(o.times), g.seed,
                           o.stream);
  } else {
    throw std::invalid_argument("simulate: method must be euler or matrix");
  }

  std::string manifest =
      "{\"op\":\"simulate\",\"family\":\"" + o.family + "\",\"N\":" +
      std::to_string(traj.states.at(0).size()) + ",\"nu\":" + fmt(traj.nu) +
      ",\"method\":\"" + traj.method + "\",\"seed\":" +
      std::to_string(traj.seed) + ",\"stream\":" + std::to_string(o.stream) +
      ",\"dt\":" + fmt(traj.dt) + ",\"record_dt\":" + fmt(o.record_dt) +
      ",\"steps\":" + std::to_string(traj.times.size()) + "}";

  Sink sink(g.out);
  *sink.os << "t";
  for (size_t j = 1; j <= traj.states.at(0).size(); ++j)
    *sink.os << ",x_" << j;
  *sink.os << "\n";
  for (size_t i = 0; i < traj.times.size(); ++i) {
    *sink.os << fmt(traj.times[i]);
    for (double v : traj.states[i]) *sink.os << ',' << fmt(v);
    *sink.os << "\n";
  }
  if (g.out.empty()) {
    std::cerr << manifest << "\n";
  } else {
    std::ofstream mf(g.out + ".manifest.json", std::ios::binary);
    if (!mf)
      throw std::invalid_argument("cannot open '" + g.out + ".manifest.json'");
    mf << manifest << "\n";
  }
}

// ---------------------------------------------------------------- verify

struct VerifyOpts {
  std::string family = "bm";
  int N = 2;
  double nu = 0.0;
  double sigma2 = 0.5;
  double t = 0.5;
  double t1 = 0.5, t2 = 1.0;
  std::string grid, block;
  std::vector<std::string> tests, pairs;
};

void emit_report(Global& g, const VerifyReport& rep) {
  Sink sink(g.out);
  *sink.os << to_json(rep) << "\n";
  if (!rep.pass) g.exit_code = 1;
}

void run_verify_onepoint(Global& g, const VerifyOpts& o) {
  Family family = parse_family(o.family);
  std::vector<double> grid;
  if (!o.grid.empty())
    grid = parse_doubles(o.grid);
  else if (family == Family::bm)
    grid = {-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0};
  else
    grid = {0.2, 0.6, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
  emit_report(g, verify_onepoint(family, o.N, o.nu, o.sigma2, o.t, grid,
                                 g.samples, g.seed, g.threads));
}

void run_verify_det_block(Global& g, const VerifyOpts& o) {
  emit_report(g, verify_det_block(parse_family(o.family), o.N, o.nu, o.sigma2,
                                  o.t, parse_doubles(o.block), g.samples,
                                  g.seed, g.threads));
}

void run_verify_density_shift(Global& g, const VerifyOpts& o) {
  std::vector<Configuration> tests;
  for (const std::string& s : o.tests) tests.push_back(parse_doubles(s));
  emit_report(g, verify_density_shift(parse_family(o.family), o.N, o.nu,
                                      o.sigma2, o.t, tests, g.samples, g.seed,
                                      g.threads));
}

void run_verify_multitime(Global& g, const VerifyOpts& o) {
  std::vector<std::pair<double, double>> pairs;
  for (const std::string& s : o.pairs) {
    std::vector<double> v = parse_doubles(s);
    if (v.size() != 2)
      throw std::invalid_argument("verify multitime: --pair needs x1,x2");
    pairs.emplace_back(v[0], v[1]);
  }
  emit_report(g, verify_multitime(parse_family(o.family), o.N, o.nu, o.sigma2,
                                  o.t1, o.t2, pairs, g.samples, g.seed,
                                  g.threads));
}

// ------------------------------------------------------------ identities

struct Check {
  std::string name;
  double err;
  double tol;
  bool pass;
};

double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

std::vector<Check> run_identity_battery() {
  std::vector<Check> out;
  auto add = [&](std::string name, double err, double tol) {
    out.push_back({std::move(name), err, tol, err <= tol});
  };

  {  // monic Hermite at +-1/2 vs monic Laguerre at squared argument
    double err = 0.0;
    for (double s2 : {0.5, 1.0, 2.0})
      for (double x : {0.3, 1.1, 2.7})
        for (int n = 0; n <= 10; ++n) {
          err = std::max(err, rel_err(monic_hermite(2 * n, x, s2),
                                      monic_laguerre(n, -0.5, x * x, s2)));
          err = std::max(err,
                         rel_err(monic_hermite(2 * n + 1, x, s2),
                                 x * monic_laguerre(n, 0.5, x * x, s2)));
        }
    add("hermite-laguerre-bridge", err, 1e-10);
  }
  {  // the two determinantal forms of the Hermite average
    std::vector<cplx> a{0.3, 1.1, -0.7, 2.0};
    add("hermite-pair-vs-monic",
        rel_err(m_gue_pair_form(2, a, 3, 0.8), m_gue_monic_form(2, a, 3, 0.8)),
        1e-9);
  }
  {  // the two determinantal forms of the Laguerre average
    std::vector<cplx> a{0.4, 1.3, 2.2, 3.1};
    add("laguerre-pair-vs-monic",
        rel_err(m_nu_pair_form(2, a, 2, 0.5, 0.6),
                m_nu_monic_form(2, a, 2, 0.5, 0.6)),
        1e-9);
  }
  {  // class C / class D internal cross-form agreement (asserted at 1e-9)
    std::vector<cplx> a{0.7, 1.4, 2.1, 2.9};
    double err = 0.0;
    try {
      m_class(MatrixClass::c, 2, a, 2, 0.5);
      m_class(MatrixClass::d, 2, a, 2, 0.5);
    } catch (const std::exception&) {
      err = 1.0;
    }
    add("class-c-d-crossform", err, 1e-9);
  }
  {  // Ishikawa determinant identity
    std::vector<cplx> x{0.2, 0.9, 1.7}, y{-0.4, 0.6, 1.2};
    std::vector<cplx> a{cplx(0.1, 0.3), 0.8, -1.1}, b{1.9, cplx(-0.2, 0.7), 0.4};
    auto [lhs, rhs] = ishikawa_both_sides(3, x, y, a, b);
    add("ishikawa", rel_err(lhs, rhs), 1e-10);
  }
  {  // Chapman-Kolmogorov, Gaussian kernel
    double s2 = 0.5, t = 0.5, x = 0.7;
    double got = integrate_line(
        [&](double a) {
          return (bm_kernel(s2, a, 0.0) * bm_kernel(t, x, a)).real();
        },
        0.0, std::sqrt(s2 + t));
    double want = bm_kernel(s2 + t, x, 0.0).real();
    add("semigroup-bm", std::abs(got - want) / want, 1e-10);
  }
  {  // Chapman-Kolmogorov, squared Bessel kernel
    double nu = 0.3, s = 0.5, t = 0.7, x0 = 0.4, y = 1.1;
    double got = integrate_halfline(
        [&](double a) {
          return besq_kernel(nu, s, a, x0) * besq_kernel(nu, t, y, a);
        },
        2.0 * s, /*grade_towards_zero=*/true);
    double want = besq_kernel(nu, s + t, y, x0);
    add("semigroup-besq", std::abs(got - want) / want, 1e-6);
  }
  {  // biorthogonality of the BM phi system
    InitialConfig xi({-0.8, 0.3, 1.1});
    double t = 0.7, err = 0.0;
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) {
        double got = integrate_line(
            [&](double x) {
              return phi_plus(m, t, x, xi) * phi_minus(n, t, x, xi);
            },
            0.2, 1.0 + std::sqrt(2.0 * t));
        err = std::max(err, std::abs(got - (m == n ? 1.0 : 0.0)));
      }
    add("biorthogonality-bm", err, 1e-7);
  }
  {  // biorthogonality of the BESQ phi system
    InitialConfig xi({0.3, 0.9, 1.7});
    double nu = 0.4, t = 0.6, err = 0.0;
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) {
        double got = integrate_halfline(
            [&](double x) {
              return phi_nu_plus(m, nu, t, x, xi) *
                     phi_nu_minus(n, nu, t, x, xi);
            },
            2.0 * t + 1.7, /*grade_towards_zero=*/true);
        err = std::max(err, std::abs(got - (m == n ? 1.0 : 0.0)));
      }
    add("biorthogonality-besq", err, 1e-7);
  }
  {  // origin-started correlation kernel vs extended kernels, equal time
    double err = 0.0;
    InitialConfig origin3 = InitialConfig::dirac_origin(3);
    for (double x : {-1.2, 0.4, 1.9})
      for (double y : {-0.6, 0.8}) {
        double k = corr_kernel({Family::bm, 0.0, origin3, 0.9, x, 0.9, y});
        err = std::max(err,
                       std::abs(k - ext_hermite_kernel(3, 0.9, x, y)));
      }
    for (double x : {0.3, 1.4, 2.6})
      for (double y : {0.5, 2.2}) {
        double k = corr_kernel({Family::besq, 0.7, origin3, 0.9, x, 0.9, y});
        err = std::max(err,
                       std::abs(k - ext_laguerre_kernel(3, 0.7, 0.9, x, y)));
      }
    add("origin-kernel-consistency", err, 1e-10);
  }
  return out;
}

void run_identities(Global& g) {
  std::vector<Check> checks = run_identity_battery();
  bool all = true;
  std::string s = "{\"op\":\"identities\",\"checks\":[";
  for (size_t i = 0; i < checks.size(); ++i) {
    if (i) s += ',';
    s += "{\"name\":\"" + checks[i].name + "\",\"max_err\":" +
         fmt(checks[i].err) + ",\"tol\":" + fmt(checks[i].tol) +
         ",\"pass\":" + (checks[i].pass ? "true" : "false") + "}";
    all = all && checks[i].pass;
  }
  s += "],\"pass\":";
  s += all ? "true" : "false";
  s += '}';
  Sink sink(g.out);
  *sink.os << s << "\n";
  if (!all) g.exit_code = 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"determinantal machinery for noncolliding diffusions"};
  app.require_subcommand(1);

  Global g;
  app.add_option_function<std::string>(
         "--seed",
         [&](const std::string& s) { g.seed = std::stoull(s, nullptr, 0); },
         "RNG seed, decimal or 0x-hex (env RMT_SEED)")
      ->envname("RMT_SEED");
  app.add_option("--samples", g.samples, "Monte Carlo sample count");
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", g.threads, "worker threads");

  auto ensemble_opt = [&](CLI::App* sc, std::string& target) {
    sc->add_option("--ensemble", target, "gue|chgue|classc|classd")
        ->check(CLI::IsMember({"gue", "chgue", "classc", "classd"}));
  };
  auto family_opt = [&](CLI::App* sc, std::string& target) {
    sc->add_option("--family", target, "bm|besq")
        ->check(CLI::IsMember({"bm", "besq"}));
  };

  SampleOpts so;
  CLI::App* sample = app.add_subcommand("sample", "draw eigenvalue configurations");
  sample->fallthrough();
  ensemble_opt(sample, so.ensemble);
  sample->add_option("--N", so.N, "matrix size")->required();
  sample->add_option("--nu", so.nu, "chiral index");
  sample->add_option("--sigma2", so.sigma2, "variance parameter");
  sample->callback([&] { run_sample(g, so); });

  CharpolyOpts co;
  CLI::App* charp = app.add_subcommand("charpoly", "averaged characteristic polynomials");
  charp->fallthrough();
  ensemble_opt(charp, co.ensemble);
  charp->add_option("--n-matrix", co.N, "matrix size")->required();
  charp->add_option("--nu", co.nu, "chiral index");
  charp->add_option("--sigma2", co.sigma2, "variance parameter");
  charp->add_option("--alpha", co.alpha, "comma list: re or re+imi")->required();
  charp->add_flag("--mc", co.with_mc, "also run the Monte Carlo estimator");
  charp->callback([&] { run_charpoly(g, co); });

  KernelOpts ko;
  CLI::App* kern = app.add_subcommand("kernel", "evaluate kernels on a grid");
  kern->fallthrough();
  family_opt(kern, ko.family);
  kern->add_option("--N", ko.N, "particle count");
  kern->add_option("--nu", ko.nu, "BESQ index");
  kern->add_option("--T", ko.T, "total time (extended kernel mode)");
  kern->add_option("--s", ko.s, "first time (general mode)");
  kern->add_option("--t", ko.t, "second time (general mode)");
  kern->add_option("--x", ko.xs, "comma list of first positions")->required();
  kern->add_option("--y", ko.ys, "comma list of second positions")->required();
  kern->add_option("--init", ko.init, "initial configuration (default origin)");
  kern->callback([&] { run_kernel(g, ko); });

  SimulateOpts mo;
  CLI::App* sim = app.add_subcommand("simulate", "noncolliding trajectories");
  sim->fallthrough();
  family_opt(sim, mo.family);
  sim->add_option("--N", mo.N, "particle count");
  sim->add_option("--nu", mo.nu, "BESQ index");
  sim->add_option("--method", mo.method, "euler|matrix")
      ->check(CLI::IsMember({"euler", "matrix"}));
  sim->add_option("--x0", mo.x0, "start configuration (euler)");
  sim->add_option("--dt", mo.dt, "euler step");
  sim->add_option("--T", mo.T, "time horizon (euler)");
  sim->add_option("--record-dt", mo.record_dt, "recording interval");
  sim->add_option("--times", mo.times, "output times (matrix)");
  sim->add_option("--stream", mo.stream, "RNG stream id");
  sim->callback([&] { run_simulate(g, mo); });

  VerifyOpts vo;
  CLI::App* verify = app.add_subcommand("verify", "time-shift equivalence checks");
  verify->fallthrough();
  verify->require_subcommand(1);
  auto verify_common = [&](CLI::App* sc) {
    sc->fallthrough();
    family_opt(sc, vo.family);
    sc->add_option("--N", vo.N, "particle count");
    sc->add_option("--nu", vo.nu, "chiral/BESQ index");
    sc->add_option("--sigma2", vo.sigma2, "initial-law variance parameter");
    return sc;
  };
  CLI::App* v1 = verify_common(verify->add_subcommand("onepoint", "diagonal kernel values"));
  v1->add_option("--t", vo.t, "observation time");
  v1->add_option("--grid", vo.grid, "comma list of positions");
  v1->callback([&] { run_verify_onepoint(g, vo); });
  CLI::App* v2 = verify_common(verify->add_subcommand("det-block", "L x L kernel determinant"));
  v2->add_option("--t", vo.t, "observation time");
  v2->add_option("--block", vo.block, "comma list of block positions")->required();
  v2->callback([&] { run_verify_det_block(g, vo); });
  CLI::App* v3 = verify_common(verify->add_subcommand("density-shift", "transition density shift"));
  v3->add_option("--t", vo.t, "observation time");
  v3->add_option("--test", vo.tests, "test configuration x_1,...,x_N (repeatable)")
      ->required();
  v3->callback([&] { run_verify_density_shift(g, vo); });
  CLI::App* v4 = verify_common(verify->add_subcommand("multitime", "two-time kernel determinant"));
  v4->add_option("--t1", vo.t1, "first time");
  v4->add_option("--t2", vo.t2, "second time");
  v4->add_option("--pair", vo.pairs, "probe pair x1,x2 (repeatable)")->required();
  v4->callback([&] { run_verify_multitime(g, vo); });

  CLI::App* ident = app.add_subcommand("identities", "deterministic identity battery");
  ident->fallthrough();
  ident->callback([&] { run_identities(g); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return g.exit_code;
}
