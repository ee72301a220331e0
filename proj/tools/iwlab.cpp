// iwlab: run the checks, compute single objects, manage the cache.
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "iwlab/cache.hpp"
#include "iwlab/parallel.hpp"

using namespace iwlab;

namespace {

constexpr int kUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// smallest precision that can certify the largest index exponent of (p, n)
int min_precision(long p, int n) { return static_cast<int>(n * ipow(p, n) + n + 1) + PadicLattice::kDefaultSlack + 2; }

// ----------------------------------------------------------------------------
// characters on the command line: quadratic-mod-M, omega^k-mod-p, trivial-mod-M, or a label/key

DirichletCharacter parse_character(const std::string& spec) {
  auto dash = spec.rfind("-mod-");
  if (dash != std::string::npos) {
    const std::string what = spec.substr(0, dash);
    const long m = std::stol(spec.substr(dash + 5));
    if (m < 1) throw UsageError("bad modulus in " + spec);
    if (what == "trivial") return DirichletCharacter::trivial(m);
    if (what == "quadratic" || what == "quad") {
      std::vector<DirichletCharacter> q;
      for (const auto& c : enumerate_characters(m))
        if (c.order() == 2 && c.is_primitive()) q.push_back(c);
      if (q.size() != 1) throw UsageError("no unique primitive quadratic character mod " + std::to_string(m));
      return q[0];
    }
    if (what.rfind("omega", 0) == 0) {
      if (!is_prime(m) || m == 2) throw UsageError("omega needs an odd prime modulus");
      long k = 1;
      if (what.size() > 5) {
        if (what[5] != '^') throw UsageError("bad character " + spec);
        k = std::stol(what.substr(6));
      }
      return DirichletCharacter::teichmuller(m).pow(mod(k, m - 1));
    }
    throw UsageError("unknown character " + spec);
  }
  // chi_M[...] or m=M;...
  long m = 0;
  if (spec.rfind("chi_", 0) == 0) m = std::stol(spec.substr(4));
  if (spec.rfind("m=", 0) == 0) m = std::stol(spec.substr(2));
  if (m > 0)
    for (const auto& c : enumerate_characters(m))
      if (c.label() == spec || c.key() == spec) return c;
  throw UsageError("unknown character " + spec);
}

// ----------------------------------------------------------------------------
// output

void term(std::ostream& os, const std::string& c, bool first) {
  if (first)
    os << c;
  else if (c[0] == '-')
    os << " - " << c.substr(1);
  else
    os << " + " << c;
}

std::string format_payload(const std::string& kind, const CacheRecord& r, long p) {
  const auto& v = r.payload;
  if (kind == "hminus") return v.at(0);
  std::ostringstream os;
  if (v.at(0).rfind("m=", 0) == 0) {
    const std::string m = v[0].substr(2);
    bool rational = true;
    for (size_t k = 2; k < v.size(); ++k) rational = rational && v[k] == "0";
    if (rational) return v.size() > 1 ? v[1] : "0";
    bool first = true;
    for (size_t k = 1; k < v.size(); ++k) {
      if (v[k] == "0") continue;
      term(os, v[k], first);
      if (k > 1) os << "*z^" << k - 1;
      first = false;
    }
    os << "   (z = zeta_" << m << ")";
    return os.str();
  }
  // p-adic: shift=s then coefficients
  const std::string shift = v.at(0).substr(6);
  os << "p^" << shift << " * (";
  bool first = true;
  for (size_t k = 1; k < v.size(); ++k) {
    if (v[k] == "0") continue;
    term(os, v[k], first);
    if (k > 1) os << "*z^" << k - 1;
    first = false;
  }
  if (first) os << "0";
  os << ")   mod p^" << r.precision << ", p = " << p << ", z = zeta_{p^{n+1}}";
  return os.str();
}

void print_table_header() {
  std::printf("%-24s %4s %3s %3s  %-26s %5s  %s\n", "check", "p", "d", "n", "status", "N", "characters");
}

void print_table_row(const VerificationReport& r) {
  std::string chars;
  for (const auto& c : r.characters) chars += (chars.empty() ? "" : ",") + c;
  if (chars.size() > 60) chars = chars.substr(0, 57) + "...";
  std::printf("%-24s %4ld %3ld %3d  %-26s %5d  %s\n", r.id.c_str(), r.params.p, r.params.d, r.params.n,
              to_string(r.status), r.precision, chars.c_str());
  if (r.status == Status::falsified || r.status == Status::undecidable)
    for (const auto& w : r.witnesses)
      if (w.value.rfind("no", 0) == 0 || w.value.rfind("undecidable", 0) == 0)
        std::printf("    %s: %s\n", w.key.c_str(), w.value.c_str());
}

// ----------------------------------------------------------------------------
// verify

struct VerifyOpts {
  std::vector<std::string> checks;
  bool all = false;
  std::vector<long> p, d;
  std::vector<int> n;
  std::string theta, reading = "F-1", grid = "default", format = "table", cache_dir;
  int precision = 0, level = -1, workers = 1;
  bool timing = false, no_cache = false, paper_map = false;
};

int cmd_verify(const VerifyOpts& o) {
  if (o.paper_map) {
    for (const auto& c : check_registry()) std::printf("%-24s %s\n", c.id.c_str(), c.anchor.c_str());
    return 0;
  }
  std::vector<std::string> ids = o.checks;
  if (o.all || ids.empty())
    for (const auto& c : check_registry()) ids.push_back(c.id);
  if (o.grid != "default" && o.grid != "extended") throw UsageError("--grid must be default or extended");
  if (o.format != "table" && o.format != "records") throw UsageError("--format must be table or records");
  const bool extended = o.grid == "extended";
  std::vector<GridPoint> points;
  for (const auto& id : ids) {
    find_check(id);
    if (o.p.empty()) {
      if (!o.d.empty() || !o.n.empty()) throw UsageError("--d and --n need --p");
      for (auto g : grid_for(id, extended)) {
        if (!o.theta.empty()) g.params.theta = o.theta;
        points.push_back(g);
      }
      continue;
    }
    for (long p : o.p)
      for (long d : o.d.empty() ? std::vector<long>{1} : o.d)
        for (int n : o.n.empty() ? std::vector<int>{0} : o.n) {
          if (p < 3 || !is_prime(p)) throw UsageError("--p must be an odd prime");
          if (d < 1 || (p - 1) % d) throw UsageError("--d must divide p - 1");
          if (n < 0) throw UsageError("--n must be nonnegative");
          CheckParams cp;
          cp.p = p;
          cp.d = d;
          cp.n = n;
          cp.theta = o.theta;
          cp.reading = o.reading;
          cp.level = o.level;
          points.push_back({id, cp});
        }
  }
  for (auto& pt : points) {
    if (o.precision) {
      if (o.precision < min_precision(pt.params.p, pt.params.n))
        throw UsageError("--precision below " + std::to_string(min_precision(pt.params.p, pt.params.n)) + " for p=" +
                         std::to_string(pt.params.p) + ", n=" + std::to_string(pt.params.n));
      pt.params.precision = o.precision;
    }
  }
  Cache cache(o.cache_dir);
  Status total = Status::vacuous;
  if (o.format == "table") print_table_header();
  run_grid(points, o.workers, [&](const VerificationReport& r) {
    total = combine(total, r.status);
    if (o.format == "records")
      std::cout << to_record(r, o.timing) << std::endl;
    else
      print_table_row(r);
    if (!o.no_cache) {
      CacheRecord rec;
      rec.kind = "report";
      rec.key = r.id + "|" + r.params.key();
      rec.payload = {to_record(r, false)};
      rec.precision = r.precision;
      cache.put(rec);
    }
  });
  if (o.format == "table") std::printf("overall: %s (%zu reports)\n", to_string(total), points.size());
  return exit_code(total);
}

// ----------------------------------------------------------------------------
// compute

struct ComputeOpts {
  std::string kind, chi, lhs, rhs, theta, cache_dir;
  long p = 5;
  int n = 0, k = 1, precision = 0;
  bool no_cache = false;
};

PadicLattice named_lattice(const std::string& name, long p, int n, int k, int N) {
  auto R = PadicRing::get(p, n);
  const int W = N + 2 * n + 4;
  const int dim = static_cast<int>((p - 1) * ipow(p, n));
  auto orbit = [&](SpecialKind kind) {
    return PadicLattice(p, dim, gamma_orbit(apply_projector(Projector::e_theta, k,
                                                            PadicCyclo::embed(R, W, build_special(kind, p, 1, n)))));
  };
  if (name == "leopoldt") return PadicLattice(p, dim, projected_order(p, n, Projector::e_theta, k, N, -n));
  if (name == "log-U") return log_image(p, n, LogSource::U, Projector::e_theta, k, N, false).lattice;
  if (name == "log-C") return log_image(p, n, LogSource::closure_C, Projector::e_theta, k, N, false).lattice;
  if (name == "log-V") return log_image(p, n, LogSource::V, Projector::e_theta, k, N).lattice;
  if (name == "scriptT-orbit") return orbit(SpecialKind::script_T);
  if (name == "T-orbit") return orbit(SpecialKind::leopoldt_T);
  throw UsageError("unknown lattice " + name + " (leopoldt, log-U, log-C, log-V, scriptT-orbit, T-orbit)");
}

int cmd_compute(const ComputeOpts& o) {
  if (o.p < 3 || !is_prime(o.p)) throw UsageError("--p must be an odd prime");
  if (o.n < 0) throw UsageError("--n must be nonnegative");
  const int N = o.precision ? o.precision : default_precision(o.p, o.n);
  Cache cache(o.cache_dir);
  CacheRecord rec;
  rec.kind = o.kind;
  rec.precision = 0;
  std::function<void()> fill;
  if (o.kind == "hminus") {
    rec.key = "p=" + std::to_string(o.p) + ";n=" + std::to_string(o.n);
    fill = [&] { rec.payload = {to_string(h_minus(o.p, o.n))}; };
  } else if (o.kind == "bernoulli") {
    if (o.chi.empty()) throw UsageError("bernoulli needs --chi");
    auto chi = parse_character(o.chi).primitive();
    rec.key = "k=" + std::to_string(o.k) + ";" + chi.key();
    fill = [&, chi] { rec.payload = payload_of(bernoulli_B(o.k, chi)); };
  } else if (o.kind == "lp") {
    if (o.chi.empty()) throw UsageError("lp needs --chi");
    auto chi = parse_character(o.chi);
    if (!chi.is_even() || chi.is_trivial()) throw UsageError("lp needs an even nontrivial character");
    rec.key = "p=" + std::to_string(o.p) + ";n=" + std::to_string(o.n) + ";" + chi.key();
    rec.precision = N;
    fill = [&, chi] { rec.payload = payload_of(lp_at_one(chi, PadicRing::get(o.p, o.n), N)); };
  } else if (o.kind == "eps") {
    rec.key = "p=" + std::to_string(o.p) + ";n=" + std::to_string(o.n);
    fill = [&] {
      auto e = stickelberger_eps(o.p, o.n);
      rec.payload.clear();
      for (const auto& c : e.coeffs()) rec.payload.push_back(to_string(c));
    };
  } else if (o.kind == "index") {
    if (o.lhs.empty() || o.rhs.empty()) throw UsageError("index needs --lhs and --rhs");
    auto th = select_delta(o.p, o.theta.empty() ? "1" : o.theta);
    if (th.size() != 1) throw UsageError("index needs a single --theta");
    auto a = named_lattice(o.lhs, o.p, o.n, th[0].k, N);
    auto b = named_lattice(o.rhs, o.p, o.n, th[0].k, N);
    auto ix = index(a, b);
    if (ix.status != Decision::yes) {
      std::cout << "undecidable at precision " << N << ": " << ix.note << "\n";
      return 2;
    }
    std::cout << o.p << "^" << ix.exponent << "\n";
    return 0;
  } else {
    throw UsageError("unknown object " + o.kind + " (hminus, bernoulli, lp, eps, index)");
  }
  std::optional<CacheRecord> hit;
  if (!o.no_cache) hit = cache.get(rec.kind, rec.key);
  if (hit && hit->precision >= rec.precision) {
    rec = *hit;
  } else {
    fill();
    if (!o.no_cache) cache.put(rec);
  }
  if (o.kind == "eps") {
    auto G = GaloisGroup::G(o.p, o.n);
    for (int i = 0; i < G->size(); ++i)
      if (rec.payload[static_cast<size_t>(i)] != "0")
        std::cout << rec.payload[static_cast<size_t>(i)] << " * sigma_" << G->elem(i) << "\n";
    return 0;
  }
  std::cout << format_payload(o.kind, rec, o.p) << "\n";
  return 0;
}

// ----------------------------------------------------------------------------
// cache

int cmd_cache(const std::string& action, const std::string& dir) {
  Cache cache(dir);
  if (action == "list") {
    for (const auto& c : cache.verify()) std::cout << c.file << "  " << c.message << "\n";
    return 0;
  }
  if (action == "verify") {
    auto checks = cache.verify();
    int bad = 0;
    for (const auto& c : checks)
      if (!c.ok) {
        ++bad;
        std::cout << "corrupt: " << c.file << " (" << c.message << ")\n";
      }
    std::cout << checks.size() << " records, " << bad << " corrupt\n";
    return bad ? 1 : 0;
  }
  if (action == "prune") {
    std::cout << "removed " << cache.prune() << " corrupt records\n";
    return 0;
  }
  throw UsageError("cache action must be list, verify or prune");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iwlab: exact checks of p-adic log-images, L-values and Stickelberger-type indices"};
  app.require_subcommand(1);
  std::string cache_dir;
  app.add_option("--cache-dir", cache_dir, "cache directory (default $IWLAB_CACHE_DIR or .iwlab-cache)");
  bool serial = false;
  app.add_flag("--serial", serial, "use the serial reference kernels");

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "run checks over parameter points");
  verify->add_option("--check", vo.checks, "check ids, repeatable or comma separated")->delimiter(',');
  verify->add_flag("--all", vo.all, "every registered check");
  verify->add_option("--p", vo.p, "primes")->delimiter(',');
  verify->add_option("--d", vo.d, "values of d (d | p - 1)")->delimiter(',');
  verify->add_option("--n", vo.n, "levels n")->delimiter(',');
  verify->add_option("--theta", vo.theta, "character selector: all, trivial, omega, quad, omega^k, or a label");
  verify->add_option("--precision", vo.precision, "p-adic precision N");
  verify->add_option("--reading", vo.reading, "correction term of the f = d case: F-1 or d-1");
  verify->add_option("--level", vo.level, "level i of the norm relation");
  verify->add_option("--grid", vo.grid, "default or extended");
  verify->add_flag("--default-grid", [&](int64_t) { vo.grid = "default"; }, "same as --grid default");
  verify->add_option("--format", vo.format, "table or records");
  verify->add_option("--workers", vo.workers, "concurrent checks");
  verify->add_flag("--timing", vo.timing, "add wall time to records");
  verify->add_flag("--no-cache", vo.no_cache, "do not persist reports");
  verify->add_flag("--paper-map", vo.paper_map, "print the check id to statement registry");
  verify->add_option("--cache-dir", vo.cache_dir, "cache directory");

  ComputeOpts co;
  auto* compute = app.add_subcommand("compute", "compute one object");
  compute->add_option("kind", co.kind, "hminus, bernoulli, lp, eps, index")->required();
  compute->add_option("--p", co.p, "prime");
  compute->add_option("--n", co.n, "level");
  compute->add_option("--k", co.k, "weight k of B_{k,chi}");
  compute->add_option("--chi", co.chi, "character, e.g. quadratic-mod-3, omega^2-mod-5, chi_20[1,2]");
  compute->add_option("--theta", co.theta, "Delta-character selector for index");
  compute->add_option("--lhs", co.lhs, "lattice");
  compute->add_option("--rhs", co.rhs, "lattice");
  compute->add_option("--precision", co.precision, "p-adic precision N");
  compute->add_flag("--no-cache", co.no_cache, "bypass the cache");
  compute->add_option("--cache-dir", co.cache_dir, "cache directory");

  std::string action;
  auto* cache = app.add_subcommand("cache", "inspect the cache");
  cache->add_option("action", action, "list, verify or prune")->required();
  cache->add_option("--cache-dir", cache_dir, "cache directory");

  bool paper_map = false;
  auto* list = app.add_subcommand("list-checks", "list the registered checks");
  list->add_flag("--paper-map", paper_map, "show the statement each check is anchored to");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  set_parallel(!serial);
  if (vo.cache_dir.empty()) vo.cache_dir = cache_dir;
  if (co.cache_dir.empty()) co.cache_dir = cache_dir;
  try {
    if (*verify) return cmd_verify(vo);
    if (*compute) return cmd_compute(co);
    if (*cache) return cmd_cache(action, cache_dir);
    if (*list) {
      for (const auto& c : check_registry())
        std::printf("%-24s %s\n", c.id.c_str(), paper_map ? c.anchor.c_str() : c.summary.c_str());
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return 0;
}
