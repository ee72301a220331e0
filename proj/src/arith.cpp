#include "iwlab/arith.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace iwlab {

long gcd(long a, long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long lcm(long a, long b) { return a / gcd(a, b) * b; }

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

long mod_inverse(long a, long m) {
  long r0 = mod(a, m), r1 = m, s0 = 1, s1 = 0;
  while (r1) {
    long q = r0 / r1;
    long t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw DomainError("mod_inverse: " + std::to_string(a) + " not invertible mod " + std::to_string(m));
  return mod(s0, m);
}

long powmod(long a, long e, long m) {
  __int128 r = 1 % m, b = mod(a, m);
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<long>(r);
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<std::pair<long, int>> factorize(long m) {
  std::vector<std::pair<long, int>> f;
  for (long q = 2; q * q <= m; ++q) {
    if (m % q) continue;
    int k = 0;
    while (m % q == 0) {
      m /= q;
      ++k;
    }
    f.emplace_back(q, k);
  }
  if (m > 1) f.emplace_back(m, 1);
  return f;
}

std::vector<long> divisors(long m) {
  std::vector<long> out;
  for (long k = 1; k <= m; ++k)
    if (m % k == 0) out.push_back(k);
  return out;
}

long euler_phi(long m) {
  long r = m;
  for (auto [q, k] : factorize(m)) r = r / q * (q - 1);
  return r;
}

bool is_prime(long m) {
  if (m < 2) return false;
  for (long q = 2; q * q <= m; ++q)
    if (m % q == 0) return false;
  return true;
}

long primitive_root(long p, int k) {
  if (p == 2) return 1;
  long pk = ipow(p, k);
  long order = euler_phi(pk);
  auto f = factorize(order);
  for (long g = 2; g < pk; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto [q, e] : f) {
      if (powmod(g, order / q, pk) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw InternalError("no primitive root found");
}

namespace {

int moebius(long m) {
  int s = 1;
  for (auto [q, k] : factorize(m)) {
    if (k > 1) return 0;
    s = -s;
  }
  return s;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(long m) {
  static std::mutex mu;
  static std::map<long, std::unique_ptr<std::vector<long>>> table;
  std::lock_guard<std::mutex> lock(mu);
  auto it = table.find(m);
  if (it != table.end()) return *it->second;
  // Phi_m = prod_{k | m} (x^k - 1)^{mu(m/k)}: multiply the numerator factors, then divide
  std::vector<long> poly{1};
  std::vector<long> dens;
  for (long k : divisors(m)) {
    int mu_k = moebius(m / k);
    if (mu_k == 1) {
      std::vector<long> next(poly.size() + k, 0);
      for (size_t i = 0; i < poly.size(); ++i) {
        next[i + k] += poly[i];
        next[i] -= poly[i];
      }
      poly.swap(next);
    } else if (mu_k == -1) {
      dens.push_back(k);
    }
  }
  for (long k : dens) {
    // exact division by x^k - 1: q_i = q_{i-k} - poly_i, run from the bottom
    std::vector<long> q(poly.size() - k, 0);
    for (size_t i = 0; i < q.size(); ++i) q[i] = (i >= static_cast<size_t>(k) ? q[i - k] : 0) - poly[i];
    poly.swap(q);
  }
  auto [pos, inserted] = table.emplace(m, std::make_unique<std::vector<long>>(poly));
  return *pos->second;
}

Int pow_int(long b, unsigned long e) {
  Int r;
  if (b >= 0) {
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), e);
  } else {
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(-b), e);
    if (e & 1) r = -r;
  }
  return r;
}

int valuation(const Int& x, long p) {
  if (x == 0) throw DomainError("valuation of zero");
  Int t = x;
  int v = 0;
  Int pp = p;
  while (mpz_divisible_p(t.get_mpz_t(), pp.get_mpz_t())) {
    t /= pp;
    ++v;
  }
  return v;
}

int valuation(long x, long p) {
  if (x == 0) throw DomainError("valuation of zero");
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int inverse_mod(const Int& a, const Int& m) {
  Int r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t())) throw DomainError("inverse_mod: not invertible");
  return r;
}

Int binomial(long n, long k) {
  Int r;
  if (k < 0 || k > n) return 0;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rat bernoulli_number(int k) {
  static std::mutex mu;
  static std::vector<Rat> cache{Rat(1)};
  std::lock_guard<std::mutex> lock(mu);
  // B_m = -1/(m+1) sum_{j<m} C(m+1, j) B_j, giving B_1 = -1/2
  while (static_cast<int>(cache.size()) <= k) {
    int m = static_cast<int>(cache.size());
    Rat s = 0;
    for (int j = 0; j < m; ++j) s += Rat(binomial(m + 1, j)) * cache[j];
    Rat b = -s / Rat(m + 1);
    b.canonicalize();
    cache.push_back(b);
  }
  return cache[k];
}

std::vector<Rat> bernoulli_polynomial(int k) {
  std::vector<Rat> c(k + 1);
  for (int j = 0; j <= k; ++j) c[k - j] = Rat(binomial(k, j)) * bernoulli_number(j);
  return c;
}

std::string to_string(const Int& x) { return x.get_str(); }
std::string to_string(const Rat& x) { return x.get_str(); }

}  // namespace iwlab
