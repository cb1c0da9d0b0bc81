#include "prolim/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace prolim {

Polynomial trim(Polynomial p) {
  while (!p.empty() && p.back() == 0) {
    p.pop_back();
  }
  return p;
}

long degree(const Polynomial& p) { return static_cast<long>(p.size()) - 1; }

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  Polynomial out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return trim(std::move(out));
}

Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
  Polynomial out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return trim(std::move(out));
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) {
    return {};
  }
  Polynomial out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return trim(std::move(out));
}

Polynomial derivative(const Polynomial& p) {
  if (p.size() <= 1) {
    return {};
  }
  Polynomial out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) {
    out[i - 1] = p[i] * static_cast<long long>(i);
  }
  return trim(std::move(out));
}

Integer content(const Polynomial& p) {
  Integer g = 0;
  for (const auto& c : p) {
    g = gcd(g, c);
  }
  return g;
}

Polynomial primitive_part(const Polynomial& p) {
  Polynomial q = trim(p);
  if (q.empty()) {
    return q;
  }
  Integer c = content(q);
  if (q.back() < 0) {
    c = -c;
  }
  for (auto& v : q) {
    v /= c;
  }
  return q;
}

std::optional<Polynomial> exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.empty()) {
    throw std::invalid_argument("exact_divide: division by zero polynomial");
  }
  Polynomial r = trim(a);
  if (r.empty()) {
    return Polynomial{};
  }
  if (r.size() < b.size()) {
    return std::nullopt;
  }
  Polynomial q(r.size() - b.size() + 1);
  while (!r.empty() && r.size() >= b.size()) {
    if (r.back() % b.back() != 0) {
      return std::nullopt;
    }
    const Integer factor = r.back() / b.back();
    const std::size_t shift = r.size() - b.size();
    q[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) {
      r[shift + i] -= factor * b[i];
    }
    r = trim(std::move(r));
  }
  if (!r.empty()) {
    return std::nullopt;
  }
  return trim(std::move(q));
}

namespace {

// Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) * a mod b.
Polynomial pseudo_remainder(Polynomial a, const Polynomial& b) {
  a = trim(std::move(a));
  while (!a.empty() && a.size() >= b.size()) {
    const Integer lead = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& v : a) {
      v *= b.back();
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] -= lead * b[i];
    }
    a = trim(std::move(a));
  }
  return a;
}

}  // namespace

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = primitive_part(a);
  Polynomial y = primitive_part(b);
  if (x.empty()) return y;
  if (y.empty()) return x;
  if (x.size() < y.size()) {
    std::swap(x, y);
  }
  while (!y.empty()) {
    Polynomial r = primitive_part(pseudo_remainder(x, y));
    x = std::move(y);
    y = std::move(r);
  }
  return primitive_part(x);
}

Polynomial characteristic_polynomial(const Matrix& a) {
  if (!a.is_square()) {
    throw std::invalid_argument("characteristic_polynomial: matrix not square");
  }
  // Faddeev-LeVerrier; every division below is exact over Z.
  const std::size_t n = a.rows();
  Polynomial c(n + 1);
  c[n] = 1;
  Matrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) += c[n - k + 1];
    }
    const Matrix am = a * m;
    Integer trace = 0;
    for (std::size_t i = 0; i < n; ++i) {
      trace += am(i, i);
    }
    c[n - k] = -trace / static_cast<long long>(k);
  }
  return c;
}

Polynomial squarefree_part(const Polynomial& p) {
  const Polynomial f = primitive_part(p);
  if (degree(f) <= 0) {
    return f;
  }
  const Polynomial g = poly_gcd(f, derivative(f));
  auto q = exact_divide(f, g);
  if (!q) {
    throw std::logic_error("squarefree_part: gcd does not divide");
  }
  return primitive_part(*q);
}

namespace {

// Polynomials with coefficients reduced modulo m.
Polynomial reduce_mod(const Polynomial& p, const Integer& m) {
  Polynomial out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] = mod_floor(p[i], m);
  }
  return trim(std::move(out));
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  const ExtendedGcd e = extended_gcd(mod_floor(a, m), m);
  if (e.g != 1) {
    throw std::logic_error("inverse_mod: not invertible");
  }
  return mod_floor(e.x, m);
}

Polynomial mul_mod(const Polynomial& a, const Polynomial& b, const Integer& m) {
  return reduce_mod(poly_mul(a, b), m);
}

// Division with remainder by b modulo m; lc(b) must be invertible mod m.
std::pair<Polynomial, Polynomial> divmod_mod(const Polynomial& a, const Polynomial& b, const Integer& m) {
  Polynomial r = reduce_mod(a, m);
  if (b.empty()) {
    throw std::invalid_argument("divmod_mod: zero divisor");
  }
  const Integer inv = inverse_mod(b.back(), m);
  Polynomial q(r.size() >= b.size() ? r.size() - b.size() + 1 : 0);
  while (!r.empty() && r.size() >= b.size()) {
    const Integer factor = mod_floor(r.back() * inv, m);
    const std::size_t shift = r.size() - b.size();
    q[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) {
      r[shift + i] = mod_floor(r[shift + i] - factor * b[i], m);
    }
    r = trim(std::move(r));
  }
  return {trim(std::move(q)), r};
}

Polynomial make_monic_mod(const Polynomial& a, const Integer& m) {
  if (a.empty()) {
    return a;
  }
  const Integer inv = inverse_mod(a.back(), m);
  Polynomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = mod_floor(a[i] * inv, m);
  }
  return trim(std::move(out));
}

// Monic gcd over F_p.
Polynomial gcd_mod_p(Polynomial a, Polynomial b, const Integer& p) {
  a = reduce_mod(a, p);
  b = reduce_mod(b, p);
  while (!b.empty()) {
    Polynomial r = divmod_mod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic_mod(a, p);
}

struct BezoutModP {
  Polynomial s;
  Polynomial t;
};

// s*a + t*b == 1 over F_p, for coprime a and b.
BezoutModP bezout_mod_p(const Polynomial& a, const Polynomial& b, const Integer& p) {
  Polynomial r0 = reduce_mod(a, p), r1 = reduce_mod(b, p);
  Polynomial s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod_mod(r0, r1, p);
    Polynomial s2 = reduce_mod(poly_sub(s0, poly_mul(q, s1)), p);
    Polynomial t2 = reduce_mod(poly_sub(t0, poly_mul(q, t1)), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) {
    throw std::logic_error("bezout_mod_p: inputs not coprime");
  }
  const Integer inv = inverse_mod(r0[0], p);
  for (auto& v : s0) v = mod_floor(v * inv, p);
  for (auto& v : t0) v = mod_floor(v * inv, p);
  return {trim(std::move(s0)), trim(std::move(t0))};
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Null space basis of a square matrix over F_p (columns of the result).
std::vector<Vector> nullspace_mod_p(std::vector<Vector> rows, const Integer& p) {
  const std::size_t n = rows.empty() ? 0 : rows[0].size();
  std::vector<long> pivot_of_col(n, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t pick = r;
    while (pick < rows.size() && mod_floor(rows[pick][c], p) == 0) ++pick;
    if (pick == rows.size()) continue;
    std::swap(rows[r], rows[pick]);
    const Integer inv = inverse_mod(rows[r][c], p);
    for (auto& v : rows[r]) v = mod_floor(v * inv, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Integer f = rows[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        rows[i][j] = mod_floor(rows[i][j] - f * rows[r][j], p);
      }
    }
    pivot_of_col[c] = static_cast<long>(r);
    ++r;
  }
  std::vector<Vector> basis;
  for (std::size_t free_col = 0; free_col < n; ++free_col) {
    if (pivot_of_col[free_col] >= 0) continue;
    Vector v(n);
    v[free_col] = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (pivot_of_col[c] >= 0) {
        v[c] = mod_floor(-rows[static_cast<std::size_t>(pivot_of_col[c])][free_col], p);
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Berlekamp factorization of a monic squarefree polynomial over F_p.
std::vector<Polynomial> berlekamp(const Polynomial& f, const Integer& p) {
  const std::size_t n = static_cast<std::size_t>(degree(f));
  if (n <= 1) {
    return {f};
  }
  // Column i holds x^(i p) mod f; the fixed space of Frobenius is ker(Q - I).
  std::vector<Vector> q_minus_i(n, Vector(n));
  Polynomial xp = divmod_mod(Polynomial{0, 1}, f, p).second;
  {
    Polynomial base = xp;
    Polynomial acc{1};
    unsigned long e = p.convert_to<unsigned long>();
    while (e > 0) {
      if (e & 1UL) acc = divmod_mod(poly_mul(acc, base), f, p).second;
      base = divmod_mod(poly_mul(base, base), f, p).second;
      e >>= 1UL;
    }
    xp = acc;
  }
  Polynomial power{1};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      q_minus_i[j][i] = j < power.size() ? power[j] : Integer(0);
    }
    q_minus_i[i][i] = mod_floor(q_minus_i[i][i] - 1, p);
    power = divmod_mod(poly_mul(power, xp), f, p).second;
  }
  const std::vector<Vector> kernel = nullspace_mod_p(q_minus_i, p);
  const std::size_t count = kernel.size();
  std::vector<Polynomial> factors{f};
  for (const auto& v : kernel) {
    if (factors.size() == count) break;
    const Polynomial vp = trim(v);
    if (degree(vp) <= 0) continue;
    std::vector<Polynomial> next;
    for (const auto& g : factors) {
      if (degree(g) <= 1) {
        next.push_back(g);
        continue;
      }
      Polynomial rest = g;
      for (Integer s = 0; s < p && degree(rest) > 1; ++s) {
        Polynomial shifted = vp;
        shifted[0] = mod_floor(shifted[0] - s, p);
        const Polynomial h = gcd_mod_p(rest, shifted, p);
        if (degree(h) > 0 && degree(h) < degree(rest)) {
          next.push_back(h);
          rest = make_monic_mod(divmod_mod(rest, h, p).first, p);
        }
      }
      next.push_back(rest);
    }
    factors = std::move(next);
  }
  if (factors.size() != count) {
    throw std::logic_error("berlekamp: incomplete splitting");
  }
  return factors;
}

Polynomial product_mod(const std::vector<Polynomial>& fs, std::size_t begin, std::size_t end, const Integer& m) {
  Polynomial acc{1};
  for (std::size_t i = begin; i < end; ++i) {
    acc = mul_mod(acc, fs[i], m);
  }
  return acc;
}

// Lift F == g0 * h0 (mod p) to F == g * h (mod p^k), g and h monic; F monic.
std::pair<Polynomial, Polynomial> hensel_two(const Polynomial& big_f, const Polynomial& g0, const Polynomial& h0,
                                             const Integer& p, unsigned k) {
  const BezoutModP st = bezout_mod_p(g0, h0, p);
  Polynomial g = g0, h = h0;
  Integer m = p;
  for (unsigned j = 1; j < k; ++j) {
    Polynomial diff = poly_sub(big_f, poly_mul(g, h));
    for (auto& v : diff) {
      v /= m;  // exact: F == g h (mod p^j)
    }
    const Polynomial e = reduce_mod(diff, p);
    auto [q, sigma] = divmod_mod(poly_mul(st.s, e), h, p);
    const Polynomial tau = reduce_mod(poly_add(poly_mul(st.t, e), poly_mul(q, g)), p);
    const Integer next = m * p;
    g = reduce_mod(poly_add(g, poly_mul(Polynomial{m}, tau)), next);
    h = reduce_mod(poly_add(h, poly_mul(Polynomial{m}, sigma)), next);
    m = next;
  }
  return {g, h};
}

void lift_all(const Polynomial& big_f, const std::vector<Polynomial>& mod_p_factors, std::size_t begin,
              std::size_t end, const Integer& p, unsigned k, std::vector<Polynomial>& out) {
  if (end - begin == 1) {
    out.push_back(big_f);
    return;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  const Polynomial g0 = product_mod(mod_p_factors, begin, mid, p);
  const Polynomial h0 = product_mod(mod_p_factors, mid, end, p);
  auto [g, h] = hensel_two(big_f, g0, h0, p, k);
  lift_all(g, mod_p_factors, begin, mid, p, k, out);
  lift_all(h, mod_p_factors, mid, end, p, k, out);
}

Polynomial symmetric_mod(const Polynomial& a, const Integer& m) {
  Polynomial out(a.size());
  const Integer half = m / 2;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Integer v = mod_floor(a[i], m);
    if (v > half) v -= m;
    out[i] = std::move(v);
  }
  return trim(std::move(out));
}

// Zassenhaus: factor a primitive squarefree polynomial of degree >= 2.
std::vector<Polynomial> factor_squarefree(Polynomial f) {
  if (degree(f) <= 1) {
    return {f};
  }
  Integer p = 0;
  for (unsigned long cand = 3;; cand += 2) {
    if (!is_prime(cand)) continue;
    const Integer pc = cand;
    if (f.back() % pc == 0) continue;
    const Polynomial fm = make_monic_mod(reduce_mod(f, pc), pc);
    if (degree(gcd_mod_p(fm, derivative(fm), pc)) == 0) {
      p = pc;
      break;
    }
  }
  const Polynomial f_monic_p = make_monic_mod(reduce_mod(f, p), p);
  std::vector<Polynomial> mod_p = berlekamp(f_monic_p, p);
  if (mod_p.size() == 1) {
    return {f};
  }

  Integer max_coeff = 0;
  for (const auto& c : f) max_coeff = std::max(max_coeff, abs_value(c));
  const long n = degree(f);
  const Integer bound = abs_value(f.back()) * (Integer(1) << n) * (n + 1) * max_coeff;
  unsigned k = 1;
  Integer modulus = p;
  while (modulus <= 2 * bound) {
    modulus *= p;
    ++k;
  }
  const Polynomial big_f = make_monic_mod(reduce_mod(f, modulus), modulus);
  std::vector<Polynomial> lifted;
  lift_all(big_f, mod_p, 0, mod_p.size(), p, k, lifted);

  std::vector<Polynomial> result;
  std::size_t subset_size = 1;
  while (2 * subset_size <= lifted.size()) {
    bool found = false;
    const std::size_t r = lifted.size();
    std::vector<bool> pick(r, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(subset_size), true);
    do {
      Polynomial cand{f.back()};
      for (std::size_t i = 0; i < r; ++i) {
        if (pick[i]) cand = mul_mod(cand, lifted[i], modulus);
      }
      cand = primitive_part(symmetric_mod(cand, modulus));
      if (auto q = exact_divide(f, cand)) {
        result.push_back(cand);
        f = primitive_part(*q);
        std::vector<Polynomial> rest;
        for (std::size_t i = 0; i < r; ++i) {
          if (!pick[i]) rest.push_back(lifted[i]);
        }
        lifted = std::move(rest);
        found = true;
        break;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (!found) {
      ++subset_size;
    }
  }
  if (degree(f) > 0) {
    result.push_back(primitive_part(f));
  }
  return result;
}

}  // namespace

std::vector<Polynomial> irreducible_factors(const Polynomial& p) {
  const Polynomial f = squarefree_part(p);
  if (degree(f) <= 0) {
    return {};
  }
  std::vector<Polynomial> out;
  // Pull out the factor x first; it would otherwise spoil the lifting bound.
  Polynomial g = f;
  if (g.front() == 0) {
    out.push_back(Polynomial{0, 1});
    g.erase(g.begin());
    g = primitive_part(g);
  }
  if (degree(g) > 0) {
    for (auto& q : factor_squarefree(g)) {
      out.push_back(std::move(q));
    }
  }
  std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return out;
}

Matrix evaluate(const Polynomial& p, const Matrix& a) {
  if (!a.is_square()) {
    throw std::invalid_argument("evaluate: matrix not square");
  }
  Matrix acc(a.rows(), a.cols());
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = a * acc;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      acc(i, i) += *it;
    }
  }
  return acc;
}

}  // namespace prolim
