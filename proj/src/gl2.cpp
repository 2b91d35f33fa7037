#include "tckit/gl2.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>

namespace tc::gl2 {

namespace {

std::uint32_t reduce(std::int64_t v, std::uint32_t n) {
  std::int64_t r = v % static_cast<std::int64_t>(n);
  if (r < 0) r += n;
  return static_cast<std::uint32_t>(r);
}

// Extended Euclid inverse mod n; unit existence is the caller's invariant.
std::uint32_t unit_inverse(std::uint32_t a, std::uint32_t n) {
  if (n == 1) return 0;
  std::int64_t t = 0, newt = 1, r = n, newr = a % n;
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw_bad_input("unit_inverse: not a unit");
  return reduce(t, n);
}

std::vector<std::uint32_t> unit_group_generators(std::uint32_t n) {
  // Greedy generating set of (Z/n)^*, fine for the small moduli used here.
  if (n <= 2) return {};
  std::vector<std::uint32_t> units;
  for (std::uint32_t u = 1; u < n; ++u)
    if (std::gcd(u, n) == 1) units.push_back(u);
  std::set<std::uint32_t> have{1 % n};
  std::vector<std::uint32_t> gens;
  for (std::uint32_t u : units) {
    if (have.count(u)) continue;
    gens.push_back(u);
    // extend the generated subgroup
    std::set<std::uint32_t> next = have;
    std::deque<std::uint32_t> queue(have.begin(), have.end());
    while (!queue.empty()) {
      std::uint32_t x = queue.front();
      queue.pop_front();
      std::uint64_t y = x;
      for (;;) {
        y = y * u % n;
        if (!next.insert(static_cast<std::uint32_t>(y)).second) break;
        queue.push_back(static_cast<std::uint32_t>(y));
      }
    }
    have = std::move(next);
    if (have.size() == units.size()) break;
  }
  return gens;
}

}  // namespace

Mat make_mat(std::uint32_t n, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  if (n == 0) throw_bad_input("make_mat: modulus must be >= 1");
  if (n > 0xffff) throw_resource("make_mat: explicit matrices need modulus < 2^16");
  Mat m;
  m.n = n;
  m.e = {reduce(a, n), reduce(b, n), reduce(c, n), reduce(d, n)};
  return m;
}

Mat identity(std::uint32_t n) { return make_mat(n, 1, 0, 0, 1); }

Mat mul(const Mat& x, const Mat& y) {
  const std::uint64_t n = x.n;
  Mat r;
  r.n = x.n;
  r.e[0] = static_cast<std::uint32_t>((std::uint64_t(x.e[0]) * y.e[0] + std::uint64_t(x.e[1]) * y.e[2]) % n);
  r.e[1] = static_cast<std::uint32_t>((std::uint64_t(x.e[0]) * y.e[1] + std::uint64_t(x.e[1]) * y.e[3]) % n);
  r.e[2] = static_cast<std::uint32_t>((std::uint64_t(x.e[2]) * y.e[0] + std::uint64_t(x.e[3]) * y.e[2]) % n);
  r.e[3] = static_cast<std::uint32_t>((std::uint64_t(x.e[2]) * y.e[1] + std::uint64_t(x.e[3]) * y.e[3]) % n);
  return r;
}

std::uint32_t det(const Mat& x) {
  const std::uint64_t n = x.n;
  std::uint64_t ad = std::uint64_t(x.e[0]) * x.e[3] % n;
  std::uint64_t bc = std::uint64_t(x.e[1]) * x.e[2] % n;
  return static_cast<std::uint32_t>((ad + n - bc) % n);
}

std::uint32_t trace(const Mat& x) {
  return (x.e[0] + x.e[3]) % x.n;
}

bool is_invertible(const Mat& x) {
  return x.n == 1 || std::gcd(det(x), x.n) == 1;
}

Mat inverse(const Mat& x) {
  std::int64_t d = unit_inverse(det(x), x.n);
  return make_mat(x.n, d * x.e[3], -d * static_cast<std::int64_t>(x.e[1]),
                  -d * static_cast<std::int64_t>(x.e[2]), d * x.e[0]);
}

Mat project(const Mat& x, std::uint32_t d) {
  if (d == 0 || x.n % d != 0) throw_bad_input("project: d must divide the modulus");
  Mat r;
  r.n = d;
  for (int i = 0; i < 4; ++i) r.e[i] = x.e[i] % d;
  return r;
}

bool Subgroup::contains_all(const Subgroup& other) const {
  for (const Mat& m : other.elements)
    if (!contains(m)) return false;
  return true;
}

BigNat gl2_order(std::uint64_t n) { return gl2_order(factorize(n)); }

BigNat gl2_order(const Factorization& f) {
  BigNat o(1);
  for (auto [p, k] : f.pairs) {
    o *= BigNat::pow(p, 4 * (static_cast<std::uint64_t>(k) - 1));
    // (p^2 - 1)(p^2 - p) = (p-1)^2 p (p+1), kept in factored u64 pieces
    o *= p - 1;
    o *= p - 1;
    o *= p;
    o *= p + 1;
  }
  return o;
}

Subgroup reduction_kernel(std::uint64_t p, std::uint32_t alpha, std::uint32_t level) {
  if (level != alpha + 1 && level != alpha + 2)
    throw_bad_input("reduction_kernel: level must be alpha+1 or alpha+2");
  std::uint64_t mod = 1;
  for (std::uint32_t i = 0; i < level; ++i) {
    mod *= p;
    if (mod > 0xffff) throw_resource("reduction_kernel: modulus beyond machine range");
  }
  std::uint64_t scale = mod / p;  // p^{level-1}
  auto n = static_cast<std::uint32_t>(mod);

  Subgroup k;
  k.n = n;
  for (std::uint64_t a = 0; a < p; ++a)
    for (std::uint64_t b = 0; b < p; ++b)
      for (std::uint64_t c = 0; c < p; ++c)
        for (std::uint64_t d = 0; d < p; ++d) {
          Mat m = make_mat(n, 1 + static_cast<std::int64_t>(a * scale),
                           static_cast<std::int64_t>(b * scale),
                           static_cast<std::int64_t>(c * scale),
                           1 + static_cast<std::int64_t>(d * scale));
          k.elements.insert(m);
        }
  // I + p^{level-1} E_ij generate the kernel
  k.generators.push_back(make_mat(n, 1 + static_cast<std::int64_t>(scale), 0, 0, 1));
  k.generators.push_back(make_mat(n, 1, static_cast<std::int64_t>(scale), 0, 1));
  k.generators.push_back(make_mat(n, 1, 0, static_cast<std::int64_t>(scale), 1));
  k.generators.push_back(make_mat(n, 1, 0, 0, 1 + static_cast<std::int64_t>(scale)));
  return k;
}

Subgroup subgroup_closure(std::vector<Mat> generators, std::size_t budget) {
  if (generators.empty()) throw_bad_input("subgroup_closure: no generators");
  std::uint32_t n = generators[0].n;
  for (const Mat& g : generators) {
    if (g.n != n) throw_bad_input("subgroup_closure: mixed moduli");
    if (!is_invertible(g)) throw_bad_input("subgroup_closure: generator not in GL2");
  }
  Subgroup s;
  s.n = n;
  s.generators = generators;
  s.elements.insert(identity(n));
  std::deque<Mat> queue{identity(n)};
  while (!queue.empty()) {
    Mat m = queue.front();
    queue.pop_front();
    for (const Mat& g : s.generators) {
      Mat q = mul(m, g);
      if (s.elements.insert(q).second) {
        if (s.elements.size() > budget) throw_resource("subgroup_closure: budget exceeded");
        queue.push_back(q);
      }
    }
  }
  return s;
}

Subgroup full_gl2(std::uint32_t n) {
  Subgroup g;
  g.n = n;
  if (n == 1) {
    g.elements.insert(identity(1));
    g.generators.push_back(identity(1));
    return g;
  }
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b)
      for (std::uint64_t c = 0; c < n; ++c)
        for (std::uint64_t d = 0; d < n; ++d) {
          Mat m = make_mat(n, a, b, c, d);
          if (is_invertible(m)) g.elements.insert(m);
        }
  // SL2 is generated by the elementary matrices; diagonal units fill det out.
  g.generators.push_back(make_mat(n, 1, 1, 0, 1));
  g.generators.push_back(make_mat(n, 1, 0, 1, 1));
  for (std::uint32_t u : unit_group_generators(n))
    g.generators.push_back(make_mat(n, u, 0, 0, 1));
  return g;
}

Subgroup sl2(std::uint32_t n) {
  Subgroup g;
  g.n = n;
  if (n == 1) {
    g.elements.insert(identity(1));
    g.generators.push_back(identity(1));
    return g;
  }
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b)
      for (std::uint64_t c = 0; c < n; ++c)
        for (std::uint64_t d = 0; d < n; ++d) {
          Mat m = make_mat(n, a, b, c, d);
          if (det(m) == 1 % n) g.elements.insert(m);
        }
  g.generators.push_back(make_mat(n, 1, 1, 0, 1));
  g.generators.push_back(make_mat(n, 1, 0, 1, 1));
  return g;
}

namespace {

// Extends `seeds` to the smallest subgroup normalized by conj_gens.
Subgroup normal_closure(std::uint32_t n, std::vector<Mat> seeds,
                        const std::vector<Mat>& conj_gens, std::size_t budget) {
  if (seeds.empty()) {
    Subgroup t;
    t.n = n;
    t.elements.insert(identity(n));
    t.generators.push_back(identity(n));
    return t;
  }
  Subgroup h = subgroup_closure(seeds, budget);
  std::vector<std::pair<Mat, Mat>> conj;
  conj.reserve(conj_gens.size());
  for (const Mat& g : conj_gens) conj.emplace_back(g, inverse(g));
  // Each round adds one escaping conjugate and re-closes; every proper
  // extension at least doubles the subgroup, so rounds stay logarithmic.
  for (;;) {
    const Mat* extra = nullptr;
    Mat escape;
    for (const auto& [g, gi] : conj) {
      for (const Mat& x : h.elements) {
        Mat y = mul(mul(g, x), gi);
        if (!h.contains(y)) {
          escape = y;
          extra = &escape;
          break;
        }
      }
      if (extra) break;
    }
    if (!extra) return h;
    h.generators.push_back(escape);
    h = subgroup_closure(h.generators, budget);
  }
}

}  // namespace

Subgroup commutator_subgroup(const Subgroup& g, std::size_t budget) {
  std::vector<Mat> seeds;
  for (const Mat& a : g.generators)
    for (const Mat& b : g.generators) {
      Mat c = mul(mul(a, b), mul(inverse(a), inverse(b)));
      if (!(c == identity(g.n))) seeds.push_back(c);
    }
  return normal_closure(g.n, seeds, g.generators, budget);
}

namespace {

std::vector<std::vector<Mat>> conjugacy_classes(const Subgroup& g) {
  std::vector<std::pair<Mat, Mat>> elems_inv;
  elems_inv.reserve(g.size());
  for (const Mat& x : g.elements) elems_inv.emplace_back(x, inverse(x));
  MatSet seen;
  std::vector<std::vector<Mat>> classes;
  for (const Mat& x : g.elements) {
    if (seen.count(x)) continue;
    std::vector<Mat> cls;
    for (const auto& [t, ti] : elems_inv) {
      Mat y = mul(mul(t, x), ti);
      if (seen.insert(y).second) cls.push_back(y);
    }
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<std::uint64_t> canonical_key(const Subgroup& s) {
  std::vector<std::uint64_t> k;
  k.reserve(s.size());
  for (const Mat& m : s.elements) k.push_back(m.key());
  std::sort(k.begin(), k.end());
  return k;
}

}  // namespace

std::vector<Subgroup> normal_subgroups(const Subgroup& g, std::size_t max_order) {
  if (g.size() > max_order) throw_resource("normal_subgroups: group exceeds enumeration budget");
  auto classes = conjugacy_classes(g);

  std::vector<Subgroup> found;
  std::set<std::vector<std::uint64_t>> keys;
  std::deque<std::size_t> work;

  Subgroup triv;
  triv.n = g.n;
  triv.elements.insert(identity(g.n));
  triv.generators.push_back(identity(g.n));
  keys.insert(canonical_key(triv));
  found.push_back(std::move(triv));
  work.push_back(0);

  // Lattice walk: grow each normal subgroup by one conjugacy class at a time.
  while (!work.empty()) {
    std::size_t idx = work.front();
    work.pop_front();
    for (const auto& cls : classes) {
      if (found[idx].contains(cls.front())) continue;
      std::vector<Mat> seeds = found[idx].generators;
      seeds.push_back(cls.front());
      Subgroup h = normal_closure(g.n, seeds, g.generators, g.size());
      auto k = canonical_key(h);
      if (keys.insert(std::move(k)).second) {
        found.push_back(std::move(h));
        work.push_back(found.size() - 1);
      }
    }
  }
  return found;
}

const char* simple_group_name(SimpleGroupId id) {
  switch (id) {
    case SimpleGroupId::PSL2_5: return "PSL2(F5)";   // = A5
    case SimpleGroupId::PSL2_7: return "PSL2(F7)";
    case SimpleGroupId::PSL2_8: return "PSL2(F8)";
    case SimpleGroupId::PSL2_9: return "PSL2(F9)";   // = A6
    case SimpleGroupId::PSL2_11: return "PSL2(F11)";
  }
  return "?";
}

std::uint64_t simple_group_order(SimpleGroupId id) {
  switch (id) {
    case SimpleGroupId::PSL2_5: return 60;
    case SimpleGroupId::PSL2_7: return 168;
    case SimpleGroupId::PSL2_8: return 504;
    case SimpleGroupId::PSL2_9: return 360;
    case SimpleGroupId::PSL2_11: return 660;
  }
  return 0;
}

std::optional<SimpleGroupId> simple_group_by_order(std::uint64_t order) {
  switch (order) {
    case 60: return SimpleGroupId::PSL2_5;
    case 168: return SimpleGroupId::PSL2_7;
    case 504: return SimpleGroupId::PSL2_8;
    case 360: return SimpleGroupId::PSL2_9;
    case 660: return SimpleGroupId::PSL2_11;
    default: return std::nullopt;
  }
}

std::set<SimpleGroupId> simple_nonabelian_quotients(const Subgroup& g,
                                                    std::size_t normal_budget,
                                                    std::size_t closure_budget) {
  std::set<SimpleGroupId> out;
  auto normals = normal_subgroups(g, normal_budget);
  Subgroup derived = commutator_subgroup(g, closure_budget);

  for (const auto& n : normals) {
    if (n.size() == g.size()) continue;
    // g/n simple iff n is maximal among proper normal subgroups
    bool maximal = true;
    for (const auto& m : normals) {
      if (m.size() <= n.size() || m.size() == g.size()) continue;
      if (m.contains_all(n)) {
        maximal = false;
        break;
      }
    }
    if (!maximal) continue;
    // non-abelian iff the derived subgroup does not collapse into n
    if (n.contains_all(derived)) continue;
    std::uint64_t q = g.size() / n.size();
    auto id = simple_group_by_order(q);
    if (!id) throw_internal("simple quotient of unrecognized order " + std::to_string(q));
    out.insert(*id);
  }
  return out;
}

std::set<SimpleGroupId> occ_search(std::uint32_t modulus, std::size_t samples,
                                   std::uint64_t seed, std::size_t normal_budget,
                                   std::size_t closure_budget) {
  std::set<SimpleGroupId> out;
  if (modulus <= 1) return out;
  std::mt19937_64 rng(seed);
  auto random_element = [&]() {
    for (;;) {
      Mat m = make_mat(modulus, static_cast<std::int64_t>(rng() % modulus),
                       static_cast<std::int64_t>(rng() % modulus),
                       static_cast<std::int64_t>(rng() % modulus),
                       static_cast<std::int64_t>(rng() % modulus));
      if (is_invertible(m)) return m;
    }
  };
  for (std::size_t i = 0; i < samples; ++i) {
    Mat a = random_element(), b = random_element();
    Subgroup h;
    try {
      h = subgroup_closure({a, b}, closure_budget);
    } catch (const Error&) {
      continue;  // closure budget blown; skip the sample
    }
    if (h.size() > normal_budget) continue;
    auto q = simple_nonabelian_quotients(h, normal_budget, closure_budget);
    out.insert(q.begin(), q.end());
  }
  return out;
}

}  // namespace tc::gl2
