#include "dendro/groups.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include "dendro/util.hpp"

namespace dendro {

int FiniteGroup::inverse(int a) const {
  for (int b = 0; b < n; ++b)
    if (mul[a][b] == e) return b;
  throw std::logic_error("no inverse");
}

void FiniteGroup::validate() const {
  for (int a = 0; a < n; ++a) {
    if (mul[a][e] != a || mul[e][a] != a) throw std::logic_error("identity fails");
    inverse(a);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) throw std::logic_error("associativity fails");
}

FiniteGroup FiniteGroup::cyclic(int n) {
  FiniteGroup g;
  g.n = n;
  g.e = 0;
  g.name = "Z/" + std::to_string(n);
  g.mul.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul[a][b] = (a + b) % n;
  return g;
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  FiniteGroup g;
  g.n = a.n * b.n;
  g.e = a.e * b.n + b.e;
  g.name = a.name + "x" + b.name;
  g.mul.assign(g.n, std::vector<int>(g.n));
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y)
      g.mul[x][y] = a.mul[x / b.n][y / b.n] * b.n + b.mul[x % b.n][y % b.n];
  return g;
}

FiniteGroup FiniteGroup::klein4() {
  FiniteGroup g = product(cyclic(2), cyclic(2));
  g.name = "Z/2xZ/2";
  return g;
}

FiniteGroup FiniteGroup::symmetric3() {
  // permutations of {0,1,2} in lexicographic one-line order
  std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                         {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  FiniteGroup g;
  g.n = 6;
  g.e = 0;
  g.name = "S3";
  g.mul.assign(6, std::vector<int>(6));
  auto index = [&](const std::vector<int>& p) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), p) - perms.begin());
  };
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::vector<int> c(3);
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      g.mul[a][b] = index(c);
    }
  return g;
}

FiniteGroup FiniteGroup::dihedral4() {
  // r^4 = s^2 = e, s r s = r^{-1}; elements r^i s^j, index = i + 4j
  FiniteGroup g;
  g.n = 8;
  g.e = 0;
  g.name = "D4";
  g.mul.assign(8, std::vector<int>(8));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 2; ++l) {
          // (r^i s^j)(r^k s^l) = r^{i + k*(-1)^j} s^{j+l}
          int ri = ((i + (j ? -k : k)) % 4 + 4) % 4;
          int sj = (j + l) % 2;
          g.mul[i + 4 * j][k + 4 * l] = ri + 4 * sj;
        }
  return g;
}

FiniteGroup FiniteGroup::quaternion8() {
  // {1,-1,i,-i,j,-j,k,-k} as 0..7: sign = idx&1, axis = idx>>1 (0=1,1=i,2=j,3=k)
  auto enc = [](int axis, int sign) { return axis * 2 + sign; };
  FiniteGroup g;
  g.n = 8;
  g.e = 0;
  g.name = "Q8";
  g.mul.assign(8, std::vector<int>(8));
  // multiplication table of the axes with signs: i*j=k, j*k=i, k*i=j
  auto axis_mul = [&](int a, int b) -> std::pair<int, int> {
    if (a == 0) return {b, 0};
    if (b == 0) return {a, 0};
    if (a == b) return {0, 1};  // i*i = -1
    static const int res[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sgn[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    // sgn[a][b]: sign of product of axes a,b (i=1,j=2,k=3); filled from
    // i*j=k (+), j*i=-k, j*k=i (+), k*j=-i, k*i=j (+), i*k=-j
    return {res[a][b], sgn[a][b]};
  };
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      auto [axis, s] = axis_mul(a >> 1, b >> 1);
      int sign = ((a & 1) + (b & 1) + s) % 2;
      g.mul[a][b] = enc(axis, sign);
    }
  return g;
}

std::vector<FiniteGroup> FiniteGroup::all_of_order_up_to(int n) {
  std::vector<FiniteGroup> out;
  for (int k = 1; k <= n; ++k) out.push_back(cyclic(k));
  if (n >= 4) out.push_back(klein4());
  if (n >= 6) out.push_back(symmetric3());
  if (n >= 8) {
    auto z4z2 = product(cyclic(4), cyclic(2));
    out.push_back(z4z2);
    out.push_back(product(product(cyclic(2), cyclic(2)), cyclic(2)));
    out.push_back(dihedral4());
    out.push_back(quaternion8());
  }
  for (auto& g : out) g.validate();
  std::sort(out.begin(), out.end(),
            [](const FiniteGroup& a, const FiniteGroup& b) { return a.n < b.n; });
  return out;
}

bool groups_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.n != b.n) return false;
  // order profiles must match
  auto orders = [](const FiniteGroup& g) {
    std::vector<int> out;
    for (int x = 0; x < g.n; ++x) {
      int y = x, ord = 1;
      while (y != g.e) {
        y = g.mul[y][x];
        ++ord;
      }
      out.push_back(ord);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  if (orders(a) != orders(b)) return false;
  std::vector<int> perm(a.n, -1);
  std::vector<char> used(b.n, 0);
  std::function<bool(int)> rec = [&](int x) -> bool {
    if (x == a.n) return true;
    for (int y = 0; y < b.n; ++y) {
      if (used[y]) continue;
      perm[x] = y;
      used[y] = 1;
      bool ok = (x == a.e) == (y == b.e);
      for (int u = 0; u <= x && ok; ++u)
        for (int v = 0; v <= x && ok; ++v) {
          int uv = a.mul[u][v];
          if (uv <= x) ok = perm[uv] == b.mul[perm[u]][perm[v]];
        }
      if (ok && rec(x + 1)) return true;
      used[y] = 0;
      perm[x] = -1;
    }
    return false;
  };
  return rec(0);
}

PointedMagma magma_from_group(const FiniteGroup& g) {
  PointedMagma m;
  m.n = g.n;
  m.e = g.e;
  m.bracket.assign(g.n, std::vector<int>(g.n));
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) m.bracket[a][b] = g.mul[a][g.inverse(b)];
  return m;
}

HallReport hall_extract(const PointedMagma& m) {
  HallReport rep;
  auto br = [&](int a, int b) { return m.bracket[a][b]; };
  for (int a = 0; a < m.n; ++a) {
    if (br(a, m.e) != a) {
      rep.failed_relation = "[a,e] = a";
      rep.witness = {a};
      return rep;
    }
    if (br(a, a) != m.e) {
      rep.failed_relation = "[a,a] = e";
      rep.witness = {a};
      return rep;
    }
  }
  for (int a = 0; a < m.n; ++a)
    for (int b = 0; b < m.n; ++b)
      for (int c = 0; c < m.n; ++c)
        if (br(a, b) != br(br(a, c), br(b, c))) {
          rep.failed_relation = "[a,b] = [[a,c],[b,c]]";
          rep.witness = {a, b, c};
          return rep;
        }
  rep.relations_hold = true;

  // b^{-1} := [e,b], a*b := [a,[e,b]]
  FiniteGroup g;
  g.n = m.n;
  g.e = m.e;
  g.name = "extracted";
  g.mul.assign(m.n, std::vector<int>(m.n));
  for (int a = 0; a < m.n; ++a)
    for (int b = 0; b < m.n; ++b) g.mul[a][b] = br(a, br(m.e, b));
  try {
    g.validate();
    rep.group_axioms_hold = true;
  } catch (const std::logic_error&) {
    return rep;
  }
  rep.bracket_recovered = true;
  for (int a = 0; a < m.n; ++a)
    for (int b = 0; b < m.n; ++b)
      if (br(a, b) != g.mul[a][g.inverse(b)]) rep.bracket_recovered = false;
  rep.group = g;
  return rep;
}

HallSearchReport hall_search(int order, int jobs) {
  if (order < 1 || order > 4) throw std::invalid_argument("hall search supports orders 1..4");
  HallSearchReport rep;
  rep.order = order;

  // orders up to 3 are searched over every table; order 4 pins the e-column
  // and the diagonal first ([a,e] = a, [a,a] = e)
  bool pruned = order >= 4;
  std::vector<std::pair<int, int>> free_cells;
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (!pruned || (b != 0 && a != b)) free_cells.push_back({a, b});
  long total = 1;
  for (size_t i = 0; i < free_cells.size(); ++i) total *= order;

  std::vector<FiniteGroup> catalog = FiniteGroup::all_of_order_up_to(order);
  std::vector<FiniteGroup> found;
  std::vector<long> passing_per_job(std::max(jobs, 1), 0);
  std::vector<char> extract_ok_per_job(std::max(jobs, 1), 1);
  std::vector<std::vector<FiniteGroup>> found_per_job(std::max(jobs, 1));

  int workers = std::max(jobs, 1);
  long chunk = (total + workers - 1) / workers;
  parallel_for_indexed(workers, workers, [&](int w) {
    PointedMagma m;
    m.n = order;
    m.e = 0;
    m.bracket.assign(order, std::vector<int>(order));
    if (pruned)
      for (int a = 0; a < order; ++a) {
        m.bracket[a][0] = a;
        m.bracket[a][a] = 0;
      }
    for (long code = w * chunk; code < std::min(total, (w + 1) * chunk); ++code) {
      long c = code;
      for (auto& [a, b] : free_cells) {
        m.bracket[a][b] = static_cast<int>(c % order);
        c /= order;
      }
      auto rep1 = hall_extract(m);
      if (!rep1.relations_hold) continue;
      ++passing_per_job[w];
      if (!rep1.group_axioms_hold || !rep1.bracket_recovered) {
        extract_ok_per_job[w] = 0;
        continue;
      }
      bool known = false;
      for (auto& g : found_per_job[w]) known = known || groups_isomorphic(g, *rep1.group);
      if (!known) found_per_job[w].push_back(*rep1.group);
    }
  });
  rep.tables_checked = total;
  for (int w = 0; w < workers; ++w) {
    rep.passing += passing_per_job[w];
    rep.all_extract_to_groups = rep.all_extract_to_groups && extract_ok_per_job[w];
    for (auto& g : found_per_job[w]) {
      bool known = false;
      for (auto& h : found) known = known || groups_isomorphic(g, h);
      if (!known) found.push_back(g);
    }
  }
  // every abstract group of this order arises among the extracted ones
  rep.every_group_arises = true;
  for (auto& g : catalog) {
    if (g.n != order) continue;
    bool arises = false;
    for (auto& h : found) arises = arises || groups_isomorphic(g, h);
    rep.every_group_arises = rep.every_group_arises && arises;
  }
  for (auto& h : found) {
    for (auto& g : catalog)
      if (g.n == order && groups_isomorphic(g, h)) {
        rep.groups_found.push_back(g.name);
        break;
      }
  }
  std::sort(rep.groups_found.begin(), rep.groups_found.end());
  return rep;
}

void SimplicialTruncation::validate() const {
  for (int m = 1; m <= k; ++m)
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j <= m; ++j)
        for (int x = 0; x < level_sizes[m]; ++x)
          if (m >= 2 && face[m - 1][i][face[m][j][x]] != face[m - 1][j - 1][face[m][i][x]])
            throw std::logic_error("simplicial identity d_i d_j fails");
  for (int m = 0; m < k; ++m)
    for (int i = 0; i <= m; ++i)
      for (int x = 0; x < level_sizes[m]; ++x) {
        if (face[m + 1][i][degen[m][i][x]] != x) throw std::logic_error("d_i s_i fails");
        if (face[m + 1][i + 1][degen[m][i][x]] != x) throw std::logic_error("d_{i+1} s_i fails");
      }
}

SimplicialTruncation SimplicialTruncation::nerve_of_monoid(
    const std::vector<std::vector<int>>& mul, int e, int k) {
  int n = static_cast<int>(mul.size());
  SimplicialTruncation x;
  x.k = k;
  auto size = [&](int m) {
    long s = 1;
    for (int i = 0; i < m; ++i) s *= n;
    return static_cast<int>(s);
  };
  for (int m = 0; m <= k; ++m) x.level_sizes.push_back(size(m));
  auto decode = [&](int m, int idx) {
    std::vector<int> word(m);
    for (int i = m - 1; i >= 0; --i) {
      word[i] = idx % n;
      idx /= n;
    }
    return word;
  };
  auto encode = [&](const std::vector<int>& w) {
    int idx = 0;
    for (int g : w) idx = idx * n + g;
    return idx;
  };
  x.face.resize(k + 1);
  x.degen.resize(k + 1);
  for (int m = 1; m <= k; ++m) {
    x.face[m].assign(m + 1, std::vector<int>(x.level_sizes[m]));
    for (int idx = 0; idx < x.level_sizes[m]; ++idx) {
      auto w = decode(m, idx);
      for (int i = 0; i <= m; ++i) {
        std::vector<int> out;
        if (i == 0)
          out.assign(w.begin() + 1, w.end());
        else if (i == m)
          out.assign(w.begin(), w.end() - 1);
        else {
          out = w;
          out[i - 1] = mul[w[i - 1]][w[i]];
          out.erase(out.begin() + i);
        }
        x.face[m][i][idx] = encode(out);
      }
    }
  }
  for (int m = 0; m < k; ++m) {
    x.degen[m].assign(m + 1, std::vector<int>(x.level_sizes[m]));
    for (int idx = 0; idx < x.level_sizes[m]; ++idx) {
      auto w = decode(m, idx);
      for (int i = 0; i <= m; ++i) {
        auto out = w;
        out.insert(out.begin() + i, e);
        x.degen[m][i][idx] = encode(out);
      }
    }
  }
  x.validate();
  return x;
}

BousfieldReport bousfield_psi(const SimplicialTruncation& x, int n) {
  if (n < 2 || n > x.k) throw std::invalid_argument("need 2 <= n <= truncation level");
  BousfieldReport rep;
  rep.n = n;
  // restriction along gamma^k: keep vertices {0, k+1}; drop the others by
  // face maps from the top
  auto edge_restrict = [&](int simplex, int kk) {
    std::vector<int> vertices;
    for (int i = 0; i <= n; ++i) vertices.push_back(i);
    int cur = simplex;
    int level = n;
    while (level > 1) {
      // remove the last vertex not in {0, kk+1}
      int pos = -1;
      for (int i = static_cast<int>(vertices.size()) - 1; i >= 0; --i)
        if (vertices[i] != 0 && vertices[i] != kk + 1) {
          pos = i;
          break;
        }
      cur = x.face[level][pos][cur];
      vertices.erase(vertices.begin() + pos);
      --level;
    }
    return cur;
  };
  std::set<std::vector<int>> image;
  bool injective = true;
  long target = 1;
  for (int i = 0; i < n; ++i) target *= x.level_sizes[1];
  for (int s = 0; s < x.level_sizes[n]; ++s) {
    std::vector<int> tuple;
    for (int kk = 0; kk < n; ++kk) tuple.push_back(edge_restrict(s, kk));
    injective = injective && image.insert(tuple).second;
    rep.map.push_back(tuple);
  }
  rep.injective = injective;
  rep.surjective = static_cast<long>(image.size()) == target;
  rep.bijective = rep.injective && rep.surjective;
  return rep;
}

}  // namespace dendro
