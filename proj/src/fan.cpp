#include "owdvv/fan.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace owdvv {

namespace {

long det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

/// Unique solution of A x = b over the rationals; nullopt if singular or
/// inconsistent. A is row-major, possibly more rows than columns.
std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
  const int rows = (int)a.size();
  const int cols = rows ? (int)a[0].size() : 0;
  int rank = 0;
  std::vector<int> pivot_col;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = -1;
    for (int r = rank; r < rows; ++r)
      if (!a[r][c].is_zero()) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(a[rank], a[p]);
    std::swap(b[rank], b[p]);
    Rational inv = a[rank][c].inverse();
    for (int cc = c; cc < cols; ++cc) a[rank][cc] *= inv;
    b[rank] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || a[r][c].is_zero()) continue;
      Rational factor = a[r][c];
      for (int cc = c; cc < cols; ++cc) a[r][cc] -= factor * a[rank][cc];
      b[r] -= factor * b[rank];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  if (rank < cols) return std::nullopt;
  for (int r = rank; r < rows; ++r)
    if (!b[r].is_zero()) return std::nullopt;
  std::vector<Rational> x(cols);
  for (int i = 0; i < rank; ++i) x[pivot_col[i]] = b[i];
  return x;
}

std::vector<int> as_int_solution(const std::vector<Rational>& x, const std::string& where) {
  std::vector<int> out;
  out.reserve(x.size());
  for (const Rational& v : x) {
    if (!v.is_integer()) throw std::logic_error(where + ": non-integral solution");
    out.push_back((int)mpz_get_si(v.numerator().get_mpz_t()));
  }
  return out;
}

std::vector<Wall3> collect_walls3(const std::vector<std::array<int, 3>>& cones) {
  std::map<std::array<int, 2>, std::vector<int>> acc;
  for (int ci = 0; ci < (int)cones.size(); ++ci) {
    const auto& c = cones[ci];
    acc[{c[0], c[1]}].push_back(ci);
    acc[{c[0], c[2]}].push_back(ci);
    acc[{c[1], c[2]}].push_back(ci);
  }
  std::vector<Wall3> walls;
  walls.reserve(acc.size());
  for (const auto& [rays, cs] : acc) walls.push_back(Wall3{rays, cs});
  return walls;
}

}  // namespace

std::string ValidationReport::to_string() const {
  if (ok()) return "valid";
  std::ostringstream out;
  for (const auto& v : violations) out << "violation: " << v << "\n";
  return out.str();
}

FanInput preset_c3(int framing) {
  FanInput in;
  in.rays = {{1, 0, 1}, {0, 1, 1}, {0, 0, 1}};
  in.cones3 = {{1, 2, 3}};
  in.brane = Brane{{2, 3}, framing};
  return in;
}

FanInput preset_conifold(int framing) {
  FanInput in;
  in.rays = {{1, 0, 1}, {0, 1, 1}, {0, 0, 1}, {1, 1, 1}};
  in.cones3 = {{1, 2, 3}, {1, 2, 4}};
  in.brane = Brane{{2, 3}, framing};
  return in;
}

FanInput parse_fan_file(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  FanInput in;
  for (const auto& ray : j.at("rays")) {
    if (!ray.is_array() || ray.size() != 3)
      throw std::invalid_argument("fan file: each ray needs exactly 3 integer components");
    in.rays.push_back({ray[0].get<long>(), ray[1].get<long>(), ray[2].get<long>()});
  }
  for (const auto& cone : j.at("cones3")) {
    if (!cone.is_array() || cone.size() != 3)
      throw std::invalid_argument("fan file: each 3-cone needs exactly 3 ray indices");
    in.cones3.push_back({cone[0].get<int>(), cone[1].get<int>(), cone[2].get<int>()});
  }
  const auto& brane = j.at("brane");
  const auto& tau = brane.at("tau0");
  if (!tau.is_array() || tau.size() != 2)
    throw std::invalid_argument("fan file: brane.tau0 needs exactly 2 ray indices");
  in.brane.tau0 = {tau[0].get<int>(), tau[1].get<int>()};
  if (brane.contains("framing")) in.brane.framing = brane.at("framing").get<int>();
  return in;
}

ValidationReport validate_cy3(const FanInput& input) {
  ValidationReport rep;
  auto add = [&rep](const std::string& v) { rep.violations.push_back(v); };
  const int R = (int)input.rays.size();
  if (R < 3) add("need at least 3 rays");
  if (input.cones3.empty()) add("need at least one 3-cone");

  for (int i = 0; i < R; ++i)
    if (input.rays[i][2] != 1)
      add("Calabi-Yau violation: ray " + std::to_string(i + 1) + " has third coordinate " +
          std::to_string(input.rays[i][2]) + ", expected 1");
  for (int i = 0; i < R; ++i)
    for (int k = i + 1; k < R; ++k)
      if (input.rays[i] == input.rays[k])
        add("duplicate rays " + std::to_string(i + 1) + ", " + std::to_string(k + 1));

  std::vector<std::array<int, 3>> cones;
  std::vector<bool> ray_used(R, false);
  for (const auto& raw : input.cones3) {
    std::array<int, 3> c = raw;
    std::sort(c.begin(), c.end());
    if (c[0] < 1 || c[2] > R || c[0] == c[1] || c[1] == c[2]) {
      add("bad 3-cone {" + std::to_string(raw[0]) + "," + std::to_string(raw[1]) + "," +
          std::to_string(raw[2]) + "}");
      continue;
    }
    for (int r : c) ray_used[r - 1] = true;
    long d = det3(input.rays[c[0] - 1], input.rays[c[1] - 1], input.rays[c[2] - 1]);
    if (d != 1 && d != -1)
      add("smoothness violation: 3-cone {" + std::to_string(c[0]) + "," + std::to_string(c[1]) +
          "," + std::to_string(c[2]) + "} has determinant " + std::to_string(d));
    cones.push_back(c);
  }
  for (int i = 0; i < R; ++i)
    if (!ray_used[i]) add("ray " + std::to_string(i + 1) + " is not a face of any 3-cone");

  // wall adjacency
  std::map<std::array<int, 2>, int> border_count;
  for (const auto& c : cones) {
    ++border_count[{c[0], c[1]}];
    ++border_count[{c[0], c[2]}];
    ++border_count[{c[1], c[2]}];
  }
  for (const auto& [w, n] : border_count)
    if (n > 2)
      add("2-cone {" + std::to_string(w[0]) + "," + std::to_string(w[1]) + "} borders " +
          std::to_string(n) + " 3-cones");

  // brane
  std::array<int, 2> tau = input.brane.tau0;
  std::sort(tau.begin(), tau.end());
  if (tau[0] < 1 || tau[1] > R || tau[0] == tau[1]) {
    add("brane tau0 indices out of range");
  } else {
    auto it = border_count.find(tau);
    if (it == border_count.end())
      add("brane tau0 {" + std::to_string(tau[0]) + "," + std::to_string(tau[1]) +
          "} is not a 2-cone of the fan");
    else if (it->second != 1)
      add("brane is not outer: tau0 borders " + std::to_string(it->second) +
          " 3-cones (expected 1)");
  }

  if (!rep.ok()) return rep;

  // paper-coordinate check: after relabeling, all rays must satisfy m_i >= 0.
  // This is the computable consequence of the outer-brane assumption in the
  // semi-projective compactification.
  Fan3 fan = normalize_fan(input);
  for (int i = 0; i < fan.num_rays(); ++i)
    if (fan.rays[i][0] < 0)
      add("outer-brane violation: ray " + std::to_string(i + 1) +
          " has m = " + std::to_string(fan.rays[i][0]) + " < 0 in paper coordinates");
  return rep;
}

Fan3 normalize_fan(const FanInput& input) {
  const int R = (int)input.rays.size();
  std::array<int, 2> tau = input.brane.tau0;
  std::sort(tau.begin(), tau.end());

  // locate sigma0, the unique 3-cone containing tau0
  int sigma0_in = -1;
  for (int ci = 0; ci < (int)input.cones3.size(); ++ci) {
    const auto& raw = input.cones3[ci];
    int hits = 0;
    for (int r : raw) hits += (r == tau[0] || r == tau[1]);
    if (hits == 2) {
      sigma0_in = ci;
      break;
    }
  }
  if (sigma0_in < 0) throw std::invalid_argument("normalize_fan: tau0 not contained in a 3-cone");
  int third = -1;
  for (int r : input.cones3[sigma0_in])
    if (r != tau[0] && r != tau[1]) third = r;

  // ray permutation: new 1-based order (third, tau0[0], tau0[1], rest)
  std::vector<int> order = {third, input.brane.tau0[0], input.brane.tau0[1]};
  for (int r = 1; r <= R; ++r)
    if (r != third && r != tau[0] && r != tau[1]) order.push_back(r);
  std::vector<int> new_index(R + 1, 0);  // old 1-based -> new 0-based
  for (int i = 0; i < R; ++i) new_index[order[i]] = i;

  // change of basis: M sends (b1', b2', b3') to (1,0,1), (0,1,1), (0,0,1)
  Vec3 a0 = input.rays[order[0] - 1], a1 = input.rays[order[1] - 1], a2 = input.rays[order[2] - 1];
  long det = det3(a0, a1, a2);
  if (det != 1 && det != -1) throw std::invalid_argument("normalize_fan: sigma0 is not smooth");
  // inverse of A = [a0 a1 a2] (columns) via adjugate
  long A[3][3] = {{a0[0], a1[0], a2[0]}, {a0[1], a1[1], a2[1]}, {a0[2], a1[2], a2[2]}};
  long inv[3][3];
  inv[0][0] = (A[1][1] * A[2][2] - A[1][2] * A[2][1]) / det;
  inv[0][1] = -(A[0][1] * A[2][2] - A[0][2] * A[2][1]) / det;
  inv[0][2] = (A[0][1] * A[1][2] - A[0][2] * A[1][1]) / det;
  inv[1][0] = -(A[1][0] * A[2][2] - A[1][2] * A[2][0]) / det;
  inv[1][1] = (A[0][0] * A[2][2] - A[0][2] * A[2][0]) / det;
  inv[1][2] = -(A[0][0] * A[1][2] - A[0][2] * A[1][0]) / det;
  inv[2][0] = (A[1][0] * A[2][1] - A[1][1] * A[2][0]) / det;
  inv[2][1] = -(A[0][0] * A[2][1] - A[0][1] * A[2][0]) / det;
  inv[2][2] = (A[0][0] * A[1][1] - A[0][1] * A[1][0]) / det;
  const long U[3][3] = {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}};  // columns (1,0,1),(0,1,1),(0,0,1)
  long M[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      M[i][j] = 0;
      for (int k = 0; k < 3; ++k) M[i][j] += U[i][k] * inv[k][j];
    }

  Fan3 fan;
  fan.framing = input.brane.framing;
  fan.rays.resize(R);
  for (int old1 = 1; old1 <= R; ++old1) {
    const Vec3& b = input.rays[old1 - 1];
    Vec3 nb{0, 0, 0};
    for (int i = 0; i < 3; ++i) nb[i] = M[i][0] * b[0] + M[i][1] * b[1] + M[i][2] * b[2];
    fan.rays[new_index[old1]] = nb;
  }
  for (const auto& raw : input.cones3) {
    std::array<int, 3> c = {new_index[raw[0]], new_index[raw[1]], new_index[raw[2]]};
    std::sort(c.begin(), c.end());
    fan.cones3.push_back(c);
  }
  fan.walls = collect_walls3(fan.cones3);
  for (int wi = 0; wi < (int)fan.walls.size(); ++wi)
    if (fan.walls[wi].compact()) fan.compact_walls.push_back(wi);
  return fan;
}

const Wall3* Fan3::find_wall(int ra, int rb) const {
  int wi = wall_index(ra, rb);
  return wi < 0 ? nullptr : &walls[wi];
}

int Fan3::wall_index(int ra, int rb) const {
  if (ra > rb) std::swap(ra, rb);
  for (int wi = 0; wi < (int)walls.size(); ++wi)
    if (walls[wi].rays == std::array<int, 2>{ra, rb}) return wi;
  return -1;
}

int Fan4::wall_index(const std::array<int, 3>& rays_sorted) const {
  for (int wi = 0; wi < (int)walls.size(); ++wi)
    if (walls[wi].rays == rays_sorted) return wi;
  return -1;
}

Fan4 build_4fold(const Fan3& fan) {
  Fan4 f4;
  f4.framing = fan.framing;
  const int R = fan.num_rays();
  for (const Vec3& b : fan.rays) f4.rays.push_back({b[0], b[1], b[2], 0});
  f4.rays.push_back({-1, -(long)fan.framing, 1, 1});  // b~_{R+1}
  f4.rays.push_back({0, 0, 1, 1});                    // b~_{R+2}

  for (const auto& c : fan.cones3) {
    std::array<int, 4> c4 = {c[0], c[1], c[2], R + 1};
    f4.cones4.push_back(c4);
  }
  f4.cones4.push_back({1, 2, R, R + 1});  // sigma0~ : rays b2, b3, b~_{R+1}, b~_{R+2}

  std::map<std::array<int, 3>, std::vector<int>> acc;
  for (int ci = 0; ci < (int)f4.cones4.size(); ++ci) {
    const auto& c = f4.cones4[ci];
    for (int drop = 0; drop < 4; ++drop) {
      std::array<int, 3> w;
      int k = 0;
      for (int i = 0; i < 4; ++i)
        if (i != drop) w[k++] = c[i];
      acc[w].push_back(ci);
    }
  }
  for (const auto& [rays, cs] : acc) f4.walls.push_back(Wall4{rays, cs});
  for (int wi = 0; wi < (int)f4.walls.size(); ++wi)
    if (f4.walls[wi].compact()) f4.compact_walls.push_back(wi);
  return f4;
}

namespace {

RationalFn weight_from_solution(const std::vector<Rational>& w, int lattice_dim) {
  // drop the u3 component: the weight lives on the Calabi-Yau subtorus
  Poly p;
  p += Poly::variable(U1).scaled(w[0]);
  p += Poly::variable(U2).scaled(w[1]);
  if (lattice_dim == 4) p += Poly::variable(U4).scaled(w[3]);
  return RationalFn(p);
}

}  // namespace

RationalFn tangent_weight(const Fan3& fan, const std::array<int, 2>& tau_rays, int extra_ray) {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (int r : tau_rays) {
    const Vec3& ray = fan.rays[r];
    a.push_back({Rational(ray[0]), Rational(ray[1]), Rational(ray[2])});
    b.push_back(Rational(0));
  }
  const Vec3& e = fan.rays[extra_ray];
  a.push_back({Rational(e[0]), Rational(e[1]), Rational(e[2])});
  b.push_back(Rational(1));
  auto sol = solve_linear(std::move(a), std::move(b));
  if (!sol) throw std::logic_error("tangent_weight: singular flag system");
  for (const Rational& c : *sol)
    if (!c.is_integer()) throw std::logic_error("tangent_weight: non-integral character");
  return weight_from_solution(*sol, 3);
}

RationalFn tangent_weight(const Fan4& fan, const std::array<int, 3>& tau_rays, int extra_ray) {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (int r : tau_rays) {
    const Vec4& ray = fan.rays[r];
    a.push_back({Rational(ray[0]), Rational(ray[1]), Rational(ray[2]), Rational(ray[3])});
    b.push_back(Rational(0));
  }
  const Vec4& e = fan.rays[extra_ray];
  a.push_back({Rational(e[0]), Rational(e[1]), Rational(e[2]), Rational(e[3])});
  b.push_back(Rational(1));
  auto sol = solve_linear(std::move(a), std::move(b));
  if (!sol) throw std::logic_error("tangent_weight: singular flag system");
  for (const Rational& c : *sol)
    if (!c.is_integer()) throw std::logic_error("tangent_weight: non-integral character");
  return weight_from_solution(*sol, 4);
}

RationalFn fixed_point_euler(const Fan3& fan, int cone_index) {
  const auto& c = fan.cones3[cone_index];
  RationalFn prod(Rational(1));
  for (int drop = 0; drop < 3; ++drop) {
    std::array<int, 2> tau;
    int k = 0;
    for (int i = 0; i < 3; ++i)
      if (i != drop) tau[k++] = c[i];
    prod = prod * tangent_weight(fan, tau, c[drop]);
  }
  return prod;
}

RationalFn fixed_point_euler(const Fan4& fan, int cone_index) {
  const auto& c = fan.cones4[cone_index];
  RationalFn prod(Rational(1));
  for (int drop = 0; drop < 4; ++drop) {
    std::array<int, 3> tau;
    int k = 0;
    for (int i = 0; i < 4; ++i)
      if (i != drop) tau[k++] = c[i];
    prod = prod * tangent_weight(fan, tau, c[drop]);
  }
  return prod;
}

namespace {

template <class FanT, class VecT, int Dim>
std::vector<int> normal_degrees_impl(const FanT& fan, const std::array<int, Dim - 1>& wall_rays,
                                     int va, int vb) {
  // solve v + v' + sum_j a_j w_j = 0
  std::vector<std::vector<Rational>> a(Dim, std::vector<Rational>(Dim - 1));
  std::vector<Rational> b(Dim);
  for (int j = 0; j < Dim - 1; ++j) {
    const VecT& w = fan.rays[wall_rays[j]];
    for (int i = 0; i < Dim; ++i) a[i][j] = Rational(w[i]);
  }
  for (int i = 0; i < Dim; ++i) b[i] = Rational(-(fan.rays[va][i] + fan.rays[vb][i]));
  auto sol = solve_linear(std::move(a), std::move(b));
  if (!sol) throw std::logic_error("normal_degrees: wall relation unsolvable");
  return as_int_solution(*sol, "normal_degrees");
}

int outward_ray(const std::vector<int>& cone, const int* wall, int wall_len) {
  for (int r : cone) {
    bool in_wall = false;
    for (int i = 0; i < wall_len; ++i)
      if (wall[i] == r) in_wall = true;
    if (!in_wall) return r;
  }
  throw std::logic_error("outward_ray: wall not contained in cone");
}

}  // namespace

std::vector<int> normal_degrees(const Fan3& fan, int wall_index) {
  const Wall3& w = fan.walls[wall_index];
  if (!w.compact()) throw std::invalid_argument("normal_degrees: curve is not compact");
  const auto& ca = fan.cones3[w.cones[0]];
  const auto& cb = fan.cones3[w.cones[1]];
  int va = outward_ray({ca.begin(), ca.end()}, w.rays.data(), 2);
  int vb = outward_ray({cb.begin(), cb.end()}, w.rays.data(), 2);
  return normal_degrees_impl<Fan3, Vec3, 3>(fan, w.rays, va, vb);
}

std::vector<int> normal_degrees(const Fan4& fan, int wall_index) {
  const Wall4& w = fan.walls[wall_index];
  if (!w.compact()) throw std::invalid_argument("normal_degrees: curve is not compact");
  const auto& ca = fan.cones4[w.cones[0]];
  const auto& cb = fan.cones4[w.cones[1]];
  int va = outward_ray({ca.begin(), ca.end()}, w.rays.data(), 3);
  int vb = outward_ray({cb.begin(), cb.end()}, w.rays.data(), 3);
  return normal_degrees_impl<Fan4, Vec4, 4>(fan, w.rays, va, vb);
}

// ---------------------------------------------------------------------------

namespace {

/// Integer coordinates of v in the span of the basis rows; nullopt if v is
/// outside the span or the coordinates are not integral.
std::optional<std::vector<int>> coords_in_basis(const std::vector<std::vector<long>>& basis,
                                                const std::vector<long>& v) {
  if (basis.empty()) {
    for (long x : v)
      if (x != 0) return std::nullopt;
    return std::vector<int>{};
  }
  const int cols = (int)v.size();
  std::vector<std::vector<Rational>> a(cols, std::vector<Rational>(basis.size()));
  std::vector<Rational> b(cols);
  for (int c = 0; c < cols; ++c) {
    for (int k = 0; k < (int)basis.size(); ++k) a[c][k] = Rational(basis[k][c]);
    b[c] = Rational(v[c]);
  }
  auto sol = solve_linear(std::move(a), std::move(b));
  if (!sol) return std::nullopt;
  for (const Rational& x : *sol)
    if (!x.is_integer()) return std::nullopt;
  std::vector<int> coords;
  coords.reserve(sol->size());
  for (const Rational& x : *sol) coords.push_back((int)mpz_get_si(x.numerator().get_mpz_t()));
  return coords;
}

std::vector<long> wall_relation3(const Fan3& fan, int wall_index) {
  const Wall3& w = fan.walls[wall_index];
  std::vector<long> rel(fan.num_rays(), 0);
  const auto& ca = fan.cones3[w.cones[0]];
  const auto& cb = fan.cones3[w.cones[1]];
  rel[outward_ray({ca.begin(), ca.end()}, w.rays.data(), 2)] += 1;
  rel[outward_ray({cb.begin(), cb.end()}, w.rays.data(), 2)] += 1;
  std::vector<int> degs = normal_degrees(fan, wall_index);
  for (int j = 0; j < 2; ++j) rel[w.rays[j]] += degs[j];
  return rel;
}

std::vector<long> wall_relation4(const Fan4& fan, int wall_index) {
  const Wall4& w = fan.walls[wall_index];
  std::vector<long> rel(fan.num_rays(), 0);
  const auto& ca = fan.cones4[w.cones[0]];
  const auto& cb = fan.cones4[w.cones[1]];
  rel[outward_ray({ca.begin(), ca.end()}, w.rays.data(), 3)] += 1;
  rel[outward_ray({cb.begin(), cb.end()}, w.rays.data(), 3)] += 1;
  std::vector<int> degs = normal_degrees(fan, wall_index);
  for (int j = 0; j < 3; ++j) rel[w.rays[j]] += degs[j];
  return rel;
}

}  // namespace

CurveClassLattice curve_lattice(const Fan3& fan, const Fan4& fan4) {
  CurveClassLattice lat;
  const int R = fan.num_rays();

  std::vector<std::vector<long>> rels3;
  for (int wi : fan.compact_walls) {
    rels3.push_back(wall_relation3(fan, wi));
    lat.divisor_pairing_3fold.push_back(
        std::vector<int>(rels3.back().begin(), rels3.back().end()));
  }
  // generators: the first compact-curve classes that are independent, so every
  // generator is itself effective
  std::vector<std::vector<long>> basis;
  for (const auto& rel : rels3) {
    // rel is independent of the current basis iff it has no rational expansion
    std::vector<std::vector<Rational>> a(rel.size(), std::vector<Rational>(basis.size()));
    std::vector<Rational> b(rel.size());
    for (int c = 0; c < (int)rel.size(); ++c) {
      for (int k = 0; k < (int)basis.size(); ++k) a[c][k] = Rational(basis[k][c]);
      b[c] = Rational(rel[c]);
    }
    if (!solve_linear(std::move(a), std::move(b))) basis.push_back(rel);
  }
  lat.beta_rank = (int)basis.size();

  for (const auto& rel : rels3) {
    auto coords = coords_in_basis(basis, rel);
    if (!coords) throw std::logic_error("curve_lattice: 3-fold curve outside its own lattice");
    lat.curve_class_3fold.push_back(*coords);
  }

  // the disk curve's relation, used below to peel the d-component off
  int disk_wall = fan4.wall_index({1, 2, R + 1});
  if (disk_wall < 0) throw std::logic_error("curve_lattice: missing iota(tau0) wall");
  std::vector<long> disk_rel = wall_relation4(fan4, disk_wall);

  for (int wi : fan4.compact_walls) {
    std::vector<long> rel = wall_relation4(fan4, wi);
    lat.divisor_pairing.push_back(std::vector<int>(rel.begin(), rel.end()));
    long d = rel[R];  // pairing with V(rho~_{R+1})
    std::vector<long> beta_part(R);
    for (int c = 0; c < R; ++c) beta_part[c] = rel[c] - d * disk_rel[c];
    // the remaining new-ray pairings must cancel too
    if (rel[R + 1] - d * disk_rel[R + 1] != 0)
      throw std::logic_error("curve_lattice: unexpected pairing with the zero section");
    std::vector<long> beta_full = beta_part;
    auto coords = coords_in_basis(basis, beta_full);
    if (!coords)
      throw std::logic_error("curve_lattice: 4-fold curve class outside E(X) + Z[B]");
    std::vector<int> cls = *coords;
    cls.push_back((int)d);
    for (int x : cls)
      if (x < 0)
        throw std::logic_error(
            "curve_lattice: compact curve with negative class coordinate in the chosen basis");
    lat.curve_class.push_back(cls);
  }
  return lat;
}

// ---------------------------------------------------------------------------

namespace {

template <class FanT, int Dim>
CurveEnd make_end(const FanT& fan, const std::array<int, Dim - 1>& wall_rays,
                  const std::array<int, Dim>& cone, const std::vector<int>& degs) {
  CurveEnd end;
  int v = outward_ray({cone.begin(), cone.end()}, wall_rays.data(), Dim - 1);
  end.tangent = tangent_weight(fan, wall_rays, v);
  // normal flags: drop each wall ray in turn
  for (int j = 0; j < Dim - 1; ++j) {
    std::array<int, Dim - 1> facet;
    int k = 0;
    for (int i = 0; i < Dim; ++i)
      if (cone[i] != wall_rays[j]) facet[k++] = cone[i];
    end.normals.emplace_back(tangent_weight(fan, facet, wall_rays[j]), degs[j]);
  }
  return end;
}

}  // namespace

LocTarget make_target_3fold(const Fan3& fan, const CurveClassLattice& lat) {
  LocTarget t;
  t.dim = 3;
  t.class_dim = lat.class_dim();
  t.num_points = fan.num_fixed_points();
  for (int ci = 0; ci < fan.num_fixed_points(); ++ci) {
    RationalFn e = fixed_point_euler(fan, ci);
    assert_u3_free(e, "3-fold Euler class");
    t.euler.push_back(e);
  }
  for (int k = 0; k < (int)fan.compact_walls.size(); ++k) {
    int wi = fan.compact_walls[k];
    const Wall3& w = fan.walls[wi];
    std::vector<int> degs = normal_degrees(fan, wi);
    TargetCurve c;
    c.point_a = w.cones[0];
    c.point_b = w.cones[1];
    c.cls = lat.curve_class_3fold[k];
    c.cls.push_back(0);  // d-slot
    c.end_a = make_end<Fan3, 3>(fan, w.rays, fan.cones3[w.cones[0]], degs);
    c.end_b = make_end<Fan3, 3>(fan, w.rays, fan.cones3[w.cones[1]], degs);
    t.curves.push_back(std::move(c));
  }
  return t;
}

LocTarget make_target_4fold(const Fan4& fan4, const CurveClassLattice& lat) {
  LocTarget t;
  t.dim = 4;
  t.class_dim = lat.class_dim();
  t.num_points = fan4.num_fixed_points();
  t.special_point = fan4.sigma0_tilde();
  for (int ci = 0; ci < fan4.num_fixed_points(); ++ci) {
    RationalFn e = fixed_point_euler(fan4, ci);
    assert_u3_free(e, "4-fold Euler class");
    t.euler.push_back(e);
  }
  for (int k = 0; k < (int)fan4.compact_walls.size(); ++k) {
    int wi = fan4.compact_walls[k];
    const Wall4& w = fan4.walls[wi];
    std::vector<int> degs = normal_degrees(fan4, wi);
    TargetCurve c;
    c.point_a = w.cones[0];
    c.point_b = w.cones[1];
    c.cls = lat.curve_class[k];
    c.end_a = make_end<Fan4, 4>(fan4, w.rays, fan4.cones4[w.cones[0]], degs);
    c.end_b = make_end<Fan4, 4>(fan4, w.rays, fan4.cones4[w.cones[1]], degs);
    t.curves.push_back(std::move(c));
  }
  return t;
}

void assert_u3_free(const RationalFn& fn, const std::string& where) {
  if (fn.depends_on(U3)) throw std::logic_error(where + ": unexpected u3 dependence");
}

}  // namespace owdvv
