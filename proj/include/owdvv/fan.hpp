#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "owdvv/rationalfn.hpp"

namespace owdvv {

using Vec3 = std::array<long, 3>;
using Vec4 = std::array<long, 4>;

/// Aganagic-Vafa outer brane datum: the 2-cone met by the brane (1-based ray
/// indices into the input fan) and the framing integer.
struct Brane {
  std::array<int, 2> tau0{2, 3};
  int framing = 0;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// Raw fan input as read from a file or preset; 1-based indices.
struct FanInput {
  std::vector<Vec3> rays;
  std::vector<std::array<int, 3>> cones3;
  Brane brane;
};

FanInput preset_c3(int framing);
FanInput preset_conifold(int framing);
/// Parse the JSON fan schema {"rays": [...], "cones3": [...], "brane": {...}}.
FanInput parse_fan_file(const std::string& json_text);

/// A 2-cone of the 3-fold fan with its bordering 3-cones.
struct Wall3 {
  std::array<int, 2> rays;       // 0-based, sorted
  std::vector<int> cones;        // bordering 3-cone indices
  bool compact() const { return cones.size() == 2; }
};

/// Normalized smooth toric CY3 fan. Rays are in the paper's coordinates:
/// b1 = (1,0,1), b2 = (0,1,1), b3 = (0,0,1), tau0 = rays {2,3} (1-based),
/// sigma0 = cone index 0.
class Fan3 {
 public:
  std::vector<Vec3> rays;
  std::vector<std::array<int, 3>> cones3;  // each sorted; cone 0 is sigma0
  std::vector<Wall3> walls;
  std::vector<int> compact_walls;  // indices into walls
  int framing = 0;

  int num_rays() const { return (int)rays.size(); }
  int num_fixed_points() const { return (int)cones3.size(); }
  const Wall3* find_wall(int ra, int rb) const;
  int wall_index(int ra, int rb) const;
};

/// Validate the raw input (smoothness, CY, outer brane). Report-valued.
ValidationReport validate_cy3(const FanInput& input);

/// Relabel rays/cones and change N-basis so the paper's coordinates hold.
/// Requires validate_cy3(input).ok().
Fan3 normalize_fan(const FanInput& input);

/// A 3-cone of the 4-fold fan with its bordering 4-cones.
struct Wall4 {
  std::array<int, 3> rays;  // 0-based, sorted
  std::vector<int> cones;
  bool compact() const { return cones.size() == 2; }
};

/// The CY 4-fold fan of Tot(O_{X ⊔ D}(-D)).
/// Ray indices 0..R-1 are the 3-fold rays with last coordinate 0; ray R is
/// (-1,-f,1,1); ray R+1 is (0,0,1,1). 4-cone i < m is iota(cone3 i); the last
/// 4-cone is sigma0~ = {2,3,R+1,R+2} in 1-based labels.
class Fan4 {
 public:
  std::vector<Vec4> rays;
  std::vector<std::array<int, 4>> cones4;
  std::vector<Wall4> walls;
  std::vector<int> compact_walls;
  int framing = 0;

  int num_rays() const { return (int)rays.size(); }
  int num_fixed_points() const { return (int)cones4.size(); }
  int sigma0_tilde() const { return (int)cones4.size() - 1; }
  int wall_index(const std::array<int, 3>& rays_sorted) const;
};

Fan4 build_4fold(const Fan3& fan);

// ---------------------------------------------------------------------------
// Flags, weights, Euler classes. Weights live in the Calabi-Yau subtorus:
// the u3 component is dropped, so they are linear forms in u1, u2 (3-fold)
// or u1, u2, u4 (4-fold).

/// Weight of the flag (tau, sigma): the character that kills the rays of tau
/// and takes value 1 on the remaining ray of sigma.
RationalFn tangent_weight(const Fan3& fan, const std::array<int, 2>& tau_rays, int extra_ray);
RationalFn tangent_weight(const Fan4& fan, const std::array<int, 3>& tau_rays, int extra_ray);

/// Product of the tangent weights of all flags at the fixed point.
RationalFn fixed_point_euler(const Fan3& fan, int cone_index);
RationalFn fixed_point_euler(const Fan4& fan, int cone_index);

/// Degrees of the normal line bundle summands of a compact invariant curve,
/// ordered by the rays of the wall: the unique integers a_j with
/// v + v' + sum_j a_j w_j = 0.
std::vector<int> normal_degrees(const Fan3& fan, int wall_index);
std::vector<int> normal_degrees(const Fan4& fan, int wall_index);

// ---------------------------------------------------------------------------

/// Effective curve classes of the 4-fold in (beta, d) coordinates: beta in a
/// reduced integer basis of the span of compact 3-fold curve classes, d the
/// pairing with V(rho~_{R+1}).
class CurveClassLattice {
 public:
  int beta_rank = 0;
  int class_dim() const { return beta_rank + 1; }

  // class coordinates of each compact curve of the 4-fold, indexed as in
  // Fan4::compact_walls
  std::vector<std::vector<int>> curve_class;
  // full divisor pairing table: row per compact curve, column per ray of Fan4
  std::vector<std::vector<int>> divisor_pairing;

  // 3-fold data: class coordinates (beta only) of each compact 3-fold curve,
  // indexed as in Fan3::compact_walls
  std::vector<std::vector<int>> curve_class_3fold;
  std::vector<std::vector<int>> divisor_pairing_3fold;
};

CurveClassLattice curve_lattice(const Fan3& fan, const Fan4& fan4);

// ---------------------------------------------------------------------------
// Localization view: everything graph sums need, for either target.

struct CurveEnd {
  RationalFn tangent;                                // weight along the curve
  std::vector<std::pair<RationalFn, int>> normals;   // (weight, degree) summands
};

struct TargetCurve {
  int point_a = 0, point_b = 0;  // fixed point indices
  std::vector<int> cls;          // class coordinates, length = class_dim
  CurveEnd end_a, end_b;
};

/// Uniform localization target for X (dim 3, classes (beta,0)) or X~ (dim 4).
struct LocTarget {
  int dim = 3;
  int class_dim = 1;
  int num_points = 0;
  int special_point = -1;  // p~_{m+1} for the 4-fold, else -1
  std::vector<RationalFn> euler;
  std::vector<TargetCurve> curves;
};

/// 3-fold target; class coordinates are (beta, d) with d identically 0 so the
/// two targets share key shapes.
LocTarget make_target_3fold(const Fan3& fan, const CurveClassLattice& lat);
LocTarget make_target_4fold(const Fan4& fan4, const CurveClassLattice& lat);

/// Throws std::logic_error if the function involves u3.
void assert_u3_free(const RationalFn& fn, const std::string& where);

}  // namespace owdvv
