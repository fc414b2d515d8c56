#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "carnot/coordinates.hpp"
#include "carnot/frame.hpp"
#include "carnot/nilpotent.hpp"

namespace carnot {

struct DirectionSlope {
  /// Least-squares slope of log||t^{-1}.f(t.d)|| against log t.
  double slope = 0.0;
  /// Every sample in this direction was exactly zero.
  bool exact = false;
  std::vector<double> norms;
};

struct ScalingReport {
  int m = 1;
  std::vector<double> t_grid;
  std::vector<DirectionSlope> directions;
  bool pass = true;
};

/// norms[d][i] is the dilated residual norm in direction d at t_grid[i].
ScalingReport scaling_report(const std::vector<std::vector<double>>& norms, const std::vector<double>& t_grid, int m);

using NumericMap = std::function<std::vector<double>(std::span<const double>)>;
using ExactMap = std::function<Point(const Point&)>;

/// Samples f(t.d) and tests ||t^{-1}.f(t.d)|| = O(t^m); t^{-1} acts with the
/// output weights. Euclidean norm.
ScalingReport ow_scaling_test(const NumericMap& f, const WeightVector& in_w, const WeightVector& out_w, int m,
                              const std::vector<std::vector<double>>& directions, const std::vector<double>& t_grid);
/// Same with exact rational sampling and dilation.
ScalingReport ow_scaling_test_exact(const ExactMap& f, const WeightVector& in_w, const WeightVector& out_w, int m,
                                    const std::vector<Point>& directions, const std::vector<Rational>& t_grid,
                                    bool parallel = true);

/// t = 2^{-1}, ..., 2^{-count}.
std::vector<Rational> dyadic_grid(int count);

struct Witness {
  std::string identity;
  std::string residual;
};

struct VerificationReport {
  std::string check;
  bool pass = true;
  std::vector<Witness> witnesses;
  std::string frame_id;
  Point base_point;
  std::vector<std::pair<std::string, ScalingReport>> scaling;

  void fail(std::string identity, std::string residual) {
    pass = false;
    witnesses.push_back({std::move(identity), std::move(residual)});
  }
};

/// Frame plus the data every check against it needs.
class FrameContext {
 public:
  explicit FrameContext(Frame frame, std::string id = {});

  const Frame& frame() const { return frame_; }
  const std::string& id() const { return id_; }
  const BracketTable& table() const { return table_; }
  /// Left-invariant fields of the tangent group at the base point.
  const std::vector<VectorField>& target() const { return target_; }
  const GroupLaw& group() const { return group_; }
  const EpsilonPipeline& pipeline() const { return pipeline_; }
  const CoordinateChange& epsilon() const { return pipeline_.change; }

 private:
  Frame frame_;
  std::string id_;
  BracketTable table_;
  GroupLaw group_;
  std::vector<VectorField> target_;
  EpsilonPipeline pipeline_;
};

/// Pushed X_j(0) = d_j and weight exactly -w_j for every j, plus the order
/// of every coordinate function equal to w_k.
VerificationReport check_privileged(const FrameContext& ctx, const CoordinateChange& change);
/// Privileged and degree -w_j part of each pushed X_j equal to X_j^a.
/// A failure lists the deviation of change o eps_a^{-1} from the identity
/// in monomials of weight <= w_k.
VerificationReport check_carnot(const FrameContext& ctx, const CoordinateChange& change);

/// (hom + perturbation - id) o change. hom must be w-homogeneous with
/// identity differential, perturbation in O_w(||x||^{w+1}).
CoordinateChange generate_privileged_variant(const CoordinateChange& change, const PolyMap& hom,
                                             const PolyMap& perturbation);
/// (id + perturbation) o change.
CoordinateChange generate_carnot_variant(const CoordinateChange& change, const PolyMap& perturbation);

/// Component k equals x_k plus monomials of weight exactly w_k, |alpha| >= 2.
bool is_homogeneous_unipotent(const PolyMap& m, const WeightVector& w);

struct OsculationOptions {
  std::vector<Point> directions;  // points of R^{2n} = (x, y)
  std::vector<Rational> t_grid = dyadic_grid(10);
  bool parallel = true;
};

/// In the coordinates of carnot_change, compares eps_y(x) with (-y).x and
/// eps_y^{-1}(x) with y.x at (t.x, t.y); both residuals must be O(t) after
/// the inverse dilation.
VerificationReport osculation_report(const FrameContext& ctx, const CoordinateChange& carnot_change,
                                     const OsculationOptions& options);

/// eps_a of the left-invariant frame equals x -> (-a).x exactly.
VerificationReport group_chart_check(const StructureConstants& l, const Point& a);

/// eps_a o F - id in O_w(||x||^{w+1}) for the exact first-kind forward map F.
VerificationReport first_kind_check_exact(const FrameContext& ctx);
/// Same with RK4 samples of F and the scaling test.
VerificationReport first_kind_check_numeric(const FrameContext& ctx, const std::vector<std::vector<double>>& directions,
                                            const std::vector<double>& t_grid, double step = 1e-3);

}  // namespace carnot
