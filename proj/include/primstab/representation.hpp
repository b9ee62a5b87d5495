#pragma once

#include <string>

#include "primstab/errors.hpp"
#include "primstab/hyperbolic.hpp"
#include "primstab/primitive.hpp"

namespace primstab {

using Mat = Mat2<double>;
using Point = HPoint<double>;
using Boundary = BoundaryPoint<double>;
using Axis = Geodesic<double>;
using Scaled = ScaledMat<double>;

// rho: F2 -> Isom(H^n) given by the images of a and b, with a basepoint o.
struct Representation {
  SpaceConfig config;
  Mat A = Mat::Identity();
  Mat B = Mat::Identity();
  Point o{0, 1};

  // C' = max(d(A o, o), d(B o, o)).
  double c_prime() const;
  const Mat& generator(Letter x) const;
};

Representation make_representation(const Mat& A, const Mat& B, Point o = {0, 1}, SpaceConfig cfg = {});

Mat letter_matrix(const Representation& rho, Letter x);
// rho(s_1) ... rho(s_n).
Scaled word_matrix(const Representation& rho, const Word& w);
// Class matrix of the tower's top word, via the block recursion with fast powers.
Scaled class_matrix(const Representation& rho, const BlockTower& t);

struct RepError : PreconditionError {
  enum class Kind { malformed, missing_field, non_unimodular, model_mismatch };
  RepError(Kind k, const std::string& what) : PreconditionError(what), kind(k) {}
  Kind kind;
};

Representation parse_rep_json(const std::string& text);
Representation parse_rep_file(const std::string& path);
std::string rep_to_json(const Representation& rho);

// Traces (x, y, z) of (a, b, ab) realised by real matrices; requires |z| >= 2.
Representation rep_from_traces(double x, double y, double z);
Representation markoff_representation();

}  // namespace primstab
