#pragma once

#include "isor/common.hpp"

#include <functional>
#include <vector>

namespace isor {

// A parametrized surface (u, v) -> R^3 on the rectangle u_range x v_range.
struct SurfaceMap {
  std::function<Vec3(double, double)> eval;
  Interval u_range;
  Interval v_range;

  Vec3 operator()(double u, double v) const { return eval(u, v); }
  double diameter() const { return std::hypot(u_range.length(), v_range.length()); }
};

// Structured nu x nv grid. Vertex (i, j) sits at (u_samples[i], v_samples[j]) and is
// stored at index i * nv + j. Quads connect (i, j), (i+1, j), (i+1, j+1), (i, j+1).
struct Mesh {
  int nu = 0;
  int nv = 0;
  std::vector<double> u_samples;
  std::vector<double> v_samples;
  std::vector<Vec3> vertices;
  std::vector<Vec3> normals;

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * static_cast<std::size_t>(nv) + static_cast<std::size_t>(j); }
  const Vec3& vertex(int i, int j) const { return vertices[index(i, j)]; }
  const Vec3& normal(int i, int j) const { return normals[index(i, j)]; }
};

// Evaluates `map` on the uniform tensor grid and attaches unit normals f_u x f_v.
// Throws DegenerateImmersion if |f_u x f_v| < 1e-12 at a node.
Mesh sample_mesh(const SurfaceMap& map, int nu, int nv);

// Unit normal f_u x f_v / |f_u x f_v| using second-order differences that stay inside
// the closed parameter rectangle.
Vec3 surface_normal(const SurfaceMap& map, double u, double v);

}  // namespace isor
