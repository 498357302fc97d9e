#include "isor/surface.hpp"

#include "isor/parallel.hpp"

namespace isor {

namespace {

// Second-order derivative of t -> g(t) at t0 that never leaves [iv.lo, iv.hi].
template <class Fn>
Vec3 inward_difference(const Fn& g, double t0, Interval iv, double h) {
  if (t0 - h >= iv.lo && t0 + h <= iv.hi) return (g(t0 + h) - g(t0 - h)) / (2.0 * h);
  if (t0 - h < iv.lo) return (-3.0 * g(t0) + 4.0 * g(t0 + h) - g(t0 + 2.0 * h)) / (2.0 * h);
  return (3.0 * g(t0) - 4.0 * g(t0 - h) + g(t0 - 2.0 * h)) / (2.0 * h);
}

}  // namespace

Vec3 surface_normal(const SurfaceMap& map, double u, double v) {
  const double h = 1e-6 * map.diameter();
  const Vec3 fu = inward_difference([&](double t) { return map(t, v); }, u, map.u_range, h);
  const Vec3 fv = inward_difference([&](double t) { return map(u, t); }, v, map.v_range, h);
  const Vec3 n = fu.cross(fv);
  const double len = n.norm();
  if (!(len >= 1e-12)) throw DegenerateImmersion(u, v);
  return n / len;
}

Mesh sample_mesh(const SurfaceMap& map, int nu, int nv) {
  if (nu < 2 || nv < 2) throw InvalidArgument("sample_mesh: nu and nv must be at least 2");
  if (!std::isfinite(map.u_range.length()) || !std::isfinite(map.v_range.length()) ||
      map.u_range.length() <= 0.0 || map.v_range.length() <= 0.0) {
    throw InvalidArgument("sample_mesh: parameter domain must be a finite, non-empty rectangle");
  }
  Mesh mesh;
  mesh.nu = nu;
  mesh.nv = nv;
  mesh.u_samples = linspace(map.u_range, nu);
  mesh.v_samples = linspace(map.v_range, nv);
  mesh.vertices.resize(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv));
  mesh.normals.resize(mesh.vertices.size());
  parallel_for(nu, [&](int i) {
    for (int j = 0; j < nv; ++j) {
      const double u = mesh.u_samples[static_cast<std::size_t>(i)];
      const double v = mesh.v_samples[static_cast<std::size_t>(j)];
      mesh.vertices[mesh.index(i, j)] = map(u, v);
      mesh.normals[mesh.index(i, j)] = surface_normal(map, u, v);
    }
  });
  return mesh;
}

}  // namespace isor
