#include "obj.hpp"

#include <cstdio>
#include <ostream>

namespace isor::app {

namespace {

void write_vec(std::ostream& os, const char* tag, const Vec3& x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s %.17g %.17g %.17g\n", tag, x(0), x(1), x(2));
  os << buf;
}

}  // namespace

void write_obj(const Mesh& mesh, std::ostream& os) {
  os << "# isor mesh " << mesh.nu << " x " << mesh.nv << "\n";
  for (const Vec3& x : mesh.vertices) write_vec(os, "v", x);
  for (const Vec3& n : mesh.normals) write_vec(os, "vn", n);
  auto id = [&](int i, int j) { return mesh.index(i, j) + 1; };
  for (int i = 0; i + 1 < mesh.nu; ++i) {
    for (int j = 0; j + 1 < mesh.nv; ++j) {
      const std::size_t a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      os << "f " << a << "//" << a << ' ' << b << "//" << b << ' ' << c << "//" << c << '\n';
      os << "f " << a << "//" << a << ' ' << c << "//" << c << ' ' << d << "//" << d << '\n';
    }
  }
}

}  // namespace isor::app
