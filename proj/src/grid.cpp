#include "dimer/grid.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <stdexcept>

namespace dimer {

GridField::GridField(int resolution, std::string generator)
    : n_(resolution), generator_(std::move(generator)) {
  if (resolution < 2) throw std::invalid_argument("grid resolution must be at least 2");
  values_.assign(std::size_t(n_) * n_, 0.0);
  mask_.assign(values_.size(), 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      RealRdm r = node(i, j);
      mask_[index(i, j)] = disk_excess(r.g11, std::abs(r.g12)) <= kMaskTolerance ? 1 : 0;
    }
}

RealRdm GridField::node(int i, int j) const {
  double h = spacing();
  return {i * h, -0.5 + j * h};
}

std::size_t GridField::active_count() const {
  std::size_t c = 0;
  for (auto m : mask_) c += m;
  return c;
}

nlohmann::json GridField::sidecar() const {
  return {{"resolution", n_},
          {"g11_range", {0.0, 1.0}},
          {"g12_range", {-0.5, 0.5}},
          {"spacing", spacing()},
          {"mask_rule", "(g11-1/2)^2 + g12^2 <= 1/4 + 1e-12"},
          {"active_nodes", active_count()},
          {"boundary_anchors", anchors_.size()},
          {"generator", generator_}};
}

void GridField::write(const std::string& path, const std::string& value_name) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << std::setprecision(17);
  out << "g11,g12," << value_name << "\n";
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (!active(i, j)) continue;
      RealRdm r = node(i, j);
      out << r.g11 << "," << r.g12 << "," << value(i, j) << "\n";
    }
  std::ofstream side(path + ".json");
  if (!side) throw std::runtime_error("cannot write " + path + ".json");
  side << sidecar().dump(2) << "\n";
}

GridField sample_grid(int resolution, const std::function<double(const RealRdm&)>& f,
                      const std::string& generator, int boundary_anchors) {
  GridField g(resolution, generator);
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g.active(k)) g.value(k) = f(g.node(k));
  for (int k = 0; k < boundary_anchors; ++k) {
    double phi = 2.0 * std::numbers::pi * k / boundary_anchors;
    RealRdm r = cartesian_from_polar(PolarRdm{0.0, phi});
    g.anchors().push_back({r.g11, r.g12, f(r)});
  }
  return g;
}

}  // namespace dimer
