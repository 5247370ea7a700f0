#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dimer/model.hpp"

namespace dimer {

struct AnchorSample {
  double g11 = 0.0;
  double g12 = 0.0;
  double value = 0.0;
};

// Square grid over g11 in [0, 1], g12 in [-1/2, 1/2] with equal spacing;
// nodes outside the disk are masked.
class GridField {
 public:
  static constexpr double kMaskTolerance = 1e-12;

  explicit GridField(int resolution, std::string generator = "");

  int resolution() const { return n_; }
  double spacing() const { return 1.0 / (n_ - 1); }
  std::size_t size() const { return values_.size(); }
  std::size_t index(int i, int j) const { return std::size_t(i) * n_ + j; }
  RealRdm node(int i, int j) const;
  RealRdm node(std::size_t k) const { return node(int(k / n_), int(k % n_)); }

  bool active(std::size_t k) const { return mask_[k] != 0; }
  bool active(int i, int j) const { return active(index(i, j)); }
  std::size_t active_count() const;

  double& value(std::size_t k) { return values_[k]; }
  double value(std::size_t k) const { return values_[k]; }
  double& value(int i, int j) { return values_[index(i, j)]; }
  double value(int i, int j) const { return values_[index(i, j)]; }
  const std::vector<double>& values() const { return values_; }

  std::vector<AnchorSample>& anchors() { return anchors_; }
  const std::vector<AnchorSample>& anchors() const { return anchors_; }

  const std::string& generator() const { return generator_; }
  void set_generator(std::string g) { generator_ = std::move(g); }

  nlohmann::json sidecar() const;
  // Writes "g11,g12,value" rows for active nodes and a JSON sidecar at path + ".json".
  void write(const std::string& path, const std::string& value_name = "value") const;

 private:
  int n_;
  std::vector<double> values_;
  std::vector<unsigned char> mask_;
  std::vector<AnchorSample> anchors_;
  std::string generator_;
};

// Samples f on every active node; optionally adds exact boundary samples.
GridField sample_grid(int resolution, const std::function<double(const RealRdm&)>& f,
                      const std::string& generator, int boundary_anchors = 0);

}  // namespace dimer
