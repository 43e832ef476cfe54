// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tcg/group.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace tcg {

enum class Domain { Space, Frequency };

// Uniform periodic box [-L/2, L/2)^n with N samples per axis (row-major, axis 0
// slowest). Frequency nodes are m/L for m in [-N/2, N/2), stored in increasing order.
struct Grid {
  int n = 1;
  int N = 128;
  double L = 16.0;

  std::size_t total() const;
  double spacing() const { return L / N; }
  double freq_spacing() const { return 1.0 / L; }
  double band_edge() const { return 0.5 * N / L; }
  std::vector<int> unflatten(std::size_t flat) const;
  std::size_t flatten(std::span<const int> idx) const;
  Vec space_node(std::size_t flat) const;
  Vec freq_node(std::size_t flat) const;
  bool operator==(const Grid&) const = default;
};

void validate_grid(const Grid& g);

class GridFunction {
 public:
  GridFunction(Grid grid, Domain domain);
  GridFunction(Grid grid, Domain domain, std::vector<cplx> data);

  const Grid& grid() const { return grid_; }
  Domain domain() const { return domain_; }
  std::size_t size() const { return data_.size(); }
  std::span<cplx> values() { return data_; }
  std::span<const cplx> values() const { return data_; }
  cplx& operator[](std::size_t i) { return data_[i]; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }
  Vec node(std::size_t flat) const;
  // Continuum L2 norm: space sum |f|^2 (L/N)^n, frequency sum |f|^2 / L^n.
  double norm() const;
  double cell() const;

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator*=(cplx s);

 private:
  Grid grid_;
  Domain domain_;
  std::vector<cplx> data_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(cplx s, GridFunction a);

GridFunction dft(const GridFunction& f);
GridFunction idft(const GridFunction& fhat);

GridFunction sample(const Grid& grid, Domain domain, const std::function<cplx(const Vec&)>& fn);

// ||a - b|| / ||b|| in the continuum norm.
double relative_l2(const GridFunction& a, const GridFunction& b);

// Fraction of |fhat|^2 in the outer shell of the band (|nu_i| > (1 - margin) * edge).
double band_edge_mass(const GridFunction& fhat, double margin);

struct SnappedElement {
  GroupElement element;
  double distance = 0.0;  // max coordinate displacement
};

// Rounds x to multiples of L/N and xi to multiples of 1/L.
SnappedElement snap_element(const GroupSpec& spec, const Grid& grid, const GroupElement& g);

// z T_x M_xi D_h f; x and xi are snapped, D resamples in frequency.
GridFunction apply_pi(const GroupSpec& spec, const GroupElement& g, const GridFunction& f);

// |det h|^{1/2} z e^{-2 pi i <gamma, x>} fhat(h^T (gamma - xi)).
GridFunction apply_pi_fourier(const GroupSpec& spec, const GroupElement& g,
                              const GridFunction& fhat);

GridFunction project_to_support(const GridFunction& fhat,
                                const std::function<bool(const Vec&)>& indicator);

// Binary: little-endian complex64 pairs at <base>.bin plus <base>.json sidecar.
void write_grid_function(const std::string& base, const GridFunction& f);
GridFunction read_grid_function(const std::string& base);
// CSV slice through the origin along the last one (n = 1) or two (n >= 2) axes.
void write_csv_slice(const std::string& path, const GridFunction& f);

}  // namespace tcg
