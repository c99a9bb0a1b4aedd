#pragma once

// Discrete operators that are translation invariant in z:
//
//   out_c[i, k] = sum_j sum_l W_c(i, j, k - l) in[j, l]
//
// for a handful of weight components c. The Biot-Savart sums have this
// structure on a uniform z-grid, so after one pass over the n_r^2 (2 n_z - 1)
// weights each application costs either a dense banded sweep or, via
// zero-padded FFTs along z, O(n_r^2 n_z) complex multiply-adds.

#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace axivort {

class RowConvolution {
 public:
  enum class Mode { automatic, direct, fft };

  /// fill(i, j, w) writes W_c(i, j, d) into w[c][d + n_z - 1] for
  /// d = -(n_z - 1) .. n_z - 1 and every component c. Called once per
  /// (i, j) pair, concurrently for different i.
  using Fill = std::function<void(int i, int j, double* const* w)>;

  RowConvolution(int n_r, int n_z, int components, const Fill& fill, Mode mode = Mode::automatic);
  ~RowConvolution();
  RowConvolution(RowConvolution&&) noexcept;
  RowConvolution& operator=(RowConvolution&&) noexcept;
  RowConvolution(const RowConvolution&) = delete;
  RowConvolution& operator=(const RowConvolution&) = delete;

  /// Applies every component to the same input; out[c] must hold n_r * n_z values.
  void apply(const double* in, double* const* out) const;

  Mode mode() const { return mode_; }
  int components() const { return components_; }
  std::size_t memory_bytes() const;

 private:
  struct Fft;

  void apply_direct(const double* in, double* const* out) const;
  void apply_fft(const double* in, double* const* out) const;

  int n_r_ = 0;
  int n_z_ = 0;
  int components_ = 0;
  Mode mode_ = Mode::direct;
  int stride_ = 0;                            // per-pair stride of the weight storage
  std::vector<double> weights_;               // direct mode
  std::vector<std::complex<double>> spectra_; // fft mode
  std::unique_ptr<Fft> fft_;
};

}  // namespace axivort
