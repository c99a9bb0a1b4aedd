#include "axivort/row_convolution.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>

#include "axivort/error.hpp"
#include "axivort/parallel.hpp"

namespace axivort {

namespace {
// Planner calls are not thread safe; execution on fresh arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct RowConvolution::Fft {
  int length = 0;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit Fft(int L) : length(L) {
    std::vector<double> re(L);
    std::vector<std::complex<double>> co(L / 2 + 1);
    std::lock_guard lock(planner_mutex());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward = fftw_plan_dft_r2c_1d(L, re.data(), reinterpret_cast<fftw_complex*>(co.data()), flags);
    backward = fftw_plan_dft_c2r_1d(L, reinterpret_cast<fftw_complex*>(co.data()), re.data(),
                                    flags | FFTW_DESTROY_INPUT);
    if (!forward || !backward) throw std::runtime_error("FFTW planning failed");
  }
  ~Fft() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
  void r2c(double* in, std::complex<double>* out) const {
    fftw_execute_dft_r2c(forward, in, reinterpret_cast<fftw_complex*>(out));
  }
  void c2r(std::complex<double>* in, double* out) const {
    fftw_execute_dft_c2r(backward, reinterpret_cast<fftw_complex*>(in), out);
  }
};

RowConvolution::RowConvolution(int n_r, int n_z, int components, const Fill& fill, Mode mode)
    : n_r_(n_r), n_z_(n_z), components_(components) {
  if (n_r < 1 || n_z < 1 || components < 1) throw ConfigError("RowConvolution: empty operator");
  const int width = 2 * n_z - 1;
  const int L = 2 * n_z;
  const int nf = L / 2 + 1;
  if (mode == Mode::automatic) {
    const double direct = static_cast<double>(n_z) * n_z;
    const double fft = 4.0 * nf + 12.0 * L * std::log2(static_cast<double>(L)) / n_r;
    mode = (n_z >= 8 && fft < direct) ? Mode::fft : Mode::direct;
  }
  mode_ = mode;
  const std::size_t pairs = static_cast<std::size_t>(n_r) * n_r;

  if (mode_ == Mode::direct) {
    stride_ = width * components_;
    weights_.assign(pairs * stride_, 0.0);
    parallel_for(n_r, [&](int i0, int i1) {
      std::vector<double*> w(components_);
      for (int i = i0; i < i1; ++i) {
        for (int j = 0; j < n_r; ++j) {
          double* base = weights_.data() + (static_cast<std::size_t>(i) * n_r + j) * stride_;
          for (int c = 0; c < components_; ++c) w[c] = base + static_cast<std::size_t>(c) * width;
          fill(i, j, w.data());
        }
      }
    });
    return;
  }

  fft_ = std::make_unique<Fft>(L);
  stride_ = nf * components_;
  spectra_.assign(pairs * stride_, {0.0, 0.0});
  parallel_for(n_r, [&](int i0, int i1) {
    std::vector<double> buf(static_cast<std::size_t>(width) * components_);
    std::vector<double*> w(components_);
    for (int c = 0; c < components_; ++c) w[c] = buf.data() + static_cast<std::size_t>(c) * width;
    std::vector<double> circ(L);
    for (int i = i0; i < i1; ++i) {
      for (int j = 0; j < n_r; ++j) {
        std::fill(buf.begin(), buf.end(), 0.0);
        fill(i, j, w.data());
        std::complex<double>* base =
            spectra_.data() + (static_cast<std::size_t>(i) * n_r + j) * stride_;
        for (int c = 0; c < components_; ++c) {
          // Circulant embedding: d >= 0 at the front, d < 0 wrapped to the back.
          const double* wc = w[c] + (n_z_ - 1);
          for (int d = 0; d < n_z_; ++d) circ[d] = wc[d];
          circ[n_z_] = 0.0;
          for (int d = 1; d < n_z_; ++d) circ[L - d] = wc[-d];
          fft_->r2c(circ.data(), base + static_cast<std::size_t>(c) * nf);
        }
      }
    }
  });
}

RowConvolution::~RowConvolution() = default;
RowConvolution::RowConvolution(RowConvolution&&) noexcept = default;
RowConvolution& RowConvolution::operator=(RowConvolution&&) noexcept = default;

std::size_t RowConvolution::memory_bytes() const {
  return weights_.size() * sizeof(double) + spectra_.size() * sizeof(std::complex<double>);
}

void RowConvolution::apply(const double* in, double* const* out) const {
  if (mode_ == Mode::fft) {
    apply_fft(in, out);
  } else {
    apply_direct(in, out);
  }
}

void RowConvolution::apply_direct(const double* in, double* const* out) const {
  const int nz = n_z_;
  const int width = 2 * nz - 1;
  parallel_for(n_r_, [&](int i0, int i1) {
    for (int i = i0; i < i1; ++i) {
      for (int c = 0; c < components_; ++c) {
        double* o = out[c] + static_cast<std::size_t>(i) * nz;
        std::fill(o, o + nz, 0.0);
        for (int j = 0; j < n_r_; ++j) {
          const double* w = weights_.data() + (static_cast<std::size_t>(i) * n_r_ + j) * stride_ +
                            static_cast<std::size_t>(c) * width;
          const double* v = in + static_cast<std::size_t>(j) * nz;
          for (int l = 0; l < nz; ++l) {
            const double vl = v[l];
            if (vl == 0.0) continue;
            const double* wl = w + (nz - 1 - l);  // wl[k] = W(k - l)
            for (int k = 0; k < nz; ++k) o[k] += wl[k] * vl;
          }
        }
      }
    }
  });
}

void RowConvolution::apply_fft(const double* in, double* const* out) const {
  const int nz = n_z_;
  const int L = 2 * nz;
  const int nf = L / 2 + 1;
  std::vector<std::complex<double>> vhat(static_cast<std::size_t>(n_r_) * nf);
  std::vector<char> nonzero(n_r_, 0);
  parallel_for(n_r_, [&](int j0, int j1) {
    std::vector<double> pad(L, 0.0);
    for (int j = j0; j < j1; ++j) {
      const double* v = in + static_cast<std::size_t>(j) * nz;
      bool any = false;
      for (int l = 0; l < nz; ++l) any = any || v[l] != 0.0;
      nonzero[j] = any;
      if (!any) continue;
      std::copy(v, v + nz, pad.begin());
      std::fill(pad.begin() + nz, pad.end(), 0.0);
      fft_->r2c(pad.data(), vhat.data() + static_cast<std::size_t>(j) * nf);
    }
  });
  const double scale = 1.0 / L;
  parallel_for(n_r_, [&](int i0, int i1) {
    std::vector<std::complex<double>> acc(nf);
    std::vector<double> y(L);
    for (int i = i0; i < i1; ++i) {
      for (int c = 0; c < components_; ++c) {
        std::fill(acc.begin(), acc.end(), std::complex<double>(0.0, 0.0));
        for (int j = 0; j < n_r_; ++j) {
          if (!nonzero[j]) continue;
          const std::complex<double>* w = spectra_.data() +
                                          (static_cast<std::size_t>(i) * n_r_ + j) * stride_ +
                                          static_cast<std::size_t>(c) * nf;
          const std::complex<double>* v = vhat.data() + static_cast<std::size_t>(j) * nf;
          // Explicit real arithmetic vectorizes better than std::complex operator*.
          const double* wr = reinterpret_cast<const double*>(w);
          const double* vr = reinterpret_cast<const double*>(v);
          double* ar = reinterpret_cast<double*>(acc.data());
          for (int m = 0; m < nf; ++m) {
            const double a = wr[2 * m], b = wr[2 * m + 1];
            const double x = vr[2 * m], yv = vr[2 * m + 1];
            ar[2 * m] += a * x - b * yv;
            ar[2 * m + 1] += a * yv + b * x;
          }
        }
        fft_->c2r(acc.data(), y.data());
        double* o = out[c] + static_cast<std::size_t>(i) * nz;
        for (int k = 0; k < nz; ++k) o[k] = y[k] * scale;
      }
    }
  });
}

}  // namespace axivort
