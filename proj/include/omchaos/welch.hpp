#pragma once

#include <string>
#include <vector>

#include "omchaos/types.hpp"

namespace omchaos {

// One-sided power spectral density. Integrating psd over freqs recovers the
// total mean-square power of the series (no detrending is applied, so a DC
// component shows up in bin 0).
struct Spectrum {
  std::vector<double> freqs;  // Hz, strictly increasing, 0 .. fs/2
  std::vector<double> psd;    // power per Hz, linear
  std::size_t nfft = 0;
  double overlap = 0.0;
  std::string window_name = "hann";
  double rbw_hz = 0.0;  // equivalent noise bandwidth of one bin
  double fs = 0.0;

  std::vector<double> psd_db() const;  // 10 log10(psd)
  double bin_width() const { return freqs.size() > 1 ? freqs[1] - freqs[0] : 0.0; }
};

// Averaged modified periodogram (periodic Hann taper). nfft must be a power
// of two not exceeding the series length; overlap in [0, 1).
// Parallel over segments; the per-bin accumulation runs in fixed segment
// order, so results are identical to welch_psd_serial bit for bit.
Spectrum welch_psd(const TimeSeries& ts, std::size_t nfft, double overlap);

// Reference implementation used by the tests and the kernel benchmark.
Spectrum welch_psd_serial(const TimeSeries& ts, std::size_t nfft, double overlap);

// Median dB level of unmasked bins with freqs in [f_lo, f_hi]. mask[i] = true
// excludes bin i (peaks). Rejects when the mask removes half or more of the
// band, or when the band is empty.
double spectral_floor(const Spectrum& spec, const std::vector<bool>& mask, double f_lo,
                      double f_hi);

// Mask covering +-halfwidth_hz around each harmonic k*f0 up to f_hi.
std::vector<bool> harmonic_mask(const Spectrum& spec, double f0, double halfwidth_hz);

// Mask bins more than prominence_db above the band median, padded by
// halfwidth_bins on each side.
std::vector<bool> auto_peak_mask(const Spectrum& spec, double f_lo, double f_hi,
                                 double prominence_db = 10.0, std::size_t halfwidth_bins = 3);

}  // namespace omchaos
