#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

/// Orbit-set action spectra {sum m_i A(alpha_i)} of finitely many simple orbits, read as the
/// candidate values of spectral invariants, with Weyl-law diagnostics.
namespace reeb::spectrum {

/**
 * Sorted multiset of nonnegative integer combinations of the generators, enumerated lazily.
 *
 * The spectrum of g generators is the merge of the rows base + n a_g (n >= 0) over the
 * spectrum of the first g-1 generators, so each level keeps a heap with one cursor per
 * open row. Equal values from distinct orbit sets are kept with multiplicity and ordered
 * by (value, n, position in the base spectrum). Every value is computed as the left-to-right
 * sum m_1 a_1 + ... + m_g a_g of its witness, so the value of a witness never depends on
 * the path that produced it.
 *
 * Not thread-safe: enumeration mutates internal state. Copies share that state.
 */
class ActionSpectrum {
 public:
  /// Throws InvalidInput for an empty generator list or non-positive generators.
  explicit ActionSpectrum(std::vector<double> generators, double volume_hint = 0.0,
                          std::size_t budget = 50'000'000);

  const std::vector<double>& generators() const { return generators_; }
  double volume_hint() const { return volume_hint_; }
  std::size_t budget() const { return budget_; }

  /// Makes values 0..count-1 available. Throws NumericalFailure when the total number of
  /// stored values over all levels would exceed the budget.
  void ensure(std::size_t count);
  std::size_t enumerated() const;

  double value(std::size_t k);
  /// Multiplicities (m_1, ..., m_g) of the k-th value.
  std::vector<std::uint32_t> witness(std::size_t k);
  /// Enumerated prefix (valid until the next call that enumerates further).
  std::span<const double> values() const;

  struct Level;

 private:
  std::vector<double> generators_;
  double volume_hint_;
  std::size_t budget_;
  std::shared_ptr<Level> top_;
};

double kth_spectrum_value(ActionSpectrum& spec, std::size_t k);

struct WeylDiagnostic {
  std::size_t k = 0;
  double value = 0.0;
  double normalized = 0.0;  ///< value^2 / (2 volume k)
};

/// Skips k = 0. Throws InvalidInput if the spectrum has no positive volume_hint.
std::vector<WeylDiagnostic> weyl_diagnostics(ActionSpectrum& spec, std::span<const std::size_t> ks);
std::vector<WeylDiagnostic> weyl_diagnostics(ActionSpectrum& spec, std::size_t k_lo, std::size_t k_hi);

struct DyadicBlock {
  std::size_t k_begin = 0;  ///< inclusive
  std::size_t k_end = 0;    ///< exclusive
  double mean_abs_deviation = 0.0;  ///< mean of |normalized - 1| over the block
  double mean_abs_error = 0.0;      ///< mean of |value - sqrt(2 vol k)| over the block
};

/// Blocks [k_lo 2^j, k_lo 2^{j+1}) clipped to [k_lo, k_hi].
std::vector<DyadicBlock> dyadic_blocks(ActionSpectrum& spec, std::size_t k_lo, std::size_t k_hi);
bool deviation_nonincreasing(const std::vector<DyadicBlock>& blocks);

/// Least-squares slope of log(mean |value - sqrt(2 vol k)|) against log k over the blocks.
/// Reported for information; no threshold is attached to it.
struct SubleadingFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;
  std::size_t blocks = 0;
};
SubleadingFit subleading_exponent(const std::vector<DyadicBlock>& blocks);

/**
 * Optional check of |value - 2 sqrt(vol_U k)| <= 8 sqrt(2) C (vol_U^{1/4} + vol_U^{-1/4}) k^{1/4}
 * with vol_U = volume_hint / 2, for a user-supplied boundary constant C.
 */
struct ExplicitBoundCheck {
  double constant = 0.0;
  std::size_t checked = 0;
  double max_ratio = 0.0;  ///< max of |error| / bound
  std::size_t worst_k = 0;
  bool holds = false;
};
std::optional<ExplicitBoundCheck> explicit_constant_check(ActionSpectrum& spec,
                                                          std::optional<double> constant,
                                                          std::size_t k_lo, std::size_t k_hi);

/// max over k_1 + ... + k_m = k of sum_i value_i(k_i), by dynamic programming over the spectra.
double disjoint_union_spectrum(std::span<ActionSpectrum> specs, std::size_t k);
/// The whole table 0..k_max in one pass.
std::vector<double> disjoint_union_table(std::span<ActionSpectrum> specs, std::size_t k_max);

/// CSV k, value, m1..mg for k in [0, count).
void write_spectrum_csv(std::ostream& out, ActionSpectrum& spec, std::size_t count);
/// CSV k, value, normalized.
void write_weyl_csv(std::ostream& out, const std::vector<WeylDiagnostic>& rows);
/// CSV k_begin, k_end, mean_abs_deviation, mean_abs_error.
void write_blocks_csv(std::ostream& out, const std::vector<DyadicBlock>& blocks);

}  // namespace reeb::spectrum
