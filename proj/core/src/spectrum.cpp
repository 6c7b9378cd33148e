#include "reeblab/spectrum.hpp"

#include "reeblab/csv.hpp"
#include "reeblab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <string>

namespace reeb::spectrum {

struct ActionSpectrum::Level {
  struct Cursor {
    double value;
    std::uint32_t row;     // multiplicity of the newest generator
    std::size_t position;  // index into the child spectrum
  };
  struct Later {
    bool operator()(const Cursor& a, const Cursor& b) const {
      if (a.value != b.value) return a.value > b.value;
      if (a.row != b.row) return a.row > b.row;
      return a.position > b.position;
    }
  };

  std::size_t dim;
  double generator;  // the newest generator a_dim
  std::shared_ptr<Level> child;
  std::vector<double> values;
  std::vector<std::uint32_t> witnesses;  // dim entries per value
  std::priority_queue<Cursor, std::vector<Cursor>, Later> heap;
  std::uint32_t next_row = 0;

  Level(const std::vector<double>& gens, std::size_t d) : dim(d), generator(gens[d - 1]) {
    if (d > 1) child = std::make_shared<Level>(gens, d - 1);
  }

  std::size_t stored() const { return values.size() + (child ? child->stored() : 0); }

  double row_value(std::uint32_t row, std::size_t pos) const {
    return child->values[pos] + static_cast<double>(row) * generator;
  }

  void open_row(std::size_t budget) {
    child->ensure(1, budget);
    heap.push({row_value(next_row, 0), next_row, 0});
    ++next_row;
  }

  void ensure(std::size_t count, std::size_t budget) {
    while (values.size() < count) {
      if (stored() >= budget) {
        std::ostringstream msg;
        msg << "action spectrum: enumeration budget of " << budget
            << " stored values exceeded; reached index " << values.size() << " at value bound "
            << (values.empty() ? 0.0 : values.back());
        throw NumericalFailure(msg.str());
      }
      if (!child) {
        const auto m = static_cast<std::uint32_t>(values.size());
        values.push_back(static_cast<double>(m) * generator);
        witnesses.push_back(m);
        continue;
      }
      if (heap.empty()) open_row(budget);
      const Cursor c = heap.top();
      heap.pop();
      values.push_back(c.value);
      const auto* base = child->witnesses.data() + c.position * child->dim;
      witnesses.insert(witnesses.end(), base, base + child->dim);
      witnesses.push_back(c.row);
      // The next row starts at (row+1) a >= the first entry of this row, so it only has to
      // enter the heap once this row's first entry is out.
      if (c.position == 0 && c.row + 1 == next_row) open_row(budget);
      child->ensure(c.position + 2, budget);
      heap.push({row_value(c.row, c.position + 1), c.row, c.position + 1});
    }
  }
};

ActionSpectrum::ActionSpectrum(std::vector<double> generators, double volume_hint,
                               std::size_t budget)
    : generators_(std::move(generators)), volume_hint_(volume_hint), budget_(budget) {
  if (generators_.empty()) throw InvalidInput("action spectrum: no generators");
  for (double a : generators_)
    if (!(a > 0.0) || !std::isfinite(a))
      throw InvalidInput("action spectrum: generators must be positive and finite");
  if (!(volume_hint_ >= 0.0)) throw InvalidInput("action spectrum: volume_hint must be >= 0");
  if (budget_ == 0) throw InvalidInput("action spectrum: budget must be positive");
  top_ = std::make_shared<Level>(generators_, generators_.size());
}

void ActionSpectrum::ensure(std::size_t count) { top_->ensure(count, budget_); }

std::size_t ActionSpectrum::enumerated() const { return top_->values.size(); }

double ActionSpectrum::value(std::size_t k) {
  ensure(k + 1);
  return top_->values[k];
}

std::vector<std::uint32_t> ActionSpectrum::witness(std::size_t k) {
  ensure(k + 1);
  const auto* w = top_->witnesses.data() + k * top_->dim;
  return {w, w + top_->dim};
}

std::span<const double> ActionSpectrum::values() const { return top_->values; }

double kth_spectrum_value(ActionSpectrum& spec, std::size_t k) { return spec.value(k); }

namespace {

double require_volume(const ActionSpectrum& spec) {
  if (!(spec.volume_hint() > 0.0))
    throw InvalidInput("Weyl diagnostics need a positive volume_hint");
  return spec.volume_hint();
}

}  // namespace

std::vector<WeylDiagnostic> weyl_diagnostics(ActionSpectrum& spec, std::span<const std::size_t> ks) {
  const double vol = require_volume(spec);
  std::vector<WeylDiagnostic> out;
  out.reserve(ks.size());
  for (std::size_t k : ks) {
    if (k == 0) continue;
    const double v = spec.value(k);
    out.push_back({k, v, v * v / (2.0 * vol * static_cast<double>(k))});
  }
  return out;
}

std::vector<WeylDiagnostic> weyl_diagnostics(ActionSpectrum& spec, std::size_t k_lo,
                                             std::size_t k_hi) {
  std::vector<std::size_t> ks;
  for (std::size_t k = std::max<std::size_t>(k_lo, 1); k <= k_hi; ++k) ks.push_back(k);
  return weyl_diagnostics(spec, ks);
}

std::vector<DyadicBlock> dyadic_blocks(ActionSpectrum& spec, std::size_t k_lo, std::size_t k_hi) {
  const double vol = require_volume(spec);
  if (k_lo == 0 || k_hi <= k_lo) throw InvalidInput("dyadic_blocks: need 0 < k_lo < k_hi");
  spec.ensure(k_hi + 1);
  std::vector<DyadicBlock> blocks;
  for (std::size_t b = k_lo; b <= k_hi; b *= 2) {
    const std::size_t e = std::min(2 * b, k_hi + 1);
    DyadicBlock blk{b, e, 0.0, 0.0};
    for (std::size_t k = b; k < e; ++k) {
      const double v = spec.value(k);
      const double kk = static_cast<double>(k);
      blk.mean_abs_deviation += std::abs(v * v / (2.0 * vol * kk) - 1.0);
      blk.mean_abs_error += std::abs(v - std::sqrt(2.0 * vol * kk));
    }
    const double n = static_cast<double>(e - b);
    blk.mean_abs_deviation /= n;
    blk.mean_abs_error /= n;
    blocks.push_back(blk);
    if (e == k_hi + 1) break;
  }
  return blocks;
}

bool deviation_nonincreasing(const std::vector<DyadicBlock>& blocks) {
  for (std::size_t i = 1; i < blocks.size(); ++i)
    if (blocks[i].mean_abs_deviation > blocks[i - 1].mean_abs_deviation) return false;
  return true;
}

SubleadingFit subleading_exponent(const std::vector<DyadicBlock>& blocks) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const auto& b : blocks) {
    if (!(b.mean_abs_error > 0.0)) continue;
    const double x = std::log(0.5 * static_cast<double>(b.k_begin + b.k_end - 1));
    const double y = std::log(b.mean_abs_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  SubleadingFit fit;
  fit.blocks = n;
  if (n < 2) return fit;
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  fit.exponent = (dn * sxy - sx * sy) / denom;
  fit.log_prefactor = (sy - fit.exponent * sx) / dn;
  return fit;
}

std::optional<ExplicitBoundCheck> explicit_constant_check(ActionSpectrum& spec,
                                                          std::optional<double> constant,
                                                          std::size_t k_lo, std::size_t k_hi) {
  if (!constant) return std::nullopt;
  if (!(*constant > 0.0)) throw InvalidInput("explicit_constant_check: C must be positive");
  const double volU = 0.5 * require_volume(spec);
  const double coeff =
      8.0 * std::sqrt(2.0) * *constant * (std::pow(volU, 0.25) + std::pow(volU, -0.25));
  ExplicitBoundCheck chk;
  chk.constant = *constant;
  for (std::size_t k = std::max<std::size_t>(k_lo, 1); k <= k_hi; ++k) {
    const double kk = static_cast<double>(k);
    const double err = std::abs(spec.value(k) - 2.0 * std::sqrt(volU * kk));
    const double ratio = err / (coeff * std::pow(kk, 0.25));
    if (ratio > chk.max_ratio) {
      chk.max_ratio = ratio;
      chk.worst_k = k;
    }
    ++chk.checked;
  }
  chk.holds = chk.max_ratio <= 1.0;
  return chk;
}

std::vector<double> disjoint_union_table(std::span<ActionSpectrum> specs, std::size_t k_max) {
  if (specs.empty()) throw InvalidInput("disjoint union: no spectra");
  std::vector<double> best(k_max + 1);
  for (std::size_t j = 0; j <= k_max; ++j) best[j] = specs[0].value(j);
  for (std::size_t i = 1; i < specs.size(); ++i) {
    specs[i].ensure(k_max + 1);
    std::vector<double> next(k_max + 1, -std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j <= k_max; ++j)
      for (std::size_t l = 0; l <= j; ++l)
        next[j] = std::max(next[j], best[j - l] + specs[i].value(l));
    best.swap(next);
  }
  return best;
}

double disjoint_union_spectrum(std::span<ActionSpectrum> specs, std::size_t k) {
  return disjoint_union_table(specs, k).back();
}

void write_spectrum_csv(std::ostream& out, ActionSpectrum& spec, std::size_t count) {
  std::vector<std::string> header{"k", "value"};
  for (std::size_t i = 0; i < spec.generators().size(); ++i)
    header.push_back("m" + std::to_string(i + 1));
  csv::Writer w(out, header);
  spec.ensure(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<csv::Cell> row{static_cast<std::int64_t>(k), spec.value(k)};
    for (auto m : spec.witness(k)) row.emplace_back(static_cast<std::int64_t>(m));
    w.row(row);
  }
}

void write_weyl_csv(std::ostream& out, const std::vector<WeylDiagnostic>& rows) {
  csv::Writer w(out, {"k", "value", "normalized"});
  for (const auto& r : rows) w.row({static_cast<std::int64_t>(r.k), r.value, r.normalized});
}

void write_blocks_csv(std::ostream& out, const std::vector<DyadicBlock>& blocks) {
  csv::Writer w(out, {"k_begin", "k_end", "mean_abs_deviation", "mean_abs_error"});
  for (const auto& b : blocks)
    w.row({static_cast<std::int64_t>(b.k_begin), static_cast<std::int64_t>(b.k_end),
           b.mean_abs_deviation, b.mean_abs_error});
}

}  // namespace reeb::spectrum
