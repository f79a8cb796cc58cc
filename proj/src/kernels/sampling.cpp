// Approximation records: one truncation per sampled gap. The parallel
// version fills disjoint slots of the output and must match the serial one.

#include "henselium/diagnostics.hpp"
#include "henselium/error.hpp"

namespace henselium {

namespace {

ApproximationRecord make_record(const Series& z, const Exponent& gap) {
  Series approximant = truncate_at(z, gap);
  Exponent value = (z - approximant).valuation().value();
  return {std::move(approximant), std::move(value)};
}

constexpr std::size_t kParallelRecords = 16;

}  // namespace

std::vector<ApproximationRecord> build_records_serial(const Series& z,
                                                      std::span<const Exponent> gaps) {
  std::vector<ApproximationRecord> out;
  out.reserve(gaps.size());
  for (const Exponent& g : gaps) out.push_back(make_record(z, g));
  return out;
}

std::vector<ApproximationRecord> build_records_parallel(const Series& z,
                                                        std::span<const Exponent> gaps) {
  if (gaps.size() < kParallelRecords) return build_records_serial(z, gaps);
  std::vector<std::optional<ApproximationRecord>> slots(gaps.size());
  const auto count = static_cast<std::ptrdiff_t>(gaps.size());
  bool failed = false;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      slots[static_cast<std::size_t>(i)] = make_record(z, gaps[static_cast<std::size_t>(i)]);
    } catch (const Error&) {
#pragma omp atomic write
      failed = true;
    }
  }
  // Rerun serially so the error surfaces with its own code and message.
  if (failed) return build_records_serial(z, gaps);
  std::vector<ApproximationRecord> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace henselium
