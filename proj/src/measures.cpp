#include "credal/measures.hpp"

#include "credal/errors.hpp"

namespace credal {

double uncertainty(const PartialModel& m, const MceOptions& opts) {
  return entropy_bits(maxent(m.base(), opts).masses);
}

Rational event_gap(const PartialModel& m, const Event& event) {
  std::vector<Rational> obj(m.language().atom_count(), Rational(0));
  for (std::size_t i = event.find_first(); i != Event::npos; i = event.find_next(i)) obj[i] = 1;
  return envelope(m, obj, LpSense::Max) - envelope(m, obj, LpSense::Min);
}

Rational ignorance_exact(const PartialModel& m, std::size_t letter_cap) {
  const Language& lang = m.language();
  if (lang.letter_count() > letter_cap)
    throw CapError("ignorance enumeration capped at " + std::to_string(letter_cap) +
                   " letters");
  const std::size_t n = lang.atom_count();
  Rational sum = 0;
  Event event(n);
  // Events in subset order; the empty and full events contribute gap zero.
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) event[i] = (mask >> i) & 1u;
    sum += event_gap(m, event);
  }
  return sum / Rational(Integer(1) << n);
}

double ignorance(const PartialModel& m, std::size_t letter_cap) {
  return rational_to_double(ignorance_exact(m, letter_cap));
}

MeasureReport measure(const PartialModel& m, const MceOptions& opts, std::size_t letter_cap) {
  return {uncertainty(m, opts), ignorance(m, letter_cap)};
}

}  // namespace credal
