#ifndef CREDAL_MEASURES_HPP
#define CREDAL_MEASURES_HPP

#include "credal/credal.hpp"
#include "credal/mce.hpp"

namespace credal {

// Provisional uncertainty / ignorance measures for partial models.
struct MeasureReport {
  double uncertainty_bits = 0.0;
  double ignorance = 0.0;
};

// Entropy ceiling of the model: Shannon entropy (bits) of its maximum-entropy
// member. For an embedded probability function this is H(P).
double uncertainty(const PartialModel& m, const MceOptions& opts = {});

// Exact upper-minus-lower probability gap of one event.
Rational event_gap(const PartialModel& m, const Event& event);

// Mean envelope gap over all 2^N events. Exact internally; capped by letter
// count because of the event enumeration.
Rational ignorance_exact(const PartialModel& m, std::size_t letter_cap = 4);

double ignorance(const PartialModel& m, std::size_t letter_cap = 4);

MeasureReport measure(const PartialModel& m, const MceOptions& opts = {},
                      std::size_t letter_cap = 4);

}  // namespace credal

#endif
