#include "darkpulse/trap.hpp"

namespace darkpulse {

template struct TrapConfig<double>;
template double fort_potential(const TrapConfig<double>&, double, double,
                               double);
template double fort_depth(const TrapConfig<double>&);
template TrapFrequencies<double> trap_frequencies(double,
                                                  const TrapConfig<double>&);
template ThermalExtent<double> thermal_extent(const TrapConfig<double>&);
template CouplingSpread<double> coupling_spread(const ThermalExtent<double>&,
                                                double, double);
template TrapReport<double> trap_report(const TrapConfig<double>&, double,
                                        double);

}  // namespace darkpulse
