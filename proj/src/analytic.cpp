#include "darkpulse/analytic.hpp"

namespace darkpulse {

template struct DarkStateAngle<double>;
template Vector<double> dark_coefficient(const Vector<double>&, double, double);
template PulseShape<double> ideal_pulse_shape(const Vector<double>&,
                                              const Vector<double>&, double);
template double adiabatic_error_estimate(double, double, double);
template double excitation_probability(const Vector<double>&, double, double);

}  // namespace darkpulse
