#include "darkpulse/simulator.hpp"

namespace darkpulse {

template ModeGrid<double> build_mode_grid(const PhysicalParams<double>&,
                                          double);
template void rhs(const CVector<double>&, const DriveAngle<double>&, double,
                  double, const ModeGrid<double>&, CVector<double>&);
template SystemTrajectory<double> integrate(const PhysicalParams<double>&,
                                            const DriveProfile<double>&,
                                            const CouplingTrajectory<double>&,
                                            const TimeGrid<double>&);
template SystemTrajectory<double> integrate(const PhysicalParams<double>&,
                                            const DriveProfile<double>&,
                                            const CouplingTrajectory<double>&,
                                            const TimeGrid<double>&,
                                            const ModeGrid<double>&);
template PulseShape<double> reconstruct_pulse(const CVector<double>&,
                                              const ModeGrid<double>&,
                                              const Vector<double>&, double);
template std::complex<double> overlap_integral(const PulseShape<double>&,
                                               const PulseShape<double>&);
template double mismatch(const PulseShape<double>&, const PulseShape<double>&);
template NoiseMetrics<double> noise_metrics(const SystemState<double>&,
                                            const PulseShape<double>&,
                                            const PulseShape<double>&);

}  // namespace darkpulse
