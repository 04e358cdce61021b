#include "darkpulse/design.hpp"

namespace darkpulse {

template struct TargetWaveform<double>;
template struct ThetaSeries<double>;
template ThetaSeries<double> invert_pulse_shape(const TargetWaveform<double>&,
                                                double);
template Vector<double> drive_from_theta(const ThetaSeries<double>&, double);
template TransferDrives<double> transfer_pair(double, double, double, double,
                                              Eigen::Index);

}  // namespace darkpulse
