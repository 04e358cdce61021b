#include "darkpulse/model.hpp"

namespace darkpulse {

template struct ModeFunctionPoint<double>;
template double mode_function(const ModeFunctionPoint<double>&);
template struct CouplingTrajectory<double>;
template struct DriveProfile<double>;
template DriveAngle<double> theta_of_t(const DriveProfile<double>&,
                                       const CouplingTrajectory<double>&,
                                       double);
template CVector<double> cavity_drive_response(const Vector<double>&,
                                               const CVector<double>&, double,
                                               double);

}  // namespace darkpulse
