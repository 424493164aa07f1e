#include "skewrd/bvp_oracle.hpp"

#include <complex>

namespace skewrd {

template class TwoIntervalSolver<double>;
template class TwoIntervalSolver<std::complex<double>>;

}  // namespace skewrd
