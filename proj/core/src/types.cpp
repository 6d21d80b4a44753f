#include "frgame/types.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace frgame {

void StrategyProfile::validate() const {
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (!(p >= 0.0 && p <= 1.0)) {  // also rejects NaN
      std::ostringstream oss;
      oss << "strategy profile entry " << i << " = " << p << " is not in [0,1]";
      throw std::invalid_argument(oss.str());
    }
  }
}

}  // namespace frgame
