#include "zetadyn/errors.hpp"

#include <sstream>
#include <utility>

namespace zetadyn {

namespace {

std::string singular_message(double x)
{
    std::ostringstream out;
    out << "state " << x << " is inside the singularity guard |x| < 1e-12";
    return out.str();
}

} // namespace

SingularState::SingularState(double x) : Error(singular_message(x)), state(x) {}

NoConvergence::NoConvergence(const std::string& what, std::vector<double> best)
    : Error(what), best_residuals(std::move(best))
{
}

} // namespace zetadyn
