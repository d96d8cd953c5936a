#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cennet/discretize.hpp"

namespace cennet {

struct CiTestResult {
    double g2 = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
    bool independent = true;  // p_value > alpha
};

// G^2 likelihood-ratio test of a ⫫ b given the conditioning columns.
// G^2 = 2 sum O ln(O/E) over the contingency table of each conditioning
// stratum; degrees of freedom per stratum shrink by one for every all-zero
// marginal row or column, and empty strata contribute nothing. p comes from
// the chi-square upper tail; dof = 0 yields p = 1.
CiTestResult g2_test(const DiscreteTable& table, std::size_t a, std::size_t b,
                     const std::vector<std::size_t>& cond, double alpha);

CiTestResult g2_test(const DiscreteTable& table, const std::string& a, const std::string& b,
                     const std::vector<std::string>& cond, double alpha);

// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_upper_tail(double statistic, std::size_t dof);

}  // namespace cennet
