#include "cennet/citest.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "cennet/common.hpp"

namespace cennet {

double chi_square_upper_tail(double statistic, std::size_t dof) {
    if (dof == 0) return 1.0;
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

CiTestResult g2_test(const DiscreteTable& table, std::size_t a, std::size_t b,
                     const std::vector<std::size_t>& cond, double alpha) {
    const std::size_t n = table.n_rows();
    if (n == 0) throw ArgumentError("g2_test needs data");
    if (a == b) throw ArgumentError("g2_test needs two distinct columns");

    const std::size_t ca = static_cast<std::size_t>(table.cards[a]);
    const std::size_t cb = static_cast<std::size_t>(table.cards[b]);
    std::size_t n_strata = 1;
    for (std::size_t c : cond) {
        n_strata *= static_cast<std::size_t>(table.cards[c]);
        if (n_strata > 4000000) throw ArgumentError("conditioning state space too large");
    }

    std::vector<double> counts(ca * cb * n_strata, 0.0);
    const std::vector<std::int32_t>& col_a = table.codes[a];
    const std::vector<std::int32_t>& col_b = table.codes[b];
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t stratum = 0;
        for (std::size_t c : cond) {
            stratum = stratum * static_cast<std::size_t>(table.cards[c]) +
                      static_cast<std::size_t>(table.codes[c][r]);
        }
        counts[(stratum * ca + static_cast<std::size_t>(col_a[r])) * cb +
               static_cast<std::size_t>(col_b[r])] += 1.0;
    }

    double g2 = 0.0;
    std::size_t dof = 0;
    std::vector<double> row_sum(ca), col_sum(cb);
    for (std::size_t s = 0; s < n_strata; ++s) {
        const double* cell = counts.data() + s * ca * cb;
        double total = 0.0;
        std::fill(row_sum.begin(), row_sum.end(), 0.0);
        std::fill(col_sum.begin(), col_sum.end(), 0.0);
        for (std::size_t i = 0; i < ca; ++i) {
            for (std::size_t j = 0; j < cb; ++j) {
                const double o = cell[i * cb + j];
                row_sum[i] += o;
                col_sum[j] += o;
                total += o;
            }
        }
        if (total == 0.0) continue;

        std::size_t rows_present = 0, cols_present = 0;
        for (double v : row_sum) rows_present += v > 0.0 ? 1 : 0;
        for (double v : col_sum) cols_present += v > 0.0 ? 1 : 0;
        if (rows_present > 1 && cols_present > 1) {
            dof += (rows_present - 1) * (cols_present - 1);
        }

        for (std::size_t i = 0; i < ca; ++i) {
            if (row_sum[i] == 0.0) continue;
            for (std::size_t j = 0; j < cb; ++j) {
                const double o = cell[i * cb + j];
                if (o == 0.0) continue;
                const double e = row_sum[i] * col_sum[j] / total;
                g2 += 2.0 * o * std::log(o / e);
            }
        }
    }
    if (g2 < 0.0) g2 = 0.0;  // guard against round-off on exact fits

    CiTestResult result;
    result.g2 = g2;
    result.dof = dof;
    result.p_value = chi_square_upper_tail(g2, dof);
    result.independent = result.p_value > alpha;
    return result;
}

CiTestResult g2_test(const DiscreteTable& table, const std::string& a, const std::string& b,
                     const std::vector<std::string>& cond, double alpha) {
    std::vector<std::size_t> cond_idx;
    cond_idx.reserve(cond.size());
    for (const std::string& c : cond) cond_idx.push_back(table.index_of(c));
    return g2_test(table, table.index_of(a), table.index_of(b), cond_idx, alpha);
}

}  // namespace cennet
