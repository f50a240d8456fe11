#ifndef MGP_LP_HPP
#define MGP_LP_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mgp/market_data.hpp"
#include "mgp/network.hpp"

namespace mgp {

struct DirectedEdge {
    int from = 0;
    int to = 0;
    friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

/// Welfare-maximizing clearing problem in minimization form:
///
///   min  c.x          c = +price on sell columns, -price on buy columns
///   s.t. A.x  <= b    one row per declared directed transit limit
///        a_eq.x = 0   energy balance (+1 sell, -1 buy)
///        lb <= x <= ub
///
/// A entry (r,k) is +1 for a sell / -1 for a buy whose zone lies on the
/// `from` side of row r's edge cut, 0 otherwise.
struct LinearProgram {
    Eigen::VectorXd c;
    Eigen::MatrixXd A;  // may have zero rows
    Eigen::VectorXd b;
    Eigen::RowVectorXd a_eq;
    double b_eq = 0.0;
    Eigen::VectorXd lb;
    Eigen::VectorXd ub;
    std::vector<DirectedEdge> row_tags;  // directed edge per inequality row
    std::vector<int> col_tags;           // offer id per column

    Eigen::Index cols() const { return c.size(); }
    Eigen::Index rows() const { return b.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    Eigen::VectorXd x;              // accepted quantity per column
    double objective = 0.0;         // c.x (welfare = -objective)
    Eigen::VectorXd mu;             // transit duals, one per inequality row, >= 0
    double lambda = 0.0;            // balance dual (unrestricted sign)
    Eigen::VectorXd reduced_costs;  // per column at the final basis
};

/// Assembles the clearing LP for one hour of offers on a tree (or forest)
/// topology. Limits must reference topology edges; a direction with no
/// declared limit gets no row. Columns follow the offers' order.
LinearProgram build_clearing_lp(std::span<const Offer> offers, const NetworkTopology& topology,
                                std::span<const TransitLimit> limits);

/// Two-phase bounded-variable primal simplex, dense. Pricing uses the
/// largest-reduced-cost rule and falls back to Bland's rule after
/// 2*(rows+cols) iterations to rule out cycling. Duals are read off the
/// final basis with signs fixed so mu >= 0.
LpSolution solve_lp(const LinearProgram& lp);

/// Post-solve sanity report: primal feasibility, dual signs, complementary
/// slackness and strong duality, each within documented tolerances.
struct KktReport {
    std::vector<std::string> violations;
    double max_row_violation = 0.0;    // max((A.x - b)+, |a_eq.x - b_eq|)
    double max_bound_violation = 0.0;  // beyond [lb, ub]
    double max_dual_violation = 0.0;   // most negative mu, as a magnitude
    double max_comp_slack = 0.0;       // worst mu_r * (b_r - (A.x)_r)
    double duality_gap = 0.0;          // |c.x - dual objective|
    bool ok() const { return violations.empty(); }
};

KktReport verify_kkt(const LinearProgram& lp, const LpSolution& solution);

/// Plain-text tableau dump for debugging solver failures.
void dump_lp(std::ostream& out, const LinearProgram& lp);

}  // namespace mgp

#endif
