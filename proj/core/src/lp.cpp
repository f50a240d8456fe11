#include "mgp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <utility>

#include "mgp/errors.hpp"
#include "mgp/numeric_text.hpp"

namespace mgp {

namespace {

constexpr double kPivotTol = 1e-10;  // smallest usable pivot / ratio denominator
constexpr double kFeasTol = 1e-9;    // primal feasibility slack
constexpr double kOptTol = 1e-9;     // reduced-cost optimality threshold
constexpr int kRefactorEvery = 64;   // basis pivots between refactorizations
const double kInf = std::numeric_limits<double>::infinity();

/// Bounded-variable primal simplex on the augmented system
/// [A | I_slack] x = [b; b_eq] with per-column bounds. Columns are the
/// structural variables, one slack per inequality row, plus artificials
/// appended only when the trivial starting basis is infeasible.
class BoundedSimplex {
public:
    explicit BoundedSimplex(const LinearProgram& lp) : lp_(lp) { assemble(); }

    LpStatus run() {
        if (needs_phase1_) {
            Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(n_total_);
            for (int j = n_art_; j < n_total_; ++j) phase1_cost[j] = 1.0;
            LpStatus st = iterate(phase1_cost, /*phase1=*/true);
            if (st != LpStatus::Optimal) return LpStatus::Infeasible;
            double infeasibility = 0.0;
            for (int j = n_art_; j < n_total_; ++j) infeasibility += x_[j];
            if (infeasibility > kFeasTol * (1.0 + rhs_.lpNorm<Eigen::Infinity>()))
                return LpStatus::Infeasible;
            retire_artificials();
        }
        Eigen::VectorXd cost = Eigen::VectorXd::Zero(n_total_);
        cost.head(n_struct_) = lp_.c;
        LpStatus st = iterate(cost, /*phase1=*/false);
        if (st == LpStatus::Optimal) polish(cost);
        return st;
    }

    LpSolution extract(LpStatus status) const {
        LpSolution sol;
        sol.status = status;
        sol.x = Eigen::VectorXd::Zero(n_struct_);
        sol.mu = Eigen::VectorXd::Zero(m_ineq_);
        sol.reduced_costs = Eigen::VectorXd::Zero(n_struct_);
        if (status != LpStatus::Optimal) return sol;
        sol.x = x_.head(n_struct_);
        sol.objective = lp_.c.dot(sol.x);
        for (int r = 0; r < m_ineq_; ++r) {
            double mu = -y_[r];
            if (mu < 0.0 && mu >= -kFeasTol) mu = 0.0;
            sol.mu[r] = mu;
        }
        sol.lambda = y_[m_ - 1];
        for (int j = 0; j < n_struct_; ++j) sol.reduced_costs[j] = lp_.c[j] - y_.dot(cols_.col(j));
        return sol;
    }

private:
    enum class VarState : std::uint8_t { Basic, AtLower, AtUpper };

    void assemble() {
        n_struct_ = static_cast<int>(lp_.cols());
        m_ineq_ = static_cast<int>(lp_.rows());
        m_ = m_ineq_ + 1;  // + balance row
        n_art_ = n_struct_ + m_ineq_;

        // structural and slack columns; artificials appended on demand
        cols_ = Eigen::MatrixXd::Zero(m_, n_art_);
        if (m_ineq_ > 0) cols_.topLeftCorner(m_ineq_, n_struct_) = lp_.A;
        cols_.row(m_ - 1).head(n_struct_) = lp_.a_eq;
        for (int r = 0; r < m_ineq_; ++r) cols_(r, n_struct_ + r) = 1.0;

        lo_ = Eigen::VectorXd::Zero(n_art_);
        hi_ = Eigen::VectorXd::Zero(n_art_);
        lo_.head(n_struct_) = lp_.lb;
        hi_.head(n_struct_) = lp_.ub;
        for (int r = 0; r < m_ineq_; ++r) {
            lo_[n_struct_ + r] = 0.0;
            hi_[n_struct_ + r] = kInf;
        }

        rhs_.resize(m_);
        rhs_.head(m_ineq_) = lp_.b;
        rhs_[m_ - 1] = lp_.b_eq;

        state_.assign(static_cast<std::size_t>(n_art_), VarState::AtLower);
        x_ = lo_;  // everybody starts at its lower bound
        basis_.assign(static_cast<std::size_t>(m_), -1);

        // residual the basis has to absorb
        Eigen::VectorXd resid = rhs_ - cols_.leftCols(n_struct_) * x_.head(n_struct_);

        needs_phase1_ = false;
        for (int r = 0; r < m_ineq_; ++r) {
            if (resid[r] >= -kFeasTol) {
                set_basic(n_struct_ + r, r, std::max(resid[r], 0.0));
            } else {
                add_artificial(r, resid[r]);
            }
        }
        // balance row: a structural column carried at value 0 keeps the
        // starting basis free of artificials in the common b_eq = 0 case
        if (std::abs(resid[m_ - 1]) <= kFeasTol) {
            int pick = -1;
            for (int j = 0; j < n_struct_; ++j) {
                if (state_[static_cast<std::size_t>(j)] != VarState::Basic &&
                    std::abs(cols_(m_ - 1, j)) > kPivotTol) {
                    pick = j;
                    break;
                }
            }
            if (pick >= 0) {
                set_basic(pick, m_ - 1, lo_[pick]);
            } else {
                add_artificial(m_ - 1, resid[m_ - 1]);
            }
        } else {
            add_artificial(m_ - 1, resid[m_ - 1]);
        }

        n_total_ = static_cast<int>(cols_.cols());
        refactor();
    }

    void set_basic(int col, int row, double value) {
        basis_[static_cast<std::size_t>(row)] = col;
        state_[static_cast<std::size_t>(col)] = VarState::Basic;
        x_[col] = value;
    }

    void add_artificial(int row, double residual) {
        needs_phase1_ = true;
        int col = static_cast<int>(cols_.cols());
        cols_.conservativeResize(Eigen::NoChange, col + 1);
        cols_.col(col).setZero();
        cols_(row, col) = residual < 0.0 ? -1.0 : 1.0;
        lo_.conservativeResize(col + 1);
        hi_.conservativeResize(col + 1);
        x_.conservativeResize(col + 1);
        lo_[col] = 0.0;
        hi_[col] = kInf;
        state_.push_back(VarState::Basic);
        basis_[static_cast<std::size_t>(row)] = col;
        x_[col] = std::abs(residual);
        state_[static_cast<std::size_t>(col)] = VarState::Basic;
    }

    void refactor() {
        Eigen::MatrixXd basis_matrix(m_, m_);
        for (int i = 0; i < m_; ++i) basis_matrix.col(i) = cols_.col(basis_[static_cast<std::size_t>(i)]);
        binv_ = basis_matrix.partialPivLu().inverse();
        if (!binv_.allFinite()) throw internal_error("simplex: singular basis during refactorization");
        recompute_basics();
        pivots_since_refactor_ = 0;
    }

    void recompute_basics() {
        Eigen::VectorXd r = rhs_;
        for (int j = 0; j < n_total_; ++j) {
            if (state_[static_cast<std::size_t>(j)] != VarState::Basic && x_[j] != 0.0)
                r -= cols_.col(j) * x_[j];
        }
        Eigen::VectorXd xb = binv_ * r;
        for (int i = 0; i < m_; ++i) x_[basis_[static_cast<std::size_t>(i)]] = xb[i];
    }

    void compute_duals(const Eigen::VectorXd& cost) {
        Eigen::VectorXd cb(m_);
        for (int i = 0; i < m_; ++i) cb[i] = cost[basis_[static_cast<std::size_t>(i)]];
        y_ = binv_.transpose() * cb;
    }

    LpStatus iterate(const Eigen::VectorXd& cost, bool phase1) {
        const long bland_after = 2L * (m_ + n_total_);
        const long max_iters = 10000L + 200L * (m_ + n_total_);
        for (long iter = 0; iter < max_iters; ++iter) {
            if (pivots_since_refactor_ >= kRefactorEvery) refactor();
            compute_duals(cost);

            const bool bland = iter > bland_after;
            int entering = -1;
            double best_viol = kOptTol;
            int sigma = +1;
            for (int j = 0; j < n_total_; ++j) {
                VarState st = state_[static_cast<std::size_t>(j)];
                if (st == VarState::Basic) continue;
                if (!phase1 && j >= n_art_) continue;      // artificials are done
                if (hi_[j] - lo_[j] <= 0.0) continue;      // fixed column
                double d = cost[j] - y_.dot(cols_.col(j));
                double viol = st == VarState::AtLower ? -d : d;
                if (viol > best_viol) {
                    entering = j;
                    best_viol = viol;
                    sigma = st == VarState::AtLower ? +1 : -1;
                    if (bland) break;  // first (smallest-index) violation
                }
            }
            if (entering < 0) return LpStatus::Optimal;

            Eigen::VectorXd w = binv_ * cols_.col(entering);

            double t_best = hi_[entering] - lo_[entering];  // bound-flip distance, may be inf
            int leave = -1;
            for (int i = 0; i < m_; ++i) {
                int var = basis_[static_cast<std::size_t>(i)];
                double delta = sigma * w[i];
                double ti;
                if (delta > kPivotTol) {
                    if (lo_[var] == -kInf) continue;
                    ti = (x_[var] - lo_[var]) / delta;
                } else if (delta < -kPivotTol) {
                    if (hi_[var] == kInf) continue;
                    ti = (x_[var] - hi_[var]) / delta;
                } else {
                    continue;
                }
                if (ti < 0.0) ti = 0.0;  // already at (or tol-beyond) its bound
                if (ti < t_best - 1e-12) {
                    t_best = ti;
                    leave = i;
                } else if (leave >= 0 && ti <= t_best + 1e-12) {
                    // degenerate tie: drive artificials out first, then the
                    // smallest variable index (keeps Bland's rule honest)
                    int cur = basis_[static_cast<std::size_t>(leave)];
                    bool var_art = var >= n_art_;
                    bool cur_art = cur >= n_art_;
                    if ((var_art && !cur_art) || (var_art == cur_art && var < cur)) leave = i;
                }
            }

            if (!std::isfinite(t_best) && leave < 0) return LpStatus::Unbounded;

            if (leave < 0) {
                // entering variable swings across to its opposite bound
                for (int i = 0; i < m_; ++i) x_[basis_[static_cast<std::size_t>(i)]] -= sigma * t_best * w[i];
                x_[entering] = sigma > 0 ? hi_[entering] : lo_[entering];
                state_[static_cast<std::size_t>(entering)] =
                    sigma > 0 ? VarState::AtUpper : VarState::AtLower;
                continue;
            }

            for (int i = 0; i < m_; ++i) x_[basis_[static_cast<std::size_t>(i)]] -= sigma * t_best * w[i];
            x_[entering] += sigma * t_best;

            int leaving_var = basis_[static_cast<std::size_t>(leave)];
            double delta_l = sigma * w[leave];
            x_[leaving_var] = delta_l > 0 ? lo_[leaving_var] : hi_[leaving_var];
            state_[static_cast<std::size_t>(leaving_var)] =
                delta_l > 0 ? VarState::AtLower : VarState::AtUpper;
            state_[static_cast<std::size_t>(entering)] = VarState::Basic;
            basis_[static_cast<std::size_t>(leave)] = entering;

            double piv = w[leave];
            binv_.row(leave) /= piv;
            for (int r = 0; r < m_; ++r) {
                if (r == leave) continue;
                double f = w[r];
                if (f != 0.0) binv_.row(r) -= f * binv_.row(leave);
            }
            ++pivots_since_refactor_;
        }
        throw internal_error("simplex: iteration limit exceeded");
    }

    /// Pivot zero-valued artificials out of the basis; rows that cannot be
    /// freed are redundant, so their artificial is pinned to zero instead.
    void retire_artificials() {
        for (int i = 0; i < m_; ++i) {
            int var = basis_[static_cast<std::size_t>(i)];
            if (var < n_art_) continue;
            int replacement = -1;
            Eigen::RowVectorXd row = binv_.row(i);
            for (int j = 0; j < n_art_; ++j) {
                if (state_[static_cast<std::size_t>(j)] == VarState::Basic) continue;
                if (std::abs(row.dot(cols_.col(j).transpose())) > kPivotTol) {
                    replacement = j;
                    break;
                }
            }
            if (replacement < 0) continue;  // redundant row; artificial stays at 0
            Eigen::VectorXd w = binv_ * cols_.col(replacement);
            double piv = w[i];
            state_[static_cast<std::size_t>(var)] = VarState::AtLower;
            x_[var] = 0.0;
            state_[static_cast<std::size_t>(replacement)] = VarState::Basic;
            basis_[static_cast<std::size_t>(i)] = replacement;
            binv_.row(i) /= piv;
            for (int r = 0; r < m_; ++r) {
                if (r == i) continue;
                double f = w[r];
                if (f != 0.0) binv_.row(r) -= f * binv_.row(i);
            }
            recompute_basics();
        }
        for (int j = n_art_; j < n_total_; ++j) hi_[j] = 0.0;  // nobody re-enters
    }

    /// Final refactorization so the reported point and duals come from a
    /// freshly solved basis.
    void polish(const Eigen::VectorXd& cost) {
        refactor();
        compute_duals(cost);
    }

    const LinearProgram& lp_;
    int n_struct_ = 0;
    int m_ineq_ = 0;
    int m_ = 0;
    int n_art_ = 0;    // first artificial column index
    int n_total_ = 0;  // including artificials
    bool needs_phase1_ = false;

    Eigen::MatrixXd cols_;
    Eigen::VectorXd lo_, hi_, rhs_, x_, y_;
    Eigen::MatrixXd binv_;
    std::vector<VarState> state_;
    std::vector<int> basis_;
    int pivots_since_refactor_ = 0;
};

}  // namespace

LinearProgram build_clearing_lp(std::span<const Offer> offers, const NetworkTopology& topology,
                                std::span<const TransitLimit> limits) {
    if (offers.empty()) throw input_error("empty hour: no offers to clear");
    if (!detect_cycles(topology).empty())
        throw topology_error("clearing topology still has a cycle; open the ring first");

    const int n = static_cast<int>(offers.size());
    LinearProgram lp;
    lp.c.resize(n);
    lp.lb = Eigen::VectorXd::Zero(n);
    lp.ub.resize(n);
    lp.a_eq.resize(n);
    lp.col_tags.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const Offer& o = offers[static_cast<std::size_t>(k)];
        if (o.zone < 0 || o.zone >= topology.zone_count())
            throw input_error("offer " + std::to_string(o.id) + " references an invalid zone index");
        if (!(o.quantity >= 0.0) || !std::isfinite(o.quantity))
            throw input_error("offer " + std::to_string(o.id) + " has invalid quantity");
        if (!(o.price >= 0.0) || !std::isfinite(o.price))
            throw input_error("offer " + std::to_string(o.id) + " has invalid price");
        const double sign = o.purpose == Purpose::Sell ? 1.0 : -1.0;
        lp.c[k] = sign * o.price;
        lp.ub[k] = o.quantity;
        lp.a_eq[k] = sign;
        lp.col_tags.push_back(o.id);
    }

    // declared directed limits, deduplicated and validated against edges
    std::vector<std::pair<DirectedEdge, double>> declared;
    for (const auto& lim : limits) {
        if (!topology.has_edge(lim.from, lim.to))
            throw input_error("transit limit on a non-edge: zone indices " + std::to_string(lim.from) +
                              "->" + std::to_string(lim.to));
        if (!(lim.max_flow >= 0.0) || !std::isfinite(lim.max_flow))
            throw input_error("transit limit for " + topology.zone(lim.from).code + "->" +
                              topology.zone(lim.to).code + " must be finite and >= 0");
        for (const auto& [tag, unused] : declared) {
            if (tag.from == lim.from && tag.to == lim.to)
                throw input_error("duplicate transit limit for " + topology.zone(lim.from).code + "->" +
                                  topology.zone(lim.to).code);
        }
        declared.push_back({{lim.from, lim.to}, lim.max_flow});
    }

    // one row per declared direction, in topology edge order
    std::vector<std::pair<DirectedEdge, double>> rows;
    for (auto [a, b] : topology.edges()) {
        for (auto dir : {DirectedEdge{a, b}, DirectedEdge{b, a}}) {
            for (const auto& [tag, max_flow] : declared) {
                if (tag == dir) rows.push_back({dir, max_flow});
            }
        }
    }

    const int m = static_cast<int>(rows.size());
    lp.A = Eigen::MatrixXd::Zero(m, n);
    lp.b.resize(m);
    lp.row_tags.reserve(rows.size());
    for (int r = 0; r < m; ++r) {
        const auto& [tag, max_flow] = rows[static_cast<std::size_t>(r)];
        EdgeCut cut = edge_cut(topology, tag.from, tag.to);
        for (int k = 0; k < n; ++k) {
            const Offer& o = offers[static_cast<std::size_t>(k)];
            if (cut.side_membership[static_cast<std::size_t>(o.zone)])
                lp.A(r, k) = o.purpose == Purpose::Sell ? 1.0 : -1.0;
        }
        lp.b[r] = max_flow;
        lp.row_tags.push_back(tag);
    }
    return lp;
}

LpSolution solve_lp(const LinearProgram& lp) {
    if (lp.cols() == 0) throw input_error("cannot solve an LP with no columns");
    if (lp.A.rows() != lp.b.size() || lp.A.cols() != lp.cols() || lp.a_eq.size() != lp.cols() ||
        lp.lb.size() != lp.cols() || lp.ub.size() != lp.cols())
        throw internal_error("solve_lp: inconsistent LP dimensions");
    BoundedSimplex simplex(lp);
    LpStatus status = simplex.run();
    return simplex.extract(status);
}

KktReport verify_kkt(const LinearProgram& lp, const LpSolution& sol) {
    KktReport report;
    if (sol.status != LpStatus::Optimal) {
        report.violations.push_back("solution status is not Optimal");
        return report;
    }
    auto flag = [&](const std::string& msg) { report.violations.push_back(msg); };

    for (Eigen::Index j = 0; j < lp.cols(); ++j) {
        double below = lp.lb[j] - sol.x[j];
        double above = sol.x[j] - lp.ub[j];
        double worst = std::max(below, above);
        report.max_bound_violation = std::max(report.max_bound_violation, worst);
        if (worst > 1e-9)
            flag("column " + std::to_string(j) + " violates its bounds by " + format_double(worst));
    }

    Eigen::VectorXd slack;
    if (lp.rows() > 0) {
        Eigen::VectorXd ax = lp.A * sol.x;
        slack = lp.b - ax;
        for (Eigen::Index r = 0; r < lp.rows(); ++r) {
            double excess = -slack[r];
            report.max_row_violation = std::max(report.max_row_violation, excess);
            if (excess > 1e-6)
                flag("inequality row " + std::to_string(r) + " violated by " + format_double(excess));
        }
    }
    double balance_resid = std::abs(lp.a_eq.dot(sol.x) - lp.b_eq);
    report.max_row_violation = std::max(report.max_row_violation, balance_resid);
    if (balance_resid > 1e-6) flag("balance row violated by " + format_double(balance_resid));

    for (Eigen::Index r = 0; r < lp.rows(); ++r) {
        if (sol.mu[r] < 0.0) {
            report.max_dual_violation = std::max(report.max_dual_violation, -sol.mu[r]);
            if (sol.mu[r] < -1e-9)
                flag("mu[" + std::to_string(r) + "] = " + format_double(sol.mu[r]) + " is negative");
        }
        double resid = sol.mu[r] * slack[r];
        report.max_comp_slack = std::max(report.max_comp_slack, std::abs(resid));
        if (std::abs(resid) > 1e-6 * (1.0 + std::abs(lp.b[r])))
            flag("complementary slackness fails on row " + std::to_string(r) + ": " +
                 format_double(resid));
    }

    // strong duality with reduced costs standing in for the bound duals
    double dual_objective = sol.lambda * lp.b_eq;
    for (Eigen::Index r = 0; r < lp.rows(); ++r) dual_objective -= sol.mu[r] * lp.b[r];
    for (Eigen::Index j = 0; j < lp.cols(); ++j) {
        double d = lp.c[j] + (lp.rows() > 0 ? lp.A.col(j).dot(sol.mu) : 0.0) - sol.lambda * lp.a_eq[j];
        if (d > 0.0)
            dual_objective += d * lp.lb[j];
        else
            dual_objective += d * lp.ub[j];
    }
    report.duality_gap = std::abs(sol.objective - dual_objective);
    if (report.duality_gap > 1e-6 * (1.0 + std::abs(sol.objective)))
        flag("duality gap " + format_double(report.duality_gap));

    return report;
}

void dump_lp(std::ostream& out, const LinearProgram& lp) {
    out << "# clearing lp: " << lp.cols() << " columns, " << lp.rows() << " inequality rows\n";
    out << "columns: tag c lb ub\n";
    for (Eigen::Index j = 0; j < lp.cols(); ++j) {
        int tag = j < static_cast<Eigen::Index>(lp.col_tags.size())
                      ? lp.col_tags[static_cast<std::size_t>(j)]
                      : static_cast<int>(j);
        out << tag << ' ' << format_double(lp.c[j]) << ' ' << format_double(lp.lb[j]) << ' '
            << format_double(lp.ub[j]) << '\n';
    }
    out << "rows: tag coefficients <= b\n";
    for (Eigen::Index r = 0; r < lp.rows(); ++r) {
        const auto& tag = lp.row_tags[static_cast<std::size_t>(r)];
        out << tag.from << "->" << tag.to;
        for (Eigen::Index j = 0; j < lp.cols(); ++j) out << ' ' << format_double(lp.A(r, j));
        out << " <= " << format_double(lp.b[r]) << '\n';
    }
    out << "balance:";
    for (Eigen::Index j = 0; j < lp.cols(); ++j) out << ' ' << format_double(lp.a_eq[j]);
    out << " = " << format_double(lp.b_eq) << '\n';
}

}  // namespace mgp
