#include "emdsvr/svr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "emdsvr/error.hpp"

namespace emdsvr {

KernelSpec KernelSpec::rbf(double gamma) {
    if (!(gamma > 0.0)) throw ArgumentError("RBF gamma must be positive");
    return {Kind::Rbf, gamma};
}

namespace {

double kernel_unchecked(const KernelSpec& k, std::span<const double> u, std::span<const double> v) {
    double acc = 0.0;
    if (k.kind == KernelSpec::Kind::Linear) {
        for (std::size_t d = 0; d < u.size(); ++d) acc += u[d] * v[d];
        return acc;
    }
    for (std::size_t d = 0; d < u.size(); ++d) {
        const double diff = u[d] - v[d];
        acc += diff * diff;
    }
    return std::exp(-k.gamma * acc);
}

void check_patterns(const PatternMatrix& x) {
    if (x.empty()) return;
    const std::size_t dim = x.front().size();
    for (const auto& row : x) {
        if (row.size() != dim) throw ArgumentError("input patterns have inconsistent dimension");
    }
}

void fill_row(const KernelSpec& k, const PatternMatrix& x, DenseMatrix& out, std::size_t i) {
    for (std::size_t j = i; j < x.size(); ++j) {
        const double v = kernel_unchecked(k, x[i], x[j]);
        out(i, j) = v;
        out(j, i) = v;
    }
}

}  // namespace

double kernel_eval(const KernelSpec& k, std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) {
        throw ArgumentError("kernel dimension mismatch: " + std::to_string(u.size()) + " vs " +
                            std::to_string(v.size()));
    }
    return kernel_unchecked(k, u, v);
}

DenseMatrix kernel_matrix(const KernelSpec& k, const PatternMatrix& x) {
    check_patterns(x);
    const std::size_t n = x.size();
    DenseMatrix out(n, n);
    const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8) if (n > 128)
    for (std::ptrdiff_t i = 0; i < rows; ++i) fill_row(k, x, out, static_cast<std::size_t>(i));
    return out;
}

namespace serial {

DenseMatrix kernel_matrix(const KernelSpec& k, const PatternMatrix& x) {
    check_patterns(x);
    DenseMatrix out(x.size(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) fill_row(k, x, out, i);
    return out;
}

}  // namespace serial

namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// The 2n-variable problem in the usual signed form: variable t has sign
// s_t = +1 for t < n (a_t) and -1 otherwise (a*_t), Q_tu = s_t s_u K.
// Only f = K beta is stored; both gradients follow from it:
//   G(a_t) = eps - y_t + f_t,  G(a*_t) = eps + y_t - f_t.
class PairSolver {
public:
    PairSolver(const DenseMatrix& k, std::span<const double> y, double c, double eps)
        : k_(k), y_(y), n_(y.size()), c_(c), eps_(eps), alpha_(2 * n_, 0.0), f_(n_, 0.0),
          diag_(n_) {
        for (std::size_t i = 0; i < n_; ++i) diag_[i] = k_(i, i);
        rescan_first();
    }

    DualSolution run(const SolverOptions& opts) {
        DualSolution out;
        const std::size_t cap = opts.max_updates_per_sample * n_;
        for (;;) {
            std::size_t i = 0;
            std::size_t j = 0;
            const double gap = select(i, j);
            out.kkt_gap = gap;
            if (gap < opts.tolerance || j == kNone) {
                out.converged = true;
                break;
            }
            if (out.updates >= cap) break;
            update(i, j);
            ++out.updates;
        }
        out.alpha = alpha_;
        out.beta.resize(n_);
        for (std::size_t t = 0; t < n_; ++t) out.beta[t] = alpha_[t] - alpha_[t + n_];
        out.bias = bias();
        out.objective = dual_objective(k_, y_, alpha_, eps_);
        return out;
    }

private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    int sign(std::size_t t) const { return t < n_ ? 1 : -1; }
    std::size_t pat(std::size_t t) const { return t < n_ ? t : t - n_; }
    double grad(std::size_t t) const {
        return t < n_ ? eps_ - y_[t] + f_[t] : eps_ + y_[t - n_] - f_[t - n_];
    }

    // First index of the working set: the maximal violator, -grad over
    // variables that can still move up in the signed sense.
    void scan_first(std::size_t t, double gp, double gm) {
        if (alpha_[t] < c_ && -gp >= gmax_) {
            gmax_ = -gp;
            first_ = t;
        }
        if (alpha_[t + n_] > 0.0 && gm >= gmax_) {
            gmax_ = gm;
            first_ = t + n_;
        }
    }

    void rescan_first() {
        gmax_ = -kInf;
        first_ = kNone;
        for (std::size_t t = 0; t < n_; ++t) {
            scan_first(t, eps_ - y_[t] + f_[t], eps_ + y_[t] - f_[t]);
        }
    }

    // Returns the maximal KKT gap m(a) - M(a); j == kNone when no partner exists.
    double select(std::size_t& i_out, std::size_t& j_out) const {
        const double* a = alpha_.data();
        const double* as = alpha_.data() + n_;
        const double gmax = gmax_;
        const std::size_t i = first_;
        i_out = i;
        j_out = kNone;
        if (i == kNone) return 0.0;

        const double* ki = k_.row(pat(i)).data();
        const double qd_i = diag_[pat(i)];
        double gmax2 = -kInf;
        double best = kInf;
        std::size_t j = kNone;
        for (std::size_t t = 0; t < n_; ++t) {
            const double gp = eps_ - y_[t] + f_[t];
            const double gm = eps_ + y_[t] - f_[t];
            if (a[t] > 0.0) {
                gmax2 = std::max(gmax2, gp);
                const double diff = gmax + gp;
                if (diff > 0.0) {
                    double quad = qd_i + diag_[t] - 2.0 * ki[t];
                    if (quad <= 0.0) quad = kTau;
                    const double gain = -(diff * diff) / quad;
                    if (gain <= best) {
                        j = t;
                        best = gain;
                    }
                }
            }
            if (as[t] < c_) {
                gmax2 = std::max(gmax2, -gm);
                const double diff = gmax - gm;
                if (diff > 0.0) {
                    double quad = qd_i + diag_[t] - 2.0 * ki[t];
                    if (quad <= 0.0) quad = kTau;
                    const double gain = -(diff * diff) / quad;
                    if (gain <= best) {
                        j = t + n_;
                        best = gain;
                    }
                }
            }
        }
        j_out = j;
        return gmax + gmax2;
    }

    void update(std::size_t i, std::size_t j) {
        const double old_i = alpha_[i];
        const double old_j = alpha_[j];
        double& ai = alpha_[i];
        double& aj = alpha_[j];
        const std::size_t pi = pat(i);
        const std::size_t pj = pat(j);
        const double qij = sign(i) * sign(j) * k_(pi, pj);
        const double gi = grad(i);
        const double gj = grad(j);
        if (sign(i) != sign(j)) {
            double quad = diag_[pi] + diag_[pj] + 2.0 * qij;
            if (quad <= 0.0) quad = kTau;
            const double delta = (-gi - gj) / quad;
            const double diff = ai - aj;
            ai += delta;
            aj += delta;
            if (diff > 0.0) {
                if (aj < 0.0) {
                    aj = 0.0;
                    ai = diff;
                }
            } else if (ai < 0.0) {
                ai = 0.0;
                aj = -diff;
            }
            if (diff > 0.0) {
                if (ai > c_) {
                    ai = c_;
                    aj = c_ - diff;
                }
            } else if (aj > c_) {
                aj = c_;
                ai = c_ + diff;
            }
        } else {
            double quad = diag_[pi] + diag_[pj] - 2.0 * qij;
            if (quad <= 0.0) quad = kTau;
            const double delta = (gi - gj) / quad;
            const double sum = ai + aj;
            ai -= delta;
            aj += delta;
            if (sum > c_) {
                if (ai > c_) {
                    ai = c_;
                    aj = sum - c_;
                }
            } else if (aj < 0.0) {
                aj = 0.0;
                ai = sum;
            }
            if (sum > c_) {
                if (aj > c_) {
                    aj = c_;
                    ai = sum - c_;
                }
            } else if (ai < 0.0) {
                ai = 0.0;
                aj = sum;
            }
        }
        const double dbi = sign(i) * (ai - old_i);
        const double dbj = sign(j) * (aj - old_j);
        const double* ki = k_.row(pi).data();
        const double* kj = k_.row(pj).data();
        double* f = f_.data();
        gmax_ = -kInf;
        first_ = kNone;
        for (std::size_t t = 0; t < n_; ++t) {
            f[t] += ki[t] * dbi + kj[t] * dbj;
            scan_first(t, eps_ - y_[t] + f[t], eps_ + y_[t] - f[t]);
        }
    }

    double bias() const {
        double ub = kInf;
        double lb = -kInf;
        double sum_free = 0.0;
        std::size_t n_free = 0;
        for (std::size_t t = 0; t < 2 * n_; ++t) {
            const double yg = sign(t) * grad(t);
            if (alpha_[t] >= c_) {
                if (sign(t) == -1) ub = std::min(ub, yg);
                else lb = std::max(lb, yg);
            } else if (alpha_[t] <= 0.0) {
                if (sign(t) == 1) ub = std::min(ub, yg);
                else lb = std::max(lb, yg);
            } else {
                ++n_free;
                sum_free += yg;
            }
        }
        const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : 0.5 * (ub + lb);
        return -rho;
    }

    const DenseMatrix& k_;
    std::span<const double> y_;
    std::size_t n_;
    double c_;
    double eps_;
    std::vector<double> alpha_;
    std::vector<double> f_;
    std::vector<double> diag_;
    double gmax_ = -kInf;
    std::size_t first_ = kNone;
};

}  // namespace

DualSolution solve_dual(const DenseMatrix& k, std::span<const double> y, double c, double epsilon,
                        const SolverOptions& opts) {
    if (k.rows() != y.size() || k.cols() != y.size()) {
        throw ArgumentError("kernel matrix does not match the number of targets");
    }
    if (!(c > 0.0)) throw ArgumentError("SVR penalty C must be positive");
    if (!(epsilon >= 0.0)) throw ArgumentError("SVR epsilon must be non-negative");
    PairSolver solver(k, y, c, epsilon);
    return solver.run(opts);
}

double dual_objective(const DenseMatrix& k, std::span<const double> y,
                      std::span<const double> alpha, double epsilon) {
    const std::size_t n = y.size();
    if (alpha.size() != 2 * n) throw ArgumentError("multiplier vector must have 2n entries");
    std::vector<double> beta(n);
    for (std::size_t i = 0; i < n; ++i) beta[i] = alpha[i] - alpha[i + n];
    double quad = 0.0;
    double lin = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += k(i, j) * beta[j];
        quad += beta[i] * row;
        lin += -y[i] * beta[i] + epsilon * (alpha[i] + alpha[i + n]);
    }
    return 0.5 * quad + lin;
}

double kkt_violation(const DenseMatrix& k, std::span<const double> y,
                     std::span<const double> alpha, double bias, double c, double epsilon) {
    const std::size_t n = y.size();
    if (alpha.size() != 2 * n) throw ArgumentError("multiplier vector must have 2n entries");
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double f = bias;
        for (std::size_t j = 0; j < n; ++j) f += k(i, j) * (alpha[j] - alpha[j + n]);
        const double r = y[i] - f;
        const double a = alpha[i];
        const double as = alpha[i + n];
        // a pushes f up: a < C needs r <= eps, a > 0 needs r >= eps.
        if (a < c) worst = std::max(worst, r - epsilon);
        if (a > 0.0) worst = std::max(worst, epsilon - r);
        // a* pulls f down: a* < C needs r >= -eps, a* > 0 needs r <= -eps.
        if (as < c) worst = std::max(worst, -epsilon - r);
        if (as > 0.0) worst = std::max(worst, r + epsilon);
    }
    return worst;
}

FeatureScaler FeatureScaler::fit(const PatternMatrix& x) {
    FeatureScaler s;
    if (x.empty()) return s;
    const std::size_t dim = x.front().size();
    const auto n = static_cast<double>(x.size());
    s.mean.assign(dim, 0.0);
    s.scale.assign(dim, 1.0);
    for (const auto& row : x) {
        for (std::size_t d = 0; d < dim; ++d) s.mean[d] += row[d];
    }
    for (double& m : s.mean) m /= n;
    for (std::size_t d = 0; d < dim; ++d) {
        double var = 0.0;
        for (const auto& row : x) {
            const double e = row[d] - s.mean[d];
            var += e * e;
        }
        const double sd = std::sqrt(var / n);
        s.scale[d] = sd > 0.0 ? sd : 1.0;
    }
    return s;
}

std::vector<double> FeatureScaler::transform(std::span<const double> row) const {
    if (row.size() != mean.size()) {
        throw ArgumentError("pattern dimension " + std::to_string(row.size()) +
                            " does not match model dimension " + std::to_string(mean.size()));
    }
    std::vector<double> out(row.size());
    for (std::size_t d = 0; d < row.size(); ++d) out[d] = (row[d] - mean[d]) / scale[d];
    return out;
}

PatternMatrix FeatureScaler::transform(const PatternMatrix& x) const {
    PatternMatrix out;
    out.reserve(x.size());
    for (const auto& row : x) out.push_back(transform(row));
    return out;
}

SvrModel train(const PatternMatrix& x, std::span<const double> y, const SvrParams& p,
               const SolverOptions& opts) {
    if (x.size() != y.size()) throw ArgumentError("pattern and target counts differ");
    if (x.size() < 2) throw ArgumentError("SVR training needs at least two patterns");
    if (!(p.c > 0.0)) throw ArgumentError("SVR penalty C must be positive");
    if (!(p.epsilon >= 0.0)) throw ArgumentError("SVR epsilon must be non-negative");
    if (p.kernel.kind == KernelSpec::Kind::Rbf && !(p.kernel.gamma > 0.0)) {
        throw ArgumentError("RBF gamma must be positive");
    }
    check_patterns(x);
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!std::isfinite(y[i])) throw ArgumentError("non-finite SVR target");
        for (double v : x[i]) {
            if (!std::isfinite(v)) throw ArgumentError("non-finite SVR input");
        }
    }

    SvrModel m;
    m.kernel = p.kernel;
    m.dimension = x.front().size();
    m.scaler = FeatureScaler::fit(x);

    if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y.front(); })) {
        m.bias = y.front();
        return m;
    }

    const PatternMatrix z = m.scaler.transform(x);
    const DenseMatrix k = kernel_matrix(p.kernel, z);
    const DualSolution sol = solve_dual(k, y, p.c, p.epsilon, opts);
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (sol.beta[i] != 0.0) {
            m.support_vectors.push_back(z[i]);
            m.beta.push_back(sol.beta[i]);
        }
    }
    m.bias = sol.bias;
    m.converged = sol.converged;
    m.kkt_gap = sol.kkt_gap;
    m.updates = sol.updates;
    m.dual_objective = sol.objective;
    return m;
}

double predict(const SvrModel& m, std::span<const double> x) {
    if (x.size() != m.dimension) {
        throw ArgumentError("pattern dimension " + std::to_string(x.size()) +
                            " does not match model dimension " + std::to_string(m.dimension));
    }
    const std::vector<double> z = m.scaler.transform(x);
    double f = m.bias;
    for (std::size_t i = 0; i < m.beta.size(); ++i) {
        f += m.beta[i] * kernel_unchecked(m.kernel, m.support_vectors[i], z);
    }
    return f;
}

}  // namespace emdsvr
