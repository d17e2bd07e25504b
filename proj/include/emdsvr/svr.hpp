#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace emdsvr {

/// Row-major dense matrix, just enough for kernel Gram matrices.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

using PatternMatrix = std::vector<std::vector<double>>;

struct KernelSpec {
    enum class Kind { Rbf, Linear };
    Kind kind = Kind::Rbf;
    double gamma = 1.0;  // RBF width, exp(-gamma |u - v|^2)

    static KernelSpec rbf(double gamma);
    static KernelSpec linear() { return {Kind::Linear, 0.0}; }
};

double kernel_eval(const KernelSpec& k, std::span<const double> u, std::span<const double> v);

/// Gram matrix K(i, j) = k(X_i, X_j). Rows are computed in parallel.
DenseMatrix kernel_matrix(const KernelSpec& k, const PatternMatrix& x);

namespace serial {
/// Single-threaded reference for kernel_matrix(); results are bit-identical.
DenseMatrix kernel_matrix(const KernelSpec& k, const PatternMatrix& x);
}  // namespace serial

struct SolverOptions {
    double tolerance = 1e-3;                  // stop when the KKT gap drops below this
    std::size_t max_updates_per_sample = 10000;
};

/// Solution of the epsilon-SVR dual over the 2n multipliers [a; a*].
struct DualSolution {
    std::vector<double> alpha;  // a_i for i < n, a*_i at i + n
    std::vector<double> beta;   // a_i - a*_i
    double bias = 0.0;
    double objective = 0.0;     // minimisation form of the dual
    double kkt_gap = 0.0;
    std::size_t updates = 0;
    bool converged = false;
};

/// Sequential two-variable solver for
///   min 1/2 b'Kb - y'b + eps sum(a + a*),  b = a - a*,
///   sum b = 0,  0 <= a, a* <= C.
/// The first index of each pair is the maximal KKT violator, the second is
/// chosen by second-order gain among the violating partners.
DualSolution solve_dual(const DenseMatrix& k, std::span<const double> y, double c, double epsilon,
                        const SolverOptions& opts = {});

/// Dual objective (minimisation form) of an arbitrary multiplier vector.
double dual_objective(const DenseMatrix& k, std::span<const double> y,
                      std::span<const double> alpha, double epsilon);

/// Largest violation of the epsilon-SVR optimality conditions, recomputed
/// from scratch from the multipliers and bias.
double kkt_violation(const DenseMatrix& k, std::span<const double> y,
                     std::span<const double> alpha, double bias, double c, double epsilon);

/// Per-feature standardisation with statistics from the training patterns.
/// Constant features are centred and left unscaled.
struct FeatureScaler {
    std::vector<double> mean;
    std::vector<double> scale;

    static FeatureScaler fit(const PatternMatrix& x);
    std::vector<double> transform(std::span<const double> row) const;
    PatternMatrix transform(const PatternMatrix& x) const;
};

struct SvrParams {
    double c = 1.0;
    double epsilon = 0.1;
    KernelSpec kernel;
};

struct SvrModel {
    PatternMatrix support_vectors;  // standardised inputs
    std::vector<double> beta;
    double bias = 0.0;
    KernelSpec kernel;
    FeatureScaler scaler;
    std::size_t dimension = 0;
    bool converged = true;
    double kkt_gap = 0.0;
    std::size_t updates = 0;
    double dual_objective = 0.0;
};

/// Trains an epsilon-SVR. A constant target yields an empty support set with
/// the constant as bias. Hitting the update cap is reported through
/// SvrModel::converged rather than thrown.
SvrModel train(const PatternMatrix& x, std::span<const double> y, const SvrParams& p,
               const SolverOptions& opts = {});

double predict(const SvrModel& m, std::span<const double> x);

}  // namespace emdsvr
