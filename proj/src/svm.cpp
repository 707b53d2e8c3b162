// Copyright 2026 The qsvm-gnss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsvm/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "qsvm/error.hpp"

namespace qsvm::svm {

namespace {

constexpr double kTau = 1e-12;  // curvature floor for non-PSD pairs

void check_labels(std::span<const int> y) {
    bool pos = false;
    bool neg = false;
    for (int v : y) {
        if (v == 1) {
            pos = true;
        } else if (v == -1) {
            neg = true;
        } else {
            throw InvalidLabelsError("binary labels must be +1 or -1, got " + std::to_string(v));
        }
    }
    if (!pos || !neg) {
        throw InvalidLabelsError("binary problem needs both classes present");
    }
}

class SmoSolver {
public:
    SmoSolver(const qkernel::KernelMatrix& K, std::span<const int> y, const SvmConfig& cfg)
        : K_(K), y_(y), C_(cfg.C), eps_(cfg.kkt_tolerance), n_(y.size()),
          alpha_(n_, 0.0), grad_(n_, -1.0) {}

    BinaryModel solve(std::size_t max_iterations) {
        BinaryModel model;
        std::size_t iter = 0;
        for (; iter < max_iterations; ++iter) {
            std::size_t i = 0;
            std::size_t j = 0;
            if (!select_working_set(i, j)) break;
            update_pair(i, j);
        }
        model.converged = kkt_satisfied();
        model.iterations = iter;
        model.alpha = alpha_;
        model.y.assign(y_.begin(), y_.end());
        model.bias = -compute_rho();
        return model;
    }

private:
    double Q(std::size_t i, std::size_t j) const { return y_[i] * y_[j] * K_(i, j); }
    bool is_upper(std::size_t t) const { return alpha_[t] >= C_; }
    bool is_lower(std::size_t t) const { return alpha_[t] <= 0.0; }
    bool in_up(std::size_t t) const { return y_[t] == 1 ? !is_upper(t) : !is_lower(t); }
    bool in_low(std::size_t t) const { return y_[t] == 1 ? !is_lower(t) : !is_upper(t); }

    // Maximal violating pair with second-order selection of the partner.
    // Returns false once the KKT gap is within tolerance.
    bool select_working_set(std::size_t& out_i, std::size_t& out_j) const {
        double gmax = -std::numeric_limits<double>::infinity();
        std::size_t i = n_;
        for (std::size_t t = 0; t < n_; ++t) {
            if (in_up(t) && -y_[t] * grad_[t] > gmax) {
                gmax = -y_[t] * grad_[t];
                i = t;
            }
        }
        double gmax2 = -std::numeric_limits<double>::infinity();
        double best_obj = std::numeric_limits<double>::infinity();
        std::size_t j = n_;
        for (std::size_t t = 0; t < n_; ++t) {
            if (!in_low(t)) continue;
            const double yg = y_[t] * grad_[t];
            gmax2 = std::max(gmax2, yg);
            if (i == n_) continue;
            const double grad_diff = gmax + yg;
            if (grad_diff > 0.0) {
                double quad = K_(i, i) + K_(t, t) - 2.0 * K_(i, t);
                if (quad <= 0.0) quad = kTau;
                const double obj = -(grad_diff * grad_diff) / quad;
                if (obj < best_obj) {
                    best_obj = obj;
                    j = t;
                }
            }
        }
        if (gmax + gmax2 < eps_ || i == n_ || j == n_) {
            return false;
        }
        out_i = i;
        out_j = j;
        return true;
    }

    bool kkt_satisfied() const {
        std::size_t i = 0;
        std::size_t j = 0;
        return !select_working_set(i, j);
    }

    void update_pair(std::size_t i, std::size_t j) {
        const double old_ai = alpha_[i];
        const double old_aj = alpha_[j];
        double quad = K_(i, i) + K_(j, j) - 2.0 * K_(i, j);
        if (quad <= 0.0) quad = kTau;

        if (y_[i] != y_[j]) {
            const double delta = (-grad_[i] - grad_[j]) / quad;
            const double diff = alpha_[i] - alpha_[j];
            alpha_[i] += delta;
            alpha_[j] += delta;
            if (diff > 0.0) {
                if (alpha_[j] < 0.0) {
                    alpha_[j] = 0.0;
                    alpha_[i] = diff;
                }
            } else if (alpha_[i] < 0.0) {
                alpha_[i] = 0.0;
                alpha_[j] = -diff;
            }
            if (diff > 0.0) {
                if (alpha_[i] > C_) {
                    alpha_[i] = C_;
                    alpha_[j] = C_ - diff;
                }
            } else if (alpha_[j] > C_) {
                alpha_[j] = C_;
                alpha_[i] = C_ + diff;
            }
        } else {
            const double delta = (grad_[i] - grad_[j]) / quad;
            const double sum = alpha_[i] + alpha_[j];
            alpha_[i] -= delta;
            alpha_[j] += delta;
            if (sum > C_) {
                if (alpha_[i] > C_) {
                    alpha_[i] = C_;
                    alpha_[j] = sum - C_;
                }
            } else if (alpha_[j] < 0.0) {
                alpha_[j] = 0.0;
                alpha_[i] = sum;
            }
            if (sum > C_) {
                if (alpha_[j] > C_) {
                    alpha_[j] = C_;
                    alpha_[i] = sum - C_;
                }
            } else if (alpha_[i] < 0.0) {
                alpha_[i] = 0.0;
                alpha_[j] = sum;
            }
        }

        const double dai = alpha_[i] - old_ai;
        const double daj = alpha_[j] - old_aj;
        for (std::size_t t = 0; t < n_; ++t) {
            grad_[t] += Q(t, i) * dai + Q(t, j) * daj;
        }
    }

    // Offset rho with f(x) = sum alpha_i y_i k(x, x_i) - rho. Averages over
    // free vectors, otherwise the midpoint of the feasible interval.
    double compute_rho() const {
        double ub = std::numeric_limits<double>::infinity();
        double lb = -std::numeric_limits<double>::infinity();
        double sum_free = 0.0;
        std::size_t n_free = 0;
        for (std::size_t t = 0; t < n_; ++t) {
            const double yg = y_[t] * grad_[t];
            if (is_upper(t)) {
                if (y_[t] == -1) ub = std::min(ub, yg);
                else lb = std::max(lb, yg);
            } else if (is_lower(t)) {
                if (y_[t] == 1) ub = std::min(ub, yg);
                else lb = std::max(lb, yg);
            } else {
                ++n_free;
                sum_free += yg;
            }
        }
        if (n_free > 0) return sum_free / static_cast<double>(n_free);
        return (ub + lb) / 2.0;
    }

    const qkernel::KernelMatrix& K_;
    std::span<const int> y_;
    double C_;
    double eps_;
    std::size_t n_;
    std::vector<double> alpha_;
    std::vector<double> grad_;
};

qkernel::KernelMatrix sub_gram(const qkernel::KernelMatrix& K,
                               std::span<const std::size_t> indices) {
    qkernel::KernelMatrix sub{Matrix(indices.size(), indices.size()), K.symmetric};
    for (std::size_t a = 0; a < indices.size(); ++a) {
        for (std::size_t b = 0; b < indices.size(); ++b) {
            sub.values(a, b) = K(indices[a], indices[b]);
        }
    }
    return sub;
}

}  // namespace

void validate(const SvmConfig& config) {
    if (!(config.C > 0.0) || !std::isfinite(config.C)) {
        throw InvalidArgumentError("SVM C must be a positive finite number");
    }
    if (!(config.kkt_tolerance > 0.0)) {
        throw InvalidArgumentError("SVM KKT tolerance must be positive");
    }
    if (config.max_passes == 0) {
        throw InvalidArgumentError("SVM max_passes must be positive");
    }
}

bool SvmModel::converged() const {
    return std::all_of(binary_models.begin(), binary_models.end(),
                       [](const BinaryModel& m) { return m.converged; });
}

double dual_objective(const qkernel::KernelMatrix& gram, std::span<const int> y,
                      std::span<const double> alpha) {
    double linear = 0.0;
    double quad = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        linear += alpha[i];
        for (std::size_t j = 0; j < alpha.size(); ++j) {
            quad += alpha[i] * alpha[j] * y[i] * y[j] * gram(i, j);
        }
    }
    return linear - 0.5 * quad;
}

BinaryModel solve_binary_smo(const qkernel::KernelMatrix& gram, std::span<const int> y,
                             const SvmConfig& cfg) {
    validate(cfg);
    if (gram.rows() != gram.cols()) {
        throw DimensionError("SMO needs a square Gram matrix");
    }
    if (gram.rows() != y.size()) {
        throw DimensionError("Gram matrix has " + std::to_string(gram.rows()) + " rows but " +
                             std::to_string(y.size()) + " labels were given");
    }
    check_labels(y);

    SmoSolver solver(gram, y, cfg);
    BinaryModel model = solver.solve(cfg.max_passes * y.size());
    model.training_indices.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) model.training_indices[i] = i;
    return model;
}

double decision_value(const BinaryModel& model, std::span<const double> kernel_row) {
    if (kernel_row.size() != model.alpha.size()) {
        throw DimensionError("kernel row has " + std::to_string(kernel_row.size()) +
                             " entries, model has " + std::to_string(model.alpha.size()) +
                             " training points");
    }
    double sum = model.bias;
    for (std::size_t i = 0; i < kernel_row.size(); ++i) {
        if (model.alpha[i] != 0.0) sum += model.alpha[i] * model.y[i] * kernel_row[i];
    }
    return sum;
}

SvmModel train_ovo(const Matrix& X, std::span<const int> labels, const SvmConfig& cfg,
                   qkernel::KernelConfig kernel_config) {
    validate(cfg);
    if (X.rows() != labels.size()) {
        throw DimensionError("feature matrix has " + std::to_string(X.rows()) + " rows but " +
                             std::to_string(labels.size()) + " labels were given");
    }
    const std::set<int> distinct(labels.begin(), labels.end());
    if (distinct.size() < 2) {
        throw InvalidDatasetError("training data needs at least two classes");
    }
    if (kernel_config.mode == qkernel::KernelMode::Rbf && !kernel_config.gamma) {
        kernel_config.gamma = qkernel::default_gamma(X);
    }

    SvmModel model;
    model.classes.assign(distinct.begin(), distinct.end());
    model.kernel_config = kernel_config;
    model.training_features = X;

    const qkernel::KernelMatrix full = qkernel::gram_symmetric(X, kernel_config);

    for (std::size_t a = 0; a < model.classes.size(); ++a) {
        for (std::size_t b = a + 1; b < model.classes.size(); ++b) {
            const int ca = model.classes[a];
            const int cb = model.classes[b];
            std::vector<std::size_t> indices;
            std::vector<int> y;
            for (std::size_t i = 0; i < labels.size(); ++i) {
                if (labels[i] == ca || labels[i] == cb) {
                    indices.push_back(i);
                    y.push_back(labels[i] == ca ? 1 : -1);
                }
            }
            BinaryModel bm = solve_binary_smo(sub_gram(full, indices), y, cfg);
            bm.class_a = ca;
            bm.class_b = cb;
            bm.training_indices = std::move(indices);
            model.binary_models.push_back(std::move(bm));
        }
    }
    return model;
}

std::vector<int> predict_from_kernel(const SvmModel& model, const qkernel::KernelMatrix& kernel) {
    if (kernel.cols() != model.training_features.rows()) {
        throw DimensionError("kernel block has " + std::to_string(kernel.cols()) +
                             " columns, model has " +
                             std::to_string(model.training_features.rows()) + " training points");
    }
    const std::size_t n_classes = model.classes.size();
    auto class_index = [&](int label) {
        return static_cast<std::size_t>(
            std::lower_bound(model.classes.begin(), model.classes.end(), label) -
            model.classes.begin());
    };

    std::vector<int> out;
    out.reserve(kernel.rows());
    std::vector<double> row_buf;
    for (std::size_t r = 0; r < kernel.rows(); ++r) {
        std::vector<int> votes(n_classes, 0);
        std::vector<double> margins(n_classes, 0.0);
        for (const auto& bm : model.binary_models) {
            row_buf.resize(bm.training_indices.size());
            for (std::size_t k = 0; k < bm.training_indices.size(); ++k) {
                row_buf[k] = kernel(r, bm.training_indices[k]);
            }
            const double dv = decision_value(bm, row_buf);
            const std::size_t winner = class_index(dv > 0.0 ? bm.class_a : bm.class_b);
            ++votes[winner];
            margins[winner] += std::abs(dv);
        }
        std::size_t best = 0;
        for (std::size_t c = 1; c < n_classes; ++c) {
            if (votes[c] > votes[best] ||
                (votes[c] == votes[best] && margins[c] > margins[best])) {
                best = c;
            }
        }
        out.push_back(model.classes[best]);
    }
    return out;
}

std::vector<int> predict(const SvmModel& model, const Matrix& X) {
    if (X.cols() != model.num_features()) {
        throw DimensionError("prediction features have " + std::to_string(X.cols()) +
                             " columns, model was trained on " +
                             std::to_string(model.num_features()));
    }
    if (X.empty()) return {};
    return predict_from_kernel(
        model, qkernel::gram_rectangular(X, model.training_features, model.kernel_config));
}

}  // namespace qsvm::svm
