#include "sqa/ahp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace sqa {

std::vector<std::string> validate_matrix(const PairwiseMatrix& m) {
    std::vector<std::string> violations;
    size_t n = m.labels.size();
    if (n < 2) violations.push_back("matrix order below 2");
    if (m.entries.size() != n) {
        violations.push_back("entry row count does not match label count");
        return violations;
    }
    for (size_t i = 0; i < n; ++i) {
        if (m.entries[i].size() != n) {
            violations.push_back("row " + std::to_string(i) + " has wrong length");
            return violations;
        }
    }
    for (size_t i = 0; i < n; ++i) {
        if (std::abs(m.entries[i][i] - 1.0) > 1e-9)
            violations.push_back("diagonal entry (" + std::to_string(i) + "," + std::to_string(i) +
                                 ") is not 1");
        for (size_t j = 0; j < n; ++j) {
            if (!(m.entries[i][j] > 0.0) || !std::isfinite(m.entries[i][j])) {
                violations.push_back("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                     ") is not positive");
                continue;
            }
            if (j > i && std::abs(m.entries[j][i] - 1.0 / m.entries[i][j]) > 1e-9)
                violations.push_back("reciprocity violated at (" + std::to_string(i) + "," +
                                     std::to_string(j) + ")");
        }
    }
    return violations;
}

WeightVector principal_eigenvector(const PairwiseMatrix& m, double tolerance,
                                   int max_iterations) {
    auto violations = validate_matrix(m);
    if (!violations.empty()) throw InvalidMatrix("invalid pairwise matrix: " + violations.front());

    const size_t n = m.order();
    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);

    for (int iter = 0; iter < max_iterations; ++iter) {
        for (size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (size_t j = 0; j < n; ++j) s += m.entries[i][j] * w[j];
            next[i] = s;
        }
        double total = std::accumulate(next.begin(), next.end(), 0.0);
        for (auto& x : next) x /= total;

        double delta = 0.0;
        for (size_t i = 0; i < n; ++i) delta = std::max(delta, std::abs(next[i] - w[i]));
        w = next;
        if (delta < tolerance) {
            // Rayleigh estimate of the dominant eigenvalue at convergence.
            double lambda = 0.0;
            for (size_t i = 0; i < n; ++i) {
                double s = 0.0;
                for (size_t j = 0; j < n; ++j) s += m.entries[i][j] * w[j];
                lambda += s / w[i];
            }
            lambda /= static_cast<double>(n);
            WeightVector out;
            out.labels = m.labels;
            out.weights = w;
            out.lambda_max = lambda;
            out.consistency_ratio = consistency_ratio(m, lambda);
            return out;
        }
    }
    throw NonConvergence("power iteration did not converge in " +
                         std::to_string(max_iterations) + " iterations");
}

double consistency_ratio(const PairwiseMatrix& m, double lambda_max) {
    const size_t n = m.order();
    if (n == 2) return 0.0;
    // Saaty's random consistency index.
    static const std::map<size_t, double> random_index = {
        {3, 0.58}, {4, 0.90}, {5, 1.12}, {6, 1.24},
        {7, 1.32}, {8, 1.41}, {9, 1.45}, {10, 1.49}};
    auto it = random_index.find(n);
    if (it == random_index.end())
        throw UnknownOrder("no random index for matrix order " + std::to_string(n));
    double ci = (lambda_max - static_cast<double>(n)) / static_cast<double>(n - 1);
    return ci / it->second;
}

PairwiseMatrix matrix_from_judgments(const std::vector<std::string>& criteria,
                                     const std::vector<Judgment>& judgments) {
    const size_t n = criteria.size();
    PairwiseMatrix m;
    m.labels = criteria;
    m.entries.assign(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) m.entries[i][i] = 1.0;

    for (const auto& j : judgments) {
        if (j.row >= n || j.col >= n || j.row == j.col)
            throw MissingJudgment("judgment indices out of range: (" + std::to_string(j.row) +
                                  "," + std::to_string(j.col) + ")");
        if (m.entries[j.row][j.col] != 0.0)
            throw DuplicateJudgment("pair judged twice: " + criteria[j.row] + " vs " +
                                    criteria[j.col]);
        if (!(j.ratio > 0.0))
            throw MissingJudgment("non-positive ratio for " + criteria[j.row] + " vs " +
                                  criteria[j.col]);
        m.entries[j.row][j.col] = j.ratio;
        m.entries[j.col][j.row] = 1.0 / j.ratio;
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (m.entries[i][j] == 0.0)
                throw MissingJudgment("missing judgment: " + criteria[i] + " vs " + criteria[j]);
    return m;
}

WeightVector weights_from_judgments(const std::vector<std::string>& criteria,
                                    const std::vector<Judgment>& judgments,
                                    std::string* warning) {
    PairwiseMatrix m = matrix_from_judgments(criteria, judgments);
    WeightVector w = principal_eigenvector(m);
    if (warning && w.consistency_ratio > 0.1)
        *warning = "consistency ratio " + std::to_string(w.consistency_ratio) +
                   " exceeds 0.1; judgments are inconsistent";
    return w;
}

}  // namespace sqa
